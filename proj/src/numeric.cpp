#include "indlab/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace indlab {

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

BigInt multinomial(const std::vector<int>& parts) {
    unsigned n = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        n += static_cast<unsigned>(p);
    }
    BigInt r = factorial(n);
    for (int p : parts) r /= factorial(static_cast<unsigned>(p));
    return r;
}

BigInt ipow(const BigInt& base, unsigned e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

Rat rat_pow(const Rat& base, unsigned e) {
    Rat r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

BigInt mod_floor(const BigInt& s, const BigInt& m) {
    BigInt r = s % m;
    if (r < 0) r += m;
    return r;
}

std::pair<Rat, Rat> e_bracket() {
    // partial sums of sum 1/i!; tail after N terms is < 2/(N+1)!
    static std::pair<Rat, Rat> cached = [] {
        Rat lo = 0;
        BigInt f = 1;
        const unsigned N = 40;
        for (unsigned i = 0; i <= N; ++i) {
            if (i > 0) f *= i;
            lo += Rat(1, f);
        }
        Rat hi = lo + Rat(2, f * (N + 1));
        return std::make_pair(lo, hi);
    }();
    return cached;
}

std::pair<Rat, Rat> exp_bracket(const Rat& x) {
    if (x <= 0) throw std::invalid_argument("exp_bracket: x must be positive");
    if (x > 1) {
        // e^x = (e^(x/2))^2; recursion keeps the series tail bound valid
        auto h = exp_bracket(x / 2);
        return {h.first * h.first, h.second * h.second};
    }
    // sum x^i/i!; for 0 < x <= 1 the tail after N terms is < 2 x^{N+1}/(N+1)!
    Rat lo = 0, term = 1;
    const unsigned N = 40;
    for (unsigned i = 0; i <= N; ++i) {
        if (i > 0) term *= x / i;
        lo += term;
    }
    Rat tail = 2 * term * x / (N + 1);
    return {lo, lo + tail};
}

double to_double(const Rat& r) { return static_cast<double>(r); }

Rat rat_from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("rat_from_double: non-finite");
    // exact binary expansion of the double
    int exp = 0;
    double m = std::frexp(d, &exp);
    BigInt num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(num, 1);
    if (exp > 0)
        r *= ipow(2, static_cast<unsigned>(exp));
    else if (exp < 0)
        r /= ipow(2, static_cast<unsigned>(-exp));
    return r;
}

std::string rat_str(const Rat& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string bigint_str(const BigInt& v) { return v.str(); }

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace indlab
