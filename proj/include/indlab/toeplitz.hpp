#pragma once
// Nested residue systems generating a Toeplitz sequence over the alphabet
// {0,1,2,3,4}: levels p = 1..depth carry periods n_p (each dividing the
// next) and residues y_{p,q}, y'_{p,q} (q in [2^{p+1}]) satisfying the
// separation properties (i)-(iv) and the small-window property (v').
// Symbols come from the parity/side rule h; everything is exact unbounded
// integer arithmetic.

#include <optional>
#include <string>
#include <vector>

#include "indlab/numeric.hpp"

namespace indlab {

struct ToeplitzSpec {
    int depth = 0;
    std::vector<BigInt> n;                  // n[p-1], strictly increasing, n_p | n_{p+1}
    std::vector<std::vector<BigInt>> y;     // y[p-1][q-1], q in [2^{p+1}], reduced mod n_p
    std::vector<std::vector<BigInt>> yp;    // y'[p-1][q-1], same shape
    std::vector<BigInt> z, u;               // level shifts mod n_p
    std::vector<BigInt> a, b;               // anchors: a_p = y_{p,1}, b_p = y_{p,2^p+1}
    bool verified = false;
};

struct PropertyReport {
    struct Entry {
        bool pass = true;
        std::string counterexample;  // empty when pass
    };
    Entry distinct, i, ii, iii, iv, vprime, divisibility;
    bool all() const {
        return distinct.pass && i.pass && ii.pass && iii.pass && iv.pass && vprime.pass &&
               divisibility.pass;
    }
};

ToeplitzSpec build_spec(int depth, int retryBudget = 1000);
PropertyReport verify_spec(const ToeplitzSpec& spec);

// symbol of the generated sequence at coordinate s
struct SymbolEval {
    int value = 0;                     // in {0,1,2,3,4}
    bool provisional = false;          // 0 that no level certifies
    int level = 0;                     // determining level p (when not provisional)
    BigInt period;                     // n_p (when not provisional)
    int q = 0;                         // matching residue index for values 1..4
};

SymbolEval eval_x(const ToeplitzSpec& spec, const BigInt& s);

// color rule: q <= 2^p -> 1 (odd q) / 2 (even q); q > 2^p -> 3 / 4
int color_h(int p, int q);

// locate s among the residues: (P(s), Q(s)) with s = y_{P,Q} mod n_P
std::optional<std::pair<int, int>> locate(const ToeplitzSpec& spec, const BigInt& s);

// realize sigma: [p] -> {1,2} (or {3,4}) at the anchors: returns the shift
// a with x(anchor_i - a) = sigma(i) for all i in [p]; verified via eval_x
BigInt witness_for_pattern(const ToeplitzSpec& spec, const std::vector<int>& sigma);

// period of the symbol at s, spot-checked on |t| <= spotCheck translates
std::optional<BigInt> period_certificate(const ToeplitzSpec& spec, const BigInt& s,
                                         int spotCheck = 1000);

// ---- pair audits -----------------------------------------------------------

// pattern-completeness audit over pairs {s1, s2} in [sLo, sHi], witnesses
// a (and b for the product pair) in [abLo, abHi]. Pair types:
//  - plain (c1, c2): the tuple (A_{c1}, A_{c2}) of one-symbol cylinders
//  - product: the tuple (A_1 x A_3, A_2 x A_4) over the product system
struct PairAuditConfig {
    long long sLo = 0, sHi = 0, abLo = 0, abHi = 0;
    bool product = false;
    int c1 = 1, c2 = 3;  // plain-pair colors (ignored when product)
};

struct PairAuditResult {
    long long independentPairs = 0;   // expected 0
    long long inconclusivePairs = 0;  // blocked only by PROVISIONAL symbols
    long long nearMissPairs = 0;      // exactly one pattern unrealizable
    std::string blockingProperty;     // "(iii)" for plain mixed pairs, "(iv)" for product
    int maxIndependenceSize = 0;      // 1 when some singleton is complete
    long long pairsChecked = 0;
    std::string firstIndependent;     // diagnostic, empty when none
};

PairAuditResult pair_independence_audit(const ToeplitzSpec& spec, const PairAuditConfig& cfg);

// serial reference for the audit kernel (small ranges only; used by tests
// and the benchmark tool)
PairAuditResult pair_independence_audit_serial(const ToeplitzSpec& spec,
                                               const PairAuditConfig& cfg);

// JSON round-trip (decimal-string big integers)
std::string spec_to_json(const ToeplitzSpec& spec);
ToeplitzSpec spec_from_json(const std::string& text);

}  // namespace indlab
