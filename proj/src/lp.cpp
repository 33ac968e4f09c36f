#include "indlab/lp.hpp"

#include <cstddef>
#include <stdexcept>

namespace indlab {

namespace {

// dense tableau simplex, Bland's rule throughout
struct Tableau {
    size_t m, n;                      // rows, structural+artificial columns
    std::vector<std::vector<Rat>> T;  // m rows, n+1 cols (last = rhs)
    std::vector<Rat> obj;             // n+1 entries (reduced costs, last = -value)
    std::vector<size_t> basis;        // basis[r] = column basic in row r

    void pivot(size_t pr, size_t pc) {
        Rat piv = T[pr][pc];
        for (auto& v : T[pr]) v /= piv;
        for (size_t r = 0; r < m; ++r) {
            if (r == pr || T[r][pc] == 0) continue;
            Rat f = T[r][pc];
            for (size_t c = 0; c <= n; ++c) T[r][c] -= f * T[pr][c];
        }
        if (obj[pc] != 0) {
            Rat f = obj[pc];
            for (size_t c = 0; c <= n; ++c) obj[c] -= f * T[pr][c];
        }
        basis[pr] = pc;
    }

    // minimize; returns when all reduced costs >= 0
    void run(const std::vector<char>& allowed) {
        for (;;) {
            size_t pc = n;
            for (size_t c = 0; c < n; ++c)
                if (allowed[c] && obj[c] < 0) {
                    pc = c;
                    break;
                }
            if (pc == n) return;
            size_t pr = m;
            Rat bestRatio = 0;
            for (size_t r = 0; r < m; ++r) {
                if (T[r][pc] <= 0) continue;
                Rat ratio = T[r][n] / T[r][pc];
                if (pr == m || ratio < bestRatio ||
                    (ratio == bestRatio && basis[r] < basis[pr])) {
                    pr = r;
                    bestRatio = ratio;
                }
            }
            if (pr == m) throw std::runtime_error("simplex: unbounded");
            pivot(pr, pc);
        }
    }
};

}  // namespace

LPResult solve_feasibility(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t m = A.size();
    size_t nv = m ? A[0].size() : 0;
    std::vector<int> sign(m, 1);
    for (size_t r = 0; r < m; ++r) {
        if ((int)A[r].size() != (int)nv) throw std::invalid_argument("solve_feasibility: ragged A");
        if (b[r] < 0) {
            sign[r] = -1;
            b[r] = -b[r];
            for (auto& v : A[r]) v = -v;
        }
    }
    Tableau t;
    t.m = m;
    t.n = nv + m;
    t.T.assign(m, std::vector<Rat>(t.n + 1, 0));
    t.obj.assign(t.n + 1, 0);
    t.basis.resize(m);
    for (size_t r = 0; r < m; ++r) {
        for (size_t c = 0; c < nv; ++c) t.T[r][c] = A[r][c];
        t.T[r][nv + r] = 1;
        t.T[r][t.n] = b[r];
        t.basis[r] = nv + r;
    }
    // phase-1 objective: sum of artificials
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c <= t.n; ++c)
            if (c < nv || c == t.n) t.obj[c] -= t.T[r][c];
    std::vector<char> allowed(t.n, 1);
    t.run(allowed);
    Rat value = -t.obj[t.n];
    LPResult res;
    if (value > 0) {
        res.feasible = false;
        res.farkas.assign(m, 0);
        for (size_t r = 0; r < m; ++r) {
            Rat y = 1 - t.obj[nv + r];  // reduced cost of artificial r is 1 - y_r
            res.farkas[r] = Rat(sign[r]) * y;
        }
        return res;
    }
    res.feasible = true;
    res.x.assign(nv, 0);
    for (size_t r = 0; r < m; ++r)
        if (t.basis[r] < nv) res.x[t.basis[r]] = t.T[r][t.n];
    return res;
}

Rat solve_min(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
              const std::vector<Rat>& c, std::vector<Rat>* argmin) {
    size_t m = A.size();
    size_t nv = m ? A[0].size() : 0;
    std::vector<std::vector<Rat>> Af = A;
    std::vector<Rat> bf = b;
    for (size_t r = 0; r < m; ++r)
        if (bf[r] < 0) {
            bf[r] = -bf[r];
            for (auto& v : Af[r]) v = -v;
        }
    Tableau t;
    t.m = m;
    t.n = nv + m;
    t.T.assign(m, std::vector<Rat>(t.n + 1, 0));
    t.obj.assign(t.n + 1, 0);
    t.basis.resize(m);
    for (size_t r = 0; r < m; ++r) {
        for (size_t cc = 0; cc < nv; ++cc) t.T[r][cc] = Af[r][cc];
        t.T[r][nv + r] = 1;
        t.T[r][t.n] = bf[r];
        t.basis[r] = nv + r;
    }
    for (size_t r = 0; r < m; ++r)
        for (size_t cc = 0; cc <= t.n; ++cc)
            if (cc < nv || cc == t.n) t.obj[cc] -= t.T[r][cc];
    std::vector<char> allowed(t.n, 1);
    t.run(allowed);
    if (-t.obj[t.n] > 0) throw std::runtime_error("solve_min: infeasible");
    // drive artificials out of the basis where possible
    for (size_t r = 0; r < m; ++r) {
        if (t.basis[r] < nv) continue;
        size_t pc = nv;
        for (size_t cc = 0; cc < nv; ++cc)
            if (t.T[r][cc] != 0) {
                pc = cc;
                break;
            }
        if (pc < nv) t.pivot(r, pc);
    }
    // phase 2: real objective, artificial columns frozen
    t.obj.assign(t.n + 1, 0);
    for (size_t cc = 0; cc < nv; ++cc) t.obj[cc] = c[cc];
    for (size_t r = 0; r < m; ++r) {
        if (t.basis[r] >= nv) continue;  // zero-level artificial in redundant row
        Rat f = t.obj[t.basis[r]];
        if (f == 0) continue;
        for (size_t cc = 0; cc <= t.n; ++cc) t.obj[cc] -= f * t.T[r][cc];
    }
    std::vector<char> allowed2(t.n, 0);
    for (size_t cc = 0; cc < nv; ++cc) allowed2[cc] = 1;
    t.run(allowed2);
    if (argmin) {
        argmin->assign(nv, 0);
        for (size_t r = 0; r < m; ++r)
            if (t.basis[r] < nv) (*argmin)[t.basis[r]] = t.T[r][t.n];
    }
    Rat value = -t.obj[t.n];
    return value;
}

bool farkas_valid(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                  const std::vector<Rat>& y) {
    size_t m = A.size();
    size_t nv = m ? A[0].size() : 0;
    Rat yb = 0;
    for (size_t r = 0; r < m; ++r) yb += y[r] * b[r];
    if (yb <= 0) return false;
    for (size_t cc = 0; cc < nv; ++cc) {
        Rat dot = 0;
        for (size_t r = 0; r < m; ++r) dot += y[r] * A[r][cc];
        if (dot > 0) return false;
    }
    return true;
}

}  // namespace indlab
