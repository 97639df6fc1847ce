#include "enr/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace enr {

namespace {

Rat rat(const Int& a) { return Rat(a); }

bool lex_less(const NSClass& a, const NSClass& b) {
    for (int i = 0; i < kRank; ++i) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return a.kx < b.kx;
}

Int rat_floor(const Rat& x) {
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

// Integer solutions of d*(t+mu)^2 <= R (d > 0) form an interval [t_lo, t_hi];
// returns false when it is empty.  Bounds are located by a rational isqrt
// over-approximation and tightened with the exact predicate.
bool root_interval(const Rat& mu, const Rat& R, const Rat& d, Int& t_lo, Int& t_hi) {
    if (R < 0) return false;
    Rat s2 = R / d;
    Int num = boost::multiprecision::numerator(s2);
    Int den = boost::multiprecision::denominator(s2);
    Rat s_up = Rat(isqrt(num * den) + 1, den); // >= sqrt(R/d)
    t_lo = rat_ceil(-mu - s_up);
    t_hi = rat_floor(-mu + s_up);
    auto pred = [&](const Int& v) {
        Rat term = rat(v) + mu;
        return d * term * term <= R;
    };
    while (t_lo <= t_hi && !pred(t_lo)) ++t_lo;
    while (t_lo <= t_hi && !pred(t_hi)) --t_hi;
    return t_lo <= t_hi;
}

struct SquareData {
    std::vector<Rat> d;              // positive pivots
    std::vector<std::vector<Rat>> u; // u[i][j], j > i
    std::vector<Rat> mu;
    Rat nu;
};

// Square completion of N(t) = t'Pt + 2L't + C with P positive definite.
SquareData complete_squares(std::vector<std::vector<Rat>> P, std::vector<Rat> L, Rat C) {
    const int m = static_cast<int>(P.size());
    SquareData sd;
    sd.d.resize(m);
    sd.u.assign(m, {});
    sd.mu.resize(m);
    for (int i = 0; i < m; ++i) {
        Rat d = P[i][i];
        if (d <= 0) throw std::domain_error("complete_squares: form is not positive definite");
        sd.d[i] = d;
        sd.u[i].resize(m);
        for (int j = i + 1; j < m; ++j) sd.u[i][j] = P[i][j] / d;
        sd.mu[i] = L[i] / d;
        for (int a = i + 1; a < m; ++a) {
            for (int b = i + 1; b < m; ++b) P[a][b] -= P[i][a] * P[i][b] / d;
            L[a] -= P[i][a] * L[i] / d;
        }
        C -= L[i] * L[i] / d;
    }
    sd.nu = C;
    return sd;
}

using TupleVisitor = std::function<bool(const std::vector<Int>&)>;

bool fp_recurse(const SquareData& sd, int level, std::vector<Int>& t, const Rat& S,
                const Rat& Nlo, const Rat& Nhi, const TupleVisitor& visit) {
    if (level < 0) {
        if (S >= Nlo && S <= Nhi) return visit(t);
        return true;
    }
    Rat center = sd.mu[level];
    const int m = static_cast<int>(t.size());
    for (int j = level + 1; j < m; ++j) center += sd.u[level][j] * rat(t[j]);
    Int from, to;
    if (!root_interval(center, Nhi - S, sd.d[level], from, to)) return true;
    for (Int v = from; v <= to; ++v) {
        t[level] = v;
        Rat term = rat(v) + center;
        if (!fp_recurse(sd, level - 1, t, S + sd.d[level] * term * term, Nlo, Nhi, visit))
            return false;
    }
    t[level] = 0;
    return true;
}

bool fp_visit(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b, const Rat& c,
              const Rat& lo, const Rat& hi, const TupleVisitor& visit) {
    const int m = static_cast<int>(A.size());
    if (m == 0) {
        if (c >= lo && c <= hi) return visit({});
        return true;
    }
    std::vector<std::vector<Rat>> P(m, std::vector<Rat>(m));
    std::vector<Rat> L(m);
    for (int i = 0; i < m; ++i) {
        L[i] = -b[i];
        for (int j = 0; j < m; ++j) P[i][j] = -A[i][j];
    }
    SquareData sd = complete_squares(std::move(P), std::move(L), -c);
    std::vector<Int> t(m, 0);
    return fp_recurse(sd, m - 1, t, sd.nu, -hi, -lo, visit);
}

// All-integer LLL (delta = 3/4) on linearly independent direction vectors,
// with the positive definite form -(.,.).  Keeps the Fincke-Pohst search tree
// small when the constraint kernel basis comes out skewed.
void lll_reduce(std::vector<NSClass>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n <= 1) return;
    auto dot = [](const NSClass& a, const NSClass& b) { return -pair_ns(a, b); };
    // lam[i][j] = d[j+1] * mu_ij, d[i+1] = det(Gram of first i+1 vectors)
    std::vector<Int> d(n + 1);
    std::vector<std::vector<Int>> lam(n, std::vector<Int>(n, 0));
    d[0] = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Int u = dot(basis[i], basis[j]);
            for (int k = 0; k < j; ++k) u = exact_div(d[k + 1] * u - lam[i][k] * lam[j][k], d[k]);
            if (j < i) lam[i][j] = u;
            else d[i + 1] = u;
        }
    }
    auto red = [&](int k, int l) {
        if (2 * boost::multiprecision::abs(lam[k][l]) <= d[l + 1]) return;
        Int q = floor_div(2 * lam[k][l] + d[l + 1], 2 * d[l + 1]);
        basis[k] = basis[k] - basis[l] * q;
        lam[k][l] -= q * d[l + 1];
        for (int i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    int k = 1;
    while (k < n) {
        red(k, k - 1);
        if (4 * (d[k + 1] * d[k - 1] + lam[k][k - 1] * lam[k][k - 1]) < 3 * d[k] * d[k]) {
            std::swap(basis[k], basis[k - 1]);
            for (int j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            Int lam_ = lam[k][k - 1];
            Int bt = exact_div(d[k - 1] * d[k + 1] + lam_ * lam_, d[k]);
            for (int i = k + 1; i < n; ++i) {
                Int t = lam[i][k];
                lam[i][k] = exact_div(d[k + 1] * lam[i][k - 1] - lam_ * t, d[k]);
                lam[i][k - 1] = exact_div(bt * t + lam_ * lam[i][k], d[k + 1]);
            }
            d[k] = bt;
            k = std::max(1, k - 1);
        } else {
            for (int l = k - 2; l >= 0; --l) red(k, l);
            ++k;
        }
    }
}

} // namespace

bool is_negative_definite(const std::vector<std::vector<Rat>>& A) {
    const int m = static_cast<int>(A.size());
    std::vector<std::vector<Rat>> P(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) P[i][j] = -A[i][j];
    for (int i = 0; i < m; ++i) {
        if (P[i][i] <= 0) return false;
        for (int a = i + 1; a < m; ++a)
            for (int b = i + 1; b < m; ++b) P[a][b] -= P[i][a] * P[i][b] / P[i][i];
    }
    return true;
}

std::vector<std::vector<Int>> fp_enumerate(const std::vector<std::vector<Rat>>& A,
                                           const std::vector<Rat>& b, const Rat& c,
                                           const Rat& lo, const Rat& hi) {
    std::vector<std::vector<Int>> out;
    fp_visit(A, b, c, lo, hi, [&](const std::vector<Int>& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

bool solve_integer_affine(const std::vector<std::vector<Int>>& M, const std::vector<Int>& t,
                          std::vector<Int>& particular, std::vector<std::vector<Int>>& kernel) {
    const int k = static_cast<int>(M.size());
    const int n = k ? static_cast<int>(M[0].size()) : 0;
    std::vector<std::vector<Int>> A = M;
    std::vector<std::vector<Int>> U(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) U[i][i] = 1;

    auto col_swap = [&](int a, int b) {
        for (int r = 0; r < k; ++r) std::swap(A[r][a], A[r][b]);
        for (int r = 0; r < n; ++r) std::swap(U[r][a], U[r][b]);
    };
    auto col_axpy = [&](int dst, int src, const Int& f) { // col_dst -= f * col_src
        for (int r = 0; r < k; ++r) A[r][dst] -= f * A[r][src];
        for (int r = 0; r < n; ++r) U[r][dst] -= f * U[r][src];
    };
    auto col_neg = [&](int a) {
        for (int r = 0; r < k; ++r) A[r][a] = -A[r][a];
        for (int r = 0; r < n; ++r) U[r][a] = -U[r][a];
    };

    int pos = 0;
    std::vector<int> pivot_row;
    for (int r = 0; r < k && pos < n; ++r) {
        while (true) {
            int best = -1;
            for (int j = pos; j < n; ++j)
                if (A[r][j] != 0 && (best < 0 || boost::multiprecision::abs(A[r][j]) <
                                                     boost::multiprecision::abs(A[r][best])))
                    best = j;
            if (best < 0) break; // row already zero on pos..n-1
            bool clean = true;
            for (int j = pos; j < n; ++j) {
                if (j == best || A[r][j] == 0) continue;
                Int f = A[r][j] / A[r][best];
                if (f != 0) col_axpy(j, best, f);
                if (A[r][j] != 0) clean = false;
            }
            if (clean) {
                if (best != pos) col_swap(best, pos);
                if (A[r][pos] < 0) col_neg(pos);
                pivot_row.push_back(r);
                ++pos;
                break;
            }
        }
    }

    kernel.clear();
    for (int j = pos; j < n; ++j) {
        std::vector<Int> col(n);
        for (int i = 0; i < n; ++i) col[i] = U[i][j];
        kernel.push_back(std::move(col));
    }

    std::vector<Int> y(n, 0);
    for (int pc = 0; pc < pos; ++pc) {
        int r = pivot_row[pc];
        Int acc = t[r];
        for (int j = 0; j < pc; ++j) acc -= A[r][j] * y[j];
        if (A[r][pc] == 0) return false;
        if (acc % A[r][pc] != 0) return false;
        y[pc] = acc / A[r][pc];
    }
    for (int r = 0; r < k; ++r) {
        Int acc = 0;
        for (int j = 0; j < pos; ++j) acc += A[r][j] * y[j];
        if (acc != t[r]) return false;
    }
    particular.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        Int v = 0;
        for (int j = 0; j < pos; ++j) v += U[i][j] * y[j];
        particular[i] = v;
    }
    return true;
}

namespace {

// Exact enumeration over an integer affine sublattice x0 + span(kernel) of the
// coordinate sublattice `cols`, with lo <= (x^2) <= hi.  Calls visit for each
// class (coordinates outside `cols` come from `base`); stops early when visit
// returns false.
bool enumerate_affine(const std::vector<int>& cols, const std::vector<Int>& x0,
                      const std::vector<std::vector<Int>>& kernel, const NSClass& base,
                      const Int& lo, const Int& hi, const NSVisitor& visit) {
    const int n = static_cast<int>(cols.size());
    const int m = static_cast<int>(kernel.size());
    NSClass X0 = base;
    for (int i = 0; i < n; ++i) X0.c[cols[i]] = X0.c[cols[i]] + x0[i];
    std::vector<NSClass> B;
    for (int a = 0; a < m; ++a) {
        NSClass col;
        for (int i = 0; i < n; ++i) col.c[cols[i]] = kernel[a][i];
        B.push_back(std::move(col));
    }
    {
        std::vector<std::vector<Rat>> A0(m, std::vector<Rat>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) A0[a][b] = rat(pair_ns(B[a], B[b]));
        if (m > 0 && !is_negative_definite(A0))
            throw std::domain_error("enumerate_affine: kernel is not negative definite");
    }
    lll_reduce(B);
    // Babai size reduction of the offset against the reduced basis
    for (int pass = 0; pass < 2; ++pass) {
        for (int a = m - 1; a >= 0; --a) {
            Int bb = -pair_ns(B[a], B[a]);
            if (bb == 0) continue;
            Int q = floor_div(2 * -pair_ns(X0, B[a]) + bb, 2 * bb);
            if (q != 0) X0 = X0 - B[a] * q;
        }
    }
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m));
    std::vector<Rat> bvec(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) A[a][b] = rat(pair_ns(B[a], B[b]));
        bvec[a] = rat(pair_ns(X0, B[a]));
    }
    Rat c = rat(norm_ns(X0));
    return fp_visit(A, bvec, c, rat(lo), rat(hi), [&](const std::vector<Int>& t) {
        NSClass x = X0;
        for (int a = 0; a < m; ++a)
            if (t[a] != 0) x = x + B[a] * t[a];
        return visit(x);
    });
}

std::vector<std::vector<Int>> constraint_rows(const std::vector<LinearConstraint>& cons,
                                              const std::vector<int>& cols) {
    std::vector<std::vector<Int>> M;
    for (const auto& con : cons) {
        std::vector<Int> row(cols.size());
        for (size_t j = 0; j < cols.size(); ++j) {
            Int c = 0;
            for (int i = 0; i < kRank; ++i) c += Int(gram().entry(cols[j], i)) * con.functional.c[i];
            row[j] = c;
        }
        M.push_back(std::move(row));
    }
    return M;
}

} // namespace

void enumerate_norm_range_visit(const NormRangeQuery& q, const NSVisitor& visit) {
    if (q.lo > q.hi) throw std::domain_error("enumerate_norm_range: lo > hi");
    if (q.hi > 0 || (q.hi == 0 && q.constraints.empty()))
        throw std::domain_error(
            "enumerate_norm_range: window reaches nonnegative norms without a constraint; "
            "the solution set is infinite");

    std::vector<int> all_cols;
    for (int i = 0; i < kRank; ++i) all_cols.push_back(i);

    if (!q.constraints.empty()) {
        auto M = constraint_rows(q.constraints, all_cols);
        std::vector<Int> t;
        for (const auto& con : q.constraints) t.push_back(con.value);
        std::vector<Int> x0;
        std::vector<std::vector<Int>> kernel;
        if (!solve_integer_affine(M, t, x0, kernel)) return;
        bool neg_def;
        {
            const int m = static_cast<int>(kernel.size());
            std::vector<NSClass> B(m);
            for (int a = 0; a < m; ++a)
                for (int i = 0; i < kRank; ++i) B[a].c[i] = kernel[a][i];
            std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m));
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) A[a][b] = rat(pair_ns(B[a], B[b]));
            neg_def = is_negative_definite(A);
        }
        if (neg_def) {
            enumerate_affine(all_cols, x0, kernel, ns_zero(), q.lo, q.hi, visit);
            return;
        }
        if (!q.hyperbolic_bound)
            throw std::domain_error(
                "enumerate_norm_range: constraint kernel is not negative definite; "
                "an explicit hyperbolic_bound is required");
    } else if (!q.hyperbolic_bound) {
        throw std::domain_error(
            "enumerate_norm_range: unconstrained negative-norm enumeration is infinite; "
            "an explicit hyperbolic_bound is required");
    }

    // Hyperbolic split: scan the U coordinates in a box, enumerate the E8(-1)
    // block exactly.  Complete within |a|,|b| <= hyperbolic_bound.
    const long long B = *q.hyperbolic_bound;
    if (B < 0) throw std::domain_error("enumerate_norm_range: negative hyperbolic_bound");
    std::vector<int> e8_cols;
    for (int i = 2; i < kRank; ++i) e8_cols.push_back(i);
    for (long long a = -B; a <= B; ++a) {
        for (long long b = -B; b <= B; ++b) {
            NSClass base;
            base.c[0] = a;
            base.c[1] = b;
            std::vector<std::vector<Int>> M;
            std::vector<Int> t;
            if (!q.constraints.empty()) {
                M = constraint_rows(q.constraints, e8_cols);
                for (const auto& con : q.constraints) {
                    Int used = Int(a) * pair_ns(e1(), con.functional) +
                               Int(b) * pair_ns(e2(), con.functional);
                    t.push_back(con.value - used);
                }
            }
            std::vector<Int> x0(e8_cols.size(), 0);
            std::vector<std::vector<Int>> kernel;
            if (M.empty()) {
                for (size_t i = 0; i < e8_cols.size(); ++i) {
                    std::vector<Int> col(e8_cols.size(), 0);
                    col[i] = 1;
                    kernel.push_back(std::move(col));
                }
            } else if (!solve_integer_affine(M, t, x0, kernel)) {
                continue;
            }
            if (!enumerate_affine(e8_cols, x0, kernel, base, q.lo, q.hi, visit)) return;
        }
    }
}

std::vector<NSClass> enumerate_norm_range(const NormRangeQuery& q) {
    std::vector<NSClass> out;
    enumerate_norm_range_visit(q, [&](const NSClass& x) {
        out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace enr
