#include "enr/boxscan.hpp"

#include "enr/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace enr {

namespace {

constexpr std::int64_t kI32Min = std::numeric_limits<std::int32_t>::min();
constexpr std::int64_t kI32Max = std::numeric_limits<std::int32_t>::max();

std::int32_t clamp_i32(const Int& a) {
    if (a < kI32Min) return static_cast<std::int32_t>(kI32Min);
    if (a > kI32Max) return static_cast<std::int32_t>(kI32Max);
    return static_cast<std::int32_t>(a.convert_to<std::int64_t>());
}

struct Scanner {
    std::vector<int> active;
    long long B;
    std::int32_t lo32, hi32;
    // constraint coefficient rows in active-coordinate order, plus targets
    std::vector<std::vector<std::int64_t>> ccoef;
    std::vector<std::int64_t> ctarget;
    // suffix sums of |coef|*B for pruning
    std::vector<std::vector<std::int64_t>> crem;

    kernels::QSweepFn sweep = kernels::qsweep();

    bool counting = false;
    std::uint64_t count = 0;
    std::vector<NSClass>* out = nullptr;

    // per-branch state
    std::vector<std::int64_t> x;     // chosen values
    std::vector<std::int64_t> dot;   // dot[j] = sum_{chosen i} G[a_j][a_i] * x_i
    std::vector<std::int64_t> cpart; // constraint partial sums
    std::int64_t qpart = 0;

    explicit Scanner(const BoxSpec& spec) {
        B = spec.height;
        if (B < 0) throw std::domain_error("box_scan: negative height");
        if (B > kernels::kMaxBoxHeight)
            throw std::domain_error("box_scan: height exceeds kernel bound");
        active = spec.active;
        if (active.empty())
            for (int i = 0; i < kRank; ++i) active.push_back(i);
        for (int i : active)
            if (i < 0 || i >= kRank) throw std::domain_error("box_scan: bad coordinate index");
        lo32 = clamp_i32(spec.lo);
        hi32 = clamp_i32(spec.hi);
        const int m = static_cast<int>(active.size());
        for (const auto& con : spec.constraints) {
            std::vector<std::int64_t> row(m);
            for (int k = 0; k < m; ++k) {
                // coefficient of x_{active[k]} in (x, f): (e_{active[k]}, f)
                Int c = 0;
                for (int j = 0; j < kRank; ++j)
                    c += Int(gram().entry(active[k], j)) * con.functional.c[j];
                row[k] = to_ll(c);
            }
            // Constrained coordinates outside `active` are zero, so the target
            // is just the stated value.
            ccoef.push_back(std::move(row));
            ctarget.push_back(to_ll(con.value));
        }
        crem.assign(ccoef.size(), std::vector<std::int64_t>(m + 1, 0));
        for (size_t ci = 0; ci < ccoef.size(); ++ci)
            for (int k = m - 1; k >= 0; --k)
                crem[ci][k] = crem[ci][k + 1] + std::abs(ccoef[ci][k]) * B;
        x.assign(m, 0);
        dot.assign(m, 0);
        cpart.assign(ccoef.size(), 0);
    }

    void emit(std::int64_t last_val) {
        if (counting) {
            ++count;
            return;
        }
        NSClass v;
        const int m = static_cast<int>(active.size());
        for (int k = 0; k + 1 < m; ++k) v.c[active[k]] = x[k];
        v.c[active[m - 1]] = last_val;
        out->push_back(std::move(v));
    }

    void innermost() {
        const int m = static_cast<int>(active.size());
        const int ai = active[m - 1];
        const std::int64_t h = gram().entry(ai, ai);
        const std::int64_t g = dot[m - 1];
        // Constraints: a nonzero innermost coefficient pins t; zero coefficients
        // must already be satisfied.
        bool pinned = false;
        std::int64_t tpin = 0;
        for (size_t ci = 0; ci < ccoef.size(); ++ci) {
            std::int64_t c = ccoef[ci][m - 1];
            std::int64_t need = ctarget[ci] - cpart[ci];
            if (c == 0) {
                if (need != 0) return;
            } else {
                if (need % c != 0) return;
                std::int64_t t = need / c;
                if (pinned && t != tpin) return;
                pinned = true;
                tpin = t;
            }
        }
        if (pinned) {
            if (tpin < -B || tpin > B) return;
            std::int64_t q = qpart + 2 * g * tpin + h * tpin * tpin;
            if (q >= lo32 && q <= hi32) emit(tpin);
            return;
        }
        std::int32_t buf[2 * kernels::kMaxBoxHeight + 1];
        int n = sweep(static_cast<std::int32_t>(qpart), static_cast<std::int32_t>(g),
                      static_cast<std::int32_t>(h), static_cast<std::int32_t>(-B),
                      static_cast<std::int32_t>(B), lo32, hi32, buf);
        if (counting) {
            count += static_cast<std::uint64_t>(n);
        } else {
            for (int i = 0; i < n; ++i) emit(buf[i]);
        }
    }

    void descend(int depth, std::int64_t first_lo, std::int64_t first_hi) {
        const int m = static_cast<int>(active.size());
        if (depth == m - 1) {
            innermost();
            return;
        }
        const int ai = active[depth];
        const std::int64_t gii = gram().entry(ai, ai);
        const std::int64_t from = depth == 0 ? first_lo : -B;
        const std::int64_t to = depth == 0 ? first_hi : B;
        for (std::int64_t c = from; c <= to; ++c) {
            // prune on constraints
            bool ok = true;
            for (size_t ci = 0; ci < ccoef.size() && ok; ++ci) {
                std::int64_t p = cpart[ci] + ccoef[ci][depth] * c;
                if (std::abs(ctarget[ci] - p) > crem[ci][depth + 1]) ok = false;
            }
            if (!ok) continue;
            x[depth] = c;
            const std::int64_t dq = c * c * gii + 2 * c * dot[depth];
            qpart += dq;
            for (size_t ci = 0; ci < ccoef.size(); ++ci) cpart[ci] += ccoef[ci][depth] * c;
            std::vector<std::int64_t> saved;
            saved.reserve(m - depth - 1);
            for (int j = depth + 1; j < m; ++j) {
                saved.push_back(dot[j]);
                dot[j] += c * gram().entry(active[j], ai);
            }
            descend(depth + 1, 0, 0);
            for (int j = depth + 1; j < m; ++j) dot[j] = saved[j - depth - 1];
            for (size_t ci = 0; ci < ccoef.size(); ++ci) cpart[ci] -= ccoef[ci][depth] * c;
            qpart -= dq;
        }
    }
};

void run_scan(const BoxSpec& spec, int threads, bool counting,
              std::vector<NSClass>* out, std::uint64_t* count) {
    Scanner probe(spec);
    const int m = static_cast<int>(probe.active.size());
    if (m == 0) throw std::domain_error("box_scan: no active coordinates");
    if (m == 1) {
        Scanner s(spec);
        s.counting = counting;
        s.out = out;
        s.innermost();
        if (counting) *count = s.count;
        return;
    }
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc ? static_cast<int>(hc) : 1;
    }
    const std::int64_t span = 2 * spec.height + 1;
    threads = static_cast<int>(std::min<std::int64_t>(threads, span));
    if (threads <= 1) {
        Scanner s(spec);
        s.counting = counting;
        s.out = out;
        s.descend(0, -spec.height, spec.height);
        if (counting) *count = s.count;
        return;
    }
    std::vector<std::vector<NSClass>> parts(threads);
    std::vector<std::uint64_t> counts(threads, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::int64_t lo = -spec.height + span * t / threads;
            std::int64_t hi = -spec.height + span * (t + 1) / threads - 1;
            if (lo > hi) return;
            Scanner s(spec);
            s.counting = counting;
            s.out = &parts[t];
            s.descend(0, lo, hi);
            counts[t] = s.count;
        });
    }
    for (auto& th : pool) th.join();
    if (counting) {
        std::uint64_t total = 0;
        for (auto c : counts) total += c;
        *count = total;
    } else {
        for (auto& p : parts)
            for (auto& v : p) out->push_back(std::move(v));
    }
}

} // namespace

std::vector<NSClass> box_scan(const BoxSpec& spec, int threads) {
    std::vector<NSClass> out;
    run_scan(spec, threads, false, &out, nullptr);
    return out;
}

std::uint64_t box_count(const BoxSpec& spec, int threads) {
    std::uint64_t n = 0;
    run_scan(spec, threads, true, nullptr, &n);
    return n;
}

} // namespace enr
