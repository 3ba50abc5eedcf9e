#pragma once

// Exhaustive reference implementations used to check the fast paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

/// Subsets of 1-d points cut out by closed intervals, by filtering all 2^n subsets.
inline std::set<Vec> interval_dichotomies(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::set<Vec> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double lo = 2.0, hi = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                lo = std::min(lo, x[i]);
                hi = std::max(hi, x[i]);
            }
        }
        bool ok = true;
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool in = mask >> i & 1;
            v[i] = in ? 1.0 : 0.0;
            if (!in && lo <= x[i] && x[i] <= hi) ok = false;
        }
        if (ok) out.insert(v);
    }
    return out;
}

/// Subsets of d-dimensional points cut out by axis-parallel boxes.
inline std::set<Vec> box_dichotomies(const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size(), d = pts.front().size();
    std::set<Vec> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<double> lo(d, 2.0), hi(d, -1.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t k = 0; k < d; ++k) {
                lo[k] = std::min(lo[k], pts[i][k]);
                hi[k] = std::max(hi[k], pts[i][k]);
            }
        }
        bool ok = true;
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool in = mask >> i & 1;
            v[i] = in ? 1.0 : 0.0;
            bool inside = true;
            for (std::size_t k = 0; k < d; ++k) inside = inside && lo[k] <= pts[i][k] && pts[i][k] <= hi[k];
            if (!in && inside) ok = false;
        }
        if (ok) out.insert(v);
    }
    return out;
}

/// max over vectors with mean <= r of |n^-1 sum s_i v_i|; 0 for an empty ball.
inline double local_norm(const std::vector<Vec>& vecs, std::span<const std::int8_t> s, double r) {
    double best = 0.0;
    for (const auto& v : vecs) {
        double sum = 0.0, dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum += v[i];
            dot += s[i] * v[i];
        }
        const double n = static_cast<double>(v.size());
        if (sum / n <= r) best = std::max(best, std::abs(dot) / n);
    }
    return best;
}

/// sup over C = [a, b] (or empty), D = C xor T, |D| <= r of
/// sum_{u in D} w - kappa |D|. Enumerates the vertices of the (a, b)
/// arrangement: breakpoints {0, 1, t1, t2, u_i} for each end, plus the
/// solutions of |D| = r along each end, with every subset of the points on
/// the boundary of C toggled (closure of the parameter space).
struct IntervalProblem {
    std::vector<double> u;
    std::vector<double> w;
    double kappa = 0.0;
    bool has_target = false;
    double t1 = 0.0, t2 = 0.0;

    double measure(double a, double b) const {
        const double lenc = b - a;
        if (!has_target) return lenc;
        const double lo = std::max(a, t1), hi = std::min(b, t2);
        return lenc + (t2 - t1) - 2.0 * std::max(0.0, hi - lo);
    }

    bool in_target(double x) const { return has_target && t1 <= x && x <= t2; }

    // Best value over the boundary toggles of C = [a, b].
    double value(double a, double b, bool c_empty) const {
        const double m = c_empty ? (has_target ? t2 - t1 : 0.0) : measure(a, b);
        double base = -kappa * m, adjust = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const bool in_c = !c_empty && a <= u[i] && u[i] <= b;
            const bool on_edge = !c_empty && (u[i] == a || u[i] == b);
            const bool in_d_closed = in_c != in_target(u[i]);
            const bool in_d_open = in_target(u[i]);  // point dropped from C
            if (on_edge) {
                // Gather the best choice per point; points at the same spot move together
                // only if they coincide, which the tests avoid.
                adjust += std::max(in_d_closed ? w[i] : 0.0, in_d_open ? w[i] : 0.0);
            } else if (in_d_closed) {
                base += w[i];
            }
        }
        return base + adjust;
    }

    double sup(double r) const {
        std::vector<double> br{0.0, 1.0};
        if (has_target) {
            br.push_back(t1);
            br.push_back(t2);
        }
        for (double x : u) br.push_back(x);
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());

        const double tol = 1e-12;
        double best = -std::numeric_limits<double>::infinity();
        const double te = has_target ? t2 - t1 : 0.0;
        if (te <= r + tol) best = value(0, 0, true);

        auto consider = [&](double a, double b) {
            if (a > b || a < 0.0 || b > 1.0) return;
            if (measure(a, b) <= r + tol) best = std::max(best, value(a, b, false));
        };
        // Solve measure(a, b) = r on each piece between breakpoints, end `which` free.
        auto solve = [&](double fixed, bool free_is_b) {
            std::vector<double> pts = br;
            pts.push_back(fixed);
            std::sort(pts.begin(), pts.end());
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
                const double p = pts[k], q = pts[k + 1];
                const double mp = free_is_b ? measure(fixed, p) : measure(p, fixed);
                const double mq = free_is_b ? measure(fixed, q) : measure(q, fixed);
                if ((mp - r) * (mq - r) <= 0.0 && mp != mq) {
                    const double x = p + (r - mp) * (q - p) / (mq - mp);
                    if (free_is_b) consider(fixed, x); else consider(x, fixed);
                }
            }
        };
        for (double a : br) {
            for (double b : br) consider(a, b);
            solve(a, true);
            solve(a, false);
        }
        return best;
    }
};

}  // namespace oracle
