#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "toporeg/assignment.hpp"
#include "toporeg/persistence.hpp"

namespace toporeg {

/**
 * A diagram matching. Sources index the first (or ground-truth) diagram's
 * points, targets the second's; kDiagonal marks the orthogonal diagonal
 * projection. Wasserstein matchings also carry (kDiagonal, j) pairs for
 * second-diagram points sent to the diagonal. `cost` is the squared-
 * difference sum for restoration matchings, the q-power sum (pre-root) for
 * finite-q Wasserstein, and the max pair cost for q = infinity.
 */
struct Matching {
    static constexpr int kDiagonal = -1;
    std::vector<std::pair<int, int>> pairs;
    double cost = 0.0;
};

/// k-th total persistence: sum of (death - birth)^k over finite,
/// non-flagged points (essential points excluded per policy).
inline double total_persistence(const PersistenceDiagram& dgm, int k) {
    if (k < 1) throw invalid_input_error("total_persistence: k must be >= 1");
    double sum = 0.0;
    for (const auto& p : dgm.points)
        if (!p.essential() && !p.zero_persistence)
            sum += std::pow(p.death - p.birth, k);
    return sum;
}

namespace detail {

struct PlanarPoint {
    double b, d;
    int index; // position in the owning diagram's points vector
};

/// Finite non-flagged points; enforces the single-dimension precondition.
inline std::vector<PlanarPoint> active_points(const PersistenceDiagram& dgm, int* dim_seen) {
    std::vector<PlanarPoint> out;
    for (int i = 0; i < static_cast<int>(dgm.points.size()); ++i) {
        const auto& p = dgm.points[i];
        if (p.essential() || p.zero_persistence) continue;
        if (*dim_seen < 0) *dim_seen = p.dim;
        if (p.dim != *dim_seen)
            throw invalid_input_error("diagram distance: mixed homology dimensions");
        out.push_back({p.birth, p.death, i});
    }
    return out;
}

inline double qpow(double x, double q) {
    if (q == 1.0) return x;
    if (q == 2.0) return x * x;
    return std::pow(x, q);
}

inline double pair_cost_q(const PlanarPoint& a, const PlanarPoint& b, double q) {
    const double db = std::abs(a.b - b.b), dd = std::abs(a.d - b.d);
    if (std::isinf(q)) return std::max(db, dd);
    return qpow(db, q) + qpow(dd, q);
}

/// Cost of sending a point to its own diagonal projection ((b+d)/2, (b+d)/2).
inline double diag_cost_q(const PlanarPoint& a, double q) {
    const double h = (a.d - a.b) / 2.0;
    if (std::isinf(q)) return h;
    return 2.0 * qpow(h, q);
}

inline double pair_cost_sq(const PlanarPoint& a, const PlanarPoint& b) {
    return (a.b - b.b) * (a.b - b.b) + (a.d - b.d) * (a.d - b.d);
}

inline double diag_cost_sq(const PlanarPoint& a) {
    const double h = (a.d - a.b) / 2.0;
    return 2.0 * h * h;
}

/// Smallest threshold c at which every point either pairs with a point of
/// the other diagram at L-inf cost <= c or reaches its diagonal at cost
/// <= c, injectively. Kuhn's algorithm run from both required sides.
inline double bottleneck_threshold(const std::vector<PlanarPoint>& a,
                                   const std::vector<PlanarPoint>& b,
                                   std::vector<int>& match_col /* row -> col */) {
    const int n1 = static_cast<int>(a.size());
    const int n2 = static_cast<int>(b.size());
    match_col.assign(n1, -1);
    if (n1 == 0 && n2 == 0) return 0.0;

    std::set<double> cand{0.0};
    for (const auto& p : a) cand.insert(diag_cost_q(p, kInfiniteDeath));
    for (const auto& p : b) cand.insert(diag_cost_q(p, kInfiniteDeath));
    for (const auto& p : a)
        for (const auto& q : b) cand.insert(pair_cost_q(p, q, kInfiniteDeath));
    std::vector<double> candidates(cand.begin(), cand.end());

    std::vector<int> match_row(n2);
    auto feasible = [&](double c, std::vector<int>& mc, std::vector<int>& mr) {
        mc.assign(n1, -1);
        mr.assign(n2, -1);
        std::vector<char> vis_col(n2), vis_row(n1);
        std::function<bool(int)> augment_row = [&](int i) {
            for (int j = 0; j < n2; ++j) {
                if (vis_col[j] || pair_cost_q(a[i], b[j], kInfiniteDeath) > c) continue;
                vis_col[j] = 1;
                if (mr[j] < 0 || augment_row(mr[j])) {
                    mr[j] = i;
                    mc[i] = j;
                    return true;
                }
            }
            return false;
        };
        std::function<bool(int)> augment_col = [&](int j) {
            for (int i = 0; i < n1; ++i) {
                if (vis_row[i] || pair_cost_q(a[i], b[j], kInfiniteDeath) > c) continue;
                vis_row[i] = 1;
                if (mc[i] < 0 || augment_col(mc[i])) {
                    mc[i] = j;
                    mr[j] = i;
                    return true;
                }
            }
            return false;
        };
        for (int i = 0; i < n1; ++i)
            if (diag_cost_q(a[i], kInfiniteDeath) > c) {
                std::fill(vis_col.begin(), vis_col.end(), 0);
                if (!augment_row(i)) return false;
            }
        for (int j = 0; j < n2; ++j)
            if (diag_cost_q(b[j], kInfiniteDeath) > c && mr[j] < 0) {
                std::fill(vis_row.begin(), vis_row.end(), 0);
                if (!augment_col(j)) return false;
            }
        return true;
    };

    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        std::vector<int> mc, mr;
        if (feasible(candidates[mid], mc, mr))
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<int> mr;
    feasible(candidates[lo], match_col, mr);
    return candidates[lo];
}

} // namespace detail

struct WassersteinResult {
    double distance = 0.0;
    Matching matching;
};

/**
 * q-Wasserstein distance between two diagrams of one homology dimension
 * (q = infinity gives the bottleneck distance). Diagonal augmentation
 * reduces the bijection over diagrams-with-diagonal to a finite assignment
 * solved exactly in cubic time.
 */
inline WassersteinResult wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                     double q) {
    if (!(q >= 1.0))
        throw invalid_input_error("wasserstein: q must be >= 1 or infinity");
    int dim = -1;
    const auto a = detail::active_points(d1, &dim);
    const auto b = detail::active_points(d2, &dim);
    const int n1 = static_cast<int>(a.size());
    const int n2 = static_cast<int>(b.size());

    WassersteinResult res;
    if (n1 == 0 && n2 == 0) return res;

    if (std::isinf(q)) {
        std::vector<int> match_col;
        res.distance = detail::bottleneck_threshold(a, b, match_col);
        std::vector<char> col_used(n2, 0);
        double realized = 0.0;
        for (int i = 0; i < n1; ++i) {
            if (match_col[i] >= 0) {
                col_used[match_col[i]] = 1;
                res.matching.pairs.emplace_back(a[i].index, b[match_col[i]].index);
                realized = std::max(realized, detail::pair_cost_q(a[i], b[match_col[i]], q));
            } else {
                res.matching.pairs.emplace_back(a[i].index, Matching::kDiagonal);
                realized = std::max(realized, detail::diag_cost_q(a[i], q));
            }
        }
        for (int j = 0; j < n2; ++j)
            if (!col_used[j]) {
                res.matching.pairs.emplace_back(Matching::kDiagonal, b[j].index);
                realized = std::max(realized, detail::diag_cost_q(b[j], q));
            }
        res.matching.cost = realized;
        res.distance = realized;
        return res;
    }

    // square assignment on points + the other side's diagonal projections;
    // ghost-to-ghost pairs are free
    const int n = n1 + n2;
    std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double c = 0.0;
            if (i < n1 && j < n2)
                c = detail::pair_cost_q(a[i], b[j], q);
            else if (i < n1)
                c = detail::diag_cost_q(a[i], q);
            else if (j < n2)
                c = detail::diag_cost_q(b[j], q);
            cost[static_cast<std::size_t>(i) * n + j] = c;
        }
    const AssignmentResult ass = solve_assignment(cost, n, n);

    double total = 0.0;
    for (int i = 0; i < n1; ++i) {
        const int j = ass.col_of_row[i];
        if (j < n2) {
            res.matching.pairs.emplace_back(a[i].index, b[j].index);
            total += detail::pair_cost_q(a[i], b[j], q);
        } else {
            res.matching.pairs.emplace_back(a[i].index, Matching::kDiagonal);
            total += detail::diag_cost_q(a[i], q);
        }
    }
    for (int i = n1; i < n; ++i) {
        const int j = ass.col_of_row[i];
        if (j < n2) {
            res.matching.pairs.emplace_back(Matching::kDiagonal, b[j].index);
            total += detail::diag_cost_q(b[j], q);
        }
    }
    res.matching.cost = total;
    res.distance = std::pow(total, 1.0 / q);
    return res;
}

namespace detail {

/// Sources of a restoration instance: the ground-truth diagram's points,
/// all finite and of one dimension.
inline std::vector<PlanarPoint> restoration_sources(const PersistenceDiagram& truth, int* dim) {
    std::vector<PlanarPoint> src;
    for (int i = 0; i < static_cast<int>(truth.points.size()); ++i) {
        const auto& p = truth.points[i];
        if (p.essential())
            throw invalid_input_error("restoration_match: ground truth has an essential point");
        if (*dim < 0) *dim = p.dim;
        if (p.dim != *dim)
            throw invalid_input_error("restoration_match: mixed dimensions in ground truth");
        src.push_back({p.birth, p.death, i});
    }
    return src;
}

/// Exact optimum for sources `from..` over the unused real targets, each
/// source keeping its own diagonal as fallback.
inline double restoration_rest(const std::vector<PlanarPoint>& src,
                               const std::vector<PlanarPoint>& tgt,
                               const std::vector<char>& used, std::size_t from) {
    const int rows = static_cast<int>(src.size() - from);
    if (rows == 0) return 0.0;
    std::vector<int> free_cols;
    for (int j = 0; j < static_cast<int>(tgt.size()); ++j)
        if (!used[j]) free_cols.push_back(j);
    const int cols = static_cast<int>(free_cols.size()) + rows;
    std::vector<double> cost(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        const auto& s = src[from + r];
        for (int j = 0; j < static_cast<int>(free_cols.size()); ++j)
            cost[static_cast<std::size_t>(r) * cols + j] = pair_cost_sq(s, tgt[free_cols[j]]);
        for (int j = static_cast<int>(free_cols.size()); j < cols; ++j)
            cost[static_cast<std::size_t>(r) * cols + j] = diag_cost_sq(s);
    }
    return solve_assignment(cost, rows, cols).total;
}

} // namespace detail

/**
 * The restoration-only injection: maps every ground-truth point to a
 * distinct finite point of the prediction diagram or to its own diagonal
 * projection, minimizing the summed squared birth/death differences. Ties
 * are resolved toward the lowest source index, then the lowest target
 * index (diagonal last), by re-solving the remainder exactly.
 */
inline Matching restoration_match(const PersistenceDiagram& truth,
                                  const PersistenceDiagram& pred) {
    int dim = -1;
    const auto src = detail::restoration_sources(truth, &dim);
    std::vector<detail::PlanarPoint> tgt;
    if (dim >= 0) {
        int pred_dim = dim;
        for (int i : pred.active_indices(dim))
            tgt.push_back({pred.points[i].birth, pred.points[i].death, i});
        (void)pred_dim;
    }

    Matching out;
    const std::size_t n_src = src.size();
    const std::size_t n_tgt = tgt.size();
    std::vector<char> used(n_tgt, 0);
    for (std::size_t i = 0; i < n_src; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_t = Matching::kDiagonal;
        for (std::size_t t = 0; t <= n_tgt; ++t) {
            double own;
            if (t < n_tgt) {
                if (used[t]) continue;
                own = detail::pair_cost_sq(src[i], tgt[t]);
                used[t] = 1;
            } else {
                own = detail::diag_cost_sq(src[i]);
            }
            const double value = own + detail::restoration_rest(src, tgt, used, i + 1);
            if (t < n_tgt) used[t] = 0;
            if (value < best) {
                best = value;
                best_t = (t < n_tgt) ? static_cast<int>(t) : Matching::kDiagonal;
            }
        }
        if (best_t >= 0) {
            used[best_t] = 1;
            out.pairs.emplace_back(src[i].index, tgt[best_t].index);
            out.cost += detail::pair_cost_sq(src[i], tgt[best_t]);
        } else {
            out.pairs.emplace_back(src[i].index, Matching::kDiagonal);
            out.cost += detail::diag_cost_sq(src[i]);
        }
    }
    return out;
}

/// Exhaustive oracle for restoration_match; refuses instances beyond
/// |truth| <= 5, |pred finite| <= 7.
inline Matching brute_force_match(const PersistenceDiagram& truth,
                                  const PersistenceDiagram& pred) {
    int dim = -1;
    const auto src = detail::restoration_sources(truth, &dim);
    std::vector<detail::PlanarPoint> tgt;
    if (dim >= 0)
        for (int i : pred.active_indices(dim))
            tgt.push_back({pred.points[i].birth, pred.points[i].death, i});
    if (src.size() > 5 || tgt.size() > 7)
        throw size_error("brute_force_match: instance exceeds the 5x7 size cap");

    Matching best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<int> choice(src.size(), Matching::kDiagonal);
    std::vector<char> used(tgt.size(), 0);

    std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double acc) {
        if (i == src.size()) {
            if (acc < best.cost) {
                best.cost = acc;
                best.pairs.clear();
                for (std::size_t s = 0; s < src.size(); ++s)
                    best.pairs.emplace_back(src[s].index,
                                            choice[s] >= 0 ? tgt[choice[s]].index
                                                           : Matching::kDiagonal);
            }
            return;
        }
        for (std::size_t t = 0; t < tgt.size(); ++t) {
            if (used[t]) continue;
            used[t] = 1;
            choice[i] = static_cast<int>(t);
            dfs(i + 1, acc + detail::pair_cost_sq(src[i], tgt[t]));
            used[t] = 0;
        }
        choice[i] = Matching::kDiagonal;
        dfs(i + 1, acc + detail::diag_cost_sq(src[i]));
    };
    dfs(0, 0.0);
    if (src.empty()) best.cost = 0.0;
    return best;
}

/// Exhaustive q-Wasserstein oracle; refuses instances beyond 6 points per
/// side. Enumerates every partial injection plus diagonal fallback.
inline double brute_force_wasserstein(const PersistenceDiagram& d1,
                                      const PersistenceDiagram& d2, double q) {
    if (!(q >= 1.0))
        throw invalid_input_error("brute_force_wasserstein: q must be >= 1 or infinity");
    int dim = -1;
    const auto a = detail::active_points(d1, &dim);
    const auto b = detail::active_points(d2, &dim);
    if (a.size() > 6 || b.size() > 6)
        throw size_error("brute_force_wasserstein: instance exceeds the 6-point cap");

    const bool is_inf = std::isinf(q);
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> used(b.size(), 0);

    std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == a.size()) {
            double total = acc;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!used[j]) {
                    const double c = detail::diag_cost_q(b[j], q);
                    total = is_inf ? std::max(total, c) : total + c;
                    if (total >= best) return;
                }
            best = std::min(best, total);
            return;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            const double c = detail::pair_cost_q(a[i], b[j], q);
            dfs(i + 1, is_inf ? std::max(acc, c) : acc + c);
            used[j] = 0;
        }
        const double c = detail::diag_cost_q(a[i], q);
        dfs(i + 1, is_inf ? std::max(acc, c) : acc + c);
    };
    dfs(0, 0.0);
    if (a.empty() && b.empty()) return 0.0;
    return is_inf ? best : std::pow(best, 1.0 / q);
}

} // namespace toporeg
