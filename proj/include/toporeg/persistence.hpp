#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "toporeg/filtration.hpp"

namespace toporeg {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

/**
 * One diagram point. Essential classes have death = +inf and no death
 * simplex. Points with birth == death are kept but flagged; every loss and
 * metric skips them by default since they lie on the diagonal.
 */
struct PersistencePoint {
    int dim = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;
    int birth_simplex = -1;
    int death_simplex = -1; // -1 when essential
    bool zero_persistence = false;

    bool essential() const { return death_simplex < 0; }
    double persistence() const { return death - birth; }

    friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

struct PersistenceDiagram {
    std::vector<PersistencePoint> points;

    /// Indices of finite, non-flagged points of one homology dimension --
    /// the points all losses and metrics operate on.
    std::vector<int> active_indices(int dim) const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(points.size()); ++i)
            if (points[i].dim == dim && !points[i].essential() && !points[i].zero_persistence)
                out.push_back(i);
        return out;
    }

    int num_essential(int dim) const {
        int c = 0;
        for (const auto& p : points)
            if (p.dim == dim && p.essential()) ++c;
        return c;
    }
};

namespace detail {

inline void canonicalize(PersistenceDiagram& dgm) {
    std::sort(dgm.points.begin(), dgm.points.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dim, a.birth, a.death, a.birth_simplex) <
               std::tie(b.dim, b.birth, b.death, b.birth_simplex);
    });
}

/// Filtration order: ids sorted by (value, dimension, id). Faces always
/// precede cofaces because a face has value <= and strictly smaller dim.
inline std::vector<int> sorted_order(const Filtration& f) {
    std::vector<int> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::forward_as_tuple(f.values[a], f.complex.dim_of(a), a) <
               std::forward_as_tuple(f.values[b], f.complex.dim_of(b), b);
    });
    return order;
}

} // namespace detail

/**
 * Persistence by column reduction of the Z/2 boundary matrix, simplices
 * ordered by (value, dimension, id). Each reduced column pairs a positive
 * simplex (birth) with the negative simplex that kills it; unpaired
 * positive simplices of dimension <= max_hom_dim become essential points.
 */
inline PersistenceDiagram compute_persistence(const Filtration& f, int max_hom_dim) {
    if (!is_monotone(f))
        throw invalid_input_error("compute_persistence: filtration is not monotone");
    if (max_hom_dim < 0)
        throw invalid_input_error("compute_persistence: max_hom_dim must be >= 0");

    const int m = f.size();
    const std::vector<int> order = detail::sorted_order(f);
    std::vector<int> pos_of(m);
    for (int p = 0; p < m; ++p) pos_of[order[p]] = p;

    // columns in position space, kept sorted ascending
    std::vector<std::vector<int>> cols(m);
    for (int p = 0; p < m; ++p) {
        const int id = order[p];
        for (int fid : f.complex.facets(id)) cols[p].push_back(pos_of[fid]);
        std::sort(cols[p].begin(), cols[p].end());
    }

    std::vector<int> pivot_owner(m, -1); // low position -> column that owns it
    std::vector<char> paired(m, 0);
    PersistenceDiagram dgm;

    std::vector<int> tmp;
    for (int j = 0; j < m; ++j) {
        auto& col = cols[j];
        while (!col.empty()) {
            const int low = col.back();
            const int owner = pivot_owner[low];
            if (owner < 0) break;
            // col ^= cols[owner]  (symmetric difference of sorted vectors)
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), cols[owner].begin(),
                                          cols[owner].end(), std::back_inserter(tmp));
            col.swap(tmp);
        }
        if (col.empty()) continue; // positive simplex: creates a class
        const int low = col.back();
        pivot_owner[low] = j;
        paired[low] = 1;
        paired[j] = 1;
        const int birth_id = order[low];
        const int death_id = order[j];
        const int dim = f.complex.dim_of(birth_id);
        if (dim > max_hom_dim) continue;
        PersistencePoint pt;
        pt.dim = dim;
        pt.birth = f.values[birth_id];
        pt.death = f.values[death_id];
        pt.birth_simplex = birth_id;
        pt.death_simplex = death_id;
        pt.zero_persistence = (pt.birth == pt.death);
        dgm.points.push_back(pt);
    }
    for (int p = 0; p < m; ++p) {
        if (paired[p]) continue;
        const int id = order[p];
        const int dim = f.complex.dim_of(id);
        if (dim > max_hom_dim) continue;
        PersistencePoint pt;
        pt.dim = dim;
        pt.birth = f.values[id];
        pt.birth_simplex = id;
        dgm.points.push_back(pt);
    }
    detail::canonicalize(dgm);
    return dgm;
}

/**
 * Dimension-0 fast path: Kruskal-style union-find over edges in filtration
 * order. On a merge the component with the older birth survives (elder
 * rule, ties by smaller birth vertex); the younger one emits a finite
 * point. Agrees exactly with compute_persistence(f, 0).
 */
inline PersistenceDiagram compute_persistence_dim0(const Filtration& f) {
    if (!is_monotone(f))
        throw invalid_input_error("compute_persistence_dim0: filtration is not monotone");

    const int n = f.complex.num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    // birth vertex of the component containing each root
    std::vector<int> birth_vertex(n);
    std::iota(birth_vertex.begin(), birth_vertex.end(), 0);
    std::vector<char> alive(n, 0);

    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    PersistenceDiagram dgm;
    for (int id : detail::sorted_order(f)) {
        const int dim = f.complex.dim_of(id);
        if (dim == 0) {
            alive[id] = 1; // vertex simplex id == vertex index
            continue;
        }
        if (dim != 1) continue;
        const Simplex& e = f.complex.simplex(id);
        int ra = find(e[0]);
        int rb = find(e[1]);
        if (ra == rb) continue;
        // elder: smaller (birth value, birth vertex)
        const int ba = birth_vertex[ra];
        const int bb = birth_vertex[rb];
        const bool a_elder = std::tie(f.values[ba], ba) < std::tie(f.values[bb], bb);
        const int elder = a_elder ? ra : rb;
        const int young = a_elder ? rb : ra;
        PersistencePoint pt;
        pt.dim = 0;
        pt.birth = f.values[birth_vertex[young]];
        pt.death = f.values[id];
        pt.birth_simplex = birth_vertex[young];
        pt.death_simplex = id;
        pt.zero_persistence = (pt.birth == pt.death);
        dgm.points.push_back(pt);
        parent[young] = elder;
    }
    for (int v = 0; v < n; ++v)
        if (alive[v] && find(v) == v) {
            PersistencePoint pt;
            pt.dim = 0;
            pt.birth = f.values[birth_vertex[v]];
            pt.birth_simplex = birth_vertex[v];
            dgm.points.push_back(pt);
        }
    detail::canonicalize(dgm);
    return dgm;
}

/// Every reported coordinate must equal the current filtration value of the
/// reported simplex. Re-checkable after any parameter change.
inline bool attribution_sound(const PersistenceDiagram& dgm, const Filtration& f) {
    for (const auto& p : dgm.points) {
        if (p.birth != f.values[p.birth_simplex]) return false;
        if (!p.essential() && p.death != f.values[p.death_simplex]) return false;
    }
    return true;
}

// --- JSON serialization ---
// Records {dim, birth, death (null if essential), birth_simplex,
// death_simplex}; deterministic ordering by (dim, birth, death, birth_simplex).

inline nlohmann::json diagram_to_json(const PersistenceDiagram& dgm) {
    PersistenceDiagram sorted = dgm;
    detail::canonicalize(sorted);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : sorted.points) {
        nlohmann::json rec;
        rec["dim"] = p.dim;
        rec["birth"] = p.birth;
        rec["death"] = p.essential() ? nlohmann::json() : nlohmann::json(p.death);
        rec["birth_simplex"] = p.birth_simplex;
        rec["death_simplex"] = p.essential() ? nlohmann::json() : nlohmann::json(p.death_simplex);
        out.push_back(std::move(rec));
    }
    return out;
}

inline PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw io_error("diagram JSON must be an array of records");
    PersistenceDiagram dgm;
    int idx = 0;
    for (const auto& rec : j) {
        ++idx;
        try {
            PersistencePoint p;
            p.dim = rec.at("dim").get<int>();
            p.birth = rec.at("birth").get<double>();
            if (rec.at("death").is_null()) {
                p.death = kInfiniteDeath;
                p.death_simplex = -1;
            } else {
                p.death = rec.at("death").get<double>();
                p.death_simplex = rec.at("death_simplex").get<int>();
            }
            p.birth_simplex = rec.at("birth_simplex").get<int>();
            p.zero_persistence = (!p.essential() && p.birth == p.death);
            dgm.points.push_back(p);
        } catch (const nlohmann::json::exception& e) {
            throw io_error("diagram record " + std::to_string(idx) + ": " + e.what());
        }
    }
    detail::canonicalize(dgm);
    return dgm;
}

} // namespace toporeg
