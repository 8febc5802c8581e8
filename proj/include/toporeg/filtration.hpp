#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "toporeg/point_cloud.hpp"
#include "toporeg/simplicial_complex.hpp"

namespace toporeg {

enum class FiltrationKind { LowerStar, Rips };

// Attribution of a simplex value to its inputs: for lower-star filtrations
// the argmax vertex (u == v), for Rips the diameter-realizing edge {u, v}
// (u == v for vertex simplices, whose value is identically 0).
struct Attribution {
    int u = -1;
    int v = -1;
    bool is_vertex() const { return u == v; }
};

/**
 * A simplicial complex together with a monotone per-simplex value and, per
 * simplex, the input coordinates its value depends on. The attribution is
 * what lets gradients flow from diagram points back to the inputs.
 */
struct Filtration {
    SimplicialComplex complex;
    std::vector<double> values;       // indexed by global simplex id
    std::vector<Attribution> sources; // indexed by global simplex id
    FiltrationKind kind = FiltrationKind::LowerStar;

    int size() const { return complex.size(); }
};

/// Scans every face relation; true iff value(face) <= value(coface).
inline bool is_monotone(const Filtration& f) {
    for (int id = 0; id < f.size(); ++id)
        for (int fid : f.complex.facets(id))
            if (f.values[fid] > f.values[id]) return false;
    return true;
}

/**
 * Vietoris-Rips filtration of a point cloud: all simplices up to `max_dim`
 * whose diameter is at most `max_radius`. A simplex's value is the max
 * pairwise distance of its vertices; its attribution is the realizing edge,
 * ties broken by lexicographically smallest endpoint pair.
 */
inline Filtration build_rips(const PointCloud& cloud, int max_dim, double max_radius) {
    validate_point_cloud(cloud);
    if (max_dim < 0 || max_dim > 2)
        throw invalid_input_error("build_rips: max_dim must be 0, 1, or 2");
    if (!(max_radius > 0))
        throw invalid_input_error("build_rips: max_radius must be positive");

    const int n = static_cast<int>(cloud.rows());
    std::vector<std::vector<Simplex>> by_dim(1);
    for (int v = 0; v < n; ++v) by_dim[0].push_back({v});

    std::vector<double> edge_len;
    std::vector<std::vector<double>> dist; // only filled when triangles are needed
    if (max_dim >= 2) dist.assign(n, std::vector<double>(n, 0.0));

    if (max_dim >= 1) {
        by_dim.emplace_back();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double d = point_distance(cloud, i, j);
                if (max_dim >= 2) dist[i][j] = dist[j][i] = d;
                if (d <= max_radius) {
                    by_dim[1].push_back({i, j});
                    edge_len.push_back(d);
                }
            }
    }
    if (max_dim >= 2) {
        by_dim.emplace_back();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (dist[i][j] > max_radius) continue;
                for (int k = j + 1; k < n; ++k)
                    if (dist[i][k] <= max_radius && dist[j][k] <= max_radius)
                        by_dim[2].push_back({i, j, k});
            }
    }

    Filtration f;
    f.kind = FiltrationKind::Rips;
    f.complex = SimplicialComplex(std::move(by_dim));
    f.values.assign(f.size(), 0.0);
    f.sources.assign(f.size(), Attribution{});

    const auto& dims = f.complex.simplices_by_dim();
    int id = 0;
    for (int v = 0; v < n; ++v, ++id) f.sources[id] = {v, v};
    if (max_dim >= 1)
        for (std::size_t e = 0; e < dims[1].size(); ++e, ++id) {
            f.values[id] = edge_len[e];
            f.sources[id] = {dims[1][e][0], dims[1][e][1]};
        }
    if (max_dim >= 2)
        for (const Simplex& t : dims[2]) {
            // diameter edge, lexicographically smallest among ties
            double best = -1.0;
            Attribution a;
            const std::array<std::pair<int, int>, 3> pairs{{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
            for (auto [u, v] : pairs)
                if (dist[u][v] > best) {
                    best = dist[u][v];
                    a = {u, v};
                }
            f.values[id] = best;
            f.sources[id] = a;
            ++id;
        }
    return f;
}

/**
 * Lower-star filtration: value(simplex) = max over its vertex values,
 * attributed to the argmax vertex (smallest index among ties).
 */
inline Filtration build_lower_star(SimplicialComplex complex,
                                   const std::vector<double>& vertex_values) {
    if (static_cast<int>(vertex_values.size()) != complex.num_vertices())
        throw invalid_input_error("build_lower_star: one value per vertex required");
    for (double v : vertex_values)
        if (!std::isfinite(v))
            throw invalid_input_error("build_lower_star: vertex values must be finite");

    Filtration f;
    f.kind = FiltrationKind::LowerStar;
    f.complex = std::move(complex);
    f.values.assign(f.size(), 0.0);
    f.sources.assign(f.size(), Attribution{});
    for (int id = 0; id < f.size(); ++id) {
        const Simplex& s = f.complex.simplex(id);
        int arg = s[0];
        for (int v : s)
            if (vertex_values[v] > vertex_values[arg]) arg = v;
        f.values[id] = vertex_values[arg];
        f.sources[id] = {arg, arg};
    }
    return f;
}

// --- differentiable attribution ---

/// d value(simplex) / d vertex_values for a lower-star filtration:
/// 1 at the attributed vertex. Returned as (vertex, weight) pairs.
inline std::vector<std::pair<int, double>> filtration_value_gradient(const Filtration& f,
                                                                     int simplex_id) {
    if (simplex_id < 0 || simplex_id >= f.size())
        throw invalid_input_error("filtration_value_gradient: no such simplex");
    if (f.kind != FiltrationKind::LowerStar)
        throw invalid_input_error("vertex-value gradient requires a lower-star filtration");
    return {{f.sources[simplex_id].u, 1.0}};
}

/// d value(simplex) / d point coordinates for a Rips filtration: the
/// gradient of the attributed edge's Euclidean length w.r.t. its two
/// endpoints. Coincident endpoints yield the zero subgradient.
inline std::vector<std::pair<int, Eigen::VectorXd>>
filtration_value_gradient(const Filtration& f, int simplex_id, const PointCloud& cloud) {
    if (simplex_id < 0 || simplex_id >= f.size())
        throw invalid_input_error("filtration_value_gradient: no such simplex");
    if (f.kind != FiltrationKind::Rips)
        throw invalid_input_error("coordinate gradient requires a Rips filtration");
    const Attribution a = f.sources[simplex_id];
    if (a.is_vertex()) return {}; // vertex simplex, value identically 0
    Eigen::VectorXd diff = (cloud.row(a.u) - cloud.row(a.v)).transpose();
    const double len = diff.norm();
    if (len == 0.0) {
        Eigen::VectorXd zero = Eigen::VectorXd::Zero(cloud.cols());
        return {{a.u, zero}, {a.v, zero}};
    }
    diff /= len;
    return {{a.u, diff}, {a.v, -diff}};
}

/// Value of a frozen simplex under new coordinates: the attributed edge's
/// length (0 for vertex simplices). This is the smooth function the
/// gradient above differentiates.
inline double attributed_value(const Attribution& a, const PointCloud& cloud) {
    if (a.is_vertex()) return 0.0;
    return (cloud.row(a.u) - cloud.row(a.v)).norm();
}

/// Lower-star analog: the frozen simplex tracks its argmax vertex.
inline double attributed_value(const Attribution& a, const std::vector<double>& vertex_values) {
    return vertex_values[a.u];
}

} // namespace toporeg
