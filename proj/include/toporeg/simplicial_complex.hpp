#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "toporeg/errors.hpp"

namespace toporeg {

// Vertex tuple of a simplex: strictly increasing indices, dimension = size-1.
using Simplex = std::vector<int>;

/**
 * Simplicial complex up to dimension 2, stored as per-dimension lists of
 * vertex tuples. Simplices get global ids in (dimension, list position)
 * order; the vertex simplex {v} always has id v.
 */
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Builds and validates a complex from per-dimension simplex lists.
    /// simplices_by_dim[k] holds the k-simplices.
    explicit SimplicialComplex(std::vector<std::vector<Simplex>> simplices_by_dim)
        : by_dim_(std::move(simplices_by_dim)) {
        if (by_dim_.empty() || by_dim_[0].empty())
            throw invalid_input_error("complex must contain at least one vertex");
        if (by_dim_.size() > 3)
            throw invalid_input_error("complex dimension capped at 2");
        validate_and_index();
    }

    int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    int num_vertices() const { return static_cast<int>(by_dim_[0].size()); }
    int size() const { return static_cast<int>(flat_.size()); }

    const Simplex& simplex(int id) const { return *flat_[id]; }
    int dim_of(int id) const { return static_cast<int>(flat_[id]->size()) - 1; }

    const std::vector<std::vector<Simplex>>& simplices_by_dim() const { return by_dim_; }

    /// Global id of a simplex given by its vertex tuple; -1 if absent.
    int id_of(const Simplex& s) const {
        auto it = id_by_key_.find(key_of(s));
        return it == id_by_key_.end() ? -1 : it->second;
    }

    /// Ids of the facets (codimension-1 faces) of simplex `id`.
    std::vector<int> facets(int id) const {
        const Simplex& s = *flat_[id];
        std::vector<int> out;
        if (s.size() == 1) return out;
        Simplex face(s.size() - 1);
        for (std::size_t skip = 0; skip < s.size(); ++skip) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != skip) face[k++] = s[i];
            int fid = id_of(face);
            if (fid < 0) throw invalid_input_error("complex is not face-closed");
            out.push_back(fid);
        }
        return out;
    }

  private:
    static std::uint64_t key_of(const Simplex& s) {
        // 20 bits per vertex, up to 3 vertices; enough for ~1M vertices
        std::uint64_t k = static_cast<std::uint64_t>(s.size());
        for (int v : s) k = (k << 20) | static_cast<std::uint64_t>(v + 1);
        return k;
    }

    void validate_and_index() {
        for (std::size_t d = 0; d < by_dim_.size(); ++d)
            for (std::size_t i = 0; i < by_dim_[d].size(); ++i) {
                const Simplex& s = by_dim_[d][i];
                if (s.size() != d + 1)
                    throw invalid_input_error("simplex arity does not match its dimension slot");
                for (std::size_t j = 0; j + 1 < s.size(); ++j)
                    if (s[j] >= s[j + 1])
                        throw invalid_input_error("simplex vertices must be strictly increasing");
                for (int v : s)
                    if (v < 0 || v >= num_vertices())
                        throw invalid_input_error("simplex references unknown vertex");
            }
        for (std::size_t d = 0; d < by_dim_.size(); ++d)
            for (const Simplex& s : by_dim_[d]) {
                flat_.push_back(&s);
                auto [it, inserted] = id_by_key_.emplace(key_of(s), static_cast<int>(flat_.size()) - 1);
                (void)it;
                if (!inserted) throw invalid_input_error("duplicate simplex in complex");
            }
        // face closure
        for (int id = 0; id < size(); ++id)
            if (dim_of(id) > 0) facets(id); // throws if a facet is missing
        for (int v = 0; v < num_vertices(); ++v)
            if (by_dim_[0][v] != Simplex{v})
                throw invalid_input_error("vertex simplices must be listed in index order");
    }

    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<const Simplex*> flat_;
    std::unordered_map<std::uint64_t, int> id_by_key_;
};

/// Convenience: complex spanned by explicit edges (and optional triangles)
/// over `n` vertices; vertex list is filled in automatically.
inline SimplicialComplex make_complex(int n, std::vector<Simplex> edges,
                                      std::vector<Simplex> triangles = {}) {
    std::vector<std::vector<Simplex>> by_dim(triangles.empty() ? 2 : 3);
    if (edges.empty() && triangles.empty()) by_dim.resize(1);
    for (int v = 0; v < n; ++v) by_dim[0].push_back({v});
    std::sort(edges.begin(), edges.end());
    if (!edges.empty()) by_dim[1] = std::move(edges);
    if (!triangles.empty()) {
        std::sort(triangles.begin(), triangles.end());
        by_dim[2] = std::move(triangles);
    }
    return SimplicialComplex(std::move(by_dim));
}

} // namespace toporeg
