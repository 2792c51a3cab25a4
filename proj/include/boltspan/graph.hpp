#pragma once

// Sparse roadmap storage: vertices, undirected edges with cached metric
// lengths, a connected-component index and the per-vertex interface
// bookkeeping used by the quality criterion.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boltspan/cspace.hpp"
#include "boltspan/union_find.hpp"

namespace boltspan {

using VertexId = std::uint32_t;

enum class VertexKind : std::uint8_t { Lattice, Coverage, Connectivity, Interface, Quality, Loaded };
enum class EdgeKind : std::uint8_t { Lattice, Connectivity, Interface, Quality, Loaded };

/// One side of an interface: `interior` lies in the owning vertex's
/// visibility region, `exterior` in the neighbour's, at most dense-delta apart.
struct InterfaceSupport {
    Configuration interior;
    Configuration exterior;
};

/// Support points for the interfaces between a vertex and two of its
/// neighbours (keyed by the ordered neighbour pair, `first` belongs to the
/// lower id).
struct InterfaceRecord {
    std::optional<InterfaceSupport> first;
    std::optional<InterfaceSupport> second;
    std::uint64_t last_updated = 0;
    bool path_added = false;

    [[nodiscard]] bool complete() const noexcept { return first && second; }
};

using NeighborPair = std::pair<VertexId, VertexId>;
using InterfaceMap = std::map<NeighborPair, InterfaceRecord>;

class SparseGraph {
public:
    SparseGraph(std::size_t dimension, Metric metric, double index_cell_size);

    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] Metric metric() const noexcept { return metric_; }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }

    VertexId add_vertex(Configuration q, VertexKind kind);
    /// Returns false when the edge already exists or a == b.
    bool add_edge(VertexId a, VertexId b, EdgeKind kind);
    /// Removing edges invalidates the component index until the next query.
    bool remove_edge(VertexId a, VertexId b);

    [[nodiscard]] const Configuration& vertex(VertexId v) const { return vertices_.at(v); }
    [[nodiscard]] VertexKind vertex_kind(VertexId v) const { return vertex_kinds_.at(v); }
    [[nodiscard]] const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
    [[nodiscard]] bool has_edge(VertexId a, VertexId b) const;
    [[nodiscard]] double edge_length(VertexId a, VertexId b) const;
    [[nodiscard]] EdgeKind edge_kind(VertexId a, VertexId b) const;

    /// Visits every edge once with a < b, in ascending (a, b) order.
    void for_each_edge(const std::function<void(VertexId, VertexId, double, EdgeKind)>& fn) const;

    [[nodiscard]] VertexId component(VertexId v) const;
    [[nodiscard]] bool same_component(VertexId a, VertexId b) const { return component(a) == component(b); }
    [[nodiscard]] std::size_t component_count() const;

    /// Vertex ids within `radius` of q (metric of the graph), sorted by
    /// distance and then id.
    [[nodiscard]] std::vector<VertexId> within_radius(const Configuration& q, double radius) const;

    [[nodiscard]] InterfaceMap& interfaces(VertexId v) { return interfaces_.at(v); }
    [[nodiscard]] const InterfaceMap& interfaces(VertexId v) const { return interfaces_.at(v); }

    /// Incremented on every edge removal; distances never grow otherwise.
    [[nodiscard]] std::uint64_t removal_epoch() const noexcept { return removal_epoch_; }
    /// Incremented on every structural change.
    [[nodiscard]] std::uint64_t version() const noexcept { return version_; }

    /// Same vertex coordinates and the same edge set.
    [[nodiscard]] bool same_structure(const SparseGraph& other) const;

private:
    using CellKey = std::vector<std::int64_t>;
    struct CellHash {
        std::size_t operator()(const CellKey& key) const noexcept;
    };
    struct EdgeData {
        double length;
        EdgeKind kind;
    };

    [[nodiscard]] static std::uint64_t edge_key(VertexId a, VertexId b) noexcept;
    [[nodiscard]] CellKey cell_of(const Configuration& q) const;
    void rebuild_components() const;

    std::size_t dimension_;
    Metric metric_;
    double cell_size_;

    std::vector<Configuration> vertices_;
    std::vector<VertexKind> vertex_kinds_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::unordered_map<std::uint64_t, EdgeData> edges_;
    std::vector<InterfaceMap> interfaces_;
    std::unordered_map<CellKey, std::vector<VertexId>, CellHash> cells_;

    mutable DisjointSets components_;
    mutable bool components_stale_ = false;
    std::uint64_t removal_epoch_ = 0;
    std::uint64_t version_ = 0;
};

}  // namespace boltspan
