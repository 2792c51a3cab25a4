#include "boltspan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boltspan {

SparseGraph::SparseGraph(std::size_t dimension, Metric metric, double index_cell_size)
    : dimension_(dimension), metric_(metric), cell_size_(index_cell_size) {
    if (dimension == 0) throw InputError("graph: dimension must be positive");
    if (!(index_cell_size > 0.0)) throw InputError("graph: index cell size must be positive");
}

std::size_t SparseGraph::CellHash::operator()(const CellKey& key) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto k : key) {
        h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

std::uint64_t SparseGraph::edge_key(VertexId a, VertexId b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

SparseGraph::CellKey SparseGraph::cell_of(const Configuration& q) const {
    CellKey key(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) key[i] = static_cast<std::int64_t>(std::floor(q[i] / cell_size_));
    return key;
}

VertexId SparseGraph::add_vertex(Configuration q, VertexKind kind) {
    if (q.size() != dimension_) throw InputError("graph: vertex dimension mismatch");
    const auto id = static_cast<VertexId>(vertices_.size());
    cells_[cell_of(q)].push_back(id);
    vertices_.push_back(std::move(q));
    vertex_kinds_.push_back(kind);
    adjacency_.emplace_back();
    interfaces_.emplace_back();
    components_.add();
    ++version_;
    return id;
}

bool SparseGraph::add_edge(VertexId a, VertexId b, EdgeKind kind) {
    if (a == b || a >= vertices_.size() || b >= vertices_.size()) return false;
    const auto [it, inserted] = edges_.try_emplace(edge_key(a, b), EdgeData{distance(vertices_[a], vertices_[b], metric_), kind});
    if (!inserted) return false;
    auto insert_sorted = [](std::vector<VertexId>& list, VertexId v) {
        list.insert(std::upper_bound(list.begin(), list.end(), v), v);
    };
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    if (!components_stale_) components_.unite(a, b);
    ++version_;
    return true;
}

bool SparseGraph::remove_edge(VertexId a, VertexId b) {
    if (edges_.erase(edge_key(a, b)) == 0) return false;
    auto erase_sorted = [](std::vector<VertexId>& list, VertexId v) {
        list.erase(std::lower_bound(list.begin(), list.end(), v));
    };
    erase_sorted(adjacency_[a], b);
    erase_sorted(adjacency_[b], a);
    components_stale_ = true;
    ++removal_epoch_;
    ++version_;
    return true;
}

bool SparseGraph::has_edge(VertexId a, VertexId b) const {
    return edges_.count(edge_key(a, b)) != 0;
}

double SparseGraph::edge_length(VertexId a, VertexId b) const {
    auto it = edges_.find(edge_key(a, b));
    if (it == edges_.end()) throw std::out_of_range("graph: no such edge");
    return it->second.length;
}

EdgeKind SparseGraph::edge_kind(VertexId a, VertexId b) const {
    auto it = edges_.find(edge_key(a, b));
    if (it == edges_.end()) throw std::out_of_range("graph: no such edge");
    return it->second.kind;
}

void SparseGraph::for_each_edge(const std::function<void(VertexId, VertexId, double, EdgeKind)>& fn) const {
    for (VertexId a = 0; a < adjacency_.size(); ++a) {
        for (VertexId b : adjacency_[a]) {
            if (a < b) {
                const auto& data = edges_.at(edge_key(a, b));
                fn(a, b, data.length, data.kind);
            }
        }
    }
}

void SparseGraph::rebuild_components() const {
    components_.reset(vertices_.size());
    for (const auto& [key, _] : edges_) {
        components_.unite(static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu));
    }
    components_stale_ = false;
}

VertexId SparseGraph::component(VertexId v) const {
    if (components_stale_) rebuild_components();
    return components_.find(v);
}

std::size_t SparseGraph::component_count() const {
    std::size_t count = 0;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (component(v) == v) ++count;
    }
    return count;
}

std::vector<VertexId> SparseGraph::within_radius(const Configuration& q, double radius) const {
    std::vector<std::pair<double, VertexId>> found;
    CellKey lo(dimension_);
    CellKey hi(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) {
        lo[i] = static_cast<std::int64_t>(std::floor((q[i] - radius) / cell_size_));
        hi[i] = static_cast<std::int64_t>(std::floor((q[i] + radius) / cell_size_));
    }
    CellKey cell = lo;
    while (true) {
        if (auto it = cells_.find(cell); it != cells_.end()) {
            for (VertexId v : it->second) {
                const double dist = distance(q, vertices_[v], metric_);
                if (dist <= radius) found.emplace_back(dist, v);
            }
        }
        std::size_t axis = 0;
        while (axis < dimension_) {
            if (++cell[axis] <= hi[axis]) break;
            cell[axis] = lo[axis];
            ++axis;
        }
        if (axis == dimension_) break;
    }
    std::sort(found.begin(), found.end());
    std::vector<VertexId> out;
    out.reserve(found.size());
    for (const auto& [_, v] : found) out.push_back(v);
    return out;
}

bool SparseGraph::same_structure(const SparseGraph& other) const {
    if (vertices_ != other.vertices_ || adjacency_ != other.adjacency_) return false;
    return true;
}

}  // namespace boltspan
