#include "boltspan/spanner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boltspan/search.hpp"

namespace boltspan {

namespace {

constexpr double kLengthTolerance = 1e-9;
constexpr std::size_t kMaxPendingWitnesses = 8;
constexpr int kLocalSampleAttempts = 16;

std::uint64_t pair_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::string lowercase_compact(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '_' || c == '-') continue;
        out += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    }
    return out;
}

}  // namespace

// --- Features ----------------------------------------------------------------

std::string_view feature_name(Feature f) noexcept {
    switch (f) {
        case Feature::LatticeSeed: return "LatticeSeed";
        case Feature::ExactStretch: return "ExactStretch";
        case Feature::QualityDelay: return "QualityDelay";
        case Feature::ClearNearbyEdges: return "ClearNearbyEdges";
        case Feature::DirectConnectivity: return "DirectConnectivity";
        case Feature::SmoothedPathCheck: return "SmoothedPathCheck";
        case Feature::L1QualitySkip: return "L1QualitySkip";
    }
    return "?";
}

Feature parse_feature(std::string_view name) {
    const std::string wanted = lowercase_compact(name);
    for (Feature f : kAllFeatures) {
        if (lowercase_compact(feature_name(f)) == wanted) return f;
    }
    throw InputError("unknown feature '" + std::string(name) + "'");
}

FeatureSet FeatureSet::parse(std::string_view text) {
    if (text == "all") return all();
    if (text == "none" || text.empty()) return none();
    FeatureSet set;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const auto item = text.substr(start, comma - start);
        if (!item.empty()) set = set.with(parse_feature(item));
        start = comma + 1;
    }
    return set;
}

std::string FeatureSet::to_string() const {
    if (*this == all()) return "all";
    if (*this == none()) return "none";
    std::string out;
    for (Feature f : kAllFeatures) {
        if (!has(f)) continue;
        if (!out.empty()) out += ',';
        out += feature_name(f);
    }
    return out;
}

std::string_view to_string(OutcomeKind k) noexcept {
    switch (k) {
        case OutcomeKind::AddedVertex: return "AddedVertex";
        case OutcomeKind::AddedEdge: return "AddedEdge";
        case OutcomeKind::AddedBoth: return "AddedBoth";
        case OutcomeKind::Rejected: return "Rejected";
    }
    return "?";
}

std::string_view to_string(Criterion c) noexcept {
    switch (c) {
        case Criterion::Coverage: return "Coverage";
        case Criterion::Connectivity: return "Connectivity";
        case Criterion::Interface: return "Interface";
        case Criterion::Quality: return "Quality";
        case Criterion::None: return "None";
    }
    return "?";
}

// --- Parameters --------------------------------------------------------------

double compute_stretch(int dimension, double beta, double dense_delta, int k) {
    const double denominator = beta - static_cast<double>(k) * dense_delta;
    if (!(denominator > 0.0)) {
        throw InputError("compute_stretch: beta must exceed " + std::to_string(k) + " * dense_delta");
    }
    return static_cast<double>(dimension) * beta / denominator;
}

BuildParams BuildParams::defaults_for(int dimension) {
    BuildParams p;
    p.dimension = dimension;
    if (dimension == 2) {
        p.delta = 6.93;
        p.dense_delta = 0.693;
        p.stretch = 3.36;
    } else if (dimension == 3) {
        p.delta = 8.49;
        p.dense_delta = 0.849;
        p.stretch = 7.68;
    } else {
        p.delta = std::round(4.9 * std::sqrt(static_cast<double>(dimension)) * 100.0) / 100.0;
        p.dense_delta = p.delta / 10.0;
        p.stretch = compute_stretch(dimension, p.beta(), p.dense_delta, p.stretch_denominator_k);
    }
    return p;
}

double BuildParams::beta() const {
    return lattice_spacing(delta, dimension, psi, metric);
}

double BuildParams::effective_stretch() const {
    if (!features.has(Feature::ExactStretch)) return stretch;
    return compute_stretch(dimension, beta(), dense_delta, stretch_denominator_k);
}

void BuildParams::validate() const {
    if (dimension < 1) throw InputError("params: dimension must be at least 1");
    if (!(delta > 0.0)) throw InputError("params: delta must be positive");
    if (!(dense_delta > 0.0 && dense_delta < delta)) throw InputError("params: dense_delta must lie in (0, delta)");
    if (stretch_denominator_k != 2 && stretch_denominator_k != 4) throw InputError("params: stretch k must be 2 or 4");
    if (termination_failures < 1) throw InputError("params: termination failures must be positive");
    if (termination_failures < quality_delay_failures) {
        throw InputError("params: termination failures must be at least the quality delay");
    }
    if (!(motion_resolution > 0.0 && motion_resolution < delta / 4.0)) {
        throw InputError("params: motion resolution must lie in (0, delta/4)");
    }
    if (near_samples_per_dimension < 0) throw InputError("params: near samples must be non-negative");
    (void)beta();  // throws when psi is too large
    if (effective_stretch() < 1.0) throw InputError("params: stretch must be at least 1");
}

// --- Builder -----------------------------------------------------------------

namespace {

const BuildParams& checked(const BuildParams& params, const Environment& env) {
    params.validate();
    if (static_cast<std::size_t>(params.dimension) != env.dimension()) {
        throw InputError("params: dimension " + std::to_string(params.dimension) +
                         " does not match the environment (" + std::to_string(env.dimension()) + ")");
    }
    return params;
}

}  // namespace

SpannerBuilder::SpannerBuilder(Environment env, BuildParams params)
    : env_(std::move(env)),
      params_(checked(params, env_)),
      validator_{params_.motion_resolution},
      stretch_(params_.effective_stretch()),
      graph_(env_.dimension(), params_.metric, params_.delta),
      local_engine_(0x5eedULL) {}

SpannerBuilder::Neighborhood SpannerBuilder::neighborhood(const Configuration& q) const {
    Neighborhood nb;
    nb.in_range = graph_.within_radius(q, params_.delta);
    for (VertexId v : nb.in_range) {
        if (valid_motion(q, graph_.vertex(v))) nb.visible.push_back(v);
    }
    return nb;
}

std::optional<VertexId> SpannerBuilder::representative(const Configuration& q) const {
    for (VertexId v : graph_.within_radius(q, params_.delta)) {
        if (valid_motion(q, graph_.vertex(v))) return v;
    }
    return std::nullopt;
}

std::size_t SpannerBuilder::pending_witnesses() const {
    std::size_t n = 0;
    for (const auto& [_, list] : blocked_witnesses_) n += list.size();
    return n;
}

VertexId SpannerBuilder::add_vertex(const Configuration& q, VertexKind kind) {
    const VertexId id = graph_.add_vertex(q, kind);
    if (!seeding_) ++stats_.sampled_vertices;
    if (params_.features.has(Feature::ClearNearbyEdges)) clear_nearby_edges(id);
    return id;
}

void SpannerBuilder::add_edge(VertexId a, VertexId b, EdgeKind kind) {
    graph_.add_edge(a, b, kind);
}

std::size_t SpannerBuilder::clear_nearby_edges(VertexId v) {
    const Configuration& p = graph_.vertex(v);
    std::vector<std::pair<VertexId, VertexId>> doomed;
    graph_.for_each_edge([&](VertexId a, VertexId b, double, EdgeKind) {
        if (a == v || b == v) return;
        if (point_segment_distance(p, graph_.vertex(a), graph_.vertex(b), params_.metric) <= params_.delta) {
            doomed.emplace_back(a, b);
        }
    });
    // An edge whose removal would split the graph stays: interface edges
    // are re-created by later samples, but a lost bridge would have to be
    // repaired by the connectivity criterion with yet another vertex.
    std::size_t removed = 0;
    for (const auto& [a, b] : doomed) {
        const EdgeKind kind = graph_.edge_kind(a, b);
        graph_.remove_edge(a, b);
        if (reachable(a, b)) {
            ++removed;
        } else {
            graph_.add_edge(a, b, kind);
        }
    }
    stats_.edges_cleared += removed;
    return removed;
}

bool SpannerBuilder::reachable(VertexId from, VertexId to) const {
    std::vector<bool> seen(graph_.num_vertices(), false);
    std::vector<VertexId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (u == to) return true;
        for (VertexId w : graph_.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return false;
}

std::size_t SpannerBuilder::seed_lattice() {
    seeding_ = true;
    const LatticeSpec spec{params_.beta(), {}};
    const auto points = generate_lattice(env_, spec);
    const auto counts = lattice_axis_counts(env_, spec);
    const std::size_t d = counts.size();
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t i = d - 1; i > 0; --i) stride[i - 1] = stride[i] * counts[i];

    std::vector<std::optional<VertexId>> ids(points.size());
    std::size_t added = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!env_.is_valid(points[k])) continue;
        ids[k] = add_vertex(points[k], VertexKind::Lattice);
        ++added;
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!ids[k]) continue;
        for (std::size_t axis = 0; axis < d; ++axis) {
            const std::size_t index = (k / stride[axis]) % counts[axis];
            if (index + 1 >= counts[axis]) continue;
            const std::size_t j = k + stride[axis];
            if (!ids[j] || !valid_motion(points[k], points[j])) continue;
            add_edge(*ids[k], *ids[j], EdgeKind::Lattice);
            ++stats_.lattice_edges;
        }
    }
    stats_.lattice_points = points.size();
    stats_.lattice_vertices = added;
    seeding_ = false;
    return added;
}

CriterionOutcome SpannerBuilder::insert_sample(const Configuration& q, bool quality_enabled) {
    const Neighborhood nb = neighborhood(q);
    if (auto o = coverage(q, nb); o.added()) return o;
    if (auto o = connectivity(q, nb); o.added()) return o;
    if (auto o = interface(q, nb); o.added()) return o;
    if (quality_enabled) return quality(q, nb);
    return CriterionOutcome::rejected();
}

CriterionOutcome SpannerBuilder::check_coverage(const Configuration& q) { return coverage(q, neighborhood(q)); }
CriterionOutcome SpannerBuilder::check_connectivity(const Configuration& q) { return connectivity(q, neighborhood(q)); }
CriterionOutcome SpannerBuilder::check_interface(const Configuration& q) { return interface(q, neighborhood(q)); }
CriterionOutcome SpannerBuilder::check_quality(const Configuration& q) { return quality(q, neighborhood(q)); }

CriterionOutcome SpannerBuilder::coverage(const Configuration& q, const Neighborhood& nb) {
    if (!nb.visible.empty()) return CriterionOutcome::rejected();
    add_vertex(q, VertexKind::Coverage);
    return {OutcomeKind::AddedVertex, Criterion::Coverage};
}

CriterionOutcome SpannerBuilder::connectivity(const Configuration& q, const Neighborhood& nb) {
    const auto& visible = nb.visible;
    struct Candidate {
        double length;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Candidate> pairs;
    for (std::size_t i = 0; i < visible.size(); ++i) {
        for (std::size_t j = i + 1; j < visible.size(); ++j) {
            if (graph_.same_component(visible[i], visible[j])) continue;
            pairs.push_back({distance(graph_.vertex(visible[i]), graph_.vertex(visible[j]), params_.metric), i, j});
        }
    }
    if (pairs.empty()) return CriterionOutcome::rejected();

    if (params_.features.has(Feature::DirectConnectivity)) {
        // Shortest cross-component pairs first, so each merge uses the
        // cheapest available direct edge.
        std::sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.length, a.i, a.j) < std::tie(b.length, b.i, b.j);
        });
        bool linked = false;
        for (const auto& c : pairs) {
            const VertexId w1 = visible[c.i];
            const VertexId w2 = visible[c.j];
            if (graph_.same_component(w1, w2)) continue;
            if (!valid_motion(graph_.vertex(w1), graph_.vertex(w2))) continue;
            if (c.length > 2.0 * params_.delta + kLengthTolerance) {
                throw std::logic_error("connectivity edge longer than 2*delta");
            }
            add_edge(w1, w2, EdgeKind::Connectivity);
            linked = true;
        }
        if (linked) return {OutcomeKind::AddedEdge, Criterion::Connectivity};
    }

    const VertexId id = add_vertex(q, VertexKind::Connectivity);
    for (VertexId w : visible) {
        if (!graph_.same_component(id, w)) add_edge(id, w, EdgeKind::Connectivity);
    }
    return {OutcomeKind::AddedBoth, Criterion::Connectivity};
}

CriterionOutcome SpannerBuilder::interface(const Configuration& q, const Neighborhood& nb) {
    if (nb.visible.size() < 2) return CriterionOutcome::rejected();
    const VertexId v1 = nb.visible[0];
    const VertexId v2 = nb.visible[1];
    const Configuration& p1 = graph_.vertex(v1);
    const Configuration& p2 = graph_.vertex(v2);
    if (distance(q, p2, params_.metric) - distance(q, p1, params_.metric) > params_.dense_delta) {
        return CriterionOutcome::rejected();
    }
    if (graph_.has_edge(v1, v2)) return CriterionOutcome::rejected();
    if (valid_motion(p1, p2)) {
        add_edge(v1, v2, EdgeKind::Interface);
        return {OutcomeKind::AddedEdge, Criterion::Interface};
    }

    // Blocked interface: wait for a second witness close to an earlier one.
    auto& pending = blocked_witnesses_[{std::min(v1, v2), std::max(v1, v2)}];
    for (std::size_t k = 0; k < pending.size(); ++k) {
        const Configuration w = pending[k];
        if (distance(w, q, params_.metric) > params_.dense_delta || !valid_motion(w, q)) continue;
        auto bias = [&](const Configuration& x) {
            return distance(x, p1, params_.metric) - distance(x, p2, params_.metric);
        };
        const bool w_first = bias(w) <= bias(q);
        const Configuration near1 = w_first ? w : q;
        const Configuration near2 = w_first ? q : w;
        pending.clear();
        const VertexId a = add_vertex(near1, VertexKind::Interface);
        const VertexId b = add_vertex(near2, VertexKind::Interface);
        add_edge(v1, a, EdgeKind::Interface);
        add_edge(a, b, EdgeKind::Interface);
        add_edge(b, v2, EdgeKind::Interface);
        return {OutcomeKind::AddedBoth, Criterion::Interface};
    }
    pending.push_back(q);
    if (pending.size() > kMaxPendingWitnesses) pending.erase(pending.begin());
    return CriterionOutcome::rejected();
}

CriterionOutcome SpannerBuilder::quality(const Configuration& q, const Neighborhood& nb) {
    if (nb.visible.empty()) return CriterionOutcome::rejected();
    const VertexId v = nb.visible[0];
    const std::size_t d = env_.dimension();
    const double radius = params_.dense_delta;

    // Sample around q for states that belong to a different representative.
    std::map<VertexId, Configuration> close;
    const int wanted = params_.near_samples_per_dimension * static_cast<int>(d);
    for (int k = 0; k < wanted; ++k) {
        std::optional<Configuration> found;
        for (int attempt = 0; attempt < kLocalSampleAttempts && !found; ++attempt) {
            Configuration s(d);
            for (std::size_t i = 0; i < d; ++i) s[i] = q[i] + (2.0 * unit_double(local_engine_) - 1.0) * radius;
            if (distance(q, s, params_.metric) > radius || !env_.is_valid(s) || !valid_motion(q, s)) continue;
            found = std::move(s);
        }
        if (!found) continue;
        const auto rep = representative(*found);
        if (rep && *rep != v) close.try_emplace(*rep, *found);
    }
    for (const auto& [r, s] : close) {
        update_supports(v, q, r, s);
        update_supports(r, s, v, q);
    }

    const std::size_t vertices_before = graph_.num_vertices();
    bool added = check_add_paths(v);
    for (const auto& [r, _] : close) added = check_add_paths(r) || added;
    if (!added) return CriterionOutcome::rejected();
    return {graph_.num_vertices() > vertices_before ? OutcomeKind::AddedBoth : OutcomeKind::AddedEdge,
            Criterion::Quality};
}

void SpannerBuilder::update_supports(VertexId owner, const Configuration& interior, VertexId other,
                                     const Configuration& exterior) {
    if (!graph_.has_edge(owner, other)) return;
    const std::vector<VertexId> around = graph_.neighbors(owner);
    for (VertexId x : around) {
        if (x == other || graph_.has_edge(x, other)) continue;
        auto& record = graph_.interfaces(owner)[{std::min(other, x), std::max(other, x)}];
        auto& side = other < x ? record.first : record.second;
        const auto& opposite = other < x ? record.second : record.first;
        bool replace = !side.has_value();
        if (!replace && opposite) {
            replace = distance(interior, opposite->interior, params_.metric) <
                      distance(side->interior, opposite->interior, params_.metric);
        }
        if (replace) {
            side = InterfaceSupport{interior, exterior};
            record.last_updated = stats_.samples;
        }
    }
}

bool SpannerBuilder::check_add_paths(VertexId v) {
    std::vector<NeighborPair> keys;
    for (const auto& [key, _] : graph_.interfaces(v)) keys.push_back(key);
    bool added = false;
    for (const auto& key : keys) {
        const auto [a, b] = key;
        if (!graph_.has_edge(v, a) || !graph_.has_edge(v, b) || graph_.has_edge(a, b)) continue;
        const InterfaceRecord record = graph_.interfaces(v).at(key);
        if (!record.complete() || record.path_added) continue;
        const double midpoint_path = 0.5 * (graph_.edge_length(a, v) + graph_.edge_length(v, b));
        const double between = distance(record.first->interior, record.second->interior, params_.metric);
        if (!(stretch_ * between < midpoint_path)) continue;
        if (add_shortcut(v, a, b, graph_.interfaces(v).at(key))) added = true;
    }
    return added;
}

std::optional<double> SpannerBuilder::shortest_between(VertexId a, VertexId b) {
    const auto key = pair_key(a, b);
    if (auto it = distance_cache_.find(key); it != distance_cache_.end() && it->second.first == graph_.version()) {
        const double cached = it->second.second;
        return std::isinf(cached) ? std::nullopt : std::optional<double>(cached);
    }
    const auto path = graph_astar(graph_, a, b, params_.metric);
    const double length = path ? path->length : std::numeric_limits<double>::infinity();
    distance_cache_[key] = {graph_.version(), length};
    return path ? std::optional<double>(length) : std::nullopt;
}

bool SpannerBuilder::add_shortcut(VertexId v, VertexId a, VertexId b, InterfaceRecord& record_ref) {
    const Configuration pa = graph_.vertex(a);
    const Configuration pb = graph_.vertex(b);
    const Configuration pv = graph_.vertex(v);
    const double direct = distance(pa, pb, params_.metric);

    if (params_.features.has(Feature::L1QualitySkip)) {
        const auto key = pair_key(a, b);
        if (auto it = skip_cache_.find(key); it != skip_cache_.end() && it->second == graph_.removal_epoch()) {
            ++stats_.quality_skips;
            return false;
        }
        if (const auto path = graph_astar_bounded(graph_, a, b, direct + kLengthTolerance)) {
            if (path->length > direct + kLengthTolerance) throw std::logic_error("quality skip fired on a longer path");
            skip_cache_[key] = graph_.removal_epoch();
            ++stats_.quality_skips;
            return false;
        }
    }

    if (valid_motion(pa, pb)) {
        add_edge(a, b, EdgeKind::Quality);
        return true;
    }

    // Route through the recorded interface supports and smooth it.
    const InterfaceSupport side_a = *record_ref.first;  // key is (a, b) with a < b
    const InterfaceSupport side_b = *record_ref.second;
    std::vector<Configuration> route{pa, side_a.exterior, side_a.interior, pv, side_b.interior, side_b.exterior, pb};
    for (std::size_t i = 1; i < route.size(); ++i) {
        if (!valid_motion(route[i - 1], route[i])) return false;
    }
    route = shortcut_path(std::move(route), env_, validator_, params_.metric);
    // A route smoothed back onto a-v-b adds nothing.
    if (route.size() <= 2 || (route.size() == 3 && route[1] == pv)) return false;
    const double length = path_length(route, params_.metric);

    if (params_.features.has(Feature::SmoothedPathCheck)) {
        const auto current = shortest_between(a, b);
        if (current && length >= *current - kLengthTolerance) {
            ++stats_.smoothed_rejections;
            return false;
        }
    }

    record_ref.path_added = true;
    std::vector<VertexId> chain{a};
    for (std::size_t i = 1; i + 1 < route.size(); ++i) {
        chain.push_back(route[i] == pv ? v : add_vertex(route[i], VertexKind::Quality));
    }
    chain.push_back(b);
    for (std::size_t i = 1; i < chain.size(); ++i) add_edge(chain[i - 1], chain[i], EdgeKind::Quality);
    return true;
}

// --- Driver ------------------------------------------------------------------

BuildResult build(const Environment& env, const BuildParams& params, SampleStream& stream,
                  const BuildObserver& observer) {
    const auto started = std::chrono::steady_clock::now();
    SpannerBuilder builder(env, params);
    builder.seed_local_sampler(stream.seed() ^ 0x9e3779b97f4a7c15ULL);
    if (params.features.has(Feature::LatticeSeed)) builder.seed_lattice();

    bool quality_enabled = !params.features.has(Feature::QualityDelay);
    std::uint64_t invalid_streak = 0;
    auto& stats = builder.mutable_stats();
    while (stream.consecutive_failures() < params.termination_failures) {
        const Configuration q = stream.next_uniform(env);
        if (!env.is_valid(q)) {
            if (++invalid_streak > 1'000'000) throw InputError("build: the environment has no free space");
            continue;
        }
        invalid_streak = 0;
        if (!quality_enabled && stream.consecutive_failures() >= params.quality_delay_failures) {
            quality_enabled = true;
            stats.quality_enabled_at = stats.samples;
        }
        ++stats.samples;
        const CriterionOutcome outcome = builder.insert_sample(q, quality_enabled);
        if (outcome.added()) ++stats.additions[outcome.reason];
        stream.record_outcome(outcome.added());
        if (observer) observer(builder, stats.samples);
    }
    stats.build_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return BuildResult{std::move(builder.mutable_graph()), builder.stats(), builder.stretch()};
}

}  // namespace boltspan
