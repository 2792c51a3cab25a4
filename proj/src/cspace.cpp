#include "boltspan/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace boltspan {

std::string_view to_string(Metric m) noexcept {
    return m == Metric::L1 ? "l1" : "l2";
}

Metric parse_metric(std::string_view text) {
    if (text == "l1" || text == "L1") return Metric::L1;
    if (text == "l2" || text == "L2") return Metric::L2;
    throw InputError("unknown metric '" + std::string(text) + "' (expected l1 or l2)");
}

double distance(const Configuration& a, const Configuration& b, Metric m) {
    if (a.size() != b.size()) {
        throw InputError("distance: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
    double sum = 0.0;
    if (m == Metric::L1) {
        for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
        return sum;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

Configuration interpolate(const Configuration& a, const Configuration& b, double s) {
    Configuration out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * (b[i] - a[i]);
    return out;
}

bool Box::contains(const Configuration& q) const noexcept {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < min[i] || q[i] > max[i]) return false;
    }
    return true;
}

Box Box::inflated(double margin) const {
    Box out = *this;
    for (std::size_t i = 0; i < out.min.size(); ++i) {
        out.min[i] -= margin;
        out.max[i] += margin;
    }
    return out;
}

Environment::Environment(std::vector<Interval> bounds, std::vector<Box> obstacles, double clearance)
    : bounds_(std::move(bounds)), obstacles_(std::move(obstacles)), clearance_(clearance) {
    validate();
    inflated_.reserve(obstacles_.size());
    for (const auto& box : obstacles_) {
        Box grown = box.inflated(clearance_);
        for (std::size_t i = 0; i < bounds_.size(); ++i) {
            grown.min[i] = std::max(grown.min[i], bounds_[i].lo);
            grown.max[i] = std::min(grown.max[i], bounds_[i].hi);
        }
        inflated_.push_back(std::move(grown));
    }
}

Environment Environment::empty(std::size_t dimension, double lo, double hi) {
    return Environment(std::vector<Interval>(dimension, Interval{lo, hi}), {}, 0.0);
}

void Environment::validate() const {
    if (bounds_.empty()) throw InputError("environment: dimension must be at least 1");
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (!(bounds_[i].lo < bounds_[i].hi)) {
            throw InputError("environment: bounds[" + std::to_string(i) + "] must satisfy lo < hi");
        }
    }
    if (!(clearance_ >= 0.0) || !std::isfinite(clearance_)) {
        throw InputError("environment: clearance must be a non-negative number");
    }
    for (std::size_t k = 0; k < obstacles_.size(); ++k) {
        const Box& box = obstacles_[k];
        const std::string label = "environment: obstacle " + std::to_string(k);
        if (box.min.size() != bounds_.size() || box.max.size() != bounds_.size()) {
            throw InputError(label + " has the wrong dimension");
        }
        for (std::size_t i = 0; i < bounds_.size(); ++i) {
            if (!(box.min[i] < box.max[i])) throw InputError(label + " must satisfy min < max");
            if (box.min[i] < bounds_[i].lo || box.max[i] > bounds_[i].hi) {
                throw InputError(label + " lies outside the bounds");
            }
        }
    }
}

bool Environment::in_bounds(const Configuration& q) const noexcept {
    if (q.size() != bounds_.size()) return false;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] >= bounds_[i].lo && q[i] <= bounds_[i].hi)) return false;
    }
    return true;
}

bool Environment::is_valid(const Configuration& q) const noexcept {
    if (!in_bounds(q)) return false;
    return std::none_of(inflated_.begin(), inflated_.end(),
                        [&](const Box& box) { return box.contains(q); });
}

Environment Environment::with_clearance(double clearance) const {
    return Environment(bounds_, obstacles_, clearance);
}

// --- JSON ------------------------------------------------------------------

namespace {

// Maps JSON pointers to the line where each value starts. Only called on
// text nlohmann already accepted, so the walker can assume well-formed input.
class LineIndex {
public:
    explicit LineIndex(std::string_view text) : text_(text) {
        skip_ws();
        value("");
    }

    [[nodiscard]] int line_of(const std::string& pointer) const {
        auto it = lines_.find(pointer);
        return it == lines_.end() ? 1 : it->second;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
            } else if (c != ' ' && c != '\t' && c != '\r') {
                break;
            }
            ++pos_;
        }
    }

    std::string string_token() {
        std::string out;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') {
                ++pos_;
                if (text_[pos_] == 'u') {
                    pos_ += 4;
                    out += '?';
                } else {
                    out += text_[pos_];
                }
            } else {
                out += text_[pos_];
            }
            ++pos_;
        }
        ++pos_;  // closing quote
        return out;
    }

    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') {
                out += "~0";
            } else if (c == '/') {
                out += "~1";
            } else {
                out += c;
            }
        }
        return out;
    }

    void value(const std::string& pointer) {
        lines_[pointer] = line_;
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip_ws();
            while (text_[pos_] != '}') {
                const std::string key = string_token();
                skip_ws();
                ++pos_;  // ':'
                skip_ws();
                value(pointer + "/" + escape(key));
                skip_ws();
                if (text_[pos_] == ',') {
                    ++pos_;
                    skip_ws();
                }
            }
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            std::size_t index = 0;
            while (text_[pos_] != ']') {
                value(pointer + "/" + std::to_string(index++));
                skip_ws();
                if (text_[pos_] == ',') {
                    ++pos_;
                    skip_ws();
                }
            }
            ++pos_;
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) {
                ++pos_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

class SchemaReader {
public:
    SchemaReader(const nlohmann::json& root, const LineIndex& index) : root_(root), index_(index) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw InputError("line " + std::to_string(index_.line_of(pointer)) + ": " +
                         (pointer.empty() ? "/" : pointer) + ": " + message);
    }

    const nlohmann::json& at(const std::string& pointer) const {
        return root_.at(nlohmann::json::json_pointer(pointer));
    }

    double number(const std::string& pointer) const {
        const auto& v = at(pointer);
        if (!v.is_number()) fail(pointer, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(pointer, "expected a finite number");
        return x;
    }

    std::vector<double> vector(const std::string& pointer, std::size_t dimension) const {
        const auto& v = at(pointer);
        if (!v.is_array() || v.size() != dimension) {
            fail(pointer, "expected an array of " + std::to_string(dimension) + " numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < dimension; ++i) out.push_back(number(pointer + "/" + std::to_string(i)));
        return out;
    }

private:
    const nlohmann::json& root_;
    const LineIndex& index_;
};

}  // namespace

Environment parse_environment(std::string_view json_text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("environment JSON: ") + e.what());
    }
    const LineIndex index(json_text);
    const SchemaReader reader(root, index);

    if (!root.is_object()) reader.fail("", "expected a JSON object");
    for (const auto& [key, _] : root.items()) {
        if (key != "dimension" && key != "bounds" && key != "clearance" && key != "obstacles" && key != "name") {
            reader.fail("/" + key, "unknown field");
        }
    }
    for (const char* key : {"dimension", "bounds", "clearance", "obstacles"}) {
        if (!root.contains(key)) reader.fail("", std::string("missing field '") + key + "'");
    }

    const auto& dim_value = root["dimension"];
    if (!dim_value.is_number_integer() || dim_value.get<long long>() < 1) {
        reader.fail("/dimension", "expected a positive integer");
    }
    const auto dimension = static_cast<std::size_t>(dim_value.get<long long>());

    const auto& bounds_value = root["bounds"];
    if (!bounds_value.is_array() || bounds_value.size() != dimension) {
        reader.fail("/bounds", "expected " + std::to_string(dimension) + " [lo, hi] pairs");
    }
    std::vector<Interval> bounds;
    for (std::size_t i = 0; i < dimension; ++i) {
        const std::string pointer = "/bounds/" + std::to_string(i);
        const auto pair = reader.vector(pointer, 2);
        if (!(pair[0] < pair[1])) reader.fail(pointer, "expected lo < hi");
        bounds.push_back({pair[0], pair[1]});
    }

    const double clearance = reader.number("/clearance");
    if (clearance < 0.0) reader.fail("/clearance", "must be non-negative");

    const auto& obstacles_value = root["obstacles"];
    if (!obstacles_value.is_array()) reader.fail("/obstacles", "expected an array");
    std::vector<Box> obstacles;
    for (std::size_t k = 0; k < obstacles_value.size(); ++k) {
        const std::string pointer = "/obstacles/" + std::to_string(k);
        const auto& item = obstacles_value[k];
        if (!item.is_object() || !item.contains("min") || !item.contains("max")) {
            reader.fail(pointer, "expected an object with 'min' and 'max'");
        }
        Box box{Configuration(reader.vector(pointer + "/min", dimension)),
                Configuration(reader.vector(pointer + "/max", dimension))};
        for (std::size_t i = 0; i < dimension; ++i) {
            if (!(box.min[i] < box.max[i])) reader.fail(pointer, "expected min < max on every axis");
            if (box.min[i] < bounds[i].lo || box.max[i] > bounds[i].hi) {
                reader.fail(pointer, "obstacle extends outside the bounds");
            }
        }
        obstacles.push_back(std::move(box));
    }
    return Environment(std::move(bounds), std::move(obstacles), clearance);
}

Environment load_environment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open environment file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_environment(buffer.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string environment_to_json(const Environment& env) {
    nlohmann::ordered_json root;
    root["dimension"] = env.dimension();
    auto bounds = nlohmann::ordered_json::array();
    for (const auto& b : env.bounds()) bounds.push_back({b.lo, b.hi});
    root["bounds"] = bounds;
    root["clearance"] = env.clearance();
    auto obstacles = nlohmann::ordered_json::array();
    for (const auto& box : env.obstacles()) {
        nlohmann::ordered_json item;
        item["min"] = std::vector<double>(box.min.begin(), box.min.end());
        item["max"] = std::vector<double>(box.max.begin(), box.max.end());
        obstacles.push_back(item);
    }
    root["obstacles"] = obstacles;
    return root.dump(2) + "\n";
}

void save_environment(const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write environment file '" + path + "'");
    out << environment_to_json(env);
}

// --- Motion validation -------------------------------------------------------

namespace {

// Closed segment / closed box overlap by slab clipping.
bool segment_hits_box(const Configuration& a, const Configuration& b, const Box& box) {
    double t_enter = 0.0;
    double t_exit = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        if (d == 0.0) {
            if (a[i] < box.min[i] || a[i] > box.max[i]) return false;
            continue;
        }
        double t0 = (box.min[i] - a[i]) / d;
        double t1 = (box.max[i] - a[i]) / d;
        if (t0 > t1) std::swap(t0, t1);
        t_enter = std::max(t_enter, t0);
        t_exit = std::min(t_exit, t1);
        if (t_enter > t_exit) return false;
    }
    return true;
}

}  // namespace

bool MotionValidator::check_motion(const Configuration& a, const Configuration& b,
                                   const Environment& env) const {
    if (!env.is_valid(a) || !env.is_valid(b)) return false;
    // Canonical direction makes the sampled state set independent of argument order.
    const bool swap = b < a;
    const Configuration& from = swap ? b : a;
    const Configuration& to = swap ? a : b;

    std::vector<const Box*> hits;
    for (const auto& box : env.inflated_obstacles()) {
        if (segment_hits_box(from, to, box)) hits.push_back(&box);
    }
    if (hits.empty()) return true;

    const double length = distance(from, to, Metric::L2);
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / resolution)));
    for (std::size_t k = 1; k < steps; ++k) {
        const Configuration q = interpolate(from, to, static_cast<double>(k) / static_cast<double>(steps));
        for (const Box* box : hits) {
            if (box->contains(q)) return false;
        }
    }
    return true;
}

double point_segment_distance(const Configuration& p, const Configuration& a, const Configuration& b,
                              Metric m) {
    const std::size_t d = p.size();
    if (m == Metric::L2) {
        double dd = 0.0;
        double dp = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            dd += (b[i] - a[i]) * (b[i] - a[i]);
            dp += (p[i] - a[i]) * (b[i] - a[i]);
        }
        const double s = dd > 0.0 ? std::clamp(dp / dd, 0.0, 1.0) : 0.0;
        return distance(p, interpolate(a, b, s), m);
    }
    // L1 distance along the segment is convex and piecewise linear; its
    // minimum sits at an endpoint or where one coordinate difference vanishes.
    double best = std::min(distance(p, a, m), distance(p, b, m));
    for (std::size_t i = 0; i < d; ++i) {
        const double span = b[i] - a[i];
        if (span == 0.0) continue;
        const double s = (p[i] - a[i]) / span;
        if (s > 0.0 && s < 1.0) best = std::min(best, distance(p, interpolate(a, b, s), m));
    }
    return best;
}

double path_length(std::span<const Configuration> path, Metric m) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += distance(path[i - 1], path[i], m);
    return total;
}

std::vector<Configuration> shortcut_path(std::vector<Configuration> path, const Environment& env,
                                         const MotionValidator& validator, Metric m) {
    constexpr double kTolerance = 1e-9;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 2 < path.size(); ++i) {
            for (std::size_t j = path.size() - 1; j >= i + 2; --j) {
                const double chained = path_length(std::span(path).subspan(i, j - i + 1), m);
                const double direct = distance(path[i], path[j], m);
                if (direct <= chained + kTolerance && validator.check_motion(path[i], path[j], env)) {
                    path.erase(path.begin() + static_cast<std::ptrdiff_t>(i + 1),
                               path.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    break;
                }
            }
        }
    }
    return path;
}

}  // namespace boltspan
