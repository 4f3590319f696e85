#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trajmetric {

using State = std::vector<double>;

// Thrown for schema violations, invariant breaches and bad arguments.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a numerical solver cannot certify its result.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A single trajectory: birth step (1-based) plus a contiguous run of states.
// Entries may be absent (holes), but the first and last entry must be present.
struct Trajectory {
    std::string label;
    int birth = 1;
    std::vector<std::optional<State>> states;

    int length() const { return static_cast<int>(states.size()); }
    int last_step() const { return birth + length() - 1; }
};

struct TrajectorySet {
    int window_length = 0;  // T
    std::vector<Trajectory> trajectories;

    int size() const { return static_cast<int>(trajectories.size()); }
};

enum class Normalization { none, window };

struct MetricParams {
    double c = 1.0;        // cutoff, > 0
    double p = 1.0;        // exponent, >= 1
    double gamma = 1.0;    // switching penalty, > 0
    double base_norm = 2.0;  // q of the base q-norm; inf allowed
    Normalization normalization = Normalization::none;
};

// Per-step localisation weights (size T) and switching weights (size T-1).
struct WeightSchedule {
    std::vector<double> w1;
    std::vector<double> w2;
};

namespace detail {

inline std::string field_msg(const Trajectory& t, const std::string& field,
                             const std::string& what) {
    return "trajectory '" + t.label + "': " + field + ": " + what;
}

}  // namespace detail

// State dimension shared by all present states, or nullopt for an all-empty set.
inline std::optional<std::size_t> state_dimension(const TrajectorySet& set) {
    for (const auto& t : set.trajectories)
        for (const auto& s : t.states)
            if (s) return s->size();
    return std::nullopt;
}

inline void validate_trajectory(const Trajectory& t, int window_length) {
    if (t.states.empty())
        throw validation_error(detail::field_msg(t, "states", "must contain at least one entry"));
    if (t.birth < 1)
        throw validation_error(detail::field_msg(t, "birth", "must be >= 1"));
    if (t.last_step() > window_length)
        throw validation_error(detail::field_msg(
            t, "states", "extends to step " + std::to_string(t.last_step()) +
                             " past window length " + std::to_string(window_length)));
    if (!t.states.front())
        throw validation_error(detail::field_msg(t, "states", "first entry must not be absent"));
    if (!t.states.back())
        throw validation_error(detail::field_msg(t, "states", "last entry must not be absent"));
    std::size_t dim = 0;
    bool have_dim = false;
    for (const auto& s : t.states) {
        if (!s) continue;
        if (s->empty())
            throw validation_error(detail::field_msg(t, "states", "state vector must be non-empty"));
        for (double v : *s)
            if (!std::isfinite(v))
                throw validation_error(detail::field_msg(t, "states", "state values must be finite"));
        if (!have_dim) {
            dim = s->size();
            have_dim = true;
        } else if (s->size() != dim) {
            throw validation_error(detail::field_msg(
                t, "states", "state dimension " + std::to_string(s->size()) +
                                 " differs from " + std::to_string(dim)));
        }
    }
}

inline void validate_set(const TrajectorySet& set) {
    if (set.window_length < 1)
        throw validation_error("window length T must be >= 1");
    std::optional<std::size_t> dim;
    for (const auto& t : set.trajectories) {
        validate_trajectory(t, set.window_length);
        for (const auto& s : t.states) {
            if (!s) continue;
            if (!dim) dim = s->size();
            else if (s->size() != *dim)
                throw validation_error(detail::field_msg(
                    t, "states", "state dimension differs from other trajectories in the set"));
        }
    }
}

inline void validate_params(const MetricParams& params) {
    if (!(params.c > 0)) throw validation_error("cutoff c must be > 0");
    if (!(params.p >= 1) || !std::isfinite(params.p))
        throw validation_error("exponent p must satisfy 1 <= p < inf");
    if (!(params.gamma > 0)) throw validation_error("switching penalty gamma must be > 0");
    if (!(params.base_norm >= 1)) throw validation_error("base norm order must be >= 1");
}

inline void validate_weights(const WeightSchedule& weights, int window_length) {
    if (static_cast<int>(weights.w1.size()) != window_length)
        throw validation_error("w1 must have T entries");
    if (static_cast<int>(weights.w2.size()) != window_length - 1)
        throw validation_error("w2 must have T-1 entries");
    for (double w : weights.w1)
        if (!(w > 0) || !std::isfinite(w)) throw validation_error("w1 entries must be positive");
    for (double w : weights.w2)
        if (!(w > 0) || !std::isfinite(w)) throw validation_error("w2 entries must be positive");
}

// Checks the two sets can be compared: equal windows, matching state dimension.
inline void validate_comparable(const TrajectorySet& x, const TrajectorySet& y) {
    validate_set(x);
    validate_set(y);
    if (x.window_length != y.window_length)
        throw validation_error("window lengths differ: " + std::to_string(x.window_length) +
                               " vs " + std::to_string(y.window_length));
    auto dx = state_dimension(x);
    auto dy = state_dimension(y);
    if (dx && dy && *dx != *dy)
        throw validation_error("state dimensions differ: " + std::to_string(*dx) + " vs " +
                               std::to_string(*dy));
}

// q-norm of a - b (q = params.base_norm; inf gives the max norm).
inline double base_distance(const State& a, const State& b, const MetricParams& params) {
    if (a.size() != b.size())
        throw validation_error("state dimension mismatch in base distance");
    const double q = params.base_norm;
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    if (q == 2.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(std::abs(a[i] - b[i]), q);
    return std::pow(acc, 1.0 / q);
}

// State of a trajectory at step k (1-based), or nullptr when the trajectory
// does not exist there or has a hole.
inline const State* tau_ptr(const Trajectory& t, int k, int window_length) {
    if (k < 1 || k > window_length)
        throw validation_error("time step " + std::to_string(k) + " outside window 1.." +
                               std::to_string(window_length));
    if (k < t.birth || k > t.last_step()) return nullptr;
    const auto& entry = t.states[static_cast<std::size_t>(k - t.birth)];
    return entry ? &*entry : nullptr;
}

inline std::optional<State> tau(const Trajectory& t, int k, int window_length) {
    const State* s = tau_ptr(t, k, window_length);
    if (!s) return std::nullopt;
    return *s;
}

// One element of tau(set, k): a state plus the trajectories producing it.
struct TauEntry {
    State state;
    std::vector<int> traj_indices;  // 0-based indices into set.trajectories
};

// Set of target states at step k; identical states collapse into one entry.
inline std::vector<TauEntry> tau_set(const TrajectorySet& set, int k) {
    std::vector<TauEntry> out;
    for (int i = 0; i < set.size(); ++i) {
        const State* s = tau_ptr(set.trajectories[static_cast<std::size_t>(i)], k,
                                 set.window_length);
        if (!s) continue;
        bool merged = false;
        for (auto& e : out) {
            if (e.state == *s) {
                e.traj_indices.push_back(i);
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({*s, {i}});
    }
    return out;
}

// Per-trajectory target slices of a comparison problem at a fixed step:
// x[i]/y[j] are null when trajectory i/j has no target there.
struct TargetSlice {
    std::vector<const State*> x;
    std::vector<const State*> y;

    int present_x() const {
        int n = 0;
        for (const State* s : x) n += (s != nullptr);
        return n;
    }
    int present_y() const {
        int n = 0;
        for (const State* s : y) n += (s != nullptr);
        return n;
    }
};

inline TargetSlice make_slice(const TrajectorySet& x, const TrajectorySet& y, int k) {
    TargetSlice slice;
    slice.x.reserve(static_cast<std::size_t>(x.size()));
    slice.y.reserve(static_cast<std::size_t>(y.size()));
    for (const auto& t : x.trajectories) slice.x.push_back(tau_ptr(t, k, x.window_length));
    for (const auto& t : y.trajectories) slice.y.push_back(tau_ptr(t, k, y.window_length));
    return slice;
}

// Weighted per-step cost decomposition; switching is attributed to the row of
// the earlier step of the transition.
struct PerTimeCost {
    double loc = 0.0;
    double miss = 0.0;
    double false_ = 0.0;
    double switch_ = 0.0;

    double sum() const { return loc + miss + false_ + switch_; }
};

// Result of a trajectory-set distance: total value, weighted (and, when
// requested, window-normalized) per-step decomposition, and the optimal
// trajectory-level assignment trace when the method produces one.
struct ErrorReport {
    double total = 0.0;
    std::vector<PerTimeCost> per_time;
    std::vector<std::vector<int>> assignment_trace;  // per step: pi[i] in 0..n_y (0 = unassigned)
    bool is_metric = true;

    double loc() const {
        double a = 0.0;
        for (const auto& c : per_time) a += c.loc;
        return a;
    }
    double miss() const {
        double a = 0.0;
        for (const auto& c : per_time) a += c.miss;
        return a;
    }
    double false_total() const {
        double a = 0.0;
        for (const auto& c : per_time) a += c.false_;
        return a;
    }
    double switch_total() const {
        double a = 0.0;
        for (const auto& c : per_time) a += c.switch_;
        return a;
    }
};

}  // namespace trajmetric
