#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "trajmetric/types.hpp"

namespace trajmetric {

// File format:
//   {"T": int, "trajectories": [{"label": str, "birth": int,
//     "states": [[f64,...]|null, ...]}]}
// null encodes an absent (hole) entry.

inline TrajectorySet trajectory_set_from_json(const nlohmann::json& j) {
    TrajectorySet set;
    if (!j.is_object() || !j.contains("T") || !j.contains("trajectories"))
        throw validation_error("trajectory set: expected object with 'T' and 'trajectories'");
    if (!j["T"].is_number_integer())
        throw validation_error("trajectory set: 'T' must be an integer");
    set.window_length = j["T"].get<int>();
    if (!j["trajectories"].is_array())
        throw validation_error("trajectory set: 'trajectories' must be an array");
    for (const auto& jt : j["trajectories"]) {
        Trajectory t;
        if (!jt.is_object() || !jt.contains("label") || !jt.contains("birth") ||
            !jt.contains("states"))
            throw validation_error(
                "trajectory: expected object with 'label', 'birth' and 'states'");
        if (!jt["label"].is_string())
            throw validation_error("trajectory: 'label' must be a string");
        t.label = jt["label"].get<std::string>();
        if (!jt["birth"].is_number_integer())
            throw validation_error(detail::field_msg(t, "birth", "must be an integer"));
        t.birth = jt["birth"].get<int>();
        if (!jt["states"].is_array())
            throw validation_error(detail::field_msg(t, "states", "must be an array"));
        for (const auto& js : jt["states"]) {
            if (js.is_null()) {
                t.states.push_back(std::nullopt);
                continue;
            }
            if (!js.is_array())
                throw validation_error(
                    detail::field_msg(t, "states", "entries must be arrays or null"));
            State s;
            for (const auto& jv : js) {
                if (!jv.is_number())
                    throw validation_error(
                        detail::field_msg(t, "states", "state components must be numbers"));
                s.push_back(jv.get<double>());
            }
            t.states.push_back(std::move(s));
        }
        set.trajectories.push_back(std::move(t));
    }
    validate_set(set);
    return set;
}

inline nlohmann::ordered_json trajectory_set_to_json(const TrajectorySet& set) {
    nlohmann::ordered_json j;
    j["T"] = set.window_length;
    j["trajectories"] = nlohmann::ordered_json::array();
    for (const auto& t : set.trajectories) {
        nlohmann::ordered_json jt;
        jt["label"] = t.label;
        jt["birth"] = t.birth;
        auto js = nlohmann::ordered_json::array();
        for (const auto& s : t.states) {
            if (s)
                js.push_back(*s);
            else
                js.push_back(nullptr);
        }
        jt["states"] = std::move(js);
        j["trajectories"].push_back(std::move(jt));
    }
    return j;
}

inline TrajectorySet load_trajectory_set_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("trajectory set: invalid JSON: ") + e.what());
    }
    return trajectory_set_from_json(j);
}

inline std::string save_trajectory_set_string(const TrajectorySet& set) {
    validate_set(set);
    return trajectory_set_to_json(set).dump(2) + "\n";
}

inline TrajectorySet load_trajectory_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_trajectory_set_string(buf.str());
}

inline void save_trajectory_set_file(const TrajectorySet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << save_trajectory_set_string(set);
    if (!out) throw validation_error("write failed: " + path);
}

}  // namespace trajmetric
