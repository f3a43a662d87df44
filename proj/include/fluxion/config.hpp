#pragma once

// Run configuration: one flat JSON object holding the SystemParams fields by
// name plus the command-specific keys below. Unknown keys are rejected.
//
//   comment             free text, ignored
//   initial             "a" | "b"
//   initial_amplitudes  [[re, im] x 4] for [A, B, C~, D~]
//   t_end, samples      uniform time grid on [0, t_end]
//   times               explicit time list (overrides t_end/samples)
//   t                   evaluation time for sweep-flux (default: adiabatic t_M)
//   flux_points         flux grid size on (-pi, pi]
//   omega_lo, omega_hi, omega_points   spectrum window
//   omega_probe         probe frequency for spectrum-flux
//   out                 output path

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fluxion/dynamics.hpp"
#include "fluxion/error.hpp"
#include "fluxion/model.hpp"

namespace fluxion {

struct RunConfig {
    SystemParams params;
    std::string comment;
    StateVector initial = StateVector::level(Level::a);
    /// Set when the initial state is a pure |a> or |b>.
    std::optional<Level> initial_level = Level::a;

    double t_end = 2.0;
    std::size_t samples = 401;
    std::vector<double> times;

    std::optional<double> t;
    std::size_t flux_points = 629;

    std::optional<double> omega_lo;
    std::optional<double> omega_hi;
    std::size_t omega_points = 2001;
    std::optional<double> omega_probe;

    std::optional<std::string> out;
};

inline void set_initial_level(RunConfig& cfg, std::string_view name)
{
    if (name == "a")
        cfg.initial_level = Level::a;
    else if (name == "b")
        cfg.initial_level = Level::b;
    else
        throw Error(ErrorCode::InvalidConfig, "initial", "expected \"a\" or \"b\"");
    cfg.initial = StateVector::level(*cfg.initial_level);
}

/// Time samples requested by the configuration.
inline std::vector<double> time_grid(const RunConfig& cfg)
{
    if (!cfg.times.empty())
        return cfg.times;
    if (cfg.samples == 0)
        throw Error(ErrorCode::InvalidConfig, "samples", "grid must be nonempty");
    if (!std::isfinite(cfg.t_end) || cfg.t_end < 0.0)
        throw Error(ErrorCode::InvalidConfig, "t_end", "must be finite and nonnegative");
    if (cfg.samples == 1)
        return {0.0};
    std::vector<double> ts(cfg.samples);
    for (std::size_t k = 0; k < cfg.samples; ++k)
        ts[k] = cfg.t_end * static_cast<double>(k) / static_cast<double>(cfg.samples - 1);
    if (cfg.t_end == 0.0)
        return {0.0};
    return ts;
}

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& key)
{
    if (!j.is_number())
        throw Error(ErrorCode::InvalidConfig, key, "expected a number");
    return j.get<double>();
}

inline std::size_t json_count(const nlohmann::json& j, const std::string& key)
{
    if (!j.is_number_unsigned())
        throw Error(ErrorCode::InvalidConfig, key, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

} // namespace detail

/// Parses a configuration document and validates its parameters.
inline RunConfig parse_config(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, "", e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorCode::InvalidConfig, "", "top level must be an object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        const auto field = std::find_if(kParamFields.begin(), kParamFields.end(),
                                        [&](const NamedField& f) { return f.name == key; });
        if (field != kParamFields.end()) {
            cfg.params.*field->member = detail::json_number(value, key);
        } else if (key == "comment") {
            if (!value.is_string())
                throw Error(ErrorCode::InvalidConfig, key, "expected a string");
            cfg.comment = value.get<std::string>();
        } else if (key == "initial") {
            if (!value.is_string())
                throw Error(ErrorCode::InvalidConfig, key, "expected \"a\" or \"b\"");
            set_initial_level(cfg, value.get<std::string>());
        } else if (key == "initial_amplitudes") {
            if (!value.is_array() || value.size() != 4)
                throw Error(ErrorCode::InvalidConfig, key, "expected four [re, im] pairs");
            ComplexVector4 v;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& pair = value[i];
                if (!pair.is_array() || pair.size() != 2)
                    throw Error(ErrorCode::InvalidConfig, key, "expected four [re, im] pairs");
                v[i] = cplx(detail::json_number(pair[0], key), detail::json_number(pair[1], key));
            }
            if (!v.is_finite())
                throw Error(ErrorCode::InvalidConfig, key, "non-finite amplitude");
            cfg.initial = StateVector::from_vector(v);
            cfg.initial_level.reset();
        } else if (key == "t_end") {
            cfg.t_end = detail::json_number(value, key);
        } else if (key == "samples") {
            cfg.samples = detail::json_count(value, key);
        } else if (key == "times") {
            if (!value.is_array() || value.empty())
                throw Error(ErrorCode::InvalidConfig, key, "expected a nonempty array");
            cfg.times.clear();
            for (const auto& x : value)
                cfg.times.push_back(detail::json_number(x, key));
        } else if (key == "t") {
            cfg.t = detail::json_number(value, key);
        } else if (key == "flux_points") {
            cfg.flux_points = detail::json_count(value, key);
        } else if (key == "omega_lo") {
            cfg.omega_lo = detail::json_number(value, key);
        } else if (key == "omega_hi") {
            cfg.omega_hi = detail::json_number(value, key);
        } else if (key == "omega_points") {
            cfg.omega_points = detail::json_count(value, key);
        } else if (key == "omega_probe") {
            cfg.omega_probe = detail::json_number(value, key);
        } else if (key == "out") {
            if (!value.is_string())
                throw Error(ErrorCode::InvalidConfig, key, "expected a string");
            cfg.out = value.get<std::string>();
        } else {
            throw Error(ErrorCode::InvalidConfig, key, "unknown key");
        }
    }
    validate(cfg.params);
    return cfg;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::Io, path, "read failed");
    return ss.str();
}

inline RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

/// Serializes the parameter block as a flat JSON object.
inline nlohmann::json params_to_json(const SystemParams& params)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& f : kParamFields)
        j[std::string(f.name)] = params.*f.member;
    return j;
}

} // namespace fluxion
