// fluxion: command-line front end for the four-level nonreciprocity simulator.
//
// Exit codes: 0 success, 2 config/validation error, 3 numerical failure,
// 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fluxion/fluxion.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> phi;
    std::optional<double> t_end;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> flux_points;
    std::optional<double> omega_lo;
    std::optional<double> omega_hi;
    std::optional<std::size_t> omega_points;
    std::optional<std::string> initial;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "JSON run configuration")->required();
    cmd->add_option("--out", o.out, "Output path (default: config 'out', else stdout)");
    cmd->add_option("--phi", o.phi, "Synthetic flux in rad; replaces the per-link phases");
    cmd->add_option("--initial", o.initial, "Initial level")->check(CLI::IsMember({"a", "b"}));
}

fluxion::RunConfig resolve(const Overrides& o)
{
    auto cfg = fluxion::load_config(o.config);
    if (o.phi)
        cfg.params = fluxion::with_flux(cfg.params, *o.phi);
    if (o.initial)
        fluxion::set_initial_level(cfg, *o.initial);
    if (o.t_end) {
        cfg.t_end = *o.t_end;
        cfg.times.clear();
    }
    if (o.samples) {
        cfg.samples = *o.samples;
        cfg.times.clear();
    }
    if (o.flux_points)
        cfg.flux_points = *o.flux_points;
    if (o.omega_lo)
        cfg.omega_lo = *o.omega_lo;
    if (o.omega_hi)
        cfg.omega_hi = *o.omega_hi;
    if (o.omega_points)
        cfg.omega_points = *o.omega_points;
    if (o.out)
        cfg.out = *o.out;
    fluxion::validate(cfg.params);
    return cfg;
}

void emit(const fluxion::RunConfig& cfg, const std::string& text)
{
    if (!cfg.out || cfg.out->empty() || *cfg.out == "-") {
        std::cout << text << std::flush;
        if (!std::cout)
            throw fluxion::Error(fluxion::ErrorCode::Io, "stdout", "write failed");
        return;
    }
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file)
        throw fluxion::Error(fluxion::ErrorCode::Io, *cfg.out, "cannot open for writing");
    file << text;
    file.close();
    if (!file)
        throw fluxion::Error(fluxion::ErrorCode::Io, *cfg.out, "write failed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nonreciprocal transitions in a driven cyclic four-level system"};
    app.require_subcommand(1);

    Overrides o;
    auto* simulate = app.add_subcommand("simulate", "Level populations over time (CSV)");
    add_common(simulate, o);
    simulate->add_option("--t-end", o.t_end, "Final time");
    simulate->add_option("--samples", o.samples, "Number of uniform time samples");

    auto* sweep = app.add_subcommand("sweep-flux", "Transition probabilities and isolation versus flux (CSV)");
    add_common(sweep, o);
    sweep->add_option("--flux-points", o.flux_points, "Flux grid size on (-pi, pi]");

    auto* spectrum = app.add_subcommand("spectrum", "Spontaneous emission spectrum (CSV)");
    add_common(spectrum, o);
    spectrum->add_option("--omega-lo", o.omega_lo, "Window start");
    spectrum->add_option("--omega-hi", o.omega_hi, "Window end");
    spectrum->add_option("--omega-points", o.omega_points, "Number of frequency samples");

    auto* spectrum_flux = app.add_subcommand("spectrum-flux", "Emission at a probe frequency versus flux (CSV)");
    add_common(spectrum_flux, o);
    spectrum_flux->add_option("--flux-points", o.flux_points, "Flux grid size on (-pi, pi]");

    auto* adiabatic = app.add_subcommand("adiabatic", "Adiabatic-elimination report (text)");
    add_common(adiabatic, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const auto cfg = resolve(o);
        std::string text;
        if (simulate->parsed())
            text = fluxion::cmd_simulate(cfg);
        else if (sweep->parsed())
            text = fluxion::cmd_sweep_flux(cfg);
        else if (spectrum->parsed())
            text = fluxion::cmd_spectrum(cfg);
        else if (spectrum_flux->parsed())
            text = fluxion::cmd_spectrum_flux(cfg);
        else
            text = fluxion::cmd_adiabatic(cfg);
        emit(cfg, text);
    } catch (const fluxion::Error& e) {
        std::cerr << "fluxion: " << e.what() << '\n';
        if (e.code() == fluxion::ErrorCode::Io)
            return kExitIo;
        return e.is_input_error() ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "fluxion: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
