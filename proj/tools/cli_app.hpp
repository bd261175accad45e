// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli_app.hpp
 * @brief Command-line front end. Every command produces one Table, echoed
 *        with its resolved configuration as CSV or JSON.
 *
 * Exit codes: 0 success, 2 usage error, 3 domain or resource error,
 * 4 convergence failure, 1 anything else.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kahlerstat/kahlerstat.hpp"

namespace kahlerstat::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, domain = 3, convergence = 4 };

/// Invalid combination of otherwise well-formed flags.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.config) j["config"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) j["rows"].push_back(row);
    return j;
}

inline Table table_from_json(const nlohmann::ordered_json& j) {
    Table t;
    for (const auto& [k, v] : j.at("config").items()) t.config.emplace_back(k, v.get<std::string>());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) t.rows.push_back(row.get<std::vector<double>>());
    return t;
}

inline void write_table(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "json")
        os << to_json(t).dump(2) << '\n';
    else
        write_csv(os, t);
}

struct CommonOptions {
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 12345;
    double hbar = 1.0;
};

inline void add_common(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output file (default: standard output)");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--hbar", c.hbar, "reduced Planck constant")->check(CLI::PositiveNumber);
}

inline Statistics parse_statistics(const std::string& name, double nu) {
    if (name == "anyon" && !(nu >= 0.0 && nu <= 1.0)) throw UsageError("--nu must lie in [0, 1]");
    return Statistics::parse(name, nu);
}

inline Statistics statistics_for_nu(double nu) {
    if (nu == 0.0) return Statistics::boson();
    if (nu == 1.0) return Statistics::fermion();
    return Statistics::anyon(nu);
}

/// Resolved value of every option on the subcommand, in declaration order.
inline std::vector<std::pair<std::string, std::string>> echo_config(const CLI::App* cmd) {
    std::vector<std::pair<std::string, std::string>> cfg{{"command", cmd->get_name()}};
    for (const CLI::Option* opt : cmd->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
        } else {
            value = opt->get_default_str();
        }
        cfg.emplace_back(name, value);
    }
    return cfg;
}

struct MetricOptions {
    std::string statistics = "boson";
    double nu = 0.0;
    double r_min = 0.0;
    double r_max = 5.0;
    int samples = 51;
};

inline Table cmd_metric(const MetricOptions& o, const CommonOptions& c) {
    if (o.r_min < 0.0 || o.r_max < o.r_min) throw UsageError("need 0 <= --r-min <= --r-max");
    if (o.samples < 0) throw UsageError("--samples must be non-negative");
    const Statistics s = parse_statistics(o.statistics, o.nu);
    const Units u{c.hbar};
    Table t;
    t.columns = {"r", "f_over_i", "ds2_coefficient", "rho_theta_coefficient"};
    for (int k = 0; k < o.samples; ++k) {
        const double r = o.samples == 1 ? o.r_min : o.r_min + (o.r_max - o.r_min) * k / (o.samples - 1);
        const double f = planar::two_body_symplectic(r, s, u).imag();
        const double x = 0.5 * r * r;
        // coefficient of [rho^2 dtheta^2 + drho^2] with rho = r^2/2, theta = 2 phi
        const double local = x > 0.0 ? f / x : planar::small_r_metric_coefficient(s, u);
        t.add_row({r, f, 2.0 * f, local});
    }
    return t;
}

struct VolumeOptions {
    std::string geometry = "disk";
    std::string statistics = "boson";
    double nu = 0.0;
    int n = 2;
    double radius = 4.0;
    double j = 1.0;
    std::optional<double> mu;
};

inline Table cmd_volume(const VolumeOptions& o, const CommonOptions& c) {
    const Statistics s = parse_statistics(o.statistics, o.nu);
    const Units u{c.hbar};
    Table t;
    if (o.geometry == "disk") {
        if (o.n != 2) throw UsageError("disk volumes are two-particle (relative coordinate); use --n 2");
        if (!(o.radius > 0.0)) throw UsageError("--radius must be positive");
        const auto field = planar::relative_field(s, u);
        const auto region = Region2D::disk(o.radius, AngularRange::half);
        const auto area = volume_area_integral(field, region);
        const auto boundary = volume_boundary_integral(field, region);
        const double closed = 0.5 * c.hbar * (pi * o.radius * o.radius - two_pi * s.nu());
        t.columns = {"radius", "nu", "area_integral", "area_error", "boundary_integral", "boundary_error",
                     "asymptotic_closed_form"};
        t.add_row({o.radius, s.nu(), area.value, area.error, boundary.value, boundary.error, closed});
        return t;
    }
    if (o.geometry != "sphere") throw UsageError("--geometry must be disk or sphere");
    const auto spin = sphere::Spin::from_j(o.j);
    const double area = spin.area(u);
    const auto v = sphere::nparticle_volume(area, o.n, s.nu(), u.h());
    t.columns = {"j", "n", "nu", "area", "volume", "saturated"};
    std::vector<double> row{spin.j(), static_cast<double>(o.n), s.nu(), area, v.value, v.saturated ? 1.0 : 0.0};
    if (o.mu) {
        const auto vv = vortex::vortex_volume(area, o.n, *o.mu, u.h());
        t.columns.insert(t.columns.end(), {"g", "vortex_volume", "vortex_saturated"});
        row.insert(row.end(), {vortex::statistics_parameter(*o.mu, u.h()).g, vv.value, vv.saturated ? 1.0 : 0.0});
    }
    t.add_row(row);
    return t;
}

struct ThermoOptions {
    double n = 100.0;
    double area = 1000.0;
    double alpha = 0.0;
    double beta = 1.0;
    double energy = 0.0;
};

inline Table cmd_thermo(const ThermoOptions& o, const CommonOptions& c) {
    statmech::ThermoState st{o.n, o.area, o.alpha, o.beta, o.energy, Units{c.hbar}.h()};
    const auto r = statmech::classical_thermo(st);
    Table t;
    t.columns = {"n", "area", "alpha", "rho", "entropy", "free_energy", "beta_pressure", "pressure"};
    std::vector<double> row{o.n, o.area, o.alpha, st.density(), r.entropy, r.free_energy, r.beta_pressure, r.pressure};
    if (o.n >= 1.0 && std::round(o.n) == o.n) {
        const auto e = statmech::classical_thermo_exact(st);
        t.columns.insert(t.columns.end(), {"entropy_exact", "beta_pressure_exact"});
        row.insert(row.end(), {e.entropy, e.beta_pressure});
    }
    t.add_row(row);
    return t;
}

struct SweepOptions {
    double alpha = 1.0;
    double rho = 0.5;
    double h0 = 1.0;
    int steps = 10;
};

inline Table cmd_limit_sweep(const SweepOptions& o, const CommonOptions&) {
    if (o.steps < 1) throw UsageError("--steps must be at least 1");
    if (!(o.h0 > 0.0)) throw UsageError("--h0 must be positive");
    std::vector<double> hs;
    for (int k = 0; k < o.steps; ++k) hs.push_back(std::ldexp(o.h0, -k));
    const auto sw = statmech::double_limit_sweep(o.alpha, o.rho, hs);
    Table t;
    t.columns = {"h", "g", "S_quantum", "S_classical", "gap", "betaP_quantum", "betaP_classical", "betaP_gap"};
    for (const auto& r : sw.rows)
        t.add_row({r.h, r.g, r.entropy_quantum, r.entropy_classical, r.entropy_gap, r.beta_p_quantum,
                   r.beta_p_classical, r.beta_p_gap});
    return t;
}

struct VortexOptions {
    int n = 1;
    double mu = 1.0 / (4.0 * pi);
    int points = 2000;
    double r_max = 20.0;
    std::string profile;
};

inline Table cmd_vortex(const VortexOptions& o, const CommonOptions& c) {
    if (o.points < 16) throw UsageError("--points must be at least 16");
    vortex::VortexParams p;
    p.n = o.n;
    p.mu = o.mu;
    p.points = static_cast<std::size_t>(o.points);
    p.r_max = o.r_max;
    const auto prof = vortex::solve_radial_vortex(p);
    if (!o.profile.empty()) {
        std::ofstream f(o.profile);
        if (!f) throw std::runtime_error("cannot open profile file " + o.profile);
        vortex::write_profile_csv(f, prof);
    }
    const auto sp = vortex::statistics_parameter(o.mu, Units{c.hbar}.h());
    Table t;
    t.columns = {"n", "mu", "g", "alpha", "flux", "flux_over_2pi_n", "energy", "energy_over_n_pi", "core_exponent",
                 "core_constant", "iterations", "boundary_value"};
    t.add_row({static_cast<double>(o.n), o.mu, sp.g, sp.alpha, prof.flux, prof.flux / (two_pi * o.n), prof.energy,
               prof.energy / (pi * o.n), vortex::core_exponent(prof), vortex::core_constant(prof, o.n),
               static_cast<double>(prof.iterations), prof.boundary_value});
    return t;
}

struct OscillatorOptions {
    int n = 2;
    double nu = 0.0;
    double omega_c = 0.0;
    double omega_0 = 1.0;
    double beta = 1.0;
    long long mc = 0;
};

inline Table cmd_oscillator(const OscillatorOptions& o, const CommonOptions& c) {
    if (o.mc < 0) throw UsageError("--mc must be non-negative");
    oscillator::OscillatorSystem s{o.n, o.nu, o.omega_c, o.omega_0, o.beta, c.hbar};
    const double zc = oscillator::classical_partition(s);
    const double zq = oscillator::quantum_partition(s);
    Table t;
    t.columns = {"n", "nu", "omega", "b", "ground_energy", "Z_classical", "Z_quantum", "ratio"};
    std::vector<double> row{static_cast<double>(o.n), o.nu, s.omega(), s.b(), oscillator::ground_energy(s), zc, zq,
                            std::exp(oscillator::log_quantum_partition(s) - oscillator::log_classical_partition(s))};
    if (o.mc > 0) {
        if (o.nu > 1.0) throw UsageError("Monte Carlo needs nu in [0, 1]");
        const auto e = oscillator::mc_partition_oracle(s, statistics_for_nu(o.nu), static_cast<std::size_t>(o.mc),
                                                       c.seed);
        t.columns.insert(t.columns.end(), {"mc_estimate", "mc_stderr", "mc_z_score"});
        row.insert(row.end(), {e.estimate, e.standard_error, (e.estimate - zc) / e.standard_error});
    }
    t.add_row(row);
    return t;
}

/// Parses and runs one command. Data goes to `out` (or --out), diagnostics
/// to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase-space geometry and classical statistics of identical particles"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    CommonOptions common;
    MetricOptions metric;
    VolumeOptions volume;
    ThermoOptions thermo;
    SweepOptions sweep;
    VortexOptions vort;
    OscillatorOptions osc;
    double volume_mu = 0.0;

    auto* m = app.add_subcommand("metric", "two-body symplectic form and metric against r");
    m->add_option("--statistics", metric.statistics)->check(CLI::IsMember({"boson", "fermion", "anyon"}));
    m->add_option("--nu", metric.nu, "anyon exponent");
    m->add_option("--r-min", metric.r_min);
    m->add_option("--r-max,--radius", metric.r_max);
    m->add_option("--samples", metric.samples);
    add_common(m, common);

    auto* v = app.add_subcommand("volume", "phase-space volumes");
    v->add_option("--geometry", volume.geometry)->check(CLI::IsMember({"disk", "sphere"}));
    v->add_option("--statistics", volume.statistics)->check(CLI::IsMember({"boson", "fermion", "anyon"}));
    v->add_option("--nu", volume.nu);
    v->add_option("--n", volume.n)->check(CLI::PositiveNumber);
    v->add_option("--radius", volume.radius);
    v->add_option("--j", volume.j);
    auto* mu_opt = v->add_option("--mu", volume_mu, "Chern-Simons coupling for the vortex comparison")
                       ->default_str("unset");
    add_common(v, common);

    auto* th = app.add_subcommand("thermo", "classical thermodynamics with excluded volume");
    th->add_option("--n", thermo.n);
    th->add_option("--area", thermo.area);
    th->add_option("--alpha", thermo.alpha);
    th->add_option("--beta", thermo.beta);
    th->add_option("--energy", thermo.energy);
    add_common(th, common);

    auto* ls = app.add_subcommand("limit-sweep", "quantum exclusion statistics against the classical limit");
    ls->add_option("--alpha", sweep.alpha);
    ls->add_option("--rho", sweep.rho);
    ls->add_option("--h0", sweep.h0);
    ls->add_option("--steps", sweep.steps);
    add_common(ls, common);

    auto* vx = app.add_subcommand("vortex", "self-dual radial vortex");
    vx->add_option("--n", vort.n)->check(CLI::PositiveNumber);
    vx->add_option("--mu", vort.mu)->default_str(format_double(vort.mu));
    vx->add_option("--points", vort.points);
    vx->add_option("--r-max", vort.r_max);
    vx->add_option("--profile", vort.profile, "write r,rho,B to this CSV file");
    add_common(vx, common);

    auto* os = app.add_subcommand("oscillator", "harmonic-trap partition functions");
    os->add_option("--n", osc.n)->check(CLI::PositiveNumber);
    os->add_option("--nu", osc.nu);
    os->add_option("--omega-c", osc.omega_c);
    os->add_option("--omega-0", osc.omega_0);
    os->add_option("--beta", osc.beta);
    os->add_option("--mc", osc.mc, "Monte Carlo samples (0 disables)");
    add_common(os, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        Table t;
        const CLI::App* cmd = app.get_subcommands().front();
        if (cmd == m) {
            t = cmd_metric(metric, common);
        } else if (cmd == v) {
            if (mu_opt->count() > 0) volume.mu = volume_mu;
            t = cmd_volume(volume, common);
        } else if (cmd == th) {
            t = cmd_thermo(thermo, common);
        } else if (cmd == ls) {
            t = cmd_limit_sweep(sweep, common);
        } else if (cmd == vx) {
            t = cmd_vortex(vort, common);
        } else {
            t = cmd_oscillator(osc, common);
        }
        t.config = echo_config(cmd);
        if (common.out.empty()) {
            write_table(out, t, common.format);
        } else {
            std::ofstream f(common.out);
            if (!f) throw std::runtime_error("cannot open output file " + common.out);
            write_table(f, t, common.format);
        }
        return ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << '\n';
        return convergence;
    } catch (const IncompressibleError& e) {
        err << "incompressible: " << e.what() << '\n';
        return domain;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return domain;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

}  // namespace kahlerstat::cli
