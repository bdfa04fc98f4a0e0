// Command-line front end: config ingestion, presets, sweeps, tabular output.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kimpa/config.h"
#include "kimpa/errors.h"
#include "kimpa/ki_material.h"
#include "kimpa/noise.h"
#include "kimpa/results_io.h"

using namespace kimpa;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::Parse:
    case ErrorKind::Validation:
      return 1;
    case ErrorKind::Io:
      return 3;
    default:
      return 2;
  }
}

struct Options {
  std::string config, preset, env, out, format, input;
  std::string idc, fp, span, xi3;
  int threads = -1;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "key = value configuration file");
  sub->add_option("--preset", o.preset, "named preset (design, environment, prototype or ranges)");
  sub->add_option("--env", o.env, "environment preset: ideal or paper-env");
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or structured");
  sub->add_option("--threads", o.threads, "worker threads (default: KIMPA_THREADS or all cores)");
  sub->add_option("--input", o.input, "input data file");
  sub->add_option("--idc", o.idc, "dc bias, e.g. 0.57mA");
  sub->add_option("--fp", o.fp, "pump frequency, e.g. 16.9GHz");
  sub->add_option("--span", o.span, "signal sweep lo:hi:step, e.g. 7.9GHz:8.9GHz:1MHz");
  sub->add_option("--xi3", o.xi3, "three-wave coefficient |xi3|/2pi, e.g. 2.7GHz");
  sub->add_option("--set", o.sets, "extra key=value override (repeatable)");
}

RunConfig build_config(Command cmd, const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : parse_config(read_text_file(o.config));
  cfg.command = cmd;
  if (!o.preset.empty()) {
    if (o.preset == "paper-env") cfg.environment_preset = o.preset;
    else if (o.preset == "appendixE-ranges") cfg.search_preset = o.preset;
    else if (o.preset == "getsinger-17dB") cfg.prototype = o.preset;
    else if (o.preset == "paper-device" || o.preset == "appendixB-worked") cfg.design_preset = o.preset;
    else fail(ErrorKind::Validation, "unknown preset '" + o.preset + "'");
  }
  if (!o.env.empty()) set_value(cfg, "environment", o.env);
  if (!o.out.empty()) cfg.output_path = o.out;
  if (!o.format.empty()) set_value(cfg, "format", o.format);
  if (o.threads >= 0) cfg.threads = static_cast<unsigned>(o.threads);
  if (!o.input.empty()) cfg.input_path = o.input;
  if (!o.idc.empty()) set_value(cfg, "i_dc", o.idc);
  if (!o.fp.empty()) set_value(cfg, "fp", o.fp);
  if (!o.span.empty()) set_value(cfg, "span", o.span);
  if (!o.xi3.empty()) set_value(cfg, "xi3", o.xi3);
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Parse, "--set expects key=value, got '" + s + "'");
    set_value(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

BandwidthCriteria criteria(const RunConfig& cfg, bool two_peaks) {
  return {cfg.number("threshold", 17.0), cfg.number("ripple_max", 5.0), two_peaks, 0.5};
}

void run_synth(const RunConfig& cfg) {
  const PrototypeCoefficients proto = build_prototype(cfg);
  const SynthesisResult s = synthesize_transformer(proto, cfg.number("z_nr", 60.0),
                                                   cfg.number("z_ki", 180.0), cfg.number("z0", 50.0));
  Table t{{"z_ref", "z_quarter", "z_parallel", "z_half", "z_nr_primed", "r_nr_primed"},
          {{s.z_ref, s.z_quarter, s.z_parallel, s.z_half, s.z_nr_primed, s.r_nr_primed}}};
  write_results(t, cfg.format, cfg.output_path);
}

void run_simulate(const RunConfig& cfg) {
  const DesignSpec d = build_design(cfg);
  const EnvironmentModel env = build_environment(cfg);
  const PumpDrive drive = build_drive(cfg, d);
  const double c = drive.omega_p / (2.0 * kTwoPi);
  const auto sp = cfg.span("span", {c - 0.5e9, c + 0.5e9, 1e6});
  const auto grid = make_grid(kTwoPi * sp[0], kTwoPi * sp[1], kTwoPi * sp[2]);
  const GainProfile p = gain_spectrum(d, drive, env, grid);
  write_results(simulate_table(p), cfg.format, cfg.output_path);
  const BandwidthReport r = bandwidth_report(p, criteria(cfg, false));
  std::fprintf(stderr, "max gain %.3f dB, %g-dB bandwidth %.6g MHz, %d peaks, ripple %.3f dB\n",
               r.max_gain_db, r.threshold_db, r.bandwidth / kTwoPi / 1e6, r.peak_count, r.ripple_db);
}

void run_map(const RunConfig& cfg) {
  const DesignSpec d = build_design(cfg);
  const EnvironmentModel env = build_environment(cfg);
  const auto fps = cfg.span("fp_span", {16.6e9, 17.2e9, 0.05e9});
  const auto idcs = cfg.span("idc_span", {0.40e-3, 0.70e-3, 0.025e-3});
  std::vector<double> wp;
  for (double f : make_grid(fps[0], fps[1], fps[2])) wp.push_back(kTwoPi * f);
  PumpPolicy policy;
  if (cfg.text("policy", "xi3") == "current") {
    policy = current_ramp_policy();
  } else {
    policy = xi3_ramp_policy(kTwoPi * cfg.number("xi3_cap", 20e9));
  }
  policy.stop_gain_db = cfg.number("stop_gain", policy.stop_gain_db);
  SpectrumWindow window{kTwoPi * cfg.number("window_half", 1e9), kTwoPi * cfg.number("window_step", 1e6)};
  const auto cells = pump_bias_map(d, env, wp, make_grid(idcs[0], idcs[1], idcs[2]), policy, window,
                                   criteria(cfg, true), cfg.threads);
  write_results(map_table(cells), cfg.format, cfg.output_path);
}

void run_search(const RunConfig& cfg) {
  const SearchRanges r = build_search_ranges(cfg);
  const auto records = search_designs(r, cfg.threads);
  write_results(search_table(records), cfg.format, cfg.output_path);
  for (const auto& s : aggregate_by_znr(records, r.omega0))
    std::fprintf(stderr, "z_nr %g ohm: %zu designs, mean bandwidth %.4g MHz, max eta %.4f, C %.4g fF\n",
                 s.z_nr, s.count, s.mean_bandwidth / kTwoPi / 1e6, s.max_eta, s.capacitance * 1e15);
}

void run_fit_ki(const RunConfig& cfg) {
  if (cfg.input_path.empty()) fail(ErrorKind::Validation, "fit-ki needs --input <csv>");
  const Table in = read_csv_file(cfg.input_path);
  const auto ci = column_index(in, "i_dc_A"), cd = column_index(in, "dfrac");
  std::vector<KiSample> data;
  for (const auto& row : in.rows) data.push_back({row[ci], row[cd]});
  KineticInductorModel base;
  base.l_k0 = cfg.number("l_k0", 0.0);
  base.l_geo = cfg.number("l_geo", 0.0);
  base.n_exp = cfg.number("n_exp", 2.21);
  const KiModelKind kind = parse_ki_model_kind(cfg.text("model", "quartic"));
  const KiFitResult fit = fit_ki_curve(data, kind, base);
  const double nan = std::nan("");
  Table t{{"i_star2_a", "i_star4_a", "i_star_star_a", "rms_residual", "iterations"},
          {{kind == KiModelKind::Clem ? nan : fit.model.i_star2,
            kind == KiModelKind::Quartic ? fit.model.i_star4 : nan,
            kind == KiModelKind::Clem ? fit.model.i_star_star : nan, fit.rms_residual,
            double(fit.iterations)}}};
  write_results(t, cfg.format, cfg.output_path);
}

void run_fit_qubit(const RunConfig& cfg) {
  if (cfg.input_path.empty()) fail(ErrorKind::Validation, "fit-qubit needs --input <csv>");
  if (!cfg.has("f_q")) fail(ErrorKind::Validation, "fit-qubit needs f_q (qubit frequency)");
  const Table in = read_csv_file(cfg.input_path);
  const auto cd = column_index(in, "detuning_hz"), cp = column_index(in, "p_vna_dbm");
  const auto cr = column_index(in, "re_s21"), cm = column_index(in, "im_s21");
  std::vector<QubitSample> data;
  for (const auto& row : in.rows)
    data.push_back({kTwoPi * row[cd], dbm_to_watts(row[cp]), Complex(row[cr], row[cm])});
  const QubitFitResult f = fit_qubit_saturation(data, kTwoPi * cfg.number("f_q", 0.0),
                                                cfg.number("p_ref", 0.0));
  Table t{{"gamma1_hz", "gamma_phi_hz", "omega_d_ref_hz", "p_ref_dbm", "a_in_db", "rms_residual"},
          {{f.gamma1 / kTwoPi, f.gamma_phi / kTwoPi, f.omega_d_ref / kTwoPi,
            10.0 * std::log10(f.p_ref / 1e-3), power_to_db(f.a_in), f.rms_residual}}};
  write_results(t, cfg.format, cfg.output_path);
}

void run_noise(const RunConfig& cfg) {
  if (cfg.input_path.empty()) fail(ErrorKind::Validation, "noise needs --input <csv>");
  for (const char* k : {"g_s", "g_sys_eff"})
    if (!cfg.has(k)) fail(ErrorKind::Validation, std::string("noise needs ") + k + " (dB)");
  const Table in = read_csv_file(cfg.input_path);
  const auto cf = column_index(in, "freq_hz"), con = column_index(in, "p_on_dbm");
  const auto coff = column_index(in, "p_off_dbm");
  const double g_s = db_to_power(cfg.number("g_s", 0.0));
  const double g_eff = db_to_power(cfg.number("g_sys_eff", 0.0));
  const double n1 = cfg.number("n1", 0.5);
  const double rbw = cfg.number("rbw", 10.0);
  Table t{{"freq_hz", "n4", "n4_off", "n_added", "t_sys_k"}, {}};
  for (const auto& row : in.rows) {
    const double w = kTwoPi * row[cf];
    const double n4 = power_to_quanta(dbm_to_watts(row[con]), w, rbw);
    const double n4_off = power_to_quanta(dbm_to_watts(row[coff]), w, rbw);
    t.rows.push_back({row[cf], n4, n4_off, added_noise(n4, n4_off, g_s, g_eff, n1),
                      system_noise_temperature(n4_off, w, g_eff)});
  }
  write_results(t, cfg.format, cfg.output_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design, simulation and calibration tools for kinetic-inductance parametric amplifiers"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Synth, "synthesize transformer impedances from prototype coefficients"},
      {Command::Simulate, "pumped reflection gain spectrum"},
      {Command::Map, "bandwidth map over pump frequency and dc bias"},
      {Command::Search, "brute-force design-space search"},
      {Command::FitKi, "fit a kinetic-inductance model to frequency-shift data"},
      {Command::FitQubit, "fit qubit saturation data for drive-line calibration"},
      {Command::Noise, "added noise and system temperature from noise spectra"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    add_common(sub, o);
    subs.emplace_back(cmd, sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    for (const auto& [cmd, sub] : subs) {
      if (!sub->parsed()) continue;
      const RunConfig cfg = build_config(cmd, o);
      switch (cmd) {
        case Command::Synth: run_synth(cfg); break;
        case Command::Simulate: run_simulate(cfg); break;
        case Command::Map: run_map(cfg); break;
        case Command::Search: run_search(cfg); break;
        case Command::FitKi: run_fit_ki(cfg); break;
        case Command::FitQubit: run_fit_qubit(cfg); break;
        case Command::Noise: run_noise(cfg); break;
      }
    }
  } catch (const Error& e) {
    std::cerr << "kimpa: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "kimpa: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
