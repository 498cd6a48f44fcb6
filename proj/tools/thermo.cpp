// Copyright 2026 The thermoweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "thermoweak/sweep.hpp"

namespace tw = thermoweak;

namespace {

struct Flags {
  std::optional<std::string> config_path;
  std::optional<double> omega_z, omega_r, g0, theta, phi, sigma;
  std::optional<double> theta_min, theta_max, phi_min, phi_max;
  std::optional<double> beta, beta_min, beta_max;
  std::optional<double> sw_re, sw_im;
  std::optional<long> theta_steps, phi_steps, beta_steps, fock_dim, seed;
  std::optional<long> n_samples, replicates;
  std::optional<std::string> out;
  bool log_beta = false;
  bool serial = false;
};

void add_common_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "flat key=value config file");
  cmd->add_option("--omega-z", f.omega_z, "longitudinal spin frequency (rad/s)");
  cmd->add_option("--omega-r", f.omega_r, "transverse spin frequency (rad/s)");
  cmd->add_option("--g0", f.g0, "dimensionless coupling g*t*sigma");
  cmd->add_option("--theta", f.theta, "postselection polar angle, [0, pi]");
  cmd->add_option("--phi", f.phi, "postselection azimuth, [0, 2pi)");
  cmd->add_option("--theta-min", f.theta_min);
  cmd->add_option("--theta-max", f.theta_max);
  cmd->add_option("--theta-steps", f.theta_steps);
  cmd->add_option("--phi-min", f.phi_min);
  cmd->add_option("--phi-max", f.phi_max);
  cmd->add_option("--phi-steps", f.phi_steps);
  cmd->add_option("--beta", f.beta, "inverse temperature (s)");
  cmd->add_option("--beta-min", f.beta_min);
  cmd->add_option("--beta-max", f.beta_max);
  cmd->add_option("--beta-steps", f.beta_steps);
  cmd->add_flag("--log-beta", f.log_beta, "log-spaced beta grid");
  cmd->add_option("--fock-dim", f.fock_dim, "oscillator truncation dimension");
  cmd->add_option("--sigma", f.sigma, "pointer position width (m)");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--n-samples", f.n_samples, "samples per experiment replicate");
  cmd->add_option("--replicates", f.replicates, "experiment replicates");
  cmd->add_option("--sw-re", f.sw_re, "measured Re S_w (invert-beta input)");
  cmd->add_option("--sw-im", f.sw_im, "measured Im S_w (invert-beta input)");
  cmd->add_option("--out", f.out, "output CSV path");
  cmd->add_flag("--serial", f.serial, "run sweeps single-threaded");
}

std::string fmt(double v) { return tw::format_csv_value(v); }

tw::RunConfig resolve(const Flags& f, double default_g0) {
  tw::RunConfig cfg;
  cfg.g0 = default_g0;
  if (f.config_path) {
    tw::load_config_file(cfg, *f.config_path);
  }
  const auto set = [&](const char* key, const auto& opt) {
    if (opt) {
      tw::apply_setting(cfg, key, fmt(static_cast<double>(*opt)));
    }
  };
  set("omega_z", f.omega_z);
  set("omega_r", f.omega_r);
  set("g0", f.g0);
  set("sigma", f.sigma);
  set("theta", f.theta);
  set("phi", f.phi);
  set("beta", f.beta);
  set("theta_min", f.theta_min);
  set("theta_max", f.theta_max);
  set("theta_steps", f.theta_steps);
  set("phi_min", f.phi_min);
  set("phi_max", f.phi_max);
  set("phi_steps", f.phi_steps);
  set("beta_min", f.beta_min);
  set("beta_max", f.beta_max);
  set("beta_steps", f.beta_steps);
  set("fock_dim", f.fock_dim);
  set("seed", f.seed);
  set("n_samples", f.n_samples);
  set("replicates", f.replicates);
  set("sw_re", f.sw_re);
  set("sw_im", f.sw_im);
  if (f.log_beta) {
    tw::apply_setting(cfg, "log_beta", "true");
  }
  if (f.serial) {
    tw::apply_setting(cfg, "parallel", "false");
  }
  if (f.out) {
    tw::apply_setting(cfg, "out", *f.out);
  }
  tw::validate(cfg);
  return cfg;
}

void write_echo(const tw::RunConfig& cfg) {
  if (!cfg.out_path.empty()) {
    tw::write_text_file(cfg.out_path + ".config.txt", tw::config_echo(cfg));
  }
}

struct SinglePoint {
  tw::SpinParams spin;
  tw::PostselectionAngles angles;
  double beta;
  tw::CMatrix h;
  tw::SpinState psi_f;
  tw::SpinDensity rho;
};

SinglePoint make_point(const tw::RunConfig& cfg) {
  SinglePoint pt{{cfg.omega_z, cfg.omega_r},
                 {cfg.theta.min, cfg.phi.min},
                 cfg.beta.min,
                 {},
                 {},
                 {}};
  pt.h = tw::build_spin_hamiltonian(pt.spin);
  pt.psi_f = tw::postselect_state(pt.angles);
  pt.rho = tw::gibbs_state(pt.h, tw::InverseTemperature(pt.beta));
  return pt;
}

int cmd_weak_value(const tw::RunConfig& cfg) {
  const SinglePoint pt = make_point(cfg);
  const tw::WeakValue exact = tw::weak_value_exact(pt.rho, pt.psi_f);
  std::cout << "S_w (exact)       = " << fmt(exact.value.real()) << " "
            << fmt(exact.value.imag()) << "i\n";
  const double bh = pt.beta * tw::hermitian_norm(pt.h);
  if (bh <= 0.5) {
    const tw::WeakValue lin =
        tw::weak_value_first_order(pt.h, pt.psi_f, tw::InverseTemperature(pt.beta));
    std::cout << "S_w (first-order) = " << fmt(lin.value.real()) << " "
              << fmt(lin.value.imag()) << "i\n";
  } else {
    std::cout << "S_w (first-order) skipped: beta*||H|| = " << fmt(bh) << " > 0.5\n";
  }
  if (bh > 0.1) {
    std::cerr << "warning: beta*||H|| = " << fmt(bh)
              << " is outside the high-temperature regime\n";
  }
  std::cout << "postselect_prob   = "
            << fmt(tw::sandwich(pt.psi_f, pt.rho, pt.psi_f).real()) << "\n";
  return 0;
}

int cmd_invert_beta(const tw::RunConfig& cfg) {
  const SinglePoint pt = make_point(cfg);
  tw::WeakValue s_w{};
  if (cfg.sw_re || cfg.sw_im) {
    s_w = {tw::Complex(cfg.sw_re.value_or(0.0), cfg.sw_im.value_or(0.0)),
           tw::WeakValueKind::exact};
    std::cout << "S_w (input)    = " << fmt(s_w.value.real()) << " "
              << fmt(s_w.value.imag()) << "i\n";
  } else {
    s_w = tw::weak_value_exact(pt.rho, pt.psi_f);
    std::cout << "S_w (exact at beta = " << fmt(pt.beta) << ") = "
              << fmt(s_w.value.real()) << " " << fmt(s_w.value.imag()) << "i\n";
  }
  const auto est = tw::invert_beta(s_w, tw::inversion_coefficients(pt.h, pt.psi_f));
  std::cout << "beta_hat       = " << fmt(est.beta) << "\n"
            << "imag_residue   = " << fmt(est.imag_residue) << "\n";
  std::cout << "beta_hat (paper special case, (psi_1+psi_2)/sqrt(2)) = "
            << fmt(tw::invert_beta_symmetric_x(s_w, pt.spin)) << "\n";
  if (!cfg.sw_re && !cfg.sw_im) {
    std::cout << "relative error = " << fmt(std::abs(est.beta - pt.beta) / pt.beta)
              << "\n";
  }
  return 0;
}

int cmd_pointer(const tw::RunConfig& cfg) {
  const SinglePoint pt = make_point(cfg);
  const tw::FockSpace space(cfg.fock_dim, cfg.sigma);
  const tw::CouplingParams coupling{cfg.g0};
  const tw::PointerState vacuum = tw::gaussian_ground_state(space);

  const tw::JointState evolved = tw::evolve_exact(pt.rho, vacuum, coupling);
  const auto projected = tw::postselect_pointer(evolved, pt.psi_f);
  const tw::FockOperators ops = tw::fock_operators(space);
  const double z_exact = (ops.z * projected.density).trace().real();
  const double p_exact = (ops.p * projected.density).trace().real();

  const tw::WeakValue s_w = tw::weak_value_exact(pt.rho, pt.psi_f);
  const tw::PointerState weak = tw::weak_final_state(s_w.value, coupling, space);
  const auto readouts = tw::pointer_readouts(weak, coupling);
  const double fidelity =
      std::norm(tw::dominant_eigenvector(projected.density).dot(weak.coeffs));

  std::cout << "S_w                      = " << fmt(s_w.value.real()) << " "
            << fmt(s_w.value.imag()) << "i\n"
            << "postselect_prob (exact)  = " << fmt(projected.probability) << "\n"
            << "<z> exact evolution      = " << fmt(z_exact) << "\n"
            << "<p> exact evolution      = " << fmt(p_exact) << "\n"
            << "<z> weak state (matrix)  = " << fmt(readouts.matrix.z_mean) << "\n"
            << "<p> weak state (matrix)  = " << fmt(readouts.matrix.p_mean) << "\n"
            << "<z> weak closed form     = " << fmt(readouts.closed_form.z_mean) << "\n"
            << "<p> weak closed form     = " << fmt(readouts.closed_form.p_mean) << "\n"
            << "pointer purity           = " << fmt(tw::purity(projected.density)) << "\n"
            << "weak-state fidelity      = " << fmt(fidelity) << "\n";
  return 0;
}

int cmd_qfi_sweep(const tw::RunConfig& cfg) {
  const auto mode = cfg.parallel ? tw::ExecMode::parallel : tw::ExecMode::serial;
  const auto rows = tw::run_qfi_sweep(cfg, mode);
  const std::string out = cfg.out_path.empty() ? "qfi_sweep.csv" : cfg.out_path;
  tw::RunConfig echo_cfg = cfg;
  echo_cfg.out_path = out;
  tw::write_sweep_csv(out, rows);
  write_echo(echo_cfg);
  const auto s = tw::summarize(rows);
  std::cout << "rows=" << s.n_rows << " qfi_min=" << fmt(s.qfi_min)
            << " qfi_max=" << fmt(s.qfi_max) << " degenerate=" << s.degenerate_count
            << " out=" << out << "\n";
  if (s.degenerate_count == s.n_rows && s.n_rows > 0) {
    std::cerr << "error: every grid point is degenerate\n";
    return 3;
  }
  return 0;
}

int cmd_experiment(const tw::RunConfig& cfg) {
  tw::ExperimentConfig ec;
  ec.beta_true = cfg.beta.min;
  ec.angles = {cfg.theta.min, cfg.phi.min};
  ec.coupling = {cfg.g0};
  ec.spin = {cfg.omega_z, cfg.omega_r};
  ec.sigma = cfg.sigma;
  ec.n_samples = cfg.n_samples;
  ec.n_replicates = cfg.n_replicates;
  ec.seed = cfg.seed;
  ec.parallel = cfg.parallel;
  const tw::ExperimentRecord record = tw::simulate_experiment(ec);

  const std::string out = cfg.out_path.empty() ? "experiment.csv" : cfg.out_path;
  tw::RunConfig echo_cfg = cfg;
  echo_cfg.out_path = out;
  tw::write_experiment_csv(out, record);
  write_echo(echo_cfg);

  std::size_t failures = 0;
  for (const auto& rep : record.replicates) {
    if (!rep.ok) {
      ++failures;
    }
  }
  const double ratio = record.sample_variance / record.crb;
  std::cout << "beta_true=" << fmt(record.beta_true)
            << " mean_beta_hat=" << fmt(record.beta_estimate)
            << " bias=" << fmt(record.beta_estimate - record.beta_true)
            << " variance=" << fmt(record.sample_variance)
            << " crb=" << fmt(record.crb) << " variance/crb=" << fmt(ratio)
            << " failures=" << failures << " out=" << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-measurement thermometry of a spin coupled to a cantilever"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* weak_value = app.add_subcommand(
      "weak-value", "exact and first-order weak value at one grid point");
  CLI::App* invert = app.add_subcommand(
      "invert-beta", "estimate beta from a weak value");
  CLI::App* pointer = app.add_subcommand(
      "pointer", "exact vs weak-limit pointer state and readouts");
  CLI::App* sweep = app.add_subcommand(
      "qfi-sweep", "QFI/CRB sweep over (theta, phi, beta); writes CSV");
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Monte-Carlo thermometry rehearsal; writes CSV");
  for (CLI::App* cmd : {weak_value, invert, pointer, sweep, experiment}) {
    add_common_options(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    // The Monte-Carlo demo needs desk-scale coupling for per-sample signal;
    // everything else defaults to the reference g0 = 1e-8.
    const double default_g0 = experiment->parsed() ? 0.05 : 1e-8;
    const tw::RunConfig cfg = resolve(flags, default_g0);
    if (weak_value->parsed()) {
      return cmd_weak_value(cfg);
    }
    if (invert->parsed()) {
      return cmd_invert_beta(cfg);
    }
    if (pointer->parsed()) {
      return cmd_pointer(cfg);
    }
    if (sweep->parsed()) {
      return cmd_qfi_sweep(cfg);
    }
    if (experiment->parsed()) {
      return cmd_experiment(cfg);
    }
  } catch (const tw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tw::InsensitivePostselectionError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 3;
  } catch (const tw::OrthogonalPostselectionError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 3;
  } catch (const tw::TruncationError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
