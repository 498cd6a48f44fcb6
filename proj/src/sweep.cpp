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

#include "thermoweak/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace thermoweak {

namespace {

const char* kHeader =
    "theta,phi,beta,temperature,S_w_re,S_w_im,beta_hat,qfi,crb,z_mean,p_mean,"
    "postselect_prob,status";

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SweepRecord evaluate_grid_point(double theta, double phi, double beta,
                                const RunConfig& cfg) {
  SweepRecord row{};
  row.theta = theta;
  row.phi = phi;
  row.beta = beta;
  row.temperature = 1.0 / beta;  // +inf at beta = 0 by IEEE division
  row.beta_hat = kNaN;
  row.status = "ok";
  try {
    const SpinParams spin{cfg.omega_z, cfg.omega_r};
    const CouplingParams coupling{cfg.g0};
    const PostselectionAngles angles{theta, phi};
    const CMatrix h = build_spin_hamiltonian(spin);
    const SpinState psi_f = postselect_state(angles);
    const InverseTemperature inv_t(beta);
    const SpinDensity rho = gibbs_state(h, inv_t);

    row.postselect_prob = sandwich(psi_f, rho, psi_f).real();
    const WeakValue s_w = weak_value_exact(rho, psi_f);
    row.s_w_re = s_w.value.real();
    row.s_w_im = s_w.value.imag();

    // Weak-limit readouts of the final pointer state.
    const double k2 = 1.0 / (1.0 + cfg.g0 * cfg.g0 * std::norm(s_w.value));
    row.z_mean = -2.0 * cfg.sigma * cfg.g0 * k2 * s_w.value.imag();
    row.p_mean = k2 * cfg.g0 / cfg.sigma * s_w.value.real();

    const QfiResult f = qfi_analytic(inv_t, angles, coupling, spin);
    row.qfi = f.fisher;
    row.crb = cramer_rao(f, 1).variance_bound;

    try {
      row.beta_hat = invert_beta(s_w, inversion_coefficients(h, psi_f)).beta;
    } catch (const InsensitivePostselectionError&) {
      row.status = "insensitive";
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.s_w_re = kNaN;
    row.s_w_im = kNaN;
    row.qfi = kNaN;
    row.crb = kNaN;
    row.z_mean = kNaN;
    row.p_mean = kNaN;
    row.postselect_prob = kNaN;
  }
  return row;
}

std::vector<SweepRecord> run_qfi_sweep(const RunConfig& cfg, ExecMode mode) {
  const std::vector<double> thetas = grid_values(cfg.theta);
  const std::vector<double> phis = grid_values(cfg.phi);
  const std::vector<double> betas = grid_values(cfg.beta);
  const std::size_t n =
      thetas.size() * phis.size() * betas.size();
  std::vector<SweepRecord> rows(n);

  const auto point = [&](std::size_t k) {
    const std::size_t ib = k % betas.size();
    const std::size_t ip = (k / betas.size()) % phis.size();
    const std::size_t it = k / (betas.size() * phis.size());
    rows[k] = evaluate_grid_point(thetas[it], phis[ip], betas[ib], cfg);
  };

  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < static_cast<long long>(n); ++k) {
      point(static_cast<std::size_t>(k));
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      point(k);
    }
  }
  return rows;
}

bool records_equal(const SweepRecord& a, const SweepRecord& b) {
  const auto same = [](double x, double y) {
    std::uint64_t bx, by;
    std::memcpy(&bx, &x, sizeof(bx));
    std::memcpy(&by, &y, sizeof(by));
    return bx == by;
  };
  return same(a.theta, b.theta) && same(a.phi, b.phi) && same(a.beta, b.beta) &&
         same(a.temperature, b.temperature) && same(a.s_w_re, b.s_w_re) &&
         same(a.s_w_im, b.s_w_im) && same(a.beta_hat, b.beta_hat) &&
         same(a.qfi, b.qfi) && same(a.crb, b.crb) && same(a.z_mean, b.z_mean) &&
         same(a.p_mean, b.p_mean) && same(a.postselect_prob, b.postselect_prob) &&
         a.status == b.status;
}

SweepSummary summarize(const std::vector<SweepRecord>& rows) {
  SweepSummary s{rows.size(), std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity(), 0};
  for (const auto& row : rows) {
    if (std::isfinite(row.qfi)) {
      s.qfi_min = std::min(s.qfi_min, row.qfi);
      s.qfi_max = std::max(s.qfi_max, row.qfi);
    }
    if (row.status != "ok") {
      ++s.degenerate_count;
    }
  }
  return s;
}

std::string format_csv_value(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_csv_value(const std::string& s) {
  if (s == "nan") {
    return kNaN;
  }
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (s == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::string sweep_csv_string(const std::vector<SweepRecord>& rows) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const auto& r : rows) {
    out << format_csv_value(r.theta) << ',' << format_csv_value(r.phi) << ','
        << format_csv_value(r.beta) << ',' << format_csv_value(r.temperature) << ','
        << format_csv_value(r.s_w_re) << ',' << format_csv_value(r.s_w_im) << ','
        << format_csv_value(r.beta_hat) << ',' << format_csv_value(r.qfi) << ','
        << format_csv_value(r.crb) << ',' << format_csv_value(r.z_mean) << ','
        << format_csv_value(r.p_mean) << ',' << format_csv_value(r.postselect_prob)
        << ',' << quote_if_needed(r.status) << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& rows) {
  write_text_file(path, sweep_csv_string(rows));
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("unexpected CSV header in " + path);
  }
  std::vector<SweepRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 13) {
      throw std::runtime_error("malformed CSV row in " + path);
    }
    SweepRecord r;
    r.theta = parse_csv_value(f[0]);
    r.phi = parse_csv_value(f[1]);
    r.beta = parse_csv_value(f[2]);
    r.temperature = parse_csv_value(f[3]);
    r.s_w_re = parse_csv_value(f[4]);
    r.s_w_im = parse_csv_value(f[5]);
    r.beta_hat = parse_csv_value(f[6]);
    r.qfi = parse_csv_value(f[7]);
    r.crb = parse_csv_value(f[8]);
    r.z_mean = parse_csv_value(f[9]);
    r.p_mean = parse_csv_value(f[10]);
    r.postselect_prob = parse_csv_value(f[11]);
    r.status = f[12];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string experiment_csv_string(const ExperimentRecord& record) {
  std::ostringstream out;
  out << "replicate,beta_hat,S_w_re,S_w_im,z_bar,p_bar,status\n";
  for (std::size_t r = 0; r < record.replicates.size(); ++r) {
    const auto& rep = record.replicates[r];
    out << r << ',' << format_csv_value(rep.beta_hat) << ','
        << format_csv_value(rep.s_w_re) << ',' << format_csv_value(rep.s_w_im) << ','
        << format_csv_value(rep.z_bar) << ',' << format_csv_value(rep.p_bar) << ','
        << quote_if_needed(rep.ok ? "ok" : "error: " + rep.error) << '\n';
  }
  return out.str();
}

void write_experiment_csv(const std::string& path, const ExperimentRecord& record) {
  write_text_file(path, experiment_csv_string(record));
}

}  // namespace thermoweak
