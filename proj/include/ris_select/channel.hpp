// SPDX-License-Identifier: Apache-2.0
//
// ris-select: RIS type selection and sum-rate analysis
// Copyright (C) 2026 The ris-select Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "detail/parallel.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace ris_select {

/// Far-field link constants shared by every BS-antenna / element / UE path.
struct LinkBudget {
  double avg_pathloss_reflect = 0.0;   // includes epsilon_r
  double avg_pathloss_transmit = 0.0;  // includes epsilon_t
  double big_l = 0.0;                  // L = sigma^2 / (P_T K_t MN beta_hat / epsilon)
  double cos_sq_theta = 0.0;

  double avg_pathloss(Zone zone) const {
    return zone == Zone::kReflection ? avg_pathloss_reflect : avg_pathloss_transmit;
  }
};

/// Average pathloss per zone and the composite constant L.
///
/// Element-level distances and angles collapse to the centre values (BS and
/// UEs are in the far field of the panel). Throws DegenerateGeometryError at
/// grazing incidence.
inline LinkBudget link_budget(const ScenarioConfig& cfg) {
  const double cos_sq = incident_angle_factor(cfg);
  if (!(cos_sq > 0.0))
    throw DegenerateGeometryError("BS ray grazes the RIS plane (bs_ris_distance_m equals the height difference)");

  const RisPanel& p = cfg.panel;
  const double pi3_64 = 64.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double aperture = cfg.wavelength_m * cfg.wavelength_m * cfg.antenna_gain * p.element_width_m *
                          p.element_height_m;
  const double spread = std::pow(cfg.bs_ris_distance_m * cfg.ris_ue_distance_m, cfg.pathloss_exponent);
  const double common = aperture / pi3_64 * p.element_gain * cos_sq / spread;

  LinkBudget b;
  b.cos_sq_theta = cos_sq;
  b.avg_pathloss_reflect = common * p.radiation_reflect;
  b.avg_pathloss_transmit = common * p.radiation_transmit;
  b.big_l = pi3_64 * spread * cfg.noise_variance_w /
            (cfg.transmit_power_w * aperture * p.element_gain * cos_sq * cfg.bs_antennas *
             static_cast<double>(p.elements()));
  return b;
}

/// Per-element response Gamma_zone * exp(-j phi_zone) for one RIS type.
inline std::vector<std::complex<double>> element_response(const RisPanel& panel, RisType type, Zone zone) {
  const Amplitudes a = amplitudes(type);
  const double amplitude = zone == Zone::kReflection ? a.reflect : a.transmit;
  const auto& phases = zone == Zone::kReflection ? panel.phase_reflect_rad : panel.phase_transmit_rad;
  std::vector<std::complex<double>> out(panel.elements());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::polar(amplitude, -phases[i]);
  return out;
}

namespace detail {

// sum_mn g_mn * response_mn with g drawn at stream positions [first, first + MN).
inline std::complex<double> aggregate_gain(FadingLaw law, const CounterRng& rng, std::uint64_t first,
                                           const std::vector<std::complex<double>>& response) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < response.size(); ++i) acc += draw_fading(law, rng, first + i) * response[i];
  return acc;
}

// Stream position of the fading draw for (ue, antenna, element 0).
inline std::uint64_t entry_stream_offset(const ScenarioConfig& cfg, int ue, int antenna) {
  return (static_cast<std::uint64_t>(ue) * static_cast<std::uint64_t>(cfg.bs_antennas) +
          static_cast<std::uint64_t>(antenna)) *
         static_cast<std::uint64_t>(cfg.panel.elements());
}

}  // namespace detail

struct ChannelMatrix {
  int rows = 0;  // S
  int cols = 0;  // K_t
  std::vector<std::complex<double>> entries;  // row-major
  RisType ris_type = RisType::kReflective;
  std::uint64_t seed = 0;
  std::optional<std::string> warning;

  const std::complex<double>& at(int ue, int antenna) const {
    return entries[static_cast<std::size_t>(ue) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(antenna)];
  }

  // [H H^H]_{s,s}
  double row_energy(int ue) const {
    double e = 0.0;
    for (int k = 0; k < cols; ++k) e += std::norm(at(ue, k));
    return e;
  }
};

/// Random S x K_t channel for one fading realisation.
///
/// Entry (s, k) is sqrt(beta_hat_zone) * sum_mn g_mn Gamma_mn with g drawn from
/// `fading`. Fading draws depend only on (seed, s, k, m, n), never on the RIS
/// type, so the three types can be compared on common random numbers.
inline ChannelMatrix sample_channel(const ScenarioConfig& cfg, RisType type, std::uint64_t seed,
                                    FadingLaw fading = FadingLaw::kComplexGaussian) {
  const LinkBudget budget = link_budget(cfg);
  const CounterRng rng(seed);
  const auto reflect = element_response(cfg.panel, type, Zone::kReflection);
  const auto transmit = element_response(cfg.panel, type, Zone::kTransmission);

  ChannelMatrix h;
  h.rows = cfg.users_total;
  h.cols = cfg.bs_antennas;
  h.ris_type = type;
  h.seed = seed;
  h.entries.resize(static_cast<std::size_t>(h.rows) * static_cast<std::size_t>(h.cols));
  if (type == RisType::kReflective && cfg.users_reflection() == 0)
    h.warning = "reflective RIS with no reflection-zone UEs: nobody is served";
  if (type == RisType::kTransmissive && cfg.users_transmission == 0)
    h.warning = "transmissive RIS with no transmission-zone UEs: nobody is served";

  for (int s = 0; s < h.rows; ++s) {
    const Zone zone = cfg.zone_of(s);
    const double scale = std::sqrt(budget.avg_pathloss(zone));
    const auto& response = zone == Zone::kReflection ? reflect : transmit;
    for (int k = 0; k < h.cols; ++k) {
      h.entries[static_cast<std::size_t>(s) * static_cast<std::size_t>(h.cols) + static_cast<std::size_t>(k)] =
          scale * detail::aggregate_gain(fading, rng, detail::entry_stream_offset(cfg, s, k), response);
    }
  }
  return h;
}

/// Empirical moments of the normalised aggregate (sum_mn g_mn Gamma_mn) / sqrt(MN).
struct GainStatistics {
  std::size_t trials = 0;
  std::complex<double> mean{0.0, 0.0};
  double variance = 0.0;         // E|z - mean|^2
  double variance_stderr = 0.0;  // standard error of `variance`
  double expected_variance = 0.0;  // |Gamma|^2 of the zone sampled
  double kurtosis_real = 0.0;    // 3 for a Gaussian
  double kurtosis_imag = 0.0;
};

/// Samples the aggregate of UE 0 / antenna 0 over `trials` independent seeds.
/// The zone is the one the type serves (reflection for hybrid).
inline GainStatistics aggregated_gain_statistics(const ScenarioConfig& cfg, RisType type, std::size_t trials,
                                                 FadingLaw fading = FadingLaw::kComplexGaussian,
                                                 std::uint64_t base_seed = 0) {
  if (trials < 100) throw ValidationError("trials", "at least 100 trials are needed for gain statistics");
  const Zone zone = type == RisType::kTransmissive ? Zone::kTransmission : Zone::kReflection;
  const auto response = element_response(cfg.panel, type, zone);
  const double norm = 1.0 / std::sqrt(static_cast<double>(cfg.panel.elements()));

  std::vector<std::complex<double>> z(trials);
  detail::parallel_for(trials, [&](std::size_t t) {
    const CounterRng rng(derive_seed(base_seed, t));
    z[t] = norm * detail::aggregate_gain(fading, rng, 0, response);
  });

  const double n = static_cast<double>(trials);
  std::vector<double> buf(trials);
  const auto mean_of = [&](auto&& f) {
    for (std::size_t i = 0; i < trials; ++i) buf[i] = f(z[i]);
    return detail::pairwise_sum(buf) / n;
  };

  GainStatistics st;
  st.trials = trials;
  st.expected_variance = power_fraction(type, zone);
  st.mean = {mean_of([](auto v) { return v.real(); }), mean_of([](auto v) { return v.imag(); })};
  const auto m = st.mean;
  st.variance = mean_of([&](auto v) { return std::norm(v - m); }) * n / (n - 1.0);
  const double fourth = mean_of([&](auto v) { return std::norm(v - m) * std::norm(v - m); });
  st.variance_stderr = std::sqrt(std::max(0.0, fourth - st.variance * st.variance) / n);

  const auto kurtosis = [&](auto part) {
    const double m2 = mean_of([&](auto v) { const double d = part(v) - part(m); return d * d; });
    const double m4 = mean_of([&](auto v) { const double d = part(v) - part(m); return d * d * d * d; });
    return m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  };
  st.kurtosis_real = kurtosis([](std::complex<double> v) { return v.real(); });
  st.kurtosis_imag = kurtosis([](std::complex<double> v) { return v.imag(); });
  return st;
}

// ------------------------------------------------------------------------
// Matrix dump
// ------------------------------------------------------------------------

/// Text dump: `#` header lines naming the config hash, seed, type and shape,
/// then one line per UE with K_t space-separated `re,im` pairs.
inline void write_channel_dump(std::ostream& out, const ChannelMatrix& h, std::uint64_t cfg_hash) {
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << cfg_hash;
  out << "# ris-select channel dump\n";
  out << "# config_hash " << hash.str() << '\n';
  out << "# seed " << h.seed << '\n';
  out << "# type " << to_string(h.ris_type) << '\n';
  out << "# shape " << h.rows << ' ' << h.cols << '\n';
  for (int s = 0; s < h.rows; ++s) {
    for (int k = 0; k < h.cols; ++k) {
      const auto& v = h.at(s, k);
      out << (k ? " " : "") << detail::format_double(v.real()) << ',' << detail::format_double(v.imag());
    }
    out << '\n';
  }
}

struct ChannelDump {
  std::uint64_t cfg_hash = 0;
  ChannelMatrix matrix;
};

inline ChannelDump read_channel_dump(std::istream& in) {
  ChannelDump dump;
  std::string line;
  std::size_t line_no = 0;
  bool have_shape = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string key;
      hdr >> key;
      if (key == "config_hash") hdr >> std::hex >> dump.cfg_hash;
      else if (key == "seed") hdr >> dump.matrix.seed;
      else if (key == "type") {
        std::string t;
        hdr >> t;
        dump.matrix.ris_type = parse_ris_type(t);
      } else if (key == "shape") {
        hdr >> dump.matrix.rows >> dump.matrix.cols;
        have_shape = true;
      }
      continue;
    }
    if (!have_shape) throw SyntaxError(line_no, "channel data before '# shape' header");
    const auto pairs = detail::split_list(line);
    if (pairs.size() != 2 * static_cast<std::size_t>(dump.matrix.cols))
      throw SyntaxError(line_no, "expected " + std::to_string(dump.matrix.cols) + " complex entries");
    for (std::size_t i = 0; i < pairs.size(); i += 2) {
      const double re = detail::parse_double({"re", pairs[i], line_no});
      const double im = detail::parse_double({"im", pairs[i + 1], line_no});
      dump.matrix.entries.emplace_back(re, im);
    }
  }
  if (dump.matrix.entries.size() !=
      static_cast<std::size_t>(dump.matrix.rows) * static_cast<std::size_t>(dump.matrix.cols))
    throw SyntaxError(line_no, "row count does not match '# shape' header");
  return dump;
}

}  // namespace ris_select
