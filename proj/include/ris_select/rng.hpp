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

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ris_select {

namespace detail {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Stateless counter-based generator: the n-th output is a pure function of
/// (seed, n), so any draw can be regenerated or skipped independently.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : key_(detail::mix64(seed ^ 0x6A09E667F3BCC909ULL)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return detail::mix64(key_ + (counter + 1) * detail::kGoldenGamma);
  }

  // Uniform on (0, 1].
  double uniform_open(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

/// Seed for an independent sub-stream (trial, sweep cell) of a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream) {
  return detail::mix64(detail::mix64(base_seed) ^ detail::mix64(stream + 0x243F6A8885A308D3ULL));
}

/// Small-scale fading laws. All have zero mean and unit variance per complex sample.
enum class FadingLaw {
  kComplexGaussian,  // CN(0, 1)
  kUniformPhase,     // exp(j*U[0, 2pi))
  kQuadraturePhase,  // equiprobable {1, j, -1, -j}
};

inline std::string_view to_string(FadingLaw law) {
  switch (law) {
    case FadingLaw::kComplexGaussian: return "gaussian";
    case FadingLaw::kUniformPhase: return "uniform_phase";
    case FadingLaw::kQuadraturePhase: return "quadrature_phase";
  }
  return "unknown";
}

inline FadingLaw parse_fading_law(std::string_view name) {
  if (name == "gaussian") return FadingLaw::kComplexGaussian;
  if (name == "uniform_phase") return FadingLaw::kUniformPhase;
  if (name == "quadrature_phase") return FadingLaw::kQuadraturePhase;
  throw ValidationError("fading", "unknown fading law '" + std::string(name) + "'");
}

/// Draw number `index` of the fading stream. Consumes counters 2*index and 2*index+1.
inline std::complex<double> draw_fading(FadingLaw law, const CounterRng& rng, std::uint64_t index) {
  const std::uint64_t c = 2 * index;
  switch (law) {
    case FadingLaw::kComplexGaussian: {
      // Box-Muller; |g|^2 = -ln(u) is Exp(1).
      const double radius = std::sqrt(-std::log(rng.uniform_open(c)));
      const double angle = 2.0 * std::numbers::pi * rng.uniform(c + 1);
      return {radius * std::cos(angle), radius * std::sin(angle)};
    }
    case FadingLaw::kUniformPhase: {
      const double angle = 2.0 * std::numbers::pi * rng.uniform(c);
      return {std::cos(angle), std::sin(angle)};
    }
    case FadingLaw::kQuadraturePhase: {
      switch (rng.bits(c) >> 62) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
  }
  return {};
}

}  // namespace ris_select
