// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gridwave {

enum class WaveletFamily : std::uint8_t { Cauchy = 0, BSpline4 = 1 };

// Analytic mother wavelet, sup-normalized (peak value 1).
class WaveletSpec {
 public:
  static WaveletSpec cauchy(double alpha);
  static WaveletSpec bspline4(double xi_fm);
  // "cauchy:300" or "bspline:6".
  static WaveletSpec parse(std::string_view text);

  WaveletFamily family() const { return family_; }
  double parameter() const { return param_; }
  std::string to_string() const;

  bool operator==(const WaveletSpec&) const = default;

 private:
  WaveletSpec(WaveletFamily f, double p) : family_(f), param_(p) {}
  WaveletFamily family_;
  double param_;
};

// Magnitude level defining the bandwidth used by q_factor: 10^(-3/10).
inline constexpr double kBandwidthLevel = 0.50118723362727224;

double wavelet_hat(const WaveletSpec& spec, double xi);
double peak_frequency(const WaveletSpec& spec);
// Peak frequency over the width of the region where wavelet_hat >= kBandwidthLevel.
double q_factor(const WaveletSpec& spec);

}  // namespace gridwave
