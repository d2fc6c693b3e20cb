// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/wavelets.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gridwave/errors.hpp"

namespace gridwave {

WaveletSpec WaveletSpec::cauchy(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InvalidArgument("cauchy alpha must exceed 1");
  return WaveletSpec(WaveletFamily::Cauchy, alpha);
}

WaveletSpec WaveletSpec::bspline4(double xi_fm) {
  if (!(xi_fm > 0.0) || !std::isfinite(xi_fm)) throw InvalidArgument("bspline xi_fm must be positive");
  return WaveletSpec(WaveletFamily::BSpline4, xi_fm);
}

WaveletSpec WaveletSpec::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("wavelet must look like cauchy:ALPHA or bspline:XIFM");
  auto name = text.substr(0, colon);
  auto num = text.substr(colon + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw InvalidArgument("bad wavelet parameter '" + std::string(num) + "'");
  if (name == "cauchy") return cauchy(value);
  if (name == "bspline" || name == "bspline4") return bspline4(value);
  throw InvalidArgument("unknown wavelet family '" + std::string(name) + "'");
}

std::string WaveletSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << (family_ == WaveletFamily::Cauchy ? "cauchy:" : "bspline:") << param_;
  return os.str();
}

double peak_frequency(const WaveletSpec& spec) {
  if (spec.family() == WaveletFamily::Cauchy) return (spec.parameter() - 1.0) / (4.0 * std::numbers::pi);
  return spec.parameter();
}

double wavelet_hat(const WaveletSpec& spec, double xi) {
  if (!(xi > 0.0)) return 0.0;
  if (spec.family() == WaveletFamily::Cauchy) {
    const double pk = peak_frequency(spec);
    const double a = 0.5 * (spec.parameter() - 1.0);
    return std::exp(a * std::log(xi / pk) - 2.0 * std::numbers::pi * (xi - pk));
  }
  const double x = std::numbers::pi * (xi - spec.parameter());
  if (x == 0.0) return 1.0;
  const double s = std::sin(x) / x;
  return (s * s) * (s * s);
}

namespace {

// Bisection for the crossing of `level` between lo (inside) and hi (outside).
double crossing(const WaveletSpec& spec, double inside, double outside) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (inside + outside);
    if (wavelet_hat(spec, mid) >= kBandwidthLevel)
      inside = mid;
    else
      outside = mid;
    if (std::abs(outside - inside) <= 1e-12 * std::abs(inside)) break;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

double q_factor(const WaveletSpec& spec) {
  const double pk = peak_frequency(spec);
  // Both families decay monotonically away from the peak until the first
  // crossing; step outward until the response drops below the level.
  double step = (spec.family() == WaveletFamily::Cauchy) ? pk / 64.0 : 1.0 / 64.0;
  double lo = pk;
  while (wavelet_hat(spec, lo) >= kBandwidthLevel) {
    lo -= step;
    if (lo <= 0.0) {
      lo = 0.0;
      break;
    }
  }
  if (wavelet_hat(spec, lo) >= kBandwidthLevel) throw InvalidArgument("cannot bracket lower bandwidth edge");
  double hi = pk;
  for (int i = 0; wavelet_hat(spec, hi) >= kBandwidthLevel; ++i) {
    hi += step;
    if (i > 1 << 20) throw InvalidArgument("cannot bracket upper bandwidth edge");
  }
  double xlo = crossing(spec, std::min(pk, lo + step), lo);
  double xhi = crossing(spec, std::max(pk, hi - step), hi);
  return pk / (xhi - xlo);
}

}  // namespace gridwave
