// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/design.hpp"

#include <cmath>
#include <numbers>

#include "gridwave/errors.hpp"
#include "gridwave/parallel.hpp"

namespace gridwave {

ResponseModel::ResponseModel(WaveletSpec wavelet, std::vector<Channel> channels, std::size_t d,
                             std::size_t L)
    : wavelet_(wavelet), channels_(std::move(channels)), d_(d), L_(L) {}

double ResponseModel::magnitude(std::size_t j, std::size_t k) const {
  const Channel& c = channels_[j];
  const double two_over_L = 2.0 / static_cast<double>(L_);
  double value;
  if (c.compensation) {
    // Symmetric frequency; bins below DC stay empty.
    if (2 * k > L_) return 0.0;
    value = c.amplitude * wavelet_hat(wavelet_, c.dilation * (static_cast<double>(k) * two_over_L + c.offset));
  } else {
    // Full period [0, 2): tails above Nyquist land on the negative bins.
    value = c.amplitude * wavelet_hat(wavelet_, c.dilation * static_cast<double>(k) * two_over_L);
  }
  if (k == 0) value *= std::numbers::sqrt2 / 2.0;
  return value;
}

std::complex<double> ResponseModel::response(std::size_t j, std::size_t k) const {
  double mag = magnitude(j, k);
  if (mag == 0.0) return {0.0, 0.0};
  const double delay = channels_[j].delay;
  if (delay == 0.0) return {mag, 0.0};
  // k * d * delta / L == k * delta / N, reduced mod 1 before scaling by 2*pi.
  const double N = static_cast<double>(L_ / d_);
  double t = static_cast<double>(k) * delay / N;
  t -= std::floor(t);
  return std::polar(mag, -2.0 * std::numbers::pi * t);
}

namespace {

void check_grid(std::size_t d, std::size_t L) {
  if (d == 0 || L == 0) throw InvalidArgument("d and L must be positive");
  if (L % d != 0) throw InvalidArgument("decimation d must divide L");
}

void check_truncation(const WaveletSpec& wavelet, const ResponseModel::Channel& top) {
  // Value at the sampling frequency (normalized 2) against the peak value 1.
  double wrap = wavelet_hat(wavelet, top.dilation * 2.0);
  if (!(wrap < kTruncationTolerance))
    throw InvalidArgument("smallest-scale response exceeds truncation tolerance at the sampling frequency");
}

ResponseMatrix sample(const ResponseModel& model) {
  ResponseMatrix r(model.channels(), model.L());
  parallel_for(model.channels(), [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j)
      for (std::size_t k = 0; k < model.L(); ++k) r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = model.response(j, k);
  });
  return r;
}

std::uint64_t fnv(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

template <class T>
std::uint64_t fnv_value(std::uint64_t h, T v) {
  return fnv(h, &v, sizeof v);
}

}  // namespace

std::uint64_t compute_design_id(const GridParams& p, const WaveletSpec& wavelet) {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv_value<std::uint64_t>(h, p.L);
  h = fnv_value<std::uint64_t>(h, p.M);
  h = fnv_value<std::uint64_t>(h, p.M_C);
  h = fnv_value<std::uint64_t>(h, p.d);
  h = fnv_value<std::uint8_t>(h, static_cast<std::uint8_t>(p.spacing));
  h = fnv_value<double>(h, p.f_min / p.sample_rate);
  h = fnv_value<double>(h, p.f_max / p.sample_rate);
  h = fnv_value<std::uint8_t>(h, static_cast<std::uint8_t>(wavelet.family()));
  h = fnv_value<double>(h, wavelet.parameter());
  for (double x : p.delays.elements) h = fnv_value<double>(h, x);
  return h;
}

ResponseModel linear_model(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C,
                           std::size_t d, std::size_t L, const DelaySequence& delays) {
  check_grid(d, L);
  if (M < 1) throw InvalidArgument("M must be at least 1");
  if (M_C < 1 || M_C > M) throw InvalidArgument("M_C must satisfy 1 <= M_C <= M");
  if (delays.size() != M + 1) throw InvalidArgument("delay sequence length must equal M+1");
  const double pk = peak_frequency(wavelet);
  const double Md = static_cast<double>(M);
  const double base_center = static_cast<double>(M_C) / Md;
  std::vector<ResponseModel::Channel> ch(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    auto& c = ch[j];
    c.center = static_cast<double>(j) / Md;
    c.delay = delays[j];
    if (j >= M_C) {
      c.dilation = pk / c.center;
      c.amplitude = std::sqrt(static_cast<double>(M_C) / static_cast<double>(j));
    } else {
      // Largest-scale atom moved down by (M_C - j) channel spacings.
      c.compensation = true;
      c.dilation = pk / base_center;
      c.offset = static_cast<double>(M_C - j) / Md;
    }
  }
  check_truncation(wavelet, ch[M]);
  return ResponseModel(wavelet, std::move(ch), d, L);
}

ResponseModel geometric_model(const WaveletSpec& wavelet, std::size_t channels, double f_min,
                              double f_max, std::size_t d, std::size_t L, const DelaySequence& delays) {
  check_grid(d, L);
  if (channels < 1) throw InvalidArgument("need at least one channel");
  if (!(f_min > 0.0) || !(f_max >= f_min) || f_max > 1.0 + 1e-12)
    throw InvalidArgument("geometric spacing needs 0 < f_min <= f_max <= Nyquist");
  if (delays.size() != channels) throw InvalidArgument("delay sequence length must equal channel count");
  const double pk = peak_frequency(wavelet);
  std::vector<ResponseModel::Channel> ch(channels);
  for (std::size_t j = 0; j < channels; ++j) {
    double t = channels == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(channels - 1);
    auto& c = ch[j];
    c.center = f_min * std::pow(f_max / f_min, t);
    c.dilation = pk / c.center;
    c.amplitude = std::sqrt(f_min / c.center);
    c.delay = delays[j];
  }
  check_truncation(wavelet, ch.back());
  return ResponseModel(wavelet, std::move(ch), d, L);
}

FilterBankDesign build_design(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C,
                              std::size_t d, std::size_t L, const DelaySequence& delays,
                              double sample_rate, bool materialize) {
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  FilterBankDesign out;
  out.model = linear_model(wavelet, M, M_C, d, L, delays);
  out.params.L = L;
  out.params.M = M;
  out.params.M_C = M_C;
  out.params.d = d;
  out.params.delays = delays;
  out.params.spacing = Spacing::Linear;
  out.params.sample_rate = sample_rate;
  out.wavelet = wavelet;
  const double nyq = 0.5 * sample_rate;
  for (std::size_t j = 0; j <= M; ++j) {
    out.center_freqs.push_back(out.model.channel(j).center * nyq);
    if (j >= M_C) out.scales.push_back(out.model.channel(j).dilation);
  }
  if (materialize) out.responses = sample(out.model);
  out.design_id = compute_design_id(out.params, wavelet);
  return out;
}

FilterBankDesign geometric_design(const WaveletSpec& wavelet, std::size_t channels, double f_min,
                                  double f_max, std::size_t d, std::size_t L, double sample_rate) {
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  const double nyq = 0.5 * sample_rate;
  FilterBankDesign out;
  DelaySequence delays = zero_seq(channels);
  out.model = geometric_model(wavelet, channels, f_min / nyq, f_max / nyq, d, L, delays);
  out.params.L = L;
  out.params.M = channels - 1;
  out.params.M_C = 0;
  out.params.d = d;
  out.params.delays = delays;
  out.params.spacing = Spacing::Geometric;
  out.params.f_min = f_min;
  out.params.f_max = f_max;
  out.params.sample_rate = sample_rate;
  out.wavelet = wavelet;
  for (std::size_t j = 0; j < channels; ++j) {
    out.center_freqs.push_back(out.model.channel(j).center * nyq);
    out.scales.push_back(out.model.channel(j).dilation);
  }
  out.responses = sample(out.model);
  out.design_id = compute_design_id(out.params, wavelet);
  return out;
}

FilterBankDesign custom_design(ResponseMatrix responses, std::size_t d) {
  const auto L = static_cast<std::size_t>(responses.cols());
  check_grid(d, L);
  if (responses.rows() < 1) throw InvalidArgument("need at least one channel");
  FilterBankDesign out;
  out.params.L = L;
  out.params.M = static_cast<std::size_t>(responses.rows()) - 1;
  out.params.M_C = 0;
  out.params.d = d;
  out.params.delays = zero_seq(static_cast<std::size_t>(responses.rows()));
  out.responses = std::move(responses);
  // Hash the sampled values; there is no generating model.
  std::uint64_t h = compute_design_id(out.params, out.wavelet);
  h = fnv(h, out.responses.data(), static_cast<std::size_t>(out.responses.size()) * sizeof(std::complex<double>));
  out.design_id = h;
  return out;
}

const std::complex<double>* FilterBankDesign::response_row(std::size_t j,
                                                           std::vector<std::complex<double>>& scratch) const {
  if (materialized()) return responses.row(static_cast<Eigen::Index>(j)).data();
  scratch.resize(model.L());
  for (std::size_t k = 0; k < model.L(); ++k) scratch[k] = model.response(j, k);
  return scratch.data();
}

std::size_t choose_decimation(std::size_t M, double target_oversampling) {
  if (!(target_oversampling >= 1.0)) throw InvalidArgument("target oversampling must be at least 1");
  const double ch2 = 2.0 * static_cast<double>(M + 1);
  auto d = static_cast<std::size_t>(std::floor(ch2 / target_oversampling));
  // Guard against floor landing one off through rounding.
  while (d > 1 && ch2 / static_cast<double>(d) < target_oversampling) --d;
  while (ch2 / static_cast<double>(d + 1) >= target_oversampling) ++d;
  return std::max<std::size_t>(d, 1);
}

std::vector<double> frequency_response_diag(const FilterBankDesign& design) {
  std::vector<double> psi(design.L(), 0.0);
  std::vector<std::complex<double>> scratch;
  for (std::size_t j = 0; j < design.channels(); ++j) {
    const auto* G = design.response_row(j, scratch);
    for (std::size_t k = 0; k < design.L(); ++k) psi[k] += std::norm(G[k]);
  }
  return psi;
}

}  // namespace gridwave
