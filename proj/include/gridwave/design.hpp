// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gridwave/lds.hpp"
#include "gridwave/wavelets.hpp"

namespace gridwave {

using ResponseMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Spacing : std::uint8_t { Linear = 0, Geometric = 1 };

// Largest-scale response must fall below this fraction of its peak at the
// sampling frequency, where the DFT grid wraps around onto DC.
inline constexpr double kTruncationTolerance = 1e-4;

struct GridParams {
  std::size_t L = 0;
  std::size_t M = 0;    // channels are 0..M
  std::size_t M_C = 0;  // compensation channels 0..M_C-1
  std::size_t d = 1;
  DelaySequence delays = zero_seq(1);
  Spacing spacing = Spacing::Linear;
  double f_min = 0.0;  // geometric spacing, in sample_rate units
  double f_max = 0.0;
  double sample_rate = 2.0;

  std::size_t channels() const { return M + 1; }
  std::size_t N() const { return d ? L / d : 0; }
  double oversampling() const { return 2.0 * static_cast<double>(channels()) / static_cast<double>(d); }
};

// Closed-form channel responses on the DFT grid of length L. Frequencies are
// normalized so that the sampling rate is 2 and Nyquist is 1.
class ResponseModel {
 public:
  struct Channel {
    double center = 0.0;     // normalized center frequency
    double amplitude = 1.0;  // energy normalization relative to the reference scale
    double dilation = 1.0;   // prototype argument = dilation * frequency
    double offset = 0.0;     // compensation channels: frequency shift before dilation
    bool compensation = false;
    double delay = 0.0;      // delta_j in [0,1)
  };

  ResponseModel() = default;
  ResponseModel(WaveletSpec wavelet, std::vector<Channel> channels, std::size_t d, std::size_t L);

  std::complex<double> response(std::size_t j, std::size_t k) const;
  // |response| without the delay phase.
  double magnitude(std::size_t j, std::size_t k) const;

  std::size_t channels() const { return channels_.size(); }
  std::size_t L() const { return L_; }
  std::size_t d() const { return d_; }
  const Channel& channel(std::size_t j) const { return channels_[j]; }
  const WaveletSpec& wavelet() const { return wavelet_; }

 private:
  WaveletSpec wavelet_ = WaveletSpec::cauchy(2.0);
  std::vector<Channel> channels_;
  std::size_t d_ = 1;
  std::size_t L_ = 0;
};

struct FilterBankDesign {
  GridParams params;
  WaveletSpec wavelet = WaveletSpec::cauchy(2.0);
  std::vector<double> center_freqs;  // sample_rate units
  std::vector<double> scales;        // wavelet channels only; prototype dilation per channel
  ResponseMatrix responses;          // channels x L
  ResponseModel model;
  bool is_dual = false;
  bool real_dual = false;  // dual computed for real signals
  bool two_sided = false;  // channel set closed under mirroring (see real_extend)
  std::uint64_t design_id = 0;

  std::size_t channels() const {
    return responses.rows() ? static_cast<std::size_t>(responses.rows()) : model.channels();
  }
  // False for analysis-only designs whose rows are regenerated from the model.
  bool materialized() const { return responses.size() > 0; }
  // Row j of the responses; uses scratch when the design is not materialized.
  const std::complex<double>* response_row(std::size_t j, std::vector<std::complex<double>>& scratch) const;
  std::size_t L() const { return params.L; }
  std::size_t d() const { return params.d; }
  std::size_t N() const { return params.N(); }
};

ResponseModel linear_model(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C,
                           std::size_t d, std::size_t L, const DelaySequence& delays);
ResponseModel geometric_model(const WaveletSpec& wavelet, std::size_t channels, double f_min,
                              double f_max, std::size_t d, std::size_t L, const DelaySequence& delays);

FilterBankDesign build_design(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C,
                              std::size_t d, std::size_t L, const DelaySequence& delays,
                              double sample_rate = 2.0, bool materialize = true);

// f_min, f_max in sample_rate units (Nyquist = sample_rate / 2).
FilterBankDesign geometric_design(const WaveletSpec& wavelet, std::size_t channels, double f_min,
                                  double f_max, std::size_t d, std::size_t L,
                                  double sample_rate = 2.0);

// Bank with caller-supplied responses (tests, toy systems).
FilterBankDesign custom_design(ResponseMatrix responses, std::size_t d);

std::size_t choose_decimation(std::size_t M, double target_oversampling);

std::vector<double> frequency_response_diag(const FilterBankDesign& design);

std::uint64_t compute_design_id(const GridParams& params, const WaveletSpec& wavelet);

}  // namespace gridwave
