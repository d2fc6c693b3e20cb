// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gridwave/design.hpp"
#include "gridwave/xform.hpp"

namespace gridwave {

using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// ---- onset detection ----

// S(l) = sum_{j >= M_C} max(|c_j[l]| - |c_j[l-1]|, 0), S(0) = 0.
std::vector<double> spectral_flux(const CoefMatrix& coefs, std::size_t M_C);

struct OnsetResult {
  std::vector<double> flux;
  std::vector<double> threshold;
  std::vector<std::size_t> onset_frames;
  std::vector<double> onsets;  // seconds
  double frame_period = 0.0;   // seconds per frame
};

inline constexpr double kDefaultOnsetLambda = 1.34;
inline constexpr std::size_t kDefaultMedianWindow = 11;
inline constexpr std::size_t kDefaultMinGap = 3;
// Flux below this fraction of the maximum is treated as roundoff.
inline constexpr double kDefaultFluxFloor = 1e-9;

// threshold[l] = max(lambda * local median, floor * max flux).
OnsetResult pick_onsets(std::span<const double> flux, double lambda, std::size_t median_window,
                        std::size_t min_gap, double frame_period, double floor = kDefaultFluxFloor);

struct OnsetScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::size_t matched = 0;
};

OnsetScore eval_onsets(std::span<const double> estimated, std::span<const double> reference,
                       double tolerance = 0.05);

// ---- phaseless reconstruction ----

struct FglaOptions {
  std::size_t total_iters = 150;  // includes warmup
  std::size_t warmup_iters = 20;
  std::size_t n_random_inits = 5;
  double gamma = 0.99;
  std::uint64_t seed = 0;
};

struct FglaResult {
  std::vector<double> signal;
  // Relative magnitude error in dB, measured inside the analysis
  // representation, for each iteration of the selected candidate.
  std::vector<double> error_db;
  std::size_t selected_candidate = 0;  // 0 = zero phase, i > 0 = random init i
  std::vector<double> warmup_error_db;  // final warmup error per candidate
};

// design: real-mode analysis bank; dual: dual_design(design, SignalDomain::Real).
FglaResult fgla(const FilterBankDesign& design, const FilterBankDesign& dual, const RealMatrix& target_mag,
                const FglaOptions& options = {});

// ---- metrics ----

inline constexpr double kErrorFloorDb = -300.0;

// 10 log10(|| |W f_r| - |W f| ||^2 / ||W f||^2) with W = analyze(reference, .).
double err_ms(const FilterBankDesign& reference, std::span<const double> f, std::span<const double> f_r);

// Cauchy alpha=1000, 181 geometric channels from sample_rate/100 to Nyquist, d = 7.
FilterBankDesign reference_design(std::size_t L, double sample_rate = 2.0);

// ---- coverage ----

struct SpectrogramOptions {
  double gauss_dur = 8.0;    // Gaussian window standard deviation, samples
  std::size_t hop = 0;       // 0: largest divisor of d not above d/16
  std::size_t fft_size = 0;  // 0: power of two covering 8 standard deviations
  std::size_t margin = 0;    // extra samples on both sides; 0: 2 frames
};

struct AccumulatedSpectrogram {
  RealMatrix map;       // rows: frequency bins 0..fft_size/2, cols: time positions
  std::size_t start = 0;  // sample index of column 0 (may wrap)
  std::size_t hop = 1;
  std::size_t fft_size = 0;
};

// Sums the Gaussian-window spectrograms of atoms (l, j) for l in
// [frame_begin, frame_end) and j in [channel_begin, channel_end).
AccumulatedSpectrogram accumulated_spectrogram(const FilterBankDesign& design, std::size_t frame_begin,
                                               std::size_t frame_end, std::size_t channel_begin,
                                               std::size_t channel_end, const SpectrogramOptions& options = {});

// min / mean of the map over rows [row_lo, row_hi) and columns [col_lo, col_hi).
double coverage_ratio(const RealMatrix& map, std::size_t row_lo, std::size_t row_hi, std::size_t col_lo,
                      std::size_t col_hi);

// ---- block processing cost ----

// M_C L_W (1 + ln(M / (M_C - 1))) operations per frame.
double cost_estimate(std::size_t M, std::size_t M_C, std::size_t L_W);
// M_C compensation filters of length L_W plus wavelet channel j of length
// round(L_W M_C / j), j = M_C..M.
double direct_cost(std::size_t M, std::size_t M_C, std::size_t L_W);

}  // namespace gridwave
