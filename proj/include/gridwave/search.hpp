// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gridwave/lds.hpp"
#include "gridwave/wavelets.hpp"

namespace gridwave {

struct SearchRecord {
  WaveletSpec wavelet = WaveletSpec::cauchy(2.0);
  double target_oversampling = 0.0;
  std::size_t M_C = 0;
  std::size_t M = 0;
  std::size_t d = 0;
  double R_FB = 0.0;
  std::size_t L_eval = 0;
};

struct SearchOptions {
  DelayKind delays = DelayKind::Kronecker;
  double kronecker_alpha = 0.0;  // 0 selects golden_alpha()
  // Evaluation length is d * frames. Bounds of these banks move little with
  // the frame count, so a short grid keeps the scan affordable.
  std::size_t frames = 16;
  std::size_t m_probe = 512;
  double plateau_tol = 1e-3;
  std::vector<std::size_t> candidates = {128, 256, 384, 512, 640, 768, 1024, 1280, 1536, 2048};
};

// Real-signal frame-bound ratio of the linear design (wavelet, M, M_C, d);
// +inf when not invertible.
double evaluate_ratio(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C, std::size_t d,
                      const SearchOptions& options = {});

std::size_t optimize_mc(const WaveletSpec& wavelet, double oversampling,
                        const SearchOptions& options = {});
SearchRecord optimize_m(const WaveletSpec& wavelet, double oversampling, std::size_t M_C,
                        const SearchOptions& options = {});
SearchRecord refine_m(const SearchRecord& record, const SearchOptions& options = {});
std::vector<SearchRecord> full_search(const WaveletSpec& wavelet,
                                      const std::vector<double>& oversampling_list,
                                      const SearchOptions& options = {});

// "R_FB (M_C, M)" cells, one line per record.
std::string format_table(const std::vector<SearchRecord>& records);

}  // namespace gridwave
