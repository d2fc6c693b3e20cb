// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "gridwave/design.hpp"

namespace gridwave {

// Complex: bounds over all complex signals of length L.
// Real: bounds of the one-sided bank over real signals, i.e. of Re(S).
enum class SignalDomain { Complex, Real };

// A < kInvertibilityFloor * B counts as singular.
inline constexpr double kInvertibilityFloor = 1e-12;

struct FrameDiagnostics {
  double A = 0.0;
  double B = 0.0;
  double R_FB = 0.0;  // +inf when not invertible
  std::size_t argmin_bin = 0;
  std::size_t argmax_bin = 0;
  bool invertible = false;
};

// Phi(k)[m][m'] = (1/d) sum_j G_j[k+mN] conj(G_j[k+m'N]), k = 0..N-1.
struct FrameBlocks {
  std::size_t d = 0;
  std::size_t N = 0;
  std::vector<Eigen::MatrixXcd> blocks;
};

FrameBlocks frame_blocks(const FilterBankDesign& design);

FrameDiagnostics frame_bounds(const FilterBankDesign& design,
                              SignalDomain domain = SignalDomain::Complex);
// Same bounds evaluated straight from the closed-form responses, without
// materializing the channels x L response matrix.
FrameDiagnostics frame_bounds(const ResponseModel& model,
                              SignalDomain domain = SignalDomain::Real);

// Channel set {G_j} followed by the mirrors conj(G_j[(L-k) mod L]).
FilterBankDesign real_extend(const FilterBankDesign& design);

// Canonical dual. In the Real domain the returned channels are the one-sided
// half of the dual of real_extend(design); real synthesis takes 2 Re(.).
FilterBankDesign dual_design(const FilterBankDesign& design,
                             SignalDomain domain = SignalDomain::Complex);

// Materializes the analysis operator; L <= 4096.
std::pair<double, double> brute_force_bounds(const FilterBankDesign& design,
                                             SignalDomain domain = SignalDomain::Complex);

}  // namespace gridwave
