// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gridwave/design.hpp"

namespace gridwave {

using CoefData =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Rows are channels, columns are frames at nominal times d*l.
struct CoefMatrix {
  CoefData data;
  std::size_t d = 1;
  std::uint64_t design_id = 0;
  bool real_mode = false;

  std::size_t channels() const { return static_cast<std::size_t>(data.rows()); }
  std::size_t frames() const { return static_cast<std::size_t>(data.cols()); }
};

// c_j[l] = <f, g_j(. - d l)>.
CoefMatrix analyze(const FilterBankDesign& design, std::span<const double> signal);
CoefMatrix analyze(const FilterBankDesign& design, std::span<const std::complex<double>> signal);

// sum_j sum_l c_j[l] g~_j(t - d l); for real_mode coefficients 2 Re(.) of the
// one-sided sum. Requires a dual design of the same bank.
std::vector<std::complex<double>> synthesize(const FilterBankDesign& dual, const CoefMatrix& coefs);
// Real part of synthesize, for real_mode coefficients.
std::vector<double> synthesize_real(const FilterBankDesign& dual, const CoefMatrix& coefs);

// Synthesis with the analysis filters themselves: the adjoint of analyze.
std::vector<std::complex<double>> adjoint(const FilterBankDesign& design, const CoefMatrix& coefs);

}  // namespace gridwave
