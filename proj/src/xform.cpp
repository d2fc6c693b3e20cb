// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/xform.hpp"

#include <cmath>
#include <string>

#include "gridwave/errors.hpp"
#include "gridwave/fft.hpp"
#include "gridwave/parallel.hpp"

namespace gridwave {
namespace {

CoefMatrix analyze_spectrum(const FilterBankDesign& design, const std::vector<std::complex<double>>& F,
                            bool real_mode) {
  const std::size_t L = design.L();
  const std::size_t N = design.N();
  const std::size_t d = design.d();
  const auto C = static_cast<Eigen::Index>(design.channels());
  CoefMatrix out;
  out.data.resize(C, static_cast<Eigen::Index>(N));
  out.d = d;
  out.design_id = design.design_id;
  out.real_mode = real_mode;
  const double inv_L = 1.0 / static_cast<double>(L);
  parallel_for(static_cast<std::size_t>(C), [&](std::size_t b, std::size_t e) {
    std::vector<std::complex<double>> z(N), scratch;
    for (std::size_t j = b; j < e; ++j) {
      const auto* G = design.response_row(j, scratch);
      std::fill(z.begin(), z.end(), std::complex<double>{});
      // Fold the d aliased segments onto N bins.
      for (std::size_t m = 0; m < d; ++m) {
        const std::size_t off = m * N;
        for (std::size_t r = 0; r < N; ++r) z[r] += F[off + r] * std::conj(G[off + r]);
      }
      fft::backward(z.data(), N);
      auto row = out.data.row(static_cast<Eigen::Index>(j));
      for (std::size_t l = 0; l < N; ++l) row(static_cast<Eigen::Index>(l)) = z[l] * inv_L;
    }
  });
  return out;
}

void check_signal_length(const FilterBankDesign& design, std::size_t n) {
  if (n != design.L())
    throw InvalidArgument("signal length " + std::to_string(n) + " differs from design length " +
                          std::to_string(design.L()));
}

std::vector<std::complex<double>> synth_impl(const FilterBankDesign& filters, const CoefMatrix& coefs) {
  const std::size_t L = filters.L();
  const std::size_t N = filters.N();
  if (!filters.materialized()) throw InvalidArgument("synthesis needs materialized responses");
  const auto C = filters.responses.rows();
  if (coefs.data.rows() != C || coefs.frames() != N || coefs.d != filters.d())
    throw InvalidArgument("coefficient dimensions do not match the design");
  // Spectra of each channel's coefficient sequence.
  CoefData spec = coefs.data;
  parallel_for(static_cast<std::size_t>(C), [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) fft::forward(spec.row(static_cast<Eigen::Index>(j)).data(), N);
  });
  std::vector<std::complex<double>> F(L);
  // Each bin sums channels in fixed order, independent of the worker count.
  parallel_for(L, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      std::complex<double> acc{};
      const auto r = static_cast<Eigen::Index>(k % N);
      const auto kk = static_cast<Eigen::Index>(k);
      for (Eigen::Index j = 0; j < C; ++j) acc += filters.responses(j, kk) * spec(j, r);
      F[k] = acc;
    }
  });
  fft::backward(F.data(), L);
  const double inv_L = 1.0 / static_cast<double>(L);
  for (auto& v : F) v *= inv_L;
  return F;
}

}  // namespace

CoefMatrix analyze(const FilterBankDesign& design, std::span<const double> signal) {
  check_signal_length(design, signal.size());
  std::vector<std::complex<double>> F(signal.size());
  for (std::size_t t = 0; t < signal.size(); ++t) {
    if (!std::isfinite(signal[t])) throw InvalidArgument("signal contains non-finite samples");
    F[t] = signal[t];
  }
  fft::forward(F.data(), F.size());
  return analyze_spectrum(design, F, true);
}

CoefMatrix analyze(const FilterBankDesign& design, std::span<const std::complex<double>> signal) {
  check_signal_length(design, signal.size());
  std::vector<std::complex<double>> F(signal.begin(), signal.end());
  for (const auto& v : F)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidArgument("signal contains non-finite samples");
  fft::forward(F.data(), F.size());
  return analyze_spectrum(design, F, false);
}

std::vector<std::complex<double>> synthesize(const FilterBankDesign& dual, const CoefMatrix& coefs) {
  if (!dual.is_dual) throw InvalidArgument("synthesize needs a dual design");
  if (coefs.design_id != 0 && dual.design_id != coefs.design_id)
    throw InvalidArgument("coefficients were produced by a different design");
  if (coefs.real_mode != dual.real_dual)
    throw InvalidArgument(coefs.real_mode ? "real-mode coefficients need a real-signal dual"
                                          : "complex coefficients need a complex-signal dual");
  auto f = synth_impl(dual, coefs);
  if (coefs.real_mode)
    for (auto& v : f) v = {2.0 * v.real(), 0.0};
  return f;
}

std::vector<double> synthesize_real(const FilterBankDesign& dual, const CoefMatrix& coefs) {
  auto f = synthesize(dual, coefs);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

std::vector<std::complex<double>> adjoint(const FilterBankDesign& design, const CoefMatrix& coefs) {
  return synth_impl(design, coefs);
}

}  // namespace gridwave
