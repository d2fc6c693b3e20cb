// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/frame.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gridwave/errors.hpp"
#include "gridwave/fft.hpp"
#include "gridwave/parallel.hpp"

namespace gridwave {
namespace {

using Gather = std::function<void(std::size_t k, Eigen::MatrixXcd& U)>;

// Fills U (d x C or d x 2C) with the responses of bin class k.
Gather matrix_gather(const ResponseMatrix& G, std::size_t d, std::size_t N, bool mirrored) {
  return [&G, d, N, mirrored](std::size_t k, Eigen::MatrixXcd& U) {
    const auto C = G.rows();
    const std::size_t L = d * N;
    U.resize(static_cast<Eigen::Index>(d), mirrored ? 2 * C : C);
    for (std::size_t m = 0; m < d; ++m) {
      const auto b = static_cast<Eigen::Index>(k + m * N);
      const auto bm = static_cast<Eigen::Index>((L - (k + m * N)) % L);
      const auto row = static_cast<Eigen::Index>(m);
      for (Eigen::Index j = 0; j < C; ++j) {
        U(row, j) = G(j, b);
        if (mirrored) U(row, C + j) = std::conj(G(j, bm));
      }
    }
  };
}

Gather model_gather(const ResponseModel& model, bool mirrored) {
  return [&model, mirrored](std::size_t k, Eigen::MatrixXcd& U) {
    const std::size_t d = model.d();
    const std::size_t L = model.L();
    const std::size_t N = L / d;
    const auto C = static_cast<Eigen::Index>(model.channels());
    U.resize(static_cast<Eigen::Index>(d), mirrored ? 2 * C : C);
    for (std::size_t m = 0; m < d; ++m) {
      const std::size_t b = k + m * N;
      const std::size_t bm = (L - b) % L;
      const auto row = static_cast<Eigen::Index>(m);
      for (Eigen::Index j = 0; j < C; ++j) {
        U(row, j) = model.response(static_cast<std::size_t>(j), b);
        if (mirrored) U(row, C + j) = std::conj(model.response(static_cast<std::size_t>(j), bm));
      }
    }
  };
}

// Lower triangle of U U^H / d.
void gram(const Eigen::MatrixXcd& U, std::size_t d, Eigen::MatrixXcd& Phi) {
  const auto n = static_cast<Eigen::Index>(d);
  Phi.setZero(n, n);
  Phi.selfadjointView<Eigen::Lower>().rankUpdate(U, 1.0 / static_cast<double>(d));
}

FrameDiagnostics bounds_impl(const Gather& gather, std::size_t d, std::size_t N, SignalDomain domain) {
  // Real domain: Phi_ext(N-k) is a permuted conjugate of Phi_ext(k).
  const std::size_t classes = domain == SignalDomain::Real ? N / 2 + 1 : N;
  const double scale = domain == SignalDomain::Real ? 0.5 : 1.0;
  std::vector<double> lo(classes), hi(classes);
  parallel_for(classes, [&](std::size_t b, std::size_t e) {
    Eigen::MatrixXcd U, Phi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    for (std::size_t k = b; k < e; ++k) {
      gather(k, U);
      gram(U, d, Phi);
      if (d == 1) {
        lo[k] = hi[k] = Phi(0, 0).real() * scale;
        continue;
      }
      es.compute(Phi, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw NonInvertibleError("eigensolver failed at bin " + std::to_string(k), k);
      lo[k] = es.eigenvalues()(0) * scale;
      hi[k] = es.eigenvalues()(es.eigenvalues().size() - 1) * scale;
    }
  });
  FrameDiagnostics out;
  out.A = lo[0];
  out.B = hi[0];
  for (std::size_t k = 1; k < classes; ++k) {
    if (lo[k] < out.A) {
      out.A = lo[k];
      out.argmin_bin = k;
    }
    if (hi[k] > out.B) {
      out.B = hi[k];
      out.argmax_bin = k;
    }
  }
  out.invertible = out.B > 0.0 && out.A >= kInvertibilityFloor * out.B;
  out.R_FB = out.invertible ? out.B / out.A : std::numeric_limits<double>::infinity();
  return out;
}

void check_uniform(const FilterBankDesign& design) {
  if (design.d() == 0 || design.L() == 0 || design.L() % design.d() != 0)
    throw InvalidArgument("design needs d dividing L");
  if (!design.materialized()) throw InvalidArgument("operation needs materialized responses");
  if (static_cast<std::size_t>(design.responses.cols()) != design.L())
    throw InvalidArgument("response matrix width differs from L");
}

}  // namespace

FrameBlocks frame_blocks(const FilterBankDesign& design) {
  check_uniform(design);
  FrameBlocks out{design.d(), design.N(), std::vector<Eigen::MatrixXcd>(design.N())};
  auto gather = matrix_gather(design.responses, design.d(), design.N(), false);
  parallel_for(out.N, [&](std::size_t b, std::size_t e) {
    Eigen::MatrixXcd U;
    for (std::size_t k = b; k < e; ++k) {
      gather(k, U);
      gram(U, design.d(), out.blocks[k]);
      out.blocks[k].triangularView<Eigen::StrictlyUpper>() = out.blocks[k].adjoint();
    }
  });
  return out;
}

FrameDiagnostics frame_bounds(const FilterBankDesign& design, SignalDomain domain) {
  if (!design.materialized() && design.model.channels() > 0) return frame_bounds(design.model, domain);
  check_uniform(design);
  bool mirrored = domain == SignalDomain::Real;
  return bounds_impl(matrix_gather(design.responses, design.d(), design.N(), mirrored), design.d(),
                     design.N(), domain);
}

FrameDiagnostics frame_bounds(const ResponseModel& model, SignalDomain domain) {
  if (model.d() == 0 || model.L() % model.d() != 0) throw InvalidArgument("model needs d dividing L");
  bool mirrored = domain == SignalDomain::Real;
  return bounds_impl(model_gather(model, mirrored), model.d(), model.L() / model.d(), domain);
}

FilterBankDesign real_extend(const FilterBankDesign& design) {
  check_uniform(design);
  if (design.is_dual) throw InvalidArgument("real_extend expects an analysis design");
  FilterBankDesign out = design;
  const auto C = design.responses.rows();
  const auto L = static_cast<Eigen::Index>(design.L());
  out.responses.resize(2 * C, L);
  out.responses.topRows(C) = design.responses;
  for (Eigen::Index j = 0; j < C; ++j)
    for (Eigen::Index k = 0; k < L; ++k) out.responses(C + j, k) = std::conj(design.responses(j, (L - k) % L));
  out.two_sided = true;
  return out;
}

FilterBankDesign dual_design(const FilterBankDesign& design, SignalDomain domain) {
  check_uniform(design);
  const std::size_t d = design.d();
  const std::size_t N = design.N();
  const auto C = design.responses.rows();
  const bool real = domain == SignalDomain::Real;
  FilterBankDesign out = design;
  out.is_dual = !design.is_dual;
  out.real_dual = real;
  auto gather = matrix_gather(design.responses, d, N, real);
  auto store = [&](std::size_t k, const Eigen::MatrixXcd& X) {
    for (std::size_t m = 0; m < d; ++m)
      for (Eigen::Index j = 0; j < C; ++j)
        out.responses(j, static_cast<Eigen::Index>(k + m * N)) = X(static_cast<Eigen::Index>(m), j);
  };
  // Real domain: Phi_ext(N-k) = P conj(Phi_ext(k)) P with P reversing the
  // aliasing index, so solving for the mirror columns at k yields class N-k.
  const std::size_t classes = real ? N / 2 + 1 : N;
  parallel_for(classes, [&](std::size_t b, std::size_t e) {
    Eigen::MatrixXcd U, Phi, Y, X;
    Eigen::LLT<Eigen::MatrixXcd> llt;
    for (std::size_t k = b; k < e; ++k) {
      gather(k, U);
      gram(U, d, Phi);
      llt.compute(Phi);
      bool ok = llt.info() == Eigen::Success;
      if (ok) {
        auto diag = llt.matrixLLT().diagonal().real().cwiseAbs2().eval();
        ok = diag.minCoeff() >= kInvertibilityFloor * diag.maxCoeff();
      }
      if (!ok) throw NonInvertibleError("frame operator is singular at frequency bin " + std::to_string(k), k);
      const bool paired = real && k != 0 && 2 * k != N;
      if (!paired) {
        store(k, llt.solve(U.leftCols(C)));
        continue;
      }
      Y = llt.solve(U);
      store(k, Y.leftCols(C));
      X = Y.rightCols(C).colwise().reverse().conjugate();
      store(N - k, X);
    }
  });
  return out;
}

std::pair<double, double> brute_force_bounds(const FilterBankDesign& design, SignalDomain domain) {
  check_uniform(design);
  const std::size_t L = design.L();
  if (L > 4096) throw InvalidArgument("brute_force_bounds is limited to L <= 4096");
  const std::size_t d = design.d();
  const std::size_t N = design.N();
  const auto C = static_cast<std::size_t>(design.responses.rows());
  // Rows: conj of every translated atom g_j(t - d l).
  Eigen::MatrixXcd T(static_cast<Eigen::Index>(C * N), static_cast<Eigen::Index>(L));
  std::vector<std::complex<double>> g(L);
  for (std::size_t j = 0; j < C; ++j) {
    for (std::size_t k = 0; k < L; ++k) g[k] = design.responses(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    fft::backward(g.data(), L);
    for (auto& v : g) v /= static_cast<double>(L);
    for (std::size_t l = 0; l < N; ++l)
      for (std::size_t t = 0; t < L; ++t)
        T(static_cast<Eigen::Index>(j * N + l), static_cast<Eigen::Index>(t)) = std::conj(g[(t + L - (d * l) % L) % L]);
  }
  Eigen::MatrixXcd S = T.adjoint() * T;
  Eigen::VectorXd ev;
  if (domain == SignalDomain::Real) {
    Eigen::MatrixXd Sr = S.real();
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Sr, Eigen::EigenvaluesOnly).eigenvalues();
  } else {
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(S, Eigen::EigenvaluesOnly).eigenvalues();
  }
  return {ev(0), ev(ev.size() - 1)};
}

}  // namespace gridwave
