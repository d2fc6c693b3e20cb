// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>

#include "gridwave/errors.hpp"
#include "gridwave/fft.hpp"
#include "gridwave/frame.hpp"
#include "gridwave/xform.hpp"

using namespace gridwave;
using cd = std::complex<double>;

namespace {

FilterBankDesign bank(DelayKind kind = DelayKind::Kronecker, std::size_t N = 16) {
  const std::size_t M = 101, MC = 2;
  const std::size_t d = choose_decimation(M, 2.0);
  return build_design(WaveletSpec::cauchy(100.0), M, MC, d, d * N, make_delays(kind, M + 1));
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<cd> cnoise(std::size_t n, std::uint64_t seed) {
  auto a = noise(n, seed), b = noise(n, seed + 1000);
  std::vector<cd> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {a[i], b[i]};
  return v;
}

template <class V>
double rel_err(const V& a, const V& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("zero in, zero out") {
  auto D = bank();
  auto c = analyze(D, std::vector<double>(D.L(), 0.0));
  CHECK(c.data.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.real_mode);
  CHECK(c.frames() == D.N());
  auto dual = dual_design(D, SignalDomain::Real);
  auto y = synthesize_real(dual, c);
  for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("atom analyzed against the bank") {
  auto D = bank();
  const std::size_t j = 40;
  std::vector<cd> g(D.L());
  for (std::size_t k = 0; k < D.L(); ++k) g[k] = D.responses(j, static_cast<Eigen::Index>(k));
  fft::backward(g.data(), g.size());
  for (auto& v : g) v /= static_cast<double>(D.L());
  auto c = analyze(D, g);
  cd self = c.data(j, 0);
  CHECK(self.real() > 0.0);
  CHECK(std::abs(self.imag()) < 1e-12 * self.real());
  CHECK(std::abs(self) == doctest::Approx(c.data.cwiseAbs().maxCoeff()));
}

TEST_CASE("adjointness") {
  auto D = bank();
  auto f = cnoise(D.L(), 11);
  CoefMatrix c;
  c.data.resize(static_cast<Eigen::Index>(D.channels()), static_cast<Eigen::Index>(D.N()));
  auto r = cnoise(static_cast<std::size_t>(c.data.size()), 12);
  for (Eigen::Index i = 0; i < c.data.size(); ++i) c.data.data()[i] = r[static_cast<std::size_t>(i)];
  c.d = D.d();
  auto Af = analyze(D, f);
  cd lhs = (Af.data.conjugate().cwiseProduct(c.data)).sum();  // <c, A f>
  auto As = adjoint(D, c);
  cd rhs = 0.0;
  for (std::size_t t = 0; t < f.size(); ++t) rhs += As[t] * std::conj(f[t]);  // <A* c, f>
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
}

TEST_CASE("coefficient energy stays within the frame bounds") {
  auto D = bank();
  auto real_fb = frame_bounds(D, SignalDomain::Real);
  auto cplx_fb = frame_bounds(D, SignalDomain::Complex);
  REQUIRE(real_fb.invertible);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto f = noise(D.L(), 100 + s);
    double e = 0;
    for (double x : f) e += x * x;
    double E = analyze(D, f).data.squaredNorm();
    CHECK(E >= real_fb.A * e * (1 - 1e-10));
    CHECK(E <= real_fb.B * e * (1 + 1e-10));
    auto z = cnoise(D.L(), 500 + s);
    double ez = 0;
    for (auto x : z) ez += std::norm(x);
    double Ez = analyze(D, z).data.squaredNorm();
    CHECK(Ez >= cplx_fb.A * ez * (1 - 1e-10));
    CHECK(Ez <= cplx_fb.B * ez * (1 + 1e-10));
  }
}

TEST_CASE("perfect reconstruction") {
  auto D = bank();
  SUBCASE("real signals") {
    auto dual = dual_design(D, SignalDomain::Real);
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto f = noise(D.L(), s);
      CHECK(rel_err(synthesize_real(dual, analyze(D, f)), f) <= 1e-10);
    }
  }
  SUBCASE("complex signals with the mirrored bank") {
    auto ext = real_extend(D);
    auto dual = dual_design(ext, SignalDomain::Complex);
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto f = cnoise(D.L(), s);
      CHECK(rel_err(synthesize(dual, analyze(ext, f)), f) <= 1e-10);
    }
  }
}

TEST_CASE("undecimated tight bank") {
  const std::size_t L = 64;
  ResponseMatrix G(3, L);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(L); ++k) G(j, k) = std::polar(u(rng), u(rng) * 6.0);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(L); ++k) G.col(k) *= 2.0 / G.col(k).norm();  // Psi == 4
  auto D = custom_design(G, 1);
  FilterBankDesign painless = D;
  painless.responses = D.responses / 4.0;
  painless.is_dual = true;
  auto f = cnoise(L, 9);
  CHECK(rel_err(synthesize(painless, analyze(D, f)), f) <= 1e-13);
}

TEST_CASE("energy does not depend on delays when d = 1") {
  const std::size_t M = 40;
  auto w = WaveletSpec::cauchy(100.0);
  auto a = build_design(w, M, 2, 1, 96, make_delays(DelayKind::Kronecker, M + 1));
  auto b = build_design(w, M, 2, 1, 96, make_delays(DelayKind::Zero, M + 1));
  auto f = noise(96, 4);
  CHECK(analyze(a, f).data.squaredNorm() == doctest::Approx(analyze(b, f).data.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("synthesis preconditions") {
  auto D = bank();
  auto c = analyze(D, noise(D.L(), 1));
  CHECK_THROWS_AS(synthesize(D, c), InvalidArgument);
  auto cdual = dual_design(real_extend(D), SignalDomain::Complex);
  CHECK_THROWS_AS(synthesize(cdual, c), InvalidArgument);
  auto other = bank(DelayKind::Digital);
  auto odual = dual_design(other, SignalDomain::Real);
  CHECK_THROWS_AS(synthesize(odual, c), InvalidArgument);
  CHECK_THROWS_AS(analyze(D, std::vector<double>(D.L() + 1)), InvalidArgument);
  std::vector<double> bad(D.L(), 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(analyze(D, bad), InvalidArgument);
}

TEST_CASE("analysis-only designs match materialized ones") {
  const std::size_t M = 101, MC = 2, d = choose_decimation(M, 2.0);
  auto delays = make_delays(DelayKind::Kronecker, M + 1);
  auto full = build_design(WaveletSpec::cauchy(100.0), M, MC, d, d * 16, delays);
  auto lazy = build_design(WaveletSpec::cauchy(100.0), M, MC, d, d * 16, delays, 2.0, false);
  auto f = noise(full.L(), 2);
  CHECK((analyze(full, f).data - analyze(lazy, f).data).cwiseAbs().maxCoeff() == 0.0);
  CHECK(frame_bounds(lazy, SignalDomain::Real).R_FB == doctest::Approx(frame_bounds(full, SignalDomain::Real).R_FB).epsilon(1e-12));
}

TEST_CASE("results do not depend on the worker count") {
  auto D = bank();
  auto f = noise(D.L(), 8);
  setenv("GRIDWAVE_THREADS", "1", 1);
  auto a = analyze(D, f);
  auto da = dual_design(D, SignalDomain::Real);
  auto ya = synthesize_real(da, a);
  setenv("GRIDWAVE_THREADS", "4", 1);
  auto b = analyze(D, f);
  auto db = dual_design(D, SignalDomain::Real);
  auto yb = synthesize_real(db, b);
  unsetenv("GRIDWAVE_THREADS");
  CHECK((a.data - b.data).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ya == yb);
}
