// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gridwave/errors.hpp"
#include "gridwave/fft.hpp"
#include "gridwave/parallel.hpp"

namespace gridwave {

std::vector<double> spectral_flux(const CoefMatrix& coefs, std::size_t M_C) {
  if (M_C >= coefs.channels()) throw InvalidArgument("M_C must be below the channel count");
  if (coefs.frames() < 2) throw InvalidArgument("spectral flux needs at least two frames");
  const std::size_t N = coefs.frames();
  std::vector<double> S(N, 0.0);
  for (std::size_t j = M_C; j < coefs.channels(); ++j) {
    const auto row = coefs.data.row(static_cast<Eigen::Index>(j));
    double prev = std::abs(row(0));
    for (std::size_t l = 1; l < N; ++l) {
      double cur = std::abs(row(static_cast<Eigen::Index>(l)));
      S[l] += std::max(cur - prev, 0.0);
      prev = cur;
    }
  }
  return S;
}

namespace {

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
  double hi = v[n / 2];
  if (n % 2) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2));
  return 0.5 * (lo + hi);
}

}  // namespace

OnsetResult pick_onsets(std::span<const double> flux, double lambda, std::size_t median_window,
                        std::size_t min_gap, double frame_period, double floor) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (median_window % 2 == 0) throw InvalidArgument("median window must be odd");
  const std::size_t N = flux.size();
  const std::size_t h = median_window / 2;
  OnsetResult out;
  out.flux.assign(flux.begin(), flux.end());
  out.threshold.resize(N);
  out.frame_period = frame_period;
  if (!(floor >= 0.0)) throw InvalidArgument("flux floor must be nonnegative");
  const double absolute = N ? floor * *std::max_element(flux.begin(), flux.end()) : 0.0;
  std::vector<double> win;
  for (std::size_t l = 0; l < N; ++l) {
    std::size_t b = l >= h ? l - h : 0;
    std::size_t e = std::min(N, l + h + 1);
    win.assign(flux.begin() + static_cast<std::ptrdiff_t>(b), flux.begin() + static_cast<std::ptrdiff_t>(e));
    out.threshold[l] = std::max(lambda * median_of(win), absolute);
  }
  std::vector<std::size_t> peaks;
  for (std::size_t l = 0; l < N; ++l) {
    bool left = l == 0 || flux[l] > flux[l - 1];
    bool right = l + 1 == N || flux[l] > flux[l + 1];
    if (left && right && flux[l] > out.threshold[l]) peaks.push_back(l);
  }
  // Strongest first; equal flux resolved toward the earlier frame.
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return flux[a] > flux[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t p : peaks) {
    bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t q) {
      return (p > q ? p - q : q - p) >= min_gap;
    });
    if (clear) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end());
  out.onset_frames = kept;
  for (std::size_t l : kept) out.onsets.push_back(static_cast<double>(l) * frame_period);
  return out;
}

OnsetScore eval_onsets(std::span<const double> estimated, std::span<const double> reference, double tolerance) {
  OnsetScore s;
  if (estimated.empty() && reference.empty()) {
    s.precision = s.recall = s.f_measure = 1.0;
    return s;
  }
  std::size_t i = 0, j = 0;
  while (i < estimated.size() && j < reference.size()) {
    double diff = estimated[i] - reference[j];
    if (std::abs(diff) <= tolerance) {
      ++s.matched;
      ++i;
      ++j;
    } else if (diff < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  s.precision = estimated.empty() ? 0.0 : static_cast<double>(s.matched) / static_cast<double>(estimated.size());
  s.recall = reference.empty() ? 0.0 : static_cast<double>(s.matched) / static_cast<double>(reference.size());
  double pr = s.precision + s.recall;
  s.f_measure = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

namespace {

struct FglaState {
  CoefMatrix c;
  CoefMatrix t_prev;
  std::vector<double> error_db;
};

double to_db(double num, double den) {
  if (den <= 0.0 || num <= 0.0) return kErrorFloorDb;
  return std::max(kErrorFloorDb, 10.0 * std::log10(num / den));
}

void project_magnitude(CoefMatrix& c, const RealMatrix& target) {
  const Eigen::Index n = c.data.size();
  auto* v = c.data.data();
  const double* m = target.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = std::abs(v[i]);
    v[i] = a > 0.0 ? v[i] * (m[i] / a) : std::complex<double>(m[i], 0.0);
  }
}

void iterate(FglaState& s, std::size_t iters, const FilterBankDesign& design, const FilterBankDesign& dual,
             const RealMatrix& target, double target_energy, double gamma) {
  for (std::size_t it = 0; it < iters; ++it) {
    CoefMatrix p = analyze(design, synthesize_real(dual, s.c));
    double num = (p.data.cwiseAbs() - target).squaredNorm();
    s.error_db.push_back(to_db(num, target_energy));
    project_magnitude(p, target);
    s.c = p;
    s.c.data += gamma * (p.data - s.t_prev.data);
    s.t_prev = std::move(p);
  }
}

}  // namespace

FglaResult fgla(const FilterBankDesign& design, const FilterBankDesign& dual, const RealMatrix& target_mag,
                const FglaOptions& options) {
  if (design.is_dual || !dual.is_dual || !dual.real_dual)
    throw InvalidArgument("fgla needs an analysis design and its real-signal dual");
  if (dual.design_id != design.design_id) throw InvalidArgument("dual belongs to a different design");
  if (target_mag.rows() != design.responses.rows() || static_cast<std::size_t>(target_mag.cols()) != design.N())
    throw InvalidArgument("target magnitude shape does not match the design");
  if (options.warmup_iters > options.total_iters) throw InvalidArgument("warmup exceeds total iterations");
  if (!(options.gamma >= 0.0 && options.gamma < 1.0)) throw InvalidArgument("gamma must lie in [0,1)");
  if ((target_mag.array() < 0.0).any()) throw InvalidArgument("target magnitudes must be nonnegative");
  const double energy = target_mag.squaredNorm();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<FglaState> candidates;
  for (std::size_t i = 0; i <= options.n_random_inits; ++i) {
    FglaState s;
    s.c.data = target_mag.cast<std::complex<double>>();
    s.c.d = design.d();
    s.c.design_id = design.design_id;
    s.c.real_mode = true;
    if (i > 0) {
      auto* v = s.c.data.data();
      for (Eigen::Index n = 0; n < s.c.data.size(); ++n) v[n] *= std::polar(1.0, phase(rng));
    }
    s.t_prev = s.c;
    iterate(s, options.warmup_iters, design, dual, target_mag, energy, options.gamma);
    candidates.push_back(std::move(s));
  }
  FglaResult out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double e = candidates[i].error_db.empty() ? 0.0 : candidates[i].error_db.back();
    out.warmup_error_db.push_back(e);
    if (e < out.warmup_error_db[best]) best = i;
  }
  FglaState& s = candidates[best];
  iterate(s, options.total_iters - options.warmup_iters, design, dual, target_mag, energy, options.gamma);
  out.selected_candidate = best;
  out.error_db = s.error_db;
  out.signal = synthesize_real(dual, s.t_prev);
  return out;
}

double err_ms(const FilterBankDesign& reference, std::span<const double> f, std::span<const double> f_r) {
  if (f.size() != f_r.size()) throw InvalidArgument("signals must have equal length");
  auto W = analyze(reference, f);
  auto Wr = analyze(reference, f_r);
  double den = W.data.squaredNorm();
  if (!(den > 0.0)) throw InvalidArgument("reference signal has zero energy in the reference representation");
  double num = (Wr.data.cwiseAbs() - W.data.cwiseAbs()).squaredNorm();
  return to_db(num, den);
}

FilterBankDesign reference_design(std::size_t L, double sample_rate) {
  return geometric_design(WaveletSpec::cauchy(1000.0), 181, sample_rate / 100.0, sample_rate / 2.0, 7, L,
                          sample_rate);
}

AccumulatedSpectrogram accumulated_spectrogram(const FilterBankDesign& design, std::size_t frame_begin,
                                               std::size_t frame_end, std::size_t channel_begin,
                                               std::size_t channel_end, const SpectrogramOptions& options) {
  const std::size_t d = design.d();
  const std::size_t L = design.L();
  if (!(frame_begin < frame_end && frame_end <= design.N())) throw InvalidArgument("frame range outside design");
  if (!(channel_begin < channel_end && channel_end <= design.channels()))
    throw InvalidArgument("channel range outside design");
  if (!(options.gauss_dur > 0.0)) throw InvalidArgument("gauss_dur must be positive");
  const double sigma = options.gauss_dur;
  std::size_t nfft = options.fft_size;
  if (nfft == 0) {
    nfft = 16;
    while (static_cast<double>(nfft) < 8.0 * sigma) nfft *= 2;
  }
  std::size_t hop = options.hop;
  if (hop == 0) {
    hop = 1;
    for (std::size_t h = 1; h <= std::max<std::size_t>(1, d / 16); ++h)
      if (d % h == 0) hop = h;
  }
  if (d % hop != 0) throw InvalidArgument("hop must divide d");
  const std::size_t margin = options.margin ? options.margin : 2 * d;
  const std::size_t frames = frame_end - frame_begin;
  const std::size_t span = d * (frames - 1) + 2 * margin;
  const std::size_t P = span / hop + 1;
  const std::size_t bins = nfft / 2 + 1;
  const std::size_t per_frame = d / hop;
  const std::size_t Q = P + (frames - 1) * per_frame;
  if (static_cast<double>(bins) * static_cast<double>(Q) > 5e7) throw InvalidArgument("spectrogram region too large");

  const auto Ls = static_cast<long long>(L);
  auto wrap = [Ls](long long t) { return static_cast<std::size_t>(((t % Ls) + Ls) % Ls); };
  const long long start = static_cast<long long>(d * frame_begin) - static_cast<long long>(margin);
  // Relative positions of the last frame's atom; earlier frames reuse them shifted.
  const long long base = start - static_cast<long long>(d * (frame_end - 1));

  std::vector<double> window(nfft);
  for (std::size_t n = 0; n < nfft; ++n) {
    double x = (static_cast<double>(n) - static_cast<double>(nfft / 2)) / sigma;
    window[n] = std::exp(-0.5 * x * x);
  }

  const std::size_t nch = channel_end - channel_begin;
  const std::size_t workers = std::min(worker_count(), nch);
  std::vector<RealMatrix> partial(workers, RealMatrix::Zero(static_cast<Eigen::Index>(bins), static_cast<Eigen::Index>(P)));
  const std::size_t chunk = (nch + workers - 1) / workers;
  parallel_for(workers, [&](std::size_t wb, std::size_t we) {
    std::vector<std::complex<double>> g(L), buf(nfft);
    RealMatrix spec(static_cast<Eigen::Index>(bins), static_cast<Eigen::Index>(Q));
    for (std::size_t w = wb; w < we; ++w) {
      RealMatrix& acc = partial[w];
      for (std::size_t j = channel_begin + w * chunk; j < std::min(channel_end, channel_begin + (w + 1) * chunk); ++j) {
        for (std::size_t k = 0; k < L; ++k) g[k] = design.responses(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        fft::backward(g.data(), L);
        for (auto& v : g) v /= static_cast<double>(L);
        for (std::size_t q = 0; q < Q; ++q) {
          long long center = base + static_cast<long long>(q * hop);
          for (std::size_t n = 0; n < nfft; ++n)
            buf[n] = g[wrap(center - static_cast<long long>(nfft / 2) + static_cast<long long>(n))] * window[n];
          fft::forward(buf.data(), nfft);
          for (std::size_t b = 0; b < bins; ++b) spec(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(q)) = std::norm(buf[b]);
        }
        for (std::size_t l = frame_begin; l < frame_end; ++l) {
          const std::size_t shift = (frame_end - 1 - l) * per_frame;
          acc += spec.middleCols(static_cast<Eigen::Index>(shift), static_cast<Eigen::Index>(P));
        }
      }
    }
  });
  AccumulatedSpectrogram out;
  out.map = RealMatrix::Zero(static_cast<Eigen::Index>(bins), static_cast<Eigen::Index>(P));
  for (const auto& p : partial) out.map += p;
  out.start = wrap(start);
  out.hop = hop;
  out.fft_size = nfft;
  return out;
}

double coverage_ratio(const RealMatrix& map, std::size_t row_lo, std::size_t row_hi, std::size_t col_lo,
                      std::size_t col_hi) {
  if (!(row_lo < row_hi && row_hi <= static_cast<std::size_t>(map.rows()) && col_lo < col_hi &&
        col_hi <= static_cast<std::size_t>(map.cols())))
    throw InvalidArgument("coverage region outside the map");
  auto block = map.block(static_cast<Eigen::Index>(row_lo), static_cast<Eigen::Index>(col_lo),
                         static_cast<Eigen::Index>(row_hi - row_lo), static_cast<Eigen::Index>(col_hi - col_lo));
  double mean = block.mean();
  return mean > 0.0 ? block.minCoeff() / mean : 0.0;
}

double cost_estimate(std::size_t M, std::size_t M_C, std::size_t L_W) {
  if (M_C < 2 || M <= M_C) throw InvalidArgument("cost_estimate needs M_C >= 2 and M > M_C");
  const double mc = static_cast<double>(M_C);
  return mc * static_cast<double>(L_W) * (1.0 + std::log(static_cast<double>(M) / (mc - 1.0)));
}

double direct_cost(std::size_t M, std::size_t M_C, std::size_t L_W) {
  if (M_C < 1 || M < M_C) throw InvalidArgument("direct_cost needs 1 <= M_C <= M");
  double total = static_cast<double>(M_C) * static_cast<double>(L_W);
  for (std::size_t j = M_C; j <= M; ++j)
    total += std::round(static_cast<double>(L_W) * static_cast<double>(M_C) / static_cast<double>(j));
  return total;
}

}  // namespace gridwave
