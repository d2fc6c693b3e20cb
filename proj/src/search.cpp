// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "gridwave/design.hpp"
#include "gridwave/errors.hpp"
#include "gridwave/frame.hpp"

namespace gridwave {
namespace {

constexpr std::size_t kMinRatioMToMC = 50;
constexpr double kTieTol = 1e-9;

bool better(double r, std::size_t M, double best_r, std::size_t best_M) {
  if (std::isinf(best_r)) return !std::isinf(r) || M < best_M;
  if (r < best_r * (1.0 - kTieTol)) return true;
  return std::abs(r - best_r) <= kTieTol * best_r && M < best_M;
}

double ratio_or_inf(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C, std::size_t d,
                    const SearchOptions& options) {
  try {
    return evaluate_ratio(wavelet, M, M_C, d, options);
  } catch (const NonInvertibleError&) {
    return std::numeric_limits<double>::infinity();
  }
}

SearchRecord make_record(const WaveletSpec& wavelet, double rate, std::size_t M_C, std::size_t M,
                         double r, const SearchOptions& options) {
  std::size_t d = choose_decimation(M, rate);
  return SearchRecord{wavelet, rate, M_C, M, d, r, d * options.frames};
}

}  // namespace

double evaluate_ratio(const WaveletSpec& wavelet, std::size_t M, std::size_t M_C, std::size_t d,
                      const SearchOptions& options) {
  if (options.frames < 2) throw InvalidArgument("search needs at least 2 frames");
  auto delays = make_delays(options.delays, M + 1, options.kronecker_alpha);
  auto model = linear_model(wavelet, M, M_C, d, d * options.frames, delays);
  return frame_bounds(model, SignalDomain::Real).R_FB;
}

std::size_t optimize_mc(const WaveletSpec& wavelet, double oversampling, const SearchOptions& options) {
  if (!(oversampling >= 1.0)) throw InvalidArgument("oversampling must be at least 1");
  std::size_t M = options.m_probe;
  const std::size_t M_max = options.candidates.empty()
                                ? M
                                : std::max(M, *std::max_element(options.candidates.begin(), options.candidates.end()));
  std::vector<double> R;  // R[i] belongs to M_C = i + 1
  int small_steps = 0;
  for (std::size_t mc = 1;; ++mc) {
    if (kMinRatioMToMC * mc > M) {
      // The optimal M_C does not depend on M; widen the probe and rescan.
      if (2 * M > M_max) throw InvalidArgument("M_C scan exceeded M/50 without reaching a plateau");
      return optimize_mc(wavelet, oversampling, [&] {
        SearchOptions o = options;
        o.m_probe = 2 * M;
        return o;
      }());
    }
    R.push_back(ratio_or_inf(wavelet, M, mc, choose_decimation(M, oversampling), options));
    if (R.size() < 2) continue;
    double prev = R[R.size() - 2];
    double cur = R.back();
    bool small = !std::isinf(prev) && (prev - cur) < options.plateau_tol * prev;
    small_steps = small ? small_steps + 1 : 0;
    if (small_steps == 2) return mc - 2;
  }
}

SearchRecord optimize_m(const WaveletSpec& wavelet, double oversampling, std::size_t M_C,
                        const SearchOptions& options) {
  if (M_C < 1) throw InvalidArgument("M_C must be positive");
  bool found = false;
  SearchRecord best;
  best.R_FB = std::numeric_limits<double>::infinity();
  for (std::size_t M : options.candidates) {
    if (M < kMinRatioMToMC * M_C) continue;
    double r = ratio_or_inf(wavelet, M, M_C, choose_decimation(M, oversampling), options);
    if (!found || better(r, M, best.R_FB, best.M)) {
      best = make_record(wavelet, oversampling, M_C, M, r, options);
      found = true;
    }
  }
  if (!found) throw InvalidArgument("no candidate M satisfies M >= 50 M_C");
  return best;
}

SearchRecord refine_m(const SearchRecord& record, const SearchOptions& options) {
  std::vector<std::size_t> feasible;
  for (std::size_t M : options.candidates)
    if (M >= kMinRatioMToMC * record.M_C) feasible.push_back(M);
  std::sort(feasible.begin(), feasible.end());
  const std::size_t floor_M = kMinRatioMToMC * record.M_C;
  auto it = std::find(feasible.begin(), feasible.end(), record.M);
  std::size_t lo = floor_M, hi = record.M;
  if (it != feasible.end()) {
    lo = it == feasible.begin() ? std::min(record.M, floor_M) : *(it - 1);
    hi = (it + 1) == feasible.end() ? record.M : *(it + 1);
  }
  std::map<std::size_t, double> seen{{record.M, record.R_FB}};
  auto eval = [&](std::size_t M) {
    auto f = seen.find(M);
    if (f != seen.end()) return f->second;
    double r = ratio_or_inf(record.wavelet, M, record.M_C, choose_decimation(M, record.target_oversampling), options);
    seen.emplace(M, r);
    return r;
  };
  std::size_t best = record.M;
  double best_r = record.R_FB;
  while (hi - lo > 2) {
    std::size_t left = (lo + best) / 2;
    std::size_t right = (best + hi + 1) / 2;
    std::size_t prev = best;
    for (std::size_t M : {left, right}) {
      if (M == prev || M < floor_M || M < 1) continue;
      double r = eval(M);
      if (better(r, M, best_r, best)) {
        best = M;
        best_r = r;
      }
    }
    if (best < prev) {
      hi = prev;
    } else if (best > prev) {
      lo = prev;
    } else {
      lo = std::max(lo, left);
      hi = std::min(hi, right);
      if (left == lo && right == hi && hi - lo > 2 && (best - lo) <= 1 && (hi - best) <= 1) break;
    }
  }
  return make_record(record.wavelet, record.target_oversampling, record.M_C, best, best_r, options);
}

std::vector<SearchRecord> full_search(const WaveletSpec& wavelet, const std::vector<double>& oversampling_list,
                                      const SearchOptions& options) {
  std::vector<SearchRecord> out;
  for (double rate : oversampling_list) {
    std::size_t mc = optimize_mc(wavelet, rate, options);
    out.push_back(refine_m(optimize_m(wavelet, rate, mc, options), options));
  }
  return out;
}

std::string format_table(const std::vector<SearchRecord>& records) {
  std::ostringstream os;
  for (const auto& r : records) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-22s %5.3g  %.2f (%zu,%zu)\n", r.wavelet.to_string().c_str(),
                  r.target_oversampling, r.R_FB, r.M_C, r.M);
    os << buf;
  }
  return os.str();
}

}  // namespace gridwave
