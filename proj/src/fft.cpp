// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace gridwave::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the scratch buffer untouched; UNALIGNED lets the
    // plan run on arbitrary caller memory through fftw_execute_dft.
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::complex<double>* data, std::size_t n, int sign) {
  if (n <= 1) return;
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(n, sign), p, p);
}

}  // namespace

void forward(std::complex<double>* data, std::size_t n) { run(data, n, FFTW_FORWARD); }
void backward(std::complex<double>* data, std::size_t n) { run(data, n, FFTW_BACKWARD); }

}  // namespace gridwave::fft
