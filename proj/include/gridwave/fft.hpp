// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <complex>
#include <cstddef>

namespace gridwave::fft {

// In-place, unnormalized transforms. forward uses exp(-2*pi*i*k*t/n),
// backward uses exp(+2*pi*i*k*t/n); backward(forward(x)) == n * x.
// Plans are cached per size and safe to use from several threads.
void forward(std::complex<double>* data, std::size_t n);
void backward(std::complex<double>* data, std::size_t n);

}  // namespace gridwave::fft
