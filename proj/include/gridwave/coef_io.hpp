// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridwave/lds.hpp"
#include "gridwave/wavelets.hpp"
#include "gridwave/xform.hpp"

namespace gridwave {

// "GWFB" version 1: header, (M+1) * N complex64 values channel-major, then
// an optional "GWX1" extension with the unpadded length, sample rate,
// Kronecker parameter and design id.
struct CoefFileInfo {
  std::uint64_t L = 0;
  std::uint64_t d = 0;
  std::uint64_t M = 0;
  std::uint64_t M_C = 0;
  std::uint64_t N = 0;
  DelayKind delay_kind = DelayKind::Kronecker;
  WaveletFamily family = WaveletFamily::Cauchy;
  double hyperparameter = 0.0;
  bool real_mode = true;
  bool has_extension = true;
  std::uint64_t original_length = 0;
  double sample_rate = 2.0;
  double kronecker_alpha = 0.0;
  std::uint64_t design_id = 0;
};

struct CoefFile {
  CoefFileInfo info;
  CoefMatrix coefs;  // values are stored at single precision
};

std::vector<std::uint8_t> encode_coefs(const CoefFile& file);
CoefFile decode_coefs(std::span<const std::uint8_t> bytes, const std::string& source = "<memory>");

void save_coefs(const std::string& path, const CoefFile& file);
CoefFile load_coefs(const std::string& path);

}  // namespace gridwave
