// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <string>
#include <vector>

namespace gridwave {

struct AudioBuffer {
  std::vector<double> samples;  // mono
  double sample_rate = 44100.0;
  std::string source;
};

// PCM16 (scaled by 1/32768) or IEEE float32; stereo is averaged to mono.
AudioBuffer read_wav(const std::string& path);
// Mono IEEE float32. Buffers peaking above 1 are scaled down to peak 1.
void write_wav(const std::string& path, const AudioBuffer& buffer);

}  // namespace gridwave
