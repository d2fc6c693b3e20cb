// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/audio_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "gridwave/errors.hpp"

namespace gridwave {
namespace {

std::uint32_t u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>(v >> 8));
}

constexpr std::uint16_t kPcm = 1;
constexpr std::uint16_t kFloat = 3;
constexpr std::uint16_t kExtensible = 0xFFFE;

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12) throw FormatError(path, "truncated file: missing RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError(path, "not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    std::uint32_t size = u32(hdr + 4);
    std::size_t body = pos + 8;
    std::size_t avail = bytes.size() - body;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || avail < 16) throw FormatError(path, "truncated 'fmt ' chunk");
      const unsigned char* f = bytes.data() + body;
      format = u16(f);
      channels = u16(f + 2);
      rate = u32(f + 4);
      bits = u16(f + 14);
      if (format == kExtensible) {
        if (size < 40 || avail < 40) throw FormatError(path, "truncated 'fmt ' extension");
        format = u16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = std::min<std::size_t>(size, avail);
      if (size > avail) throw FormatError(path, "truncated 'data' chunk");
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) throw FormatError(path, "missing 'fmt ' chunk");
  if (!data) throw FormatError(path, "missing 'data' chunk");
  if (channels != 1 && channels != 2) throw FormatError(path, "only mono or stereo audio is supported");
  if (rate == 0) throw FormatError(path, "sample rate is zero");
  const bool pcm16 = format == kPcm && bits == 16;
  const bool f32 = format == kFloat && bits == 32;
  if (!pcm16 && !f32) throw FormatError(path, "unsupported codec (need PCM16 or float32)");

  const std::size_t width = bits / 8;
  const std::size_t frames = data_size / (width * channels);
  AudioBuffer out;
  out.sample_rate = rate;
  out.source = path;
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + (i * channels + c) * width;
      if (pcm16) {
        acc += static_cast<std::int16_t>(u16(p)) / 32768.0;
      } else {
        acc += std::bit_cast<float>(u32(p));
      }
    }
    out.samples[i] = acc / channels;
    if (!std::isfinite(out.samples[i])) throw FormatError(path, "non-finite sample");
  }
  return out;
}

void write_wav(const std::string& path, const AudioBuffer& buffer) {
  if (!(buffer.sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  double peak = 0.0;
  for (double x : buffer.samples) {
    if (!std::isfinite(x)) throw InvalidArgument("cannot write non-finite samples");
    peak = std::max(peak, std::abs(x));
  }
  const double gain = peak > 1.0 ? 1.0 / peak : 1.0;
  const auto n = static_cast<std::uint32_t>(buffer.samples.size());
  std::string s;
  s.reserve(44 + 4 * buffer.samples.size());
  s += "RIFF";
  put32(s, 36 + 4 * n);
  s += "WAVEfmt ";
  put32(s, 16);
  put16(s, kFloat);
  put16(s, 1);
  const auto rate = static_cast<std::uint32_t>(std::lround(buffer.sample_rate));
  put32(s, rate);
  put32(s, rate * 4);
  put16(s, 4);
  put16(s, 32);
  s += "data";
  put32(s, 4 * n);
  for (double x : buffer.samples) put32(s, std::bit_cast<std::uint32_t>(static_cast<float>(x * gain)));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!out) throw IoError(path, "write failed");
}

}  // namespace gridwave
