// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gridwave/audio_io.hpp"
#include "gridwave/coef_io.hpp"
#include "gridwave/errors.hpp"

using namespace gridwave;
namespace fs = std::filesystem;

namespace {

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("gridwave_test_" + name); }

void put16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}
void put32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void tag(std::vector<std::uint8_t>& b, const char* t) { b.insert(b.end(), t, t + 4); }

std::vector<std::uint8_t> pcm16_wav(const std::vector<std::int16_t>& samples, std::uint16_t channels,
                                    std::uint32_t rate, bool with_fmt = true, bool with_data = true) {
  std::vector<std::uint8_t> b;
  tag(b, "RIFF");
  put32(b, 0);
  tag(b, "WAVE");
  if (with_fmt) {
    tag(b, "fmt ");
    put32(b, 16);
    put16(b, 1);
    put16(b, channels);
    put32(b, rate);
    put32(b, rate * channels * 2);
    put16(b, static_cast<std::uint16_t>(channels * 2));
    put16(b, 16);
  }
  if (with_data) {
    tag(b, "data");
    put32(b, static_cast<std::uint32_t>(samples.size() * 2));
    for (auto s : samples) put16(b, static_cast<std::uint16_t>(s));
  }
  std::uint32_t riff = static_cast<std::uint32_t>(b.size() - 8);
  for (int i = 0; i < 4; ++i) b[4 + i] = (riff >> (8 * i)) & 0xff;
  return b;
}

void dump(const fs::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream o(p, std::ios::binary);
  o.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

std::string error_of(const fs::path& p) {
  try {
    read_wav(p.string());
  } catch (const IoError& e) {
    return e.what();
  }
  return "";
}

CoefFile sample_file(bool ext) {
  CoefFile f;
  f.info.L = 12;
  f.info.d = 3;
  f.info.M = 2;
  f.info.M_C = 1;
  f.info.N = 4;
  f.info.delay_kind = DelayKind::Digital;
  f.info.family = WaveletFamily::BSpline4;
  f.info.hyperparameter = 6.0;
  f.info.real_mode = true;
  f.info.has_extension = ext;
  f.info.original_length = 11;
  f.info.sample_rate = 16000.0;
  f.info.kronecker_alpha = 0.25;
  f.info.design_id = 0x0123456789abcdefULL;
  f.coefs.data.resize(3, 4);
  for (Eigen::Index i = 0; i < 12; ++i) f.coefs.data.data()[i] = {0.25 * double(i), -0.5 * double(i) + 1.0};
  f.coefs.d = 3;
  return f;
}

}  // namespace

TEST_CASE("PCM16 decoding") {
  auto p = tmp("pcm.wav");
  dump(p, pcm16_wav({0, 0, 0, 0}, 1, 8000));
  auto a = read_wav(p.string());
  CHECK(a.samples == std::vector<double>(4, 0.0));
  CHECK(a.sample_rate == 8000.0);

  dump(p, pcm16_wav({32767, -32768, 16384}, 1, 44100));
  a = read_wav(p.string());
  CHECK(a.samples[0] == 32767.0 / 32768.0);
  CHECK(a.samples[1] == -1.0);
  CHECK(a.samples[2] == 0.5);

  dump(p, pcm16_wav({16384, 0, -16384, 16384}, 2, 22050));
  a = read_wav(p.string());
  REQUIRE(a.samples.size() == 2);
  CHECK(a.samples[0] == 0.25);
  CHECK(a.samples[1] == 0.0);
  fs::remove(p);
}

TEST_CASE("malformed audio files name the problem") {
  auto p = tmp("bad.wav");
  dump(p, pcm16_wav({1, 2, 3}, 1, 8000, false, true));
  CHECK(error_of(p).find("'fmt '") != std::string::npos);
  dump(p, pcm16_wav({1, 2, 3}, 1, 8000, true, false));
  CHECK(error_of(p).find("'data'") != std::string::npos);
  auto b = pcm16_wav({1, 2, 3, 4, 5, 6}, 1, 8000);
  b.resize(b.size() - 5);
  dump(p, b);
  CHECK(error_of(p).find("truncated") != std::string::npos);
  dump(p, {'R', 'I', 'F'});
  CHECK_THROWS_AS(read_wav(p.string()), FormatError);
  fs::remove(p);
  CHECK_THROWS_AS(read_wav(tmp("missing.wav").string()), IoError);
}

TEST_CASE("float WAV round trip") {
  auto p = tmp("float.wav");
  AudioBuffer a;
  a.sample_rate = 16000;
  a.samples = {0.0, 0.5, -0.25, 0.125, -1.0};
  write_wav(p.string(), a);
  auto b = read_wav(p.string());
  CHECK(b.sample_rate == 16000.0);
  CHECK(b.samples == a.samples);
  fs::remove(p);
}

TEST_CASE("coefficient files round trip exactly") {
  for (bool ext : {false, true}) {
    auto f = sample_file(ext);
    auto bytes = encode_coefs(f);
    CHECK(bytes.size() == 4 + 2 + 5 * 8 + 2 + 8 + 1 + 12 * 8 + (ext ? 36 : 0));
    auto g = decode_coefs(bytes);
    CHECK(g.info.L == 12);
    CHECK(g.info.M_C == 1);
    CHECK(g.info.delay_kind == DelayKind::Digital);
    CHECK(g.info.family == WaveletFamily::BSpline4);
    CHECK(g.info.hyperparameter == 6.0);
    CHECK(g.info.has_extension == ext);
    CHECK(g.coefs.data == f.coefs.data);
    if (ext) {
      CHECK(g.info.original_length == 11);
      CHECK(g.info.sample_rate == 16000.0);
      CHECK(g.info.kronecker_alpha == 0.25);
      CHECK(g.coefs.design_id == 0x0123456789abcdefULL);
    }
    CHECK(encode_coefs(g) == bytes);
  }
  auto p = tmp("c.gwfb");
  save_coefs(p.string(), sample_file(true));
  CHECK(load_coefs(p.string()).coefs.data == sample_file(true).coefs.data);
  fs::remove(p);
}

TEST_CASE("coefficient file validation") {
  auto bytes = encode_coefs(sample_file(true));
  CHECK(bytes[0] == 'G');
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  auto v2 = bytes;
  v2[4] = 2;
  try {
    decode_coefs(v2);
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("unsupported coefficient file version") != std::string::npos);
  }
  auto cut = bytes;
  cut.resize(60);
  CHECK_THROWS_AS(decode_coefs(cut), FormatError);
  auto junk = bytes;
  junk.push_back(0);
  CHECK_THROWS_AS(decode_coefs(junk), FormatError);
  auto bad = sample_file(false);
  bad.info.N = 5;
  CHECK_THROWS_AS(encode_coefs(bad), InvalidArgument);
  CHECK_THROWS_AS(load_coefs(tmp("nope.gwfb").string()), IoError);
}
