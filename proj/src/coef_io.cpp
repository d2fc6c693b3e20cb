// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/coef_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "gridwave/errors.hpp"

namespace gridwave {
namespace {

constexpr char kMagic[4] = {'G', 'W', 'F', 'B'};
constexpr char kExtMagic[4] = {'G', 'W', 'X', '1'};
constexpr std::uint16_t kVersion = 1;

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out.insert(out.end(), b, b + n);
  }
  template <class T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  void f32(float v) { le(std::bit_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> b, const std::string& src) : buf(b), source(src) {}
  void need(std::size_t n, const char* what) {
    if (pos + n > buf.size()) throw FormatError(source, std::string("truncated coefficient file: missing ") + what);
  }
  template <class T>
  T le(const char* what) {
    need(sizeof(T), what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(buf[pos + i]) << (8 * i));
    pos += sizeof(T);
    return v;
  }
  double f64(const char* what) { return std::bit_cast<double>(le<std::uint64_t>(what)); }
  float f32(const char* what) { return std::bit_cast<float>(le<std::uint32_t>(what)); }
  std::span<const std::uint8_t> buf;
  std::string source;
  std::size_t pos = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_coefs(const CoefFile& file) {
  const auto& in = file.info;
  const auto& c = file.coefs;
  if (c.channels() != in.M + 1 || c.frames() != in.N || in.N * in.d != in.L)
    throw InvalidArgument("coefficient header does not match the matrix shape");
  Writer w;
  w.bytes(kMagic, 4);
  w.le<std::uint16_t>(kVersion);
  w.le<std::uint64_t>(in.L);
  w.le<std::uint64_t>(in.d);
  w.le<std::uint64_t>(in.M);
  w.le<std::uint64_t>(in.M_C);
  w.le<std::uint64_t>(in.N);
  w.le<std::uint8_t>(static_cast<std::uint8_t>(in.delay_kind));
  w.le<std::uint8_t>(static_cast<std::uint8_t>(in.family));
  w.f64(in.hyperparameter);
  w.le<std::uint8_t>(in.real_mode ? 1 : 0);
  const auto* v = c.data.data();
  for (Eigen::Index i = 0; i < c.data.size(); ++i) {
    w.f32(static_cast<float>(v[i].real()));
    w.f32(static_cast<float>(v[i].imag()));
  }
  if (in.has_extension) {
    w.bytes(kExtMagic, 4);
    w.le<std::uint64_t>(in.original_length);
    w.f64(in.sample_rate);
    w.f64(in.kronecker_alpha);
    w.le<std::uint64_t>(in.design_id);
  }
  return w.out;
}

CoefFile decode_coefs(std::span<const std::uint8_t> bytes, const std::string& source) {
  Reader r(bytes, source);
  r.need(4, "magic");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw FormatError(source, "bad magic (expected GWFB)");
  r.pos = 4;
  auto version = r.le<std::uint16_t>("version");
  if (version != kVersion) throw FormatError(source, "unsupported coefficient file version " + std::to_string(version));
  CoefFile f;
  auto& in = f.info;
  in.L = r.le<std::uint64_t>("L");
  in.d = r.le<std::uint64_t>("d");
  in.M = r.le<std::uint64_t>("M");
  in.M_C = r.le<std::uint64_t>("M_C");
  in.N = r.le<std::uint64_t>("N");
  auto kind = r.le<std::uint8_t>("delay kind");
  auto fam = r.le<std::uint8_t>("wavelet family");
  in.hyperparameter = r.f64("hyperparameter");
  in.real_mode = r.le<std::uint8_t>("real_mode") != 0;
  if (kind > 2) throw FormatError(source, "unknown delay kind");
  if (fam > 1) throw FormatError(source, "unknown wavelet family");
  in.delay_kind = static_cast<DelayKind>(kind);
  in.family = static_cast<WaveletFamily>(fam);
  if (in.d == 0 || in.N * in.d != in.L) throw FormatError(source, "inconsistent L, d, N");
  const std::uint64_t count = (in.M + 1) * in.N;
  if (in.M + 1 == 0 || count / (in.M + 1) != in.N || count > (bytes.size() - r.pos) / 8)
    throw FormatError(source, "truncated coefficient file: missing coefficient data");
  f.coefs.data.resize(static_cast<Eigen::Index>(in.M + 1), static_cast<Eigen::Index>(in.N));
  auto* v = f.coefs.data.data();
  for (std::uint64_t i = 0; i < count; ++i) {
    float re = r.f32("coefficient data");
    float im = r.f32("coefficient data");
    v[i] = {re, im};
  }
  f.coefs.d = in.d;
  f.coefs.real_mode = in.real_mode;
  in.has_extension = false;
  in.original_length = in.L;
  if (r.pos < bytes.size()) {
    r.need(4, "extension magic");
    if (std::memcmp(bytes.data() + r.pos, kExtMagic, 4) != 0) throw FormatError(source, "unknown trailing data");
    r.pos += 4;
    in.has_extension = true;
    in.original_length = r.le<std::uint64_t>("original length");
    in.sample_rate = r.f64("sample rate");
    in.kronecker_alpha = r.f64("kronecker alpha");
    in.design_id = r.le<std::uint64_t>("design id");
    if (r.pos != bytes.size()) throw FormatError(source, "unknown trailing data");
  }
  f.coefs.design_id = in.design_id;
  return f;
}

void save_coefs(const std::string& path, const CoefFile& file) {
  auto bytes = encode_coefs(file);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "write failed");
}

CoefFile load_coefs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_coefs(bytes, path);
}

}  // namespace gridwave
