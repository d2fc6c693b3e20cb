// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include "gridwave/lds.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "gridwave/errors.hpp"

namespace gridwave {

double golden_alpha() {
  // Rounded from (3 - sqrt 5) / 2 = 0.38196601125010515179541316563436188...
  return 0.381966011250105151795413165634361882;
}

GeneratorMatrix GeneratorMatrix::bidiagonal(int bits) {
  if (bits < 1 || bits > kMaxBits) throw InvalidArgument("generator matrix bits out of range");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(bits));
  for (int r = 0; r < bits; ++r) {
    std::uint64_t mask = std::uint64_t{1} << r;
    if (r > 0) mask |= std::uint64_t{1} << (r - 1);
    rows[static_cast<std::size_t>(r)] = mask;
  }
  return GeneratorMatrix(std::move(rows));
}

GeneratorMatrix GeneratorMatrix::identity(int bits) {
  if (bits < 1 || bits > kMaxBits) throw InvalidArgument("generator matrix bits out of range");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(bits));
  for (int r = 0; r < bits; ++r) rows[static_cast<std::size_t>(r)] = std::uint64_t{1} << r;
  return GeneratorMatrix(std::move(rows));
}

GeneratorMatrix GeneratorMatrix::from_rows(std::vector<std::uint64_t> rows) {
  if (rows.empty() || rows.size() > static_cast<std::size_t>(kMaxBits))
    throw InvalidArgument("generator matrix needs 1..53 rows");
  return GeneratorMatrix(std::move(rows));
}

bool GeneratorMatrix::leading_nonsingular(int m) const {
  if (m < 1) return true;
  if (m > bits()) return false;
  std::uint64_t cols = (m >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  std::vector<std::uint64_t> a(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) a[static_cast<std::size_t>(r)] = rows_[static_cast<std::size_t>(r)] & cols;
  // Gaussian elimination over Z2.
  for (int c = 0; c < m; ++c) {
    std::uint64_t bit = std::uint64_t{1} << c;
    int pivot = -1;
    for (int r = c; r < m; ++r)
      if (a[static_cast<std::size_t>(r)] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < m; ++r)
      if (r != c && (a[static_cast<std::size_t>(r)] & bit)) a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(c)];
  }
  return true;
}

std::string to_string(DelayKind kind) {
  switch (kind) {
    case DelayKind::Zero: return "zero";
    case DelayKind::Kronecker: return "kronecker";
    case DelayKind::Digital: return "digital";
  }
  return "unknown";
}

DelayKind parse_delay_kind(std::string_view name) {
  if (name == "zero") return DelayKind::Zero;
  if (name == "kronecker") return DelayKind::Kronecker;
  if (name == "digital") return DelayKind::Digital;
  throw InvalidArgument("unknown delay kind '" + std::string(name) + "'");
}

DelayKind DelaySequence::kind() const {
  if (std::holds_alternative<KroneckerDelays>(source)) return DelayKind::Kronecker;
  if (std::holds_alternative<DigitalDelays>(source)) return DelayKind::Digital;
  return DelayKind::Zero;
}

DelaySequence kronecker_seq(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("kronecker alpha must lie in (0,1)");
  if (n == 0) throw InvalidArgument("sequence length must be positive");
  DelaySequence seq{KroneckerDelays{alpha}, std::vector<double>(n)};
  const long double a = alpha;
  for (std::size_t l = 0; l < n; ++l) {
    long double x = a * static_cast<long double>(l);
    double frac = static_cast<double>(x - std::floor(x));
    seq.elements[l] = frac >= 1.0 ? 0.0 : frac;
  }
  return seq;
}

DelaySequence digital_seq(const GeneratorMatrix& matrix, std::size_t n) {
  if (n == 0) throw InvalidArgument("sequence length must be positive");
  int need = n > 1 ? std::bit_width(n - 1) : 0;
  if (need > matrix.bits()) throw InvalidArgument("generator matrix too small for sequence length");
  for (int m = 1; m <= std::max(need, 1); ++m)
    if (!matrix.leading_nonsingular(m)) throw InvalidArgument("generator matrix has a singular leading submatrix");
  DelaySequence seq{DigitalDelays{matrix}, std::vector<double>(n)};
  const int bits = matrix.bits();
  for (std::size_t l = 0; l < n; ++l) {
    std::uint64_t acc = 0;  // bit (bits-1-r) holds eta_r
    for (int r = 0; r < bits; ++r) {
      std::uint64_t eta = static_cast<std::uint64_t>(std::popcount(matrix.row(r) & l) & 1);
      acc |= eta << (bits - 1 - r);
    }
    seq.elements[l] = std::ldexp(static_cast<double>(acc), -bits);
  }
  return seq;
}

DelaySequence zero_seq(std::size_t n) {
  if (n == 0) throw InvalidArgument("sequence length must be positive");
  return DelaySequence{ZeroDelays{}, std::vector<double>(n, 0.0)};
}

DelaySequence make_delays(DelayKind kind, std::size_t n, double alpha) {
  switch (kind) {
    case DelayKind::Zero: return zero_seq(n);
    case DelayKind::Kronecker: return kronecker_seq(alpha > 0.0 ? alpha : golden_alpha(), n);
    case DelayKind::Digital: return digital_seq(GeneratorMatrix::bidiagonal(), n);
  }
  throw InvalidArgument("unknown delay kind");
}

bool check_elementary_intervals(const DelaySequence& seq, int m) {
  if (m < 0 || m > 30) throw InvalidArgument("interval level out of range");
  const std::size_t block = std::size_t{1} << m;
  if (block > seq.size()) throw InvalidArgument("2^m exceeds the sequence length");
  if (seq.size() % block != 0) throw InvalidArgument("sequence length must be a multiple of 2^m");
  std::vector<char> hit(block);
  for (std::size_t p = 0; p < seq.size(); p += block) {
    std::fill(hit.begin(), hit.end(), 0);
    for (std::size_t i = p; i < p + block; ++i) {
      double x = seq[i];
      if (!(x >= 0.0 && x < 1.0)) return false;
      auto k = static_cast<std::size_t>(std::ldexp(x, m));
      if (hit[k]) return false;
      hit[k] = 1;
    }
  }
  return true;
}

}  // namespace gridwave
