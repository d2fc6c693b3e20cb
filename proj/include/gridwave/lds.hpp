// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gridwave {

// 1 - 1/phi = (3 - sqrt 5) / 2.
double golden_alpha();

// Binary generator matrix, stored as one 64-bit mask per row. Bit k of row r
// is c_{r+1,k+1}, i.e. the coefficient multiplying binary digit k of the index.
class GeneratorMatrix {
 public:
  static constexpr int kMaxBits = 53;

  // Row r has ones in columns r-1 and r (row 0: column 0 only).
  static GeneratorMatrix bidiagonal(int bits = kMaxBits);
  // Identity: yields the van der Corput sequence.
  static GeneratorMatrix identity(int bits = kMaxBits);
  static GeneratorMatrix from_rows(std::vector<std::uint64_t> rows);

  int bits() const { return static_cast<int>(rows_.size()); }
  std::uint64_t row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  // Upper-left m x m block invertible over Z2.
  bool leading_nonsingular(int m) const;

  bool operator==(const GeneratorMatrix&) const = default;

 private:
  explicit GeneratorMatrix(std::vector<std::uint64_t> rows) : rows_(std::move(rows)) {}
  std::vector<std::uint64_t> rows_;
};

enum class DelayKind : std::uint8_t { Zero = 0, Kronecker = 1, Digital = 2 };

std::string to_string(DelayKind kind);
DelayKind parse_delay_kind(std::string_view name);

struct KroneckerDelays {
  double alpha;
};
struct DigitalDelays {
  GeneratorMatrix matrix;
};
struct ZeroDelays {};

struct DelaySequence {
  std::variant<KroneckerDelays, DigitalDelays, ZeroDelays> source;
  std::vector<double> elements;

  DelayKind kind() const;
  std::size_t size() const { return elements.size(); }
  double operator[](std::size_t i) const { return elements[i]; }
};

DelaySequence kronecker_seq(double alpha, std::size_t n);
DelaySequence digital_seq(const GeneratorMatrix& matrix, std::size_t n);
DelaySequence zero_seq(std::size_t n);
// Kronecker uses alpha (golden_alpha() when unset), Digital the bidiagonal matrix.
DelaySequence make_delays(DelayKind kind, std::size_t n, double alpha = 0.0);

bool check_elementary_intervals(const DelaySequence& seq, int m);

}  // namespace gridwave
