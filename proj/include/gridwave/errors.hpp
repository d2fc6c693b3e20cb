// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridwave {

// Bad parameters or precondition violations.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Frame operator is singular (or numerically so) at some frequency bin.
class NonInvertibleError : public std::runtime_error {
 public:
  NonInvertibleError(const std::string& what, std::size_t bin)
      : std::runtime_error(what), bin_(bin) {}
  std::size_t bin() const noexcept { return bin_; }

 private:
  std::size_t bin_;
};

// File system failures; always carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Malformed or unsupported file contents.
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace gridwave
