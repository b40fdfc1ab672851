// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lf4d {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A geometric input lies outside the domain of a parametrization
// (point off the proxy surface, direction in the internal hemisphere).
class DomainError : public Error {
  public:
    using Error::Error;
};

class IndexError : public Error {
  public:
    using Error::Error;
};

// Caller violated an operation precondition (observer inside the proxy, ...).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Malformed binary container (LF4D, PPM).
class FormatError : public Error {
  public:
    using Error::Error;
};

// Malformed scene document.
class ParseError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace lf4d
