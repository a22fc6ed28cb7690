// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_ERRORS_HPP
#define HETMETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetmeta {

// Thrown when an iterative kernel or a quadrature cannot reach its accuracy
// target within its iteration/subdivision budget.  Carries a human readable
// description of where convergence stalled.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a moment pair admits no valid beta-distribution match
// (m2 <= m1^2 or m2 >= m1 up to tolerance).  Keeps the offending moments so
// callers can report them.
class DegenerateMomentsError : public std::runtime_error {
 public:
  DegenerateMomentsError(const std::string& what, double m1, double m2)
      : std::runtime_error(what), m1_(m1), m2_(m2) {}
  double m1() const { return m1_; }
  double m2() const { return m2_; }

 private:
  double m1_;
  double m2_;
};

}  // namespace hetmeta

#endif  // HETMETA_ERRORS_HPP
