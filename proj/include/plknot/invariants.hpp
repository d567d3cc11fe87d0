// Copyright 2026 The plknot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plknot/diagram.hpp"

namespace plknot {

/// Integer Laurent polynomial in one variable A. Zero coefficients are never
/// stored.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  static LaurentPolynomial constant(std::int64_t c) { return monomial(0, c); }
  static LaurentPolynomial monomial(int exponent, std::int64_t coeff = 1);

  const std::map<int, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coeff(int exponent) const;
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const LaurentPolynomial& b) { return a *= b; }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  /// Multiplies by A^k.
  LaurentPolynomial shifted(int k) const;
  /// f(1/A).
  LaurentPolynomial inverted() const;
  /// Exact quotient, or nothing if `divisor` does not divide this polynomial.
  /// The divisor's extreme coefficients must be +-1.
  std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& divisor) const;

  /// Lexicographic order on the (exponent, coefficient) list, ascending
  /// exponent first.
  friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b);

  /// e.g. "A^-16-A^-12+A^-4", "1", "0".
  std::string to_string() const;

 private:
  void add_term(int exponent, std::int64_t coeff);
  std::map<int, std::int64_t> terms_;
};

/// -A^2 - A^-2.
LaurentPolynomial loop_value();

/// Kauffman bracket of a resolution. Sums over smoothings crossing by crossing
/// and merges partial smoothings with identical boundary connectivity.
/// Throws PartialAssignmentError.
LaurentPolynomial kauffman_bracket(const Resolution& r);
/// Same state sum directly on a PD code (at least one crossing).
LaurentPolynomial kauffman_bracket(const PDCode& pd);

/// Writhe read from the arc labels of a PD code (arcs numbered along the
/// orientation). Throws std::invalid_argument if the orientation of some
/// over strand cannot be told from the labels (only possible with one crossing).
int pd_writhe(const PDCode& pd);

/// |det| of a first minor of the Fox coloring matrix built from the PD code.
/// 1 for an empty code.
std::int64_t determinant(const PDCode& pd);

struct KnotFingerprint {
  /// (-A^3)^(-w) <D>, replaced by its value at 1/A if that is lexicographically
  /// smaller, so a knot and its mirror share a fingerprint.
  LaurentPolynomial jones_normalized;
  std::int64_t determinant = 1;

  std::string to_string() const;
  friend bool operator==(const KnotFingerprint&, const KnotFingerprint&) = default;
};

KnotFingerprint fingerprint(const PDCode& pd, int writhe);
/// Throws PartialAssignmentError.
KnotFingerprint jones_fingerprint(const Resolution& r);

struct KnotClass {
  std::string name;  // "0_1", "3_1", ... or "unknown:<fingerprint>"

  bool known() const { return name.rfind("unknown:", 0) != 0; }
  friend bool operator==(const KnotClass&, const KnotClass&) = default;
  friend auto operator<=>(const KnotClass&, const KnotClass&) = default;
};

struct KnotTableEntry {
  std::string name;
  PDCode pd;  // empty for the unknot
  KnotFingerprint fingerprint;
};

/// Parses a table document (see data/knot_table.json) and computes every
/// fingerprint. Throws std::runtime_error on malformed input or when two
/// entries share a normalized Jones polynomial.
std::vector<KnotTableEntry> load_knot_table(std::string_view json_text);

/// The bundled reference table (knots through seven crossings).
const std::vector<KnotTableEntry>& knot_table();

KnotClass classify(const KnotFingerprint& fp);
/// Throws PartialAssignmentError.
KnotClass classify(const Resolution& r);

}  // namespace plknot
