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

#include "plknot/invariants.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "knot_table_data.hpp"
#include "plknot/errors.hpp"
#include "plknot/generators.hpp"

namespace plknot {

// ---------------------------------------------------------------------------
// LaurentPolynomial

LaurentPolynomial LaurentPolynomial::monomial(int exponent, std::int64_t coeff) {
  LaurentPolynomial p;
  p.add_term(exponent, coeff);
  return p;
}

void LaurentPolynomial::add_term(int exponent, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

std::int64_t LaurentPolynomial::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& other) {
  LaurentPolynomial product;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) product.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(product);
  return *this;
}

LaurentPolynomial LaurentPolynomial::shifted(int k) const {
  LaurentPolynomial out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
  return out;
}

LaurentPolynomial LaurentPolynomial::inverted() const {
  LaurentPolynomial out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

std::optional<LaurentPolynomial> LaurentPolynomial::divide_exact(
    const LaurentPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const auto [lead_exp, lead_coeff] = *divisor.terms_.rbegin();
  if (lead_coeff != 1 && lead_coeff != -1) {
    throw std::invalid_argument("divide_exact needs a divisor with unit leading coefficient");
  }
  LaurentPolynomial quotient;
  LaurentPolynomial remainder = *this;
  while (!remainder.is_zero()) {
    const auto [e, c] = *remainder.terms_.rbegin();
    // Quotient exponents cannot go below min(this) - min(divisor).
    if (e - lead_exp < min_exponent() - divisor.min_exponent()) return std::nullopt;
    const auto term = monomial(e - lead_exp, c * lead_coeff);
    quotient += term;
    remainder -= term * divisor;
  }
  return quotient;
}

bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                      b.terms_.end());
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const auto mag = c < 0 ? -c : c;
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += "A";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

LaurentPolynomial loop_value() {
  return LaurentPolynomial::monomial(2, -1) + LaurentPolynomial::monomial(-2, -1);
}

// ---------------------------------------------------------------------------
// Bracket

namespace {

using OpenEnds = std::map<int, int>;

/// Connects arc ends x and y inside a smoothing. Returns true when this closes
/// a loop.
bool join(OpenEnds& open, int x, int y) {
  if (x == y) return true;
  auto ix = open.find(x);
  auto iy = open.find(y);
  const bool x_open = ix != open.end();
  const bool y_open = iy != open.end();
  if (x_open && y_open && ix->second == y) {
    open.erase(ix);
    open.erase(y);
    return true;
  }
  const int fx = x_open ? ix->second : x;
  const int fy = y_open ? iy->second : y;
  if (x_open) open.erase(x);
  if (y_open) open.erase(y);
  open[fx] = fy;
  open[fy] = fx;
  return false;
}

std::vector<int> encode(const OpenEnds& open) {
  std::vector<int> key;
  key.reserve(2 * open.size());
  for (const auto& [a, b] : open) {
    key.push_back(a);
    key.push_back(b);
  }
  return key;
}

OpenEnds decode(const std::vector<int>& key) {
  OpenEnds open;
  for (std::size_t i = 0; i + 1 < key.size(); i += 2) open.emplace(key[i], key[i + 1]);
  return open;
}

}  // namespace

LaurentPolynomial kauffman_bracket(const PDCode& pd) {
  if (pd.empty()) throw NoCrossingsError("bracket of a PD code needs at least one crossing");
  const auto d = loop_value();

  // Partial smoothing (boundary connectivity) -> accumulated weight.
  std::map<std::vector<int>, LaurentPolynomial> states;
  states.emplace(std::vector<int>{}, LaurentPolynomial::constant(1));
  for (const auto& x : pd) {
    std::map<std::vector<int>, LaurentPolynomial> next;
    for (const auto& [key, weight] : states) {
      // A-smoothing joins (x0,x1),(x2,x3); B-smoothing joins (x0,x3),(x1,x2).
      for (int smoothing = 0; smoothing < 2; ++smoothing) {
        OpenEnds open = decode(key);
        int loops = 0;
        if (smoothing == 0) {
          loops += join(open, x[0], x[1]);
          loops += join(open, x[2], x[3]);
        } else {
          loops += join(open, x[0], x[3]);
          loops += join(open, x[1], x[2]);
        }
        LaurentPolynomial w = weight.shifted(smoothing == 0 ? 1 : -1);
        for (int i = 0; i < loops; ++i) w *= d;
        next[encode(open)] += w;
      }
    }
    states = std::move(next);
  }
  if (states.size() != 1 || !states.begin()->first.empty()) {
    throw std::invalid_argument("PD code does not close up: some arc label is not used twice");
  }
  // Every state has at least one loop; the bracket counts loops - 1.
  auto result = states.begin()->second.divide_exact(d);
  if (!result) throw std::logic_error("state sum not divisible by the loop value");
  return *result;
}

LaurentPolynomial kauffman_bracket(const Resolution& r) {
  if (!r.is_resolution()) {
    throw PartialAssignmentError("kauffman_bracket requires every crossing to be assigned");
  }
  if (r.crossing_count() == 0) return LaurentPolynomial::constant(1);
  return kauffman_bracket(pd_code(r));
}

int pd_writhe(const PDCode& pd) {
  const int arcs = static_cast<int>(2 * pd.size());
  auto next = [arcs](int label) { return label % arcs + 1; };
  int w = 0;
  for (const auto& x : pd) {
    const bool b_to_d = next(x[1]) == x[3];
    const bool d_to_b = next(x[3]) == x[1];
    if (b_to_d == d_to_b) {
      throw std::invalid_argument("cannot orient the over strand of a PD crossing");
    }
    w += b_to_d ? -1 : 1;
  }
  return w;
}

namespace {

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

std::int64_t determinant(const PDCode& pd) {
  const std::size_t c = pd.size();
  if (c == 0) return 1;
  const int arcs = static_cast<int>(2 * c);

  // Arc labels joined through an over passage belong to the same over-arc.
  std::vector<int> parent(arcs + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& x : pd) parent[find(x[1])] = find(x[3]);

  std::map<int, std::size_t> column;
  for (int label = 1; label <= arcs; ++label) column.try_emplace(find(label), column.size());
  if (column.size() != c) {
    throw std::invalid_argument("PD code does not describe a knot diagram");
  }

  std::vector<std::vector<mpz_class>> matrix(c, std::vector<mpz_class>(c, 0));
  for (std::size_t row = 0; row < c; ++row) {
    const auto& x = pd[row];
    matrix[row][column[find(x[1])]] += 2;
    matrix[row][column[find(x[0])]] -= 1;
    matrix[row][column[find(x[2])]] -= 1;
  }
  matrix.pop_back();
  for (auto& r : matrix) r.pop_back();
  mpz_class det = abs(bareiss_determinant(std::move(matrix)));
  return det.get_si();
}

// ---------------------------------------------------------------------------
// Fingerprints and classification

std::string KnotFingerprint::to_string() const {
  return "jones=" + jones_normalized.to_string() + ";det=" + std::to_string(determinant);
}

KnotFingerprint fingerprint(const PDCode& pd, int writhe) {
  LaurentPolynomial bracket =
      pd.empty() ? LaurentPolynomial::constant(1) : kauffman_bracket(pd);
  // (-A^3)^(-w) = (-1)^w A^(-3w)
  LaurentPolynomial f = bracket.shifted(-3 * writhe);
  if (writhe % 2 != 0) f = LaurentPolynomial() - f;
  LaurentPolynomial g = f.inverted();
  return KnotFingerprint{g < f ? g : f, determinant(pd)};
}

KnotFingerprint jones_fingerprint(const Resolution& r) {
  if (!r.is_resolution()) {
    throw PartialAssignmentError("jones_fingerprint requires every crossing to be assigned");
  }
  if (r.crossing_count() == 0) return fingerprint({}, 0);
  return fingerprint(pd_code(r), writhe(r));
}

std::vector<KnotTableEntry> load_knot_table(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::vector<KnotTableEntry> table;
  for (const auto& item : doc.at("knots")) {
    KnotTableEntry entry;
    entry.name = item.at("name").get<std::string>();
    int w = 0;
    if (item.contains("generator")) {
      const auto& g = item.at("generator");
      if (g.at("kind").get<std::string>() != "torus") {
        throw std::runtime_error("knot table generator must be 'torus'");
      }
      auto shadow = gen_torus(g.at("n").get<int>(), g.at("subdiv").get<int>());
      const auto r = alternating_resolution(shadow);
      entry.pd = pd_code(r);
      w = writhe(r);
    } else {
      for (const auto& x : item.at("pd")) {
        entry.pd.push_back({x.at(0).get<int>(), x.at(1).get<int>(), x.at(2).get<int>(),
                            x.at(3).get<int>()});
      }
      w = entry.pd.empty() ? 0 : pd_writhe(entry.pd);
    }
    entry.fingerprint = fingerprint(entry.pd, w);
    for (const auto& other : table) {
      if (other.fingerprint.jones_normalized == entry.fingerprint.jones_normalized) {
        throw std::runtime_error("knot table entries " + other.name + " and " + entry.name +
                                 " share a Jones fingerprint");
      }
    }
    table.push_back(std::move(entry));
  }
  return table;
}

const std::vector<KnotTableEntry>& knot_table() {
  static const std::vector<KnotTableEntry> table = load_knot_table(detail::kKnotTableJson);
  return table;
}

KnotClass classify(const KnotFingerprint& fp) {
  for (const auto& entry : knot_table()) {
    if (entry.fingerprint.jones_normalized != fp.jones_normalized) continue;
    // A Jones match with a different determinant is a collision; refuse to name it.
    if (entry.fingerprint.determinant == fp.determinant) return KnotClass{entry.name};
    break;
  }
  return KnotClass{"unknown:" + fp.to_string()};
}

KnotClass classify(const Resolution& r) { return classify(jones_fingerprint(r)); }

}  // namespace plknot
