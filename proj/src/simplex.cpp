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

#include "simplex.hpp"

#include <stdexcept>

namespace plknot::detail {

namespace {

class Tableau {
 public:
  Tableau(std::size_t num_vars, std::span<const SparseRow* const> rows)
      : n_(num_vars),
        m_(rows.size()),
        cols_(2 * n_ + 2 * m_),
        cells_((m_ + 1) * (cols_ + 1)),
        basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [var, coeff] : *rows[i]) {
        if (var >= n_) throw std::out_of_range("constraint references variable out of range");
        at(i, var) += coeff;
        at(i, n_ + var) -= coeff;
      }
      at(i, 2 * n_ + i) = -1;      // surplus
      at(i, 2 * n_ + m_ + i) = 1;  // artificial
      at(i, cols_) = 1;
      basis_[i] = 2 * n_ + m_ + i;
    }
    // Reduced costs of "minimize sum of artificials" with the artificial basis.
    for (std::size_t j = 0; j <= cols_; ++j) {
      Rational sum = 0;
      for (std::size_t i = 0; i < m_; ++i) sum += at(i, j);
      at(m_, j) = (j >= 2 * n_ + m_ && j < cols_ ? Rational(1) : Rational(0)) - sum;
    }
  }

  /// Runs to optimality; returns true when the artificials can all be zero.
  bool run() {
    for (;;) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (at(m_, j) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) break;

      std::size_t leaving = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, entering) <= 0) continue;
        Rational ratio = at(i, cols_) / at(i, entering);
        if (leaving == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero.
      if (leaving == m_) throw std::logic_error("phase-one simplex reported unbounded");
      pivot(leaving, entering);
    }
    return at(m_, cols_) == 0;
  }

  /// Rows with a positive multiplier in the dual solution. After an
  /// infeasible run these rows alone are already infeasible.
  std::vector<std::size_t> certificate() const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m_; ++i) {
      if (at(m_, 2 * n_ + i) > 0) rows.push_back(i);
    }
    return rows;
  }

  std::vector<Rational> heights() const {
    std::vector<Rational> x(cols_);
    for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = at(i, cols_);
    std::vector<Rational> z(n_);
    for (std::size_t j = 0; j < n_; ++j) z[j] = x[j] - x[n_ + j];
    return z;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return cells_[i * (cols_ + 1) + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * (cols_ + 1) + j]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / at(row, col);
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (at(row, j) != 0) at(row, j) *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || at(i, col) == 0) continue;
      const Rational factor = at(i, col);
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (at(row, j) != 0) at(i, j) -= factor * at(row, j);
      }
    }
    basis_[row] = col;
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_;
  std::vector<Rational> cells_;  // (m + 1) x (cols + 1); last row is the objective
  std::vector<std::size_t> basis_;
};

}  // namespace

PhaseOneResult solve_phase_one(std::size_t num_vars, std::span<const SparseRow* const> rows) {
  if (rows.empty()) return {std::vector<Rational>(num_vars), {}};
  Tableau tableau(num_vars, rows);
  if (!tableau.run()) return {std::nullopt, tableau.certificate()};
  return {tableau.heights(), {}};
}

std::optional<std::vector<Rational>> solve_at_least_one(std::size_t num_vars,
                                                        std::span<const SparseRow* const> rows) {
  return solve_phase_one(num_vars, rows).heights;
}

}  // namespace plknot::detail
