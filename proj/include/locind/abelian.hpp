#pragma once

// Exact integer linear algebra over presentations: abelianized relation
// matrices, Smith normal form, first homology and surjections onto Z.

#include "locind/presentation.hpp"
#include "locind/word.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace locind {

  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }
    BigInt& operator()(std::size_t i, std::size_t j) {
      return entries_[i * cols_ + j];
    }
    BigInt const& operator()(std::size_t i, std::size_t j) const {
      return entries_[i * cols_ + j];
    }
    std::vector<BigInt> const& entries() const noexcept {
      return entries_;
    }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, BigInt const& factor);
    void add_col_multiple(std::size_t dst, std::size_t src, BigInt const& factor);
    void negate_row(std::size_t i);

    bool operator==(IntMatrix const&) const = default;

   private:
    std::size_t         rows_ = 0;
    std::size_t         cols_ = 0;
    std::vector<BigInt> entries_;
  };

  IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
  // Exact determinant by fraction-free elimination.
  BigInt determinant(IntMatrix const& m);

  struct SmithDecomposition {
    IntMatrix           U;
    IntMatrix           V;
    IntMatrix           D;
    std::vector<BigInt> invariant_factors;  // the nonzero diagonal, d1 | d2 | ...

    std::size_t rank() const noexcept {
      return invariant_factors.size();
    }
  };

  // U * M * V = D with U, V unimodular and D diagonal, positive and satisfying
  // the divisibility chain. Pivots are chosen by least absolute value, first
  // in row-major order.
  SmithDecomposition smith_normal_form(IntMatrix const& m);

  // k x n matrix of exponent sums: entry (i, j) counts generator j in relator i.
  IntMatrix relation_matrix(Presentation const& p);

  struct HomologySummary {
    std::size_t         free_rank = 0;
    std::vector<BigInt> torsion;  // invariant factors >= 2
    bool operator==(HomologySummary const&) const = default;
  };

  HomologySummary h1(Presentation const& p);
  HomologySummary homology_of(IntMatrix const& relations);

  // Deficiency one and H1 = Z.
  bool is_homology_circle(Presentation const& p);
  // H1 free abelian of rank #generators - #relators >= 1.
  bool is_homology_wedge(Presentation const& p);

  // True iff phi covers every generator with non-negative values of gcd 1 and
  // kills every relator after the generators in phi.flipped are inverted.
  bool is_surjective_weighting(Presentation const& p, Weighting const& phi);

  // Surjections onto Z found in the box of coefficient vectors of absolute
  // value <= bound over an SNF kernel basis, keeping vectors whose
  // coordinates also lie within the bound. Negative coordinates become
  // flipped generators; +-v are identified. The all-ones vector comes first
  // when it lies in the kernel, then increasing l1-norm, then lexicographic.
  // The box shrinks when it would exceed `max_box` points; a note is left in
  // `note` when that happens.
  std::vector<Weighting> enumerate_weightings(Presentation const& p,
                                              std::size_t         bound,
                                              bool                require_strictly_positive,
                                              std::string*        note    = nullptr,
                                              std::size_t         max_box = 2'000'000);

}  // namespace locind
