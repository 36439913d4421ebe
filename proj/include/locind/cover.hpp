#pragma once

// Finite slabs of the infinite cyclic cover of a presentation complex, the
// iterated rewrites S_l^(j) with their alpha sequence, homological
// reductions, and an exhaustive factorization searcher.

#include "locind/certificate.hpp"
#include "locind/presentation.hpp"
#include "locind/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace locind {

  // 1-cell (gen, base) joins base to base + phi(gen).
  struct CoverCell {
    Generator gen;
    long      base = 0;

    auto operator<=>(CoverCell const&) const = default;
    bool operator==(CoverCell const&) const  = default;
  };

  struct PathStep {
    CoverCell cell;
    int       sign = 1;

    bool operator==(PathStep const&) const = default;
  };

  // Edge path in the cover; starts at `start`.
  struct CoverPath {
    long                  start = 0;
    std::vector<PathStep> steps;

    bool operator==(CoverPath const&) const = default;
  };

  long              path_minimum(CoverPath const& path, Weighting const& phi);
  long              path_maximum(CoverPath const& path, Weighting const& phi);
  std::vector<long> path_vertices(CoverPath const& path, Weighting const& phi);

  struct TwoCell {
    std::size_t relator = 0;
    long        base    = 0;  // minimum vertex
    CoverPath   boundary;
  };

  struct CoverComplex {
    long                   j_min = 0;
    long                   j_max = 0;
    Presentation           presentation;  // flips applied
    Weighting              phi;           // flips cleared
    std::vector<CoverCell> one_cells;     // sorted by generator order, then base
    std::vector<TwoCell>   two_cells;     // by relator, then base

    std::size_t vertex_count() const {
      return static_cast<std::size_t>(j_max - j_min + 1);
    }
    long euler_characteristic() const;
  };

  // The lift of w whose minimum vertex is `base`.
  CoverPath lift(Word const& w, Weighting const& phi, long base);

  // Cells whose whole closure lies in [j_min, j_max]. Throws InvalidInput on
  // an inverted range or a weighting that is not a surjection.
  CoverComplex build_cover_slab(Presentation const& p, Weighting const& phi, long j_min, long j_max);

  // Per generator: number of 1-cells, and per relator: number of 2-cells.
  std::string census_table(CoverComplex const& c);

  ////////////////////////////////////////////////////////////////////////
  // Iterated rewrites
  ////////////////////////////////////////////////////////////////////////

  // Built from a verified Main or Pesos certificate (InvalidInput otherwise).
  struct RewriteSystem {
    Presentation             presentation;  // working presentation
    Weighting                phi;           // flips cleared
    std::size_t              s = 0;
    std::vector<std::size_t> order;         // concatenation order of relators
    std::vector<Generator>   witnesses;     // a_i per position in `order`
    long                     rho   = 0;     // sum of the relator maxima rho_i
    long                     sigma = 0;     // maximum of S_0
    long                     max_phi = 0;
  };

  RewriteSystem rewrite_system(Presentation const& p, Certificate const& cert);

  // S_l^(j): j rounds applied to the lift S_l; round t replaces, in
  // decreasing order position, each occurrence of a_{i, t-1+l} by p_{i, t-1+l}
  // and then freely and cyclically reduces.
  CoverPath iterated_rewrite(RewriteSystem const& sys, long l, std::size_t j);

  struct AlphaReport {
    std::vector<long>          alphas;  // alpha_1 .. alpha_jmax
    long                       bound = 0;  // rho + sigma + max phi
    bool                       non_decreasing = true;
    bool                       within_bound   = true;
    std::optional<std::size_t> stabilized_at;  // first j with alpha constant to the end
    std::vector<std::size_t>   lengths;        // path length of S_0^(j)
    std::size_t                requested = 0;
    bool                       length_capped = false;  // stopped before `requested` rounds
  };

  // Default j_max = 2 (rho + sigma) + 4. Rounds stop once the path is longer
  // than max_length.
  AlphaReport alpha_sequence(RewriteSystem const&       sys,
                             std::optional<std::size_t> j_max      = std::nullopt,
                             std::size_t                max_length = 1'000'000);

  // chi(Y) = k + 2 - rho - sigma for the full slab [0, n + rho + sigma] at phi = 1.
  long predicted_euler_characteristic(RewriteSystem const& sys);

  ////////////////////////////////////////////////////////////////////////
  // Homological reductions
  ////////////////////////////////////////////////////////////////////////

  struct ReductionStep {
    std::size_t two_cell;  // index into CoverComplex::two_cells
    CoverCell   one_cell;
    std::size_t positive = 0;
    std::size_t negative = 0;
  };

  struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::size_t                remaining_one_cells = 0;
    std::size_t                remaining_two_cells = 0;
  };

  // Signed occurrence counts of `cell` on the boundary of a 2-cell.
  std::pair<std::size_t, std::size_t> signed_counts(TwoCell const& t, CoverCell const& cell);

  // Repeatedly removes the first (2-cell, 1-cell) pair where the 1-cell lies
  // on exactly one remaining 2-cell with unequal signed counts.
  ReductionTrace homological_reduce(CoverComplex const& c);
  // Replays the steps against c; false when a step violates the condition.
  bool replay_reduction(CoverComplex const& c, ReductionTrace const& trace);

  std::string trace_to_json(CoverComplex const& c, ReductionTrace const& trace);

  ////////////////////////////////////////////////////////////////////////
  // Forbidden factorizations
  ////////////////////////////////////////////////////////////////////////

  // S = w_0 S_0 w_0^-1 w_r S_r w_r^-1 ... w_1 S_1 w_1^-1.
  struct Factorization {
    std::vector<Word> w;      // w_0 .. w_r
    std::vector<Word> pieces; // S_0 .. S_r
  };

  Word factorization_product(Factorization const& f);

  // Exhaustive search over r <= max_r and freely reduced pieces of length at
  // most max_piece_len over the alphabet of s. Conditions use the total
  // exponent: exp(S_i) = 0, exp(w_i) >= 1, exp(w_0) = 1 (0 when relaxed),
  // and non-negative prefix exponents for S, S_i and w_i. Throws DomainError
  // unless s is cyclically reduced with exponent 0.
  std::optional<Factorization> techlemma_search(Word const& s,
                                                std::size_t max_r,
                                                std::size_t max_piece_len,
                                                bool        relaxed = false);

}  // namespace locind
