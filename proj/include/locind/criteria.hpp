#pragma once

// Concatenability, the method checkers over presentations, and the search
// configuration shared by all checkers.

#include "locind/certificate.hpp"
#include "locind/presentation.hpp"
#include "locind/word.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace locind {

  struct SearchConfig {
    std::size_t phi_bound   = 5;
    std::size_t concat_cap  = 24;
    std::size_t cycle_limit = 10'000;
    std::size_t genho_m_cap = 64;
    bool        all_methods = false;  // keep going after the first certificate
    bool        use_maxima  = true;   // also try the mirrored (maxima) variants
  };

  // More relators than the concatenation search accepts.
  class CapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct CheckResult {
    std::optional<Certificate> certificate;
    std::string                reason;  // why the checker declined
    std::vector<std::string>   notes;

    explicit operator bool() const noexcept {
      return certificate.has_value();
    }
  };

  // Orders the family so that every set has a multiplicity-1 element absent
  // from all earlier sets. Among valid orders the lexicographically least is
  // returned; each witness is the first eligible entry in the set's order.
  // Step relator fields index into `multisets`.
  std::optional<ConcatOrder> concatenable(std::vector<std::vector<Generator>> const& multisets,
                                          std::size_t cap = 24);

  // Orders the relators so that every relator has a generator x absent from
  // earlier minima multisets with min_count_signature(x) unbalanced. The
  // search peels the smallest possible index off the end first.
  std::optional<ConcatOrder> weakly_concatenable(std::vector<Word> const& relators,
                                                 Weighting const&         phi,
                                                 std::size_t              cap = 24);

  // Canonical witnesses for a fixed order of the given relators under phi
  // (multiplicity-1 mode); none if the order is not a valid concatenation.
  std::optional<ConcatOrder> concat_with_order(std::vector<Word> const&        relators,
                                               Weighting const&                phi,
                                               std::vector<std::size_t> const& order);

  // Strips the flips from phi: the weighting seen by the working presentation.
  Weighting unflipped(Weighting phi);
  // The presentation the minima are read from: flipped generators inverted,
  // then every letter inverted when mirrored.
  Presentation working_presentation(Presentation const& p, Weighting const& phi, bool mirrored);

  CertSubject presentation_subject(Presentation const& p);

  CheckResult check_one_relator(Presentation const& p);
  CheckResult check_main(Presentation const& p, SearchConfig const& cfg = {});
  // With `given` the search is limited to that weighting.
  CheckResult check_pesos(Presentation const&             p,
                          std::optional<Weighting> const& given,
                          SearchConfig const&             cfg = {});
  CheckResult check_weak(Presentation const&             p,
                         std::optional<Weighting> const& given,
                         SearchConfig const&             cfg = {});
  CheckResult check_genho(Presentation const& p, SearchConfig const& cfg = {});

  // Range of the weight sequence of w, max - min, including the empty prefix.
  BigInt weight_range(Word const& w, Weighting const& phi);

  struct Verification {
    bool        valid = false;
    std::string reason;

    explicit operator bool() const noexcept {
      return valid;
    }
  };

  // Search-free replay of a presentation-level certificate (OneRelator, Main,
  // Pesos, Weak, Genho) against p.
  Verification verify_presentation_certificate(Presentation const& p, Certificate const& cert);

}  // namespace locind
