#pragma once

// Random reduced LOTs and Adian presentations, and the fuzz survey.

#include "locind/criteria.hpp"
#include "locind/decide.hpp"
#include "locind/presentation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace locind {

  // Uniform random tree on vertices 0..n-1 (Pruefer code), random edge
  // orientations, labels uniform among the vertices off the edge. n >= 3.
  Lot random_lot(std::size_t n, std::mt19937_64& rng);

  // n generators, n - 1 relations with sides of length 1..3 whose first
  // letters differ and whose last letters differ. n >= 2.
  AdianPresentation random_adian(std::size_t n, std::mt19937_64& rng);

  // FNV-1a of the serialized instance, 16 hex digits.
  std::string instance_hash(std::string const& serialized);

  struct FuzzOptions {
    std::size_t   vertices = 4;
    std::size_t   count    = 10;
    std::uint64_t seed     = 1;
    InputFormat   kind     = InputFormat::Lot;  // Lot or Adian
    bool          timings  = false;
    std::size_t   threads  = 1;
    std::string   emit_dir;  // instance and certificate files when set
  };

  struct FuzzRow {
    std::string hash;
    std::string kind;
    std::string verdict;
    std::string method;
    double      millis = 0;
    bool        verified = false;
  };

  std::vector<FuzzRow> run_fuzz(FuzzOptions const& opt, SearchConfig const& cfg = {});
  std::string          fuzz_csv(std::vector<FuzzRow> const& rows, bool timings);

  // LOCIND_THREADS when set and positive, else the hardware concurrency.
  std::size_t thread_budget();

}  // namespace locind
