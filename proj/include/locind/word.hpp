#pragma once

// Free-group words over named generators and the per-word quantities used by
// the local indicability criteria: reduction, weight and I-value sequences,
// multisets of minima, relative minima, proper powers and zig-zags.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locind {

  using BigInt = boost::multiprecision::cpp_int;

  // Raised when an operation is called outside its domain (empty word where a
  // nonempty one is required, generator missing from a weighting, ...).
  class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  class EmptyWordError : public DomainError {
   public:
    using DomainError::DomainError;
  };

  bool is_valid_generator_name(std::string_view name);

  class Generator {
   public:
    Generator() = default;
    explicit Generator(std::string name);

    std::string const& name() const noexcept {
      return name_;
    }

    auto operator<=>(Generator const&) const = default;
    bool operator==(Generator const&) const  = default;

   private:
    std::string name_;
  };

  struct Letter {
    Generator gen;
    int       sign = 1;

    Letter() = default;
    Letter(Generator g, int s);

    Letter inverse() const {
      return Letter(gen, -sign);
    }
    bool is_inverse_of(Letter const& other) const {
      return gen == other.gen && sign == -other.sign;
    }

    auto operator<=>(Letter const&) const = default;
    bool operator==(Letter const&) const  = default;
  };

  class Word {
   public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }
    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter const& operator[](std::size_t i) const {
      return letters_[i];
    }
    auto begin() const {
      return letters_.begin();
    }
    auto end() const {
      return letters_.end();
    }

    void push_back(Letter l) {
      letters_.push_back(std::move(l));
    }
    Word& append(Word const& other);

    Word inverse() const;
    // Cyclic rotation: the result starts at letter `shift` (mod length).
    Word rotated(std::size_t shift) const;

    // Signed occurrence count of g (sum of signs of letters on g).
    long exponent_sum(Generator const& g) const;
    // Total exponent: sum of all signs.
    long total_exponent() const;
    std::set<Generator> support() const;

    bool is_freely_reduced() const;
    bool is_cyclically_reduced() const;

    auto operator<=>(Word const&) const = default;
    bool operator==(Word const&) const  = default;

   private:
    std::vector<Letter> letters_;
  };

  Word operator*(Word lhs, Word const& rhs);

  // Builds a word from the presentation-file token syntax, e.g. "a b^-1 c".
  Word parse_word(std::string_view text);
  std::string to_string(Word const& w);

  // A map from generators to non-negative integers standing for a surjection
  // onto Z, after the generators in `flipped` were replaced by their inverses.
  struct Weighting {
    std::map<Generator, BigInt> values;
    std::set<Generator>         flipped;

    BigInt const& at(Generator const& g) const;
    bool          covers(Word const& w) const;

    static Weighting ones(std::vector<Generator> const& gens);
    bool operator==(Weighting const&) const = default;
  };

  std::string to_string(Weighting const& phi);

  struct Witness {
    std::size_t position;  // 0-based index into the word
    int         sign;
    bool operator==(Witness const&) const = default;
  };

  struct MinimaMultiset {
    std::vector<Generator> entries;  // in word order, one per witness
    BigInt                 min_value;
    std::vector<Witness>   witness_positions;

    std::size_t multiplicity(Generator const& g) const;
    bool operator==(MinimaMultiset const&) const = default;
  };

  struct CyclicReduction {
    Word        word;
    std::size_t offset = 0;  // letters stripped from the front
  };

  Word            free_reduce(Word const& w);
  CyclicReduction cyclic_reduce(Word const& w);
  // Free then cyclic reduction.
  Word reduce_fully(Word const& w);

  // Negates every sign; maxima of w are minima of mirror(w).
  Word mirror(Word const& w);
  // Replaces g by g^-1 throughout.
  Word flip_generator(Word const& w, Generator const& g);

  std::vector<BigInt> weight_sequence(Word const& w, Weighting const& phi);
  std::vector<BigInt> i_value_sequence(Word const& w, Weighting const& phi);

  MinimaMultiset minima_multiset(Word const& w, Weighting const& phi);
  MinimaMultiset maxima_multiset(Word const& w, Weighting const& phi);

  enum class RelativeMinimumCase {
    NegativeLetter,  // initial subword w~ a^-1
    PositiveLetter   // initial subword w~ a
  };

  struct RelativeMinimum {
    std::size_t         position;  // 0-based; the initial subword has length position + 1
    BigInt              value;     // m_a, the weight of that initial subword
    RelativeMinimumCase which;

    std::size_t prefix_length() const {
      return position + 1;
    }
    bool operator==(RelativeMinimum const&) const = default;
  };

  std::optional<RelativeMinimum> unique_relative_minimum(Word const&      w,
                                                         Weighting const& phi,
                                                         Generator const& g);

  struct ProperPower {
    Word        root;
    std::size_t exponent;
  };

  std::optional<ProperPower> is_proper_power(Word const& w);

  bool is_zigzag(Word const& w);

  struct CountSignature {
    std::size_t neg_count = 0;
    std::size_t pos_count = 0;
    bool operator==(CountSignature const&) const = default;
  };

  // Occurrences of g^-1 and g among the letters attaining the minimum I-value.
  CountSignature min_count_signature(Word const&      w,
                                     Weighting const& phi,
                                     Generator const& g);

}  // namespace locind
