#pragma once

// Presentations, labelled oriented trees and Adian presentations, their text
// formats, and the extended Nielsen / Andrews-Curtis move engine.

#include "locind/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace locind {

  // Malformed input text; carries a 1-based location when known.
  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column);

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  // Well-formed input that violates a model invariant.
  class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // A move or transformation that would make a relator trivial.
  class TrivialRelatorError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct Presentation {
    std::vector<Generator> generators;
    std::vector<Word>      relators;

    long deficiency() const {
      return static_cast<long>(generators.size()) - static_cast<long>(relators.size());
    }
    std::optional<std::size_t> index_of(Generator const& g) const;
    bool has_generator(Generator const& g) const {
      return index_of(g).has_value();
    }

    bool operator==(Presentation const&) const = default;
  };

  // Checks generator distinctness and relator alphabets, then cyclically
  // reduces every relator. Each reduction is reported in `warnings`; a relator
  // reducing to the empty word is an InvalidInput.
  Presentation normalize(Presentation p, std::vector<std::string>& warnings);
  Presentation normalize(Presentation p);

  // Inverts every relator letter on g.
  Presentation flip_generator(Presentation p, Generator const& g);
  // Inverts every letter; the resulting presentation's minima are the maxima
  // of the original.
  Presentation mirror(Presentation p);

  Presentation parse_presentation(std::string_view text, std::vector<std::string>& warnings);
  Presentation parse_presentation(std::string_view text);
  std::string  serialize(Presentation const& p);

  struct LotEdge {
    Generator initial;
    Generator terminal;
    Generator label;
    bool operator==(LotEdge const&) const = default;
  };

  struct Lot {
    std::vector<Generator> vertices;
    std::vector<LotEdge>   edges;

    bool operator==(Lot const&) const = default;
  };

  // Throws InvalidInput unless the underlying graph is a tree and every label
  // is a vertex.
  void validate(Lot const& lot);

  Lot         parse_lot(std::string_view text);
  std::string serialize(Lot const& lot);

  // One relator t^-1 l^-1 i l per edge, cyclically reduced.
  Presentation lot_to_presentation(Lot const& lot, std::vector<std::string>& warnings);
  Presentation lot_to_presentation(Lot const& lot);
  bool         lot_is_reduced(Lot const& lot);

  struct AdianRelation {
    Word lhs;
    Word rhs;
    bool operator==(AdianRelation const&) const = default;
  };

  struct AdianPresentation {
    std::vector<Generator>     generators;
    std::vector<AdianRelation> relations;

    bool operator==(AdianPresentation const&) const = default;
  };

  void              validate(AdianPresentation const& p);
  AdianPresentation parse_adian(std::string_view text);
  std::string       serialize(AdianPresentation const& p);

  // Relator u v^-1 per relation, freely and cyclically reduced.
  Presentation adian_to_presentation(AdianPresentation const& p,
                                     std::vector<std::string>& warnings);
  Presentation adian_to_presentation(AdianPresentation const& p);

  ////////////////////////////////////////////////////////////////////////
  // Transformation scripts
  ////////////////////////////////////////////////////////////////////////

  namespace move {
    struct AddGeneratorWithRelator {
      Generator gen;
      Word      relator;
      bool operator==(AddGeneratorWithRelator const&) const = default;
    };
    // Replaces gen by `replacement` in every relator except the one at
    // `defining_relator`, which must be the relator that defines gen.
    struct SubstituteGenerator {
      Generator   gen;
      Word        replacement;
      std::size_t defining_relator;
      bool operator==(SubstituteGenerator const&) const = default;
    };
    struct RemoveGeneratorAndRelator {
      Generator   gen;
      std::size_t relator;
      bool operator==(RemoveGeneratorAndRelator const&) const = default;
    };
    struct Factor {
      std::size_t relator;
      std::size_t shift;
      bool        invert;
      bool operator==(Factor const&) const = default;
    };
    struct ReplaceRelatorByProduct {
      std::size_t         target;
      std::vector<Factor> factors;
      bool operator==(ReplaceRelatorByProduct const&) const = default;
    };
    struct CyclicPermute {
      std::size_t relator;
      std::size_t shift;
      bool operator==(CyclicPermute const&) const = default;
    };
    struct InvertRelator {
      std::size_t relator;
      bool operator==(InvertRelator const&) const = default;
    };
  }  // namespace move

  using Move = std::variant<move::AddGeneratorWithRelator,
                            move::SubstituteGenerator,
                            move::RemoveGeneratorAndRelator,
                            move::ReplaceRelatorByProduct,
                            move::CyclicPermute,
                            move::InvertRelator>;

  struct TransformScript {
    std::vector<Move> steps;
    bool operator==(TransformScript const&) const = default;
  };

  // The word contributed by one factor: the relator, inverted if requested,
  // then rotated by `shift`.
  Word factor_word(Presentation const& p, move::Factor const& f);

  // Applies one move. Relators touched by the move are freely and cyclically
  // reduced afterwards. Throws InvalidInput on an ill-formed move and
  // TrivialRelatorError when a relator would become empty.
  Presentation apply(Presentation p, Move const& m);
  Presentation replay(Presentation p, TransformScript const& script);

  // First name of the form base_, base__, ... unused in p.
  Generator fresh_generator(Presentation const& p, Generator const& base);

  struct Transformed {
    Presentation    presentation;
    TransformScript script;
  };

  // Adds d with relator a c^-m d^-1 c^m, substitutes a -> c^-m d c^m in the
  // other relators and removes a with its defining relator.
  Transformed genho_transform(Presentation const& p,
                              Generator const&    a,
                              Generator const&    c,
                              std::size_t         m);

  Transformed replace_relator_by_product(Presentation const&              p,
                                         std::size_t                      target,
                                         std::vector<move::Factor> const& factors);

}  // namespace locind
