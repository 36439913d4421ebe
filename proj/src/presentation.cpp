#include "locind/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace locind {

  ParseError::ParseError(std::string const& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::optional<std::size_t> Presentation::index_of(Generator const& g) const {
    auto it = std::find(generators.begin(), generators.end(), g);
    if (it == generators.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - generators.begin());
  }

  Presentation normalize(Presentation p, std::vector<std::string>& warnings) {
    std::set<Generator> seen;
    for (auto const& g : p.generators) {
      if (!seen.insert(g).second) {
        throw InvalidInput("duplicate generator '" + g.name() + "'");
      }
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      auto& r = p.relators[i];
      for (auto const& l : r) {
        if (seen.count(l.gen) == 0) {
          throw InvalidInput("relator " + std::to_string(i) + " uses unknown generator '"
                             + l.gen.name() + "'");
        }
      }
      auto reduced = reduce_fully(r);
      if (reduced.empty()) {
        throw InvalidInput("relator " + std::to_string(i) + " reduces to the empty word");
      }
      if (reduced != r) {
        warnings.push_back("relator " + std::to_string(i) + " '" + to_string(r)
                           + "' replaced by its cyclic reduction '" + to_string(reduced)
                           + "'");
        r = std::move(reduced);
      }
    }
    return p;
  }

  Presentation normalize(Presentation p) {
    std::vector<std::string> ignored;
    return normalize(std::move(p), ignored);
  }

  Presentation flip_generator(Presentation p, Generator const& g) {
    for (auto& r : p.relators) {
      r = flip_generator(r, g);
    }
    return p;
  }

  Presentation mirror(Presentation p) {
    for (auto& r : p.relators) {
      r = mirror(r);
    }
    return p;
  }

  namespace {

    struct Line {
      std::size_t number;
      std::string text;  // comment stripped, CR removed
    };

    std::vector<Line> split_lines(std::string_view text) {
      std::vector<Line> out;
      std::size_t       number = 0;
      std::size_t       start  = 0;
      while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        std::string line(text.substr(start, end - start));
        ++number;
        if (!line.empty() && line.back() == '\r') {
          line.pop_back();
        }
        if (auto hash = line.find('#'); hash != std::string::npos) {
          line.erase(hash);
        }
        out.push_back({number, std::move(line)});
        if (end == text.size()) {
          break;
        }
        start = end + 1;
      }
      return out;
    }

    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    std::vector<Token> tokenize(std::string const& s, std::size_t from = 0) {
      std::vector<Token> out;
      std::size_t        i = from;
      while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
          ++i;
        }
        if (i >= s.size()) {
          break;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
          ++j;
        }
        out.push_back({s.substr(i, j - i), i + 1});
        i = j;
      }
      return out;
    }

    bool is_blank(std::string const& s) {
      return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    }

    // Returns the offset just after `keyword` if the trimmed line starts with it.
    std::optional<std::size_t> keyword_offset(std::string const& s, std::string_view keyword) {
      std::size_t i = 0;
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      if (s.compare(i, keyword.size(), keyword) == 0) {
        return i + keyword.size();
      }
      return std::nullopt;
    }

    Generator parse_name(Token const& t, std::size_t line) {
      if (!is_valid_generator_name(t.text)) {
        throw ParseError("invalid generator name '" + t.text + "'", line, t.column);
      }
      return Generator(t.text);
    }

    Letter parse_letter(Token const& t, std::size_t line) {
      auto caret = t.text.find('^');
      if (caret == std::string::npos) {
        return Letter(parse_name(t, line), 1);
      }
      if (t.text.substr(caret) != "^-1") {
        throw ParseError("expected 'name' or 'name^-1', got '" + t.text + "'",
                         line,
                         t.column + caret);
      }
      return Letter(parse_name({t.text.substr(0, caret), t.column}, line), -1);
    }

  }  // namespace

  Presentation parse_presentation(std::string_view text, std::vector<std::string>& warnings) {
    Presentation        p;
    bool                have_gens = false;
    std::set<Generator> known;
    for (auto const& line : split_lines(text)) {
      if (is_blank(line.text)) {
        continue;
      }
      if (auto off = keyword_offset(line.text, "gens:")) {
        if (have_gens) {
          throw ParseError("duplicate 'gens:' line", line.number, 1);
        }
        have_gens = true;
        for (auto const& t : tokenize(line.text, *off)) {
          auto g = parse_name(t, line.number);
          if (!known.insert(g).second) {
            throw ParseError("duplicate generator '" + g.name() + "'", line.number, t.column);
          }
          p.generators.push_back(std::move(g));
        }
      } else if (auto off = keyword_offset(line.text, "rel:")) {
        auto tokens = tokenize(line.text, *off);
        if (tokens.empty()) {
          throw ParseError("empty relator", line.number, *off + 1);
        }
        Word w;
        for (auto const& t : tokens) {
          auto l = parse_letter(t, line.number);
          if (known.count(l.gen) == 0) {
            throw ParseError("relator uses unknown generator '" + l.gen.name() + "'",
                             line.number,
                             t.column);
          }
          w.push_back(std::move(l));
        }
        if (reduce_fully(w).empty()) {
          throw ParseError("relator reduces to the empty word", line.number, *off + 1);
        }
        p.relators.push_back(std::move(w));
      } else {
        auto first = tokenize(line.text);
        throw ParseError("expected 'gens:' or 'rel:'", line.number, first.front().column);
      }
    }
    if (!have_gens) {
      throw ParseError("missing 'gens:' line", 1, 1);
    }
    return normalize(std::move(p), warnings);
  }

  Presentation parse_presentation(std::string_view text) {
    std::vector<std::string> ignored;
    return parse_presentation(text, ignored);
  }

  std::string serialize(Presentation const& p) {
    std::string out = "gens:";
    for (auto const& g : p.generators) {
      out += ' ';
      out += g.name();
    }
    out += '\n';
    for (auto const& r : p.relators) {
      out += "rel: " + to_string(r) + '\n';
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // LOTs
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        parent_[b] = a;
        return true;
      }

     private:
      std::vector<std::size_t> parent_;
    };
  }  // namespace

  void validate(Lot const& lot) {
    std::map<Generator, std::size_t> index;
    for (std::size_t i = 0; i < lot.vertices.size(); ++i) {
      if (!index.emplace(lot.vertices[i], i).second) {
        throw InvalidInput("duplicate LOT vertex '" + lot.vertices[i].name() + "'");
      }
    }
    if (lot.vertices.empty()) {
      throw InvalidInput("a LOT needs at least one vertex");
    }
    if (lot.edges.size() + 1 != lot.vertices.size()) {
      throw InvalidInput("a LOT on " + std::to_string(lot.vertices.size())
                         + " vertices needs " + std::to_string(lot.vertices.size() - 1)
                         + " edges, got " + std::to_string(lot.edges.size()));
    }
    UnionFind uf(lot.vertices.size());
    for (auto const& e : lot.edges) {
      for (auto const* v : {&e.initial, &e.terminal, &e.label}) {
        if (index.count(*v) == 0) {
          throw InvalidInput("LOT edge uses unknown vertex '" + v->name() + "'");
        }
      }
      if (!uf.unite(index[e.initial], index[e.terminal])) {
        throw InvalidInput("LOT edges " + e.initial.name() + " -> " + e.terminal.name()
                           + " close a cycle; the underlying graph must be a tree");
      }
    }
  }

  Lot parse_lot(std::string_view text) {
    Lot                 lot;
    std::set<Generator> known;
    auto                add_vertex = [&](Generator const& g) {
      if (known.insert(g).second) {
        lot.vertices.push_back(g);
      }
    };
    bool have_header = false;
    for (auto const& line : split_lines(text)) {
      if (is_blank(line.text)) {
        continue;
      }
      if (auto off = keyword_offset(line.text, "verts:")) {
        if (have_header || !lot.edges.empty()) {
          throw ParseError("'verts:' must be the first line", line.number, 1);
        }
        have_header = true;
        for (auto const& t : tokenize(line.text, *off)) {
          auto g = parse_name(t, line.number);
          if (known.count(g) != 0) {
            throw ParseError("duplicate vertex '" + g.name() + "'", line.number, t.column);
          }
          add_vertex(g);
        }
        continue;
      }
      auto tokens = tokenize(line.text);
      if (tokens.size() != 3) {
        throw ParseError("expected 'initial label terminal'", line.number, tokens.front().column);
      }
      LotEdge e{parse_name(tokens[0], line.number),
                parse_name(tokens[2], line.number),
                parse_name(tokens[1], line.number)};
      add_vertex(e.initial);
      add_vertex(e.label);
      add_vertex(e.terminal);
      lot.edges.push_back(std::move(e));
    }
    validate(lot);
    return lot;
  }

  std::string serialize(Lot const& lot) {
    std::string out = "verts:";
    for (auto const& v : lot.vertices) {
      out += ' ' + v.name();
    }
    out += '\n';
    for (auto const& e : lot.edges) {
      out += e.initial.name() + ' ' + e.label.name() + ' ' + e.terminal.name() + '\n';
    }
    return out;
  }

  Presentation lot_to_presentation(Lot const& lot, std::vector<std::string>& warnings) {
    validate(lot);
    Presentation p;
    p.generators = lot.vertices;
    for (auto const& e : lot.edges) {
      p.relators.push_back(Word({Letter(e.terminal, -1),
                                 Letter(e.label, -1),
                                 Letter(e.initial, 1),
                                 Letter(e.label, 1)}));
    }
    return normalize(std::move(p), warnings);
  }

  Presentation lot_to_presentation(Lot const& lot) {
    std::vector<std::string> ignored;
    return lot_to_presentation(lot, ignored);
  }

  bool lot_is_reduced(Lot const& lot) {
    return std::all_of(lot.edges.begin(), lot.edges.end(), [](LotEdge const& e) {
      return e.label != e.initial && e.label != e.terminal;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Adian presentations
  ////////////////////////////////////////////////////////////////////////

  void validate(AdianPresentation const& p) {
    std::set<Generator> known(p.generators.begin(), p.generators.end());
    if (known.size() != p.generators.size()) {
      throw InvalidInput("duplicate generator in Adian presentation");
    }
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      for (auto const* side : {&p.relations[i].lhs, &p.relations[i].rhs}) {
        if (side->empty()) {
          throw InvalidInput("relation " + std::to_string(i) + " has an empty side");
        }
        for (auto const& l : *side) {
          if (l.sign != 1) {
            throw InvalidInput("relation " + std::to_string(i) + " is not positive");
          }
          if (known.count(l.gen) == 0) {
            throw InvalidInput("relation " + std::to_string(i) + " uses unknown generator '"
                               + l.gen.name() + "'");
          }
        }
      }
    }
  }

  AdianPresentation parse_adian(std::string_view text) {
    AdianPresentation   p;
    std::set<Generator> known;
    auto                add = [&](Generator const& g) {
      if (known.insert(g).second) {
        p.generators.push_back(g);
      }
    };
    for (auto const& line : split_lines(text)) {
      if (is_blank(line.text)) {
        continue;
      }
      if (auto off = keyword_offset(line.text, "gens:")) {
        if (!p.relations.empty() || !p.generators.empty()) {
          throw ParseError("'gens:' must be the first line", line.number, 1);
        }
        for (auto const& t : tokenize(line.text, *off)) {
          auto g = parse_name(t, line.number);
          if (known.count(g) != 0) {
            throw ParseError("duplicate generator '" + g.name() + "'", line.number, t.column);
          }
          add(g);
        }
        continue;
      }
      auto          tokens = tokenize(line.text);
      AdianRelation rel;
      Word*         side   = &rel.lhs;
      bool          seen_eq = false;
      for (auto const& t : tokens) {
        if (t.text == "=") {
          if (seen_eq || side->empty()) {
            throw ParseError("expected 'u = v' with nonempty sides", line.number, t.column);
          }
          seen_eq = true;
          side    = &rel.rhs;
          continue;
        }
        auto l = parse_letter(t, line.number);
        if (l.sign != 1) {
          throw ParseError("Adian relations use positive letters only", line.number, t.column);
        }
        add(l.gen);
        side->push_back(std::move(l));
      }
      if (!seen_eq || rel.rhs.empty()) {
        throw ParseError("expected 'u = v' with nonempty sides", line.number, tokens.front().column);
      }
      p.relations.push_back(std::move(rel));
    }
    validate(p);
    return p;
  }

  std::string serialize(AdianPresentation const& p) {
    std::string out = "gens:";
    for (auto const& g : p.generators) {
      out += ' ' + g.name();
    }
    out += '\n';
    for (auto const& r : p.relations) {
      out += to_string(r.lhs) + " = " + to_string(r.rhs) + '\n';
    }
    return out;
  }

  Presentation adian_to_presentation(AdianPresentation const& ap,
                                     std::vector<std::string>& warnings) {
    validate(ap);
    Presentation p;
    p.generators = ap.generators;
    for (auto const& r : ap.relations) {
      p.relators.push_back(r.lhs * r.rhs.inverse());
    }
    return normalize(std::move(p), warnings);
  }

  Presentation adian_to_presentation(AdianPresentation const& p) {
    std::vector<std::string> ignored;
    return adian_to_presentation(p, ignored);
  }

  ////////////////////////////////////////////////////////////////////////
  // Moves
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_index(Presentation const& p, std::size_t i) {
      if (i >= p.relators.size()) {
        throw InvalidInput("relator index " + std::to_string(i) + " out of range");
      }
    }

    Word reduced_nonempty(Word const& w, std::string const& what) {
      auto r = reduce_fully(w);
      if (r.empty()) {
        throw TrivialRelatorError(what + " reduces to the trivial relator");
      }
      return r;
    }

    void check_alphabet(Presentation const& p, Word const& w) {
      for (auto const& l : w) {
        if (!p.has_generator(l.gen)) {
          throw InvalidInput("word uses unknown generator '" + l.gen.name() + "'");
        }
      }
    }

    struct Applier {
      Presentation& p;

      void operator()(move::AddGeneratorWithRelator const& m) {
        if (p.has_generator(m.gen)) {
          throw InvalidInput("generator '" + m.gen.name() + "' already exists");
        }
        p.generators.push_back(m.gen);
        check_alphabet(p, m.relator);
        p.relators.push_back(reduced_nonempty(m.relator, "defining relator"));
      }

      void operator()(move::SubstituteGenerator const& m) {
        if (!p.has_generator(m.gen)) {
          throw InvalidInput("unknown generator '" + m.gen.name() + "'");
        }
        check_index(p, m.defining_relator);
        check_alphabet(p, m.replacement);
        if (m.replacement.support().count(m.gen) != 0) {
          throw InvalidInput("replacement word contains the substituted generator");
        }
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
          if (i == m.defining_relator) {
            continue;
          }
          Word out;
          for (auto const& l : p.relators[i]) {
            if (l.gen == m.gen) {
              out.append(l.sign > 0 ? m.replacement : m.replacement.inverse());
            } else {
              out.push_back(l);
            }
          }
          p.relators[i] = reduced_nonempty(out, "relator " + std::to_string(i));
        }
      }

      void operator()(move::RemoveGeneratorAndRelator const& m) {
        auto gi = p.index_of(m.gen);
        if (!gi) {
          throw InvalidInput("unknown generator '" + m.gen.name() + "'");
        }
        check_index(p, m.relator);
        auto const& def = p.relators[m.relator];
        if (std::count_if(def.begin(), def.end(), [&](Letter const& l) { return l.gen == m.gen; })
            != 1) {
          throw InvalidInput("defining relator must contain '" + m.gen.name() + "' exactly once");
        }
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
          if (i != m.relator && p.relators[i].support().count(m.gen) != 0) {
            throw InvalidInput("generator '" + m.gen.name() + "' still occurs in relator "
                               + std::to_string(i));
          }
        }
        p.generators.erase(p.generators.begin() + static_cast<std::ptrdiff_t>(*gi));
        p.relators.erase(p.relators.begin() + static_cast<std::ptrdiff_t>(m.relator));
      }

      void operator()(move::ReplaceRelatorByProduct const& m) {
        check_index(p, m.target);
        Word        product;
        std::size_t target_uses = 0;
        for (auto const& f : m.factors) {
          check_index(p, f.relator);
          target_uses += f.relator == m.target ? 1 : 0;
          product.append(factor_word(p, f));
        }
        auto reduced = reduced_nonempty(product, "product");
        if (target_uses != 1) {
          throw InvalidInput("the target relator must occur exactly once among the factors");
        }
        p.relators[m.target] = std::move(reduced);
      }

      void operator()(move::CyclicPermute const& m) {
        check_index(p, m.relator);
        p.relators[m.relator] = p.relators[m.relator].rotated(m.shift);
      }

      void operator()(move::InvertRelator const& m) {
        check_index(p, m.relator);
        p.relators[m.relator] = p.relators[m.relator].inverse();
      }
    };
  }  // namespace

  Word factor_word(Presentation const& p, move::Factor const& f) {
    check_index(p, f.relator);
    auto const& r = p.relators[f.relator];
    return (f.invert ? r.inverse() : r).rotated(f.shift);
  }

  Presentation apply(Presentation p, Move const& m) {
    std::visit(Applier{p}, m);
    return p;
  }

  Presentation replay(Presentation p, TransformScript const& script) {
    for (auto const& m : script.steps) {
      p = apply(std::move(p), m);
    }
    return p;
  }

  Generator fresh_generator(Presentation const& p, Generator const& base) {
    std::string name = base.name();
    do {
      name += '_';
    } while (p.has_generator(Generator(name)));
    return Generator(name);
  }

  namespace {
    Word power(Generator const& g, int sign, std::size_t m) {
      return Word(std::vector<Letter>(m, Letter(g, sign)));
    }
  }  // namespace

  Transformed genho_transform(Presentation const& p,
                              Generator const&    a,
                              Generator const&    c,
                              std::size_t         m) {
    if (a == c) {
      throw InvalidInput("the substituted generator and the conjugator must differ");
    }
    if (!p.has_generator(a) || !p.has_generator(c)) {
      throw InvalidInput("genho transform on unknown generators");
    }
    if (m == 0) {
      throw InvalidInput("the conjugating power must be positive");
    }
    auto d        = fresh_generator(p, a);
    auto defining = Word({Letter(a, 1)}) * power(c, -1, m) * Word({Letter(d, -1)}) * power(c, 1, m);
    auto replacement = power(c, -1, m) * Word({Letter(d, 1)}) * power(c, 1, m);
    auto const def_index = p.relators.size();

    TransformScript script;
    script.steps.push_back(move::AddGeneratorWithRelator{d, defining});
    script.steps.push_back(move::SubstituteGenerator{a, replacement, def_index});
    script.steps.push_back(move::RemoveGeneratorAndRelator{a, def_index});
    return {replay(p, script), std::move(script)};
  }

  Transformed replace_relator_by_product(Presentation const&              p,
                                         std::size_t                      target,
                                         std::vector<move::Factor> const& factors) {
    TransformScript script;
    script.steps.push_back(move::ReplaceRelatorByProduct{target, factors});
    return {replay(p, script), std::move(script)};
  }

}  // namespace locind
