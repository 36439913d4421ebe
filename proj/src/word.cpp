#include "locind/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace locind {

  bool is_valid_generator_name(std::string_view name) {
    // Purely numeric names are accepted: LOT vertices are commonly numbered.
    if (name.empty()) {
      return false;
    }
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
      return std::isalnum(c) || c == '_';
    });
  }

  Generator::Generator(std::string name) : name_(std::move(name)) {
    if (!is_valid_generator_name(name_)) {
      throw DomainError("invalid generator name '" + name_ + "'");
    }
  }

  Letter::Letter(Generator g, int s) : gen(std::move(g)), sign(s) {
    if (s != 1 && s != -1) {
      throw DomainError("letter sign must be +1 or -1");
    }
  }

  Word& Word::append(Word const& other) {
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
    return *this;
  }

  Word operator*(Word lhs, Word const& rhs) {
    return lhs.append(rhs);
  }

  Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(std::move(out));
  }

  Word Word::rotated(std::size_t shift) const {
    if (letters_.empty()) {
      return *this;
    }
    shift %= letters_.size();
    std::vector<Letter> out(letters_.begin() + shift, letters_.end());
    out.insert(out.end(), letters_.begin(), letters_.begin() + shift);
    return Word(std::move(out));
  }

  long Word::exponent_sum(Generator const& g) const {
    long sum = 0;
    for (auto const& l : letters_) {
      if (l.gen == g) {
        sum += l.sign;
      }
    }
    return sum;
  }

  long Word::total_exponent() const {
    long sum = 0;
    for (auto const& l : letters_) {
      sum += l.sign;
    }
    return sum;
  }

  std::set<Generator> Word::support() const {
    std::set<Generator> out;
    for (auto const& l : letters_) {
      out.insert(l.gen);
    }
    return out;
  }

  bool Word::is_freely_reduced() const {
    for (std::size_t i = 0; i + 1 < letters_.size(); ++i) {
      if (letters_[i].is_inverse_of(letters_[i + 1])) {
        return false;
      }
    }
    return true;
  }

  bool Word::is_cyclically_reduced() const {
    if (!is_freely_reduced()) {
      return false;
    }
    return letters_.size() < 2 || !letters_.front().is_inverse_of(letters_.back());
  }

  Word parse_word(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string        token;
    Word               w;
    while (in >> token) {
      int  sign = 1;
      auto caret = token.find('^');
      if (caret != std::string::npos) {
        if (token.substr(caret) != "^-1") {
          throw DomainError("bad letter token '" + token + "'");
        }
        sign  = -1;
        token = token.substr(0, caret);
      }
      w.push_back(Letter(Generator(token), sign));
    }
    return w;
  }

  std::string to_string(Word const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += w[i].gen.name();
      if (w[i].sign < 0) {
        out += "^-1";
      }
    }
    return out;
  }

  BigInt const& Weighting::at(Generator const& g) const {
    auto it = values.find(g);
    if (it == values.end()) {
      throw DomainError("weighting has no value for generator '" + g.name() + "'");
    }
    return it->second;
  }

  bool Weighting::covers(Word const& w) const {
    return std::all_of(w.begin(), w.end(), [this](Letter const& l) {
      return values.count(l.gen) != 0;
    });
  }

  Weighting Weighting::ones(std::vector<Generator> const& gens) {
    Weighting phi;
    for (auto const& g : gens) {
      phi.values.emplace(g, 1);
    }
    return phi;
  }

  std::string to_string(Weighting const& phi) {
    std::ostringstream out;
    bool               first = true;
    for (auto const& [g, v] : phi.values) {
      out << (first ? "" : ", ") << g.name() << "=" << v;
      if (phi.flipped.count(g) != 0) {
        out << "(flipped)";
      }
      first = false;
    }
    return out.str();
  }

  std::size_t MinimaMultiset::multiplicity(Generator const& g) const {
    return static_cast<std::size_t>(std::count(entries.begin(), entries.end(), g));
  }

  Word free_reduce(Word const& w) {
    std::vector<Letter> stack;
    stack.reserve(w.size());
    for (auto const& l : w) {
      if (!stack.empty() && stack.back().is_inverse_of(l)) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
    return Word(std::move(stack));
  }

  CyclicReduction cyclic_reduce(Word const& w) {
    auto const& ls    = w.letters();
    std::size_t lo    = 0;
    std::size_t hi    = ls.size();
    while (hi - lo >= 2 && ls[lo].is_inverse_of(ls[hi - 1])) {
      ++lo;
      --hi;
    }
    return {Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi)), lo};
  }

  Word reduce_fully(Word const& w) {
    return cyclic_reduce(free_reduce(w)).word;
  }

  Word mirror(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto const& l : w) {
      out.push_back(l.inverse());
    }
    return Word(std::move(out));
  }

  Word flip_generator(Word const& w, Generator const& g) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto const& l : w) {
      out.push_back(l.gen == g ? l.inverse() : l);
    }
    return Word(std::move(out));
  }

  std::vector<BigInt> weight_sequence(Word const& w, Weighting const& phi) {
    std::vector<BigInt> out;
    out.reserve(w.size());
    BigInt acc = 0;
    for (auto const& l : w) {
      auto const& v = phi.at(l.gen);
      if (l.sign > 0) {
        acc += v;
      } else {
        acc -= v;
      }
      out.push_back(acc);
    }
    return out;
  }

  std::vector<BigInt> i_value_sequence(Word const& w, Weighting const& phi) {
    std::vector<BigInt> out;
    out.reserve(w.size());
    BigInt acc = 0;
    for (auto const& l : w) {
      auto const& v = phi.at(l.gen);
      if (l.sign > 0) {
        out.push_back(acc);
        acc += v;
      } else {
        acc -= v;
        out.push_back(acc);
      }
    }
    return out;
  }

  MinimaMultiset minima_multiset(Word const& w, Weighting const& phi) {
    if (w.empty()) {
      throw EmptyWordError("multiset of minima of the empty word");
    }
    auto           ivals = i_value_sequence(w, phi);
    MinimaMultiset out;
    out.min_value = *std::min_element(ivals.begin(), ivals.end());
    for (std::size_t i = 0; i < ivals.size(); ++i) {
      if (ivals[i] == out.min_value) {
        out.entries.push_back(w[i].gen);
        out.witness_positions.push_back({i, w[i].sign});
      }
    }
    return out;
  }

  MinimaMultiset maxima_multiset(Word const& w, Weighting const& phi) {
    return minima_multiset(mirror(w), phi);
  }

  std::optional<RelativeMinimum> unique_relative_minimum(Word const&      w,
                                                         Weighting const& phi,
                                                         Generator const& g) {
    auto const& phi_g   = phi.at(g);
    auto        weights = weight_sequence(w, phi);

    auto holds = [&](std::size_t pos) {
      auto const& m_a = weights[pos];
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j == pos || w[j].gen != g) {
          continue;
        }
        if (w[pos].sign < 0) {
          // w = w~ a^-1: other a^-1 above m_a, other a above m_a + phi(a)
          BigInt const bound = w[j].sign < 0 ? m_a : BigInt(m_a + phi_g);
          if (!(weights[j] > bound)) {
            return false;
          }
        } else {
          // w = w~ a: other a above m_a, other a^-1 above m_a - phi(a)
          BigInt const bound = w[j].sign > 0 ? m_a : BigInt(m_a - phi_g);
          if (!(weights[j] > bound)) {
            return false;
          }
        }
      }
      return true;
    };

    std::optional<RelativeMinimum> found;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (w[pos].gen != g || !holds(pos)) {
        continue;
      }
      if (found) {
        return std::nullopt;
      }
      found = RelativeMinimum{pos,
                              weights[pos],
                              w[pos].sign < 0 ? RelativeMinimumCase::NegativeLetter
                                              : RelativeMinimumCase::PositiveLetter};
    }
    return found;
  }

  std::optional<ProperPower> is_proper_power(Word const& w) {
    if (w.empty()) {
      throw EmptyWordError("proper power test on the empty word");
    }
    auto const  n  = w.size();
    auto const& ls = w.letters();
    for (std::size_t period = 1; period <= n / 2; ++period) {
      if (n % period != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = period; i < n && periodic; ++i) {
        periodic = ls[i] == ls[i - period];
      }
      if (periodic) {
        return ProperPower{Word(std::vector<Letter>(ls.begin(), ls.begin() + period)),
                           n / period};
      }
    }
    return std::nullopt;
  }

  bool is_zigzag(Word const& w) {
    if (w.size() % 2 != 0) {
      return false;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].sign != (i % 2 == 0 ? 1 : -1)) {
        return false;
      }
    }
    return true;
  }

  CountSignature min_count_signature(Word const&      w,
                                     Weighting const& phi,
                                     Generator const& g) {
    if (w.empty()) {
      throw EmptyWordError("count signature of the empty word");
    }
    auto           ivals = i_value_sequence(w, phi);
    auto const&    m     = *std::min_element(ivals.begin(), ivals.end());
    CountSignature out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].gen == g && ivals[i] == m) {
        (w[i].sign < 0 ? out.neg_count : out.pos_count)++;
      }
    }
    return out;
  }

}  // namespace locind
