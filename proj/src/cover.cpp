#include "locind/cover.hpp"

#include "locind/abelian.hpp"
#include "locind/criteria.hpp"

#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace locind {

  namespace {

    long weight_of(Weighting const& phi, Generator const& g) {
      return static_cast<long>(phi.at(g));
    }

    long step_source(PathStep const& s, Weighting const& phi) {
      return s.sign > 0 ? s.cell.base : s.cell.base + weight_of(phi, s.cell.gen);
    }
    long step_target(PathStep const& s, Weighting const& phi) {
      return s.sign > 0 ? s.cell.base + weight_of(phi, s.cell.gen) : s.cell.base;
    }

    bool cancels(PathStep const& x, PathStep const& y) {
      return x.cell == y.cell && x.sign == -y.sign;
    }

    std::vector<PathStep> free_reduce_steps(std::vector<PathStep> const& steps) {
      std::vector<PathStep> out;
      for (auto const& s : steps) {
        if (!out.empty() && cancels(out.back(), s)) {
          out.pop_back();
        } else {
          out.push_back(s);
        }
      }
      return out;
    }

    std::vector<PathStep> cyclic_reduce_steps(std::vector<PathStep> steps) {
      steps = free_reduce_steps(steps);
      std::size_t lo = 0, hi = steps.size();
      while (hi - lo >= 2 && cancels(steps[lo], steps[hi - 1])) {
        ++lo;
        --hi;
      }
      return std::vector<PathStep>(steps.begin() + static_cast<long>(lo), steps.begin() + static_cast<long>(hi));
    }

    std::vector<PathStep> inverse_steps(std::vector<PathStep> const& steps) {
      std::vector<PathStep> out;
      for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        out.push_back({it->cell, -it->sign});
      }
      return out;
    }

    CoverPath make_path(std::vector<PathStep> steps, Weighting const& phi, long fallback_start) {
      CoverPath p;
      p.start = steps.empty() ? fallback_start : step_source(steps.front(), phi);
      p.steps = std::move(steps);
      return p;
    }

    // Letters of words, freely reduced, of length <= len over the alphabet.
    std::vector<Word> reduced_words(std::vector<Generator> const& gens, std::size_t len) {
      std::vector<Word> out{Word{}};
      std::vector<Word> frontier{Word{}};
      for (std::size_t l = 1; l <= len; ++l) {
        std::vector<Word> next;
        for (auto const& w : frontier) {
          for (auto const& g : gens) {
            for (int sign : {1, -1}) {
              Letter x(g, sign);
              if (!w.empty() && w[w.size() - 1].is_inverse_of(x)) {
                continue;
              }
              Word v = w;
              v.push_back(x);
              next.push_back(std::move(v));
            }
          }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
      }
      return out;
    }

    bool prefixes_non_negative(Word const& w) {
      long e = 0;
      for (auto const& l : w) {
        e += l.sign;
        if (e < 0) {
          return false;
        }
      }
      return true;
    }

    struct Block {
      Word w;
      Word piece;
    };

  }  // namespace

  std::vector<long> path_vertices(CoverPath const& path, Weighting const& phi) {
    std::vector<long> out{path.start};
    for (auto const& s : path.steps) {
      out.push_back(step_target(s, phi));
    }
    return out;
  }

  long path_minimum(CoverPath const& path, Weighting const& phi) {
    auto v = path_vertices(path, phi);
    return *std::min_element(v.begin(), v.end());
  }

  long path_maximum(CoverPath const& path, Weighting const& phi) {
    auto v = path_vertices(path, phi);
    return *std::max_element(v.begin(), v.end());
  }

  long CoverComplex::euler_characteristic() const {
    return static_cast<long>(vertex_count()) - static_cast<long>(one_cells.size())
           + static_cast<long>(two_cells.size());
  }

  CoverPath lift(Word const& w, Weighting const& phi, long base) {
    long pos = 0, lowest = 0;
    for (auto const& l : w) {
      pos += l.sign * weight_of(phi, l.gen);
      lowest = std::min(lowest, pos);
    }
    CoverPath out;
    out.start = base - lowest;
    long v    = out.start;
    for (auto const& l : w) {
      auto const d = weight_of(phi, l.gen);
      if (l.sign > 0) {
        out.steps.push_back({{l.gen, v}, 1});
        v += d;
      } else {
        v -= d;
        out.steps.push_back({{l.gen, v}, -1});
      }
    }
    return out;
  }

  CoverComplex build_cover_slab(Presentation const& p, Weighting const& phi, long j_min, long j_max) {
    if (j_min > j_max) {
      throw InvalidInput("inverted vertex range");
    }
    if (!is_surjective_weighting(p, phi)) {
      throw InvalidInput("weighting is not a surjection onto Z");
    }
    CoverComplex c;
    c.j_min        = j_min;
    c.j_max        = j_max;
    c.presentation = working_presentation(p, phi, false);
    c.phi          = unflipped(phi);
    for (auto const& g : c.presentation.generators) {
      auto const d = weight_of(c.phi, g);
      for (long j = j_min; j + d <= j_max; ++j) {
        c.one_cells.push_back({g, j});
      }
    }
    for (std::size_t i = 0; i < c.presentation.relators.size(); ++i) {
      auto const& r     = c.presentation.relators[i];
      auto const  probe = lift(r, c.phi, 0);
      auto const  range = path_maximum(probe, c.phi);
      for (long j = j_min; j + range <= j_max; ++j) {
        c.two_cells.push_back({i, j, lift(r, c.phi, j)});
      }
    }
    return c;
  }

  std::string census_table(CoverComplex const& c) {
    std::ostringstream out;
    out << "range [" << c.j_min << ", " << c.j_max << "]  vertices " << c.vertex_count() << "\n";
    out << std::left << std::setw(16) << "1-cells" << "count\n";
    for (auto const& g : c.presentation.generators) {
      auto n = std::count_if(c.one_cells.begin(), c.one_cells.end(), [&](CoverCell const& x) { return x.gen == g; });
      out << "  " << std::setw(14) << g.name() << n << "\n";
    }
    out << std::setw(16) << "2-cells" << "count\n";
    for (std::size_t i = 0; i < c.presentation.relators.size(); ++i) {
      auto n = std::count_if(c.two_cells.begin(), c.two_cells.end(), [&](TwoCell const& t) { return t.relator == i; });
      out << "  " << std::setw(14) << ("r" + std::to_string(i)) << n << "\n";
    }
    out << "totals  V " << c.vertex_count() << "  E " << c.one_cells.size() << "  F " << c.two_cells.size()
        << "  chi " << c.euler_characteristic() << "\n";
    return out.str();
  }

  RewriteSystem rewrite_system(Presentation const& p, Certificate const& cert) {
    if (cert.method != Method::Main && cert.method != Method::Pesos) {
      throw InvalidInput("rewrites need a main or pesos certificate");
    }
    if (auto v = verify_presentation_certificate(p, cert); !v) {
      throw InvalidInput("certificate does not verify: " + v.reason);
    }
    RewriteSystem sys;
    sys.presentation = working_presentation(p, cert.phi, cert.mirrored);
    sys.phi          = unflipped(cert.phi);
    sys.s            = *cert.distinguished_relator;
    for (auto const& step : cert.concat->steps) {
      sys.order.push_back(step.relator);
      sys.witnesses.push_back(step.witness);
    }
    for (auto i : sys.order) {
      sys.rho += path_maximum(lift(sys.presentation.relators[i], sys.phi, 0), sys.phi);
    }
    sys.sigma = path_maximum(lift(sys.presentation.relators[sys.s], sys.phi, 0), sys.phi);
    for (auto const& [g, v] : sys.phi.values) {
      sys.max_phi = std::max(sys.max_phi, static_cast<long>(v));
    }
    return sys;
  }

  namespace {

    // One round at `base`: substitutes a_{i, base} in decreasing order
    // position; rel rotated to e^eps q gives e = q^-1 (eps = 1) or q.
    std::vector<PathStep> rewrite_round(RewriteSystem const& sys, std::vector<PathStep> steps, long base) {
      for (std::size_t pos = sys.order.size(); pos-- > 0;) {
        CoverCell const a{sys.witnesses[pos], base};
        auto const      rel = lift(sys.presentation.relators[sys.order[pos]], sys.phi, base).steps;
        auto it = std::find_if(rel.begin(), rel.end(), [&](PathStep const& x) { return x.cell == a; });
        if (it == rel.end()) {
          throw InvalidInput("witness cell is missing from its 2-cell");
        }
        std::vector<PathStep> q(it + 1, rel.end());
        q.insert(q.end(), rel.begin(), it);
        auto const replacement = it->sign > 0 ? inverse_steps(q) : q;
        auto const inverse     = inverse_steps(replacement);

        std::vector<PathStep> next;
        for (auto const& x : steps) {
          if (x.cell == a) {
            auto const& sub = x.sign > 0 ? replacement : inverse;
            next.insert(next.end(), sub.begin(), sub.end());
          } else {
            next.push_back(x);
          }
        }
        steps = free_reduce_steps(next);
      }
      return cyclic_reduce_steps(std::move(steps));
    }

  }  // namespace

  CoverPath iterated_rewrite(RewriteSystem const& sys, long l, std::size_t j) {
    auto const path  = lift(sys.presentation.relators[sys.s], sys.phi, l);
    auto       steps = path.steps;
    for (std::size_t t = 1; t <= j; ++t) {
      steps = rewrite_round(sys, std::move(steps), static_cast<long>(t) - 1 + l);
    }
    return make_path(std::move(steps), sys.phi, path.start);
  }

  AlphaReport alpha_sequence(RewriteSystem const&        sys,
                             std::optional<std::size_t> j_max,
                             std::size_t                max_length) {
    AlphaReport out;
    out.bound    = sys.rho + sys.sigma + sys.max_phi;
    auto const n = j_max.value_or(static_cast<std::size_t>(2 * (sys.rho + sys.sigma) + 4));

    auto steps = lift(sys.presentation.relators[sys.s], sys.phi, 0);
    out.requested = n;
    for (std::size_t j = 1; j <= n; ++j) {
      if (steps.steps.size() > max_length) {
        out.length_capped = true;
        break;
      }
      // one more round on S_0^(j-1) gives S_0^(j)
      steps = make_path(rewrite_round(sys, std::move(steps.steps), static_cast<long>(j) - 1), sys.phi, steps.start);
      if (steps.steps.empty()) {
        throw InvalidInput("rewrite collapsed to the empty path");
      }
      auto const a = path_minimum(steps, sys.phi);
      if (!out.alphas.empty() && a < out.alphas.back()) {
        out.non_decreasing = false;
      }
      if (a >= out.bound) {
        out.within_bound = false;
      }
      out.alphas.push_back(a);
      out.lengths.push_back(steps.steps.size());
    }
    if (out.alphas.size() >= 2) {
      std::size_t first = out.alphas.size() - 1;
      while (first > 0 && out.alphas[first - 1] == out.alphas.back()) {
        --first;
      }
      if (first + 1 < out.alphas.size()) {
        out.stabilized_at = first + 1;  // 1-based j
      }
    }
    return out;
  }

  long predicted_euler_characteristic(RewriteSystem const& sys) {
    auto const k = static_cast<long>(sys.order.size());
    return k + 2 - sys.rho - sys.sigma;
  }

  std::pair<std::size_t, std::size_t> signed_counts(TwoCell const& t, CoverCell const& cell) {
    std::size_t pos = 0, neg = 0;
    for (auto const& s : t.boundary.steps) {
      if (s.cell == cell) {
        (s.sign > 0 ? pos : neg)++;
      }
    }
    return {pos, neg};
  }

  ReductionTrace homological_reduce(CoverComplex const& c) {
    ReductionTrace             trace;
    std::vector<bool>          alive(c.two_cells.size(), true);
    std::map<CoverCell, std::size_t> carriers;  // live 2-cells per 1-cell
    for (auto const& t : c.two_cells) {
      std::set<CoverCell> seen;
      for (auto const& s : t.boundary.steps) {
        if (seen.insert(s.cell).second) {
          ++carriers[s.cell];
        }
      }
    }
    std::set<CoverCell> removed_cells;
    bool                progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < c.two_cells.size() && !progress; ++i) {
        if (!alive[i]) {
          continue;
        }
        for (auto const& s : c.two_cells[i].boundary.steps) {
          if (carriers[s.cell] != 1) {
            continue;
          }
          auto const [pos, neg] = signed_counts(c.two_cells[i], s.cell);
          if (pos == neg) {
            continue;
          }
          trace.steps.push_back({i, s.cell, pos, neg});
          alive[i] = false;
          removed_cells.insert(s.cell);
          std::set<CoverCell> seen;
          for (auto const& x : c.two_cells[i].boundary.steps) {
            if (seen.insert(x.cell).second) {
              --carriers[x.cell];
            }
          }
          progress = true;
          break;
        }
      }
    }
    trace.remaining_two_cells = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
    trace.remaining_one_cells = c.one_cells.size() - removed_cells.size();
    return trace;
  }

  bool replay_reduction(CoverComplex const& c, ReductionTrace const& trace) {
    std::vector<bool>   alive(c.two_cells.size(), true);
    std::set<CoverCell> cells(c.one_cells.begin(), c.one_cells.end());
    for (auto const& step : trace.steps) {
      if (step.two_cell >= c.two_cells.size() || !alive[step.two_cell] || !cells.count(step.one_cell)) {
        return false;
      }
      std::size_t carriers = 0;
      for (std::size_t i = 0; i < c.two_cells.size(); ++i) {
        if (alive[i] && signed_counts(c.two_cells[i], step.one_cell) != std::pair<std::size_t, std::size_t>{0, 0}) {
          ++carriers;
        }
      }
      auto const counts = signed_counts(c.two_cells[step.two_cell], step.one_cell);
      if (carriers != 1 || counts.first == counts.second || counts.first != step.positive
          || counts.second != step.negative) {
        return false;
      }
      alive[step.two_cell] = false;
      cells.erase(step.one_cell);
    }
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true)) == trace.remaining_two_cells
           && cells.size() == trace.remaining_one_cells;
  }

  std::string trace_to_json(CoverComplex const& c, ReductionTrace const& trace) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["range"] = {c.j_min, c.j_max};
    j["steps"] = ordered_json::array();
    for (auto const& s : trace.steps) {
      auto const& t = c.two_cells[s.two_cell];
      j["steps"].push_back(ordered_json{{"two_cell", {{"relator", t.relator}, {"base", t.base}}},
                                        {"one_cell", {{"gen", s.one_cell.gen.name()}, {"base", s.one_cell.base}}},
                                        {"positive", s.positive},
                                        {"negative", s.negative}});
    }
    j["residual"] = {{"one_cells", trace.remaining_one_cells}, {"two_cells", trace.remaining_two_cells}};
    return j.dump(2);
  }

  Word factorization_product(Factorization const& f) {
    auto conj = [&](std::size_t i) { return f.w[i] * f.pieces[i] * f.w[i].inverse(); };
    Word out  = conj(0);
    for (std::size_t i = f.w.size(); i-- > 1;) {
      out = out * conj(i);
    }
    return free_reduce(out);
  }

  std::optional<Factorization> techlemma_search(Word const& s,
                                                std::size_t max_r,
                                                std::size_t max_piece_len,
                                                bool        relaxed) {
    if (s.empty() || !s.is_cyclically_reduced()) {
      throw DomainError("word must be nonempty and cyclically reduced");
    }
    if (s.total_exponent() != 0) {
      throw DomainError("word must have total exponent 0");
    }
    if (!prefixes_non_negative(s)) {
      return std::nullopt;
    }
    auto const support = s.support();
    std::vector<Generator> const alphabet(support.begin(), support.end());

    // letters coded as +-(index + 1)
    using Code = std::string;
    auto encode = [&](Word const& w) {
      Code c;
      for (auto const& l : w) {
        auto idx = std::find(alphabet.begin(), alphabet.end(), l.gen) - alphabet.begin() + 1;
        c.push_back(static_cast<char>(l.sign * idx));
      }
      return c;
    };
    auto reduce_into = [](Code& out, Code const& x, bool inverse) {
      auto push = [&](char ch) {
        if (!out.empty() && out.back() == -ch) {
          out.pop_back();
        } else {
          out.push_back(ch);
        }
      };
      if (inverse) {
        for (auto it = x.rbegin(); it != x.rend(); ++it) {
          push(static_cast<char>(-*it));
        }
      } else {
        for (auto ch : x) {
          push(ch);
        }
      }
    };

    std::vector<Word> pieces, outer, first;
    for (auto const& w : reduced_words(alphabet, max_piece_len)) {
      if (!prefixes_non_negative(w)) {
        continue;
      }
      auto const e = w.total_exponent();
      if (e == 0 && !w.empty()) {
        pieces.push_back(w);
      }
      if (e >= 1) {
        outer.push_back(w);
      }
      if (e == (relaxed ? 0 : 1)) {
        first.push_back(w);
      }
    }

    // distinct reduced blocks w S w^-1, first generating pair kept
    auto blocks = [&](std::vector<Word> const& ws) {
      std::unordered_map<Code, Block> out;
      std::vector<Code>               keys;
      for (auto const& w : ws) {
        auto const cw = encode(w);
        for (auto const& p : pieces) {
          Code c;
          reduce_into(c, cw, false);
          reduce_into(c, encode(p), false);
          reduce_into(c, cw, true);
          if (out.emplace(c, Block{w, p}).second) {
            keys.push_back(c);
          }
        }
      }
      return std::pair{std::move(out), std::move(keys)};
    };
    auto const [head, head_keys] = blocks(first);
    auto const [tail, tail_keys] = blocks(outer);

    // S = B_0 B_r ... B_1: peel B_1, B_2, ... off the right, look up B_0
    std::vector<Code const*>     chosen;
    std::optional<Factorization> found;
    auto search = [&](auto&& self, Code const& rest, std::size_t left) -> bool {
      if (left == 0) {
        auto it = head.find(rest);
        if (it == head.end()) {
          return false;
        }
        Factorization f;
        f.w.push_back(it->second.w);
        f.pieces.push_back(it->second.piece);
        for (auto const* key : chosen) {  // B_1, B_2, ...
          auto const& b = tail.at(*key);
          f.w.push_back(b.w);
          f.pieces.push_back(b.piece);
        }
        found = std::move(f);
        return true;
      }
      Code next;
      for (auto const& key : tail_keys) {
        next = rest;
        reduce_into(next, key, true);
        chosen.push_back(&key);
        if (self(self, next, left - 1)) {
          return true;
        }
        chosen.pop_back();
      }
      return false;
    };
    auto const target = encode(s);
    for (std::size_t r = 0; r <= max_r; ++r) {
      chosen.clear();
      if (search(search, target, r)) {
        return found;
      }
    }
    return std::nullopt;
  }

}  // namespace locind
