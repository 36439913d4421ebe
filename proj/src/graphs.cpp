#include "locind/graphs.hpp"

#include "locind/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace locind {

  namespace {

    std::vector<std::string> const kCiclosetiqReadings{
        "generating cycles: simple cycles independent in the cycle space of X0",
        "tree components are matched to cycles bijectively",
        "other vertex: a label of C_i in X_i different from x_i"};

    constexpr std::size_t kCiclosetiqBudget = 200'000;

    Verification ok() {
      return {true, {}};
    }
    Verification fail(std::string reason) {
      return {false, std::move(reason)};
    }

    std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    }

    // Endpoint of arc a reached when it is traversed starting from `from`.
    Generator const& traversal_start(Arc const& a, bool forward) {
      return forward ? a.from : a.to;
    }
    Generator const& traversal_end(Arc const& a, bool forward) {
      return forward ? a.to : a.from;
    }

    // Cycle-space vector of a cycle: arc index -> parity.
    std::vector<bool> cycle_vector(Cycle const& c, std::size_t arc_count) {
      std::vector<bool> v(arc_count, false);
      for (auto const& a : c.arcs) {
        v[a.edge] = !v[a.edge];
      }
      return v;
    }

    // Reduces v against a GF(2) basis kept in echelon form by leading index;
    // appends it and returns true when independent.
    bool add_independent(std::vector<std::vector<bool>>& basis, std::vector<bool> v) {
      for (auto const& b : basis) {
        auto lead = static_cast<std::size_t>(std::find(b.begin(), b.end(), true) - b.begin());
        if (v[lead]) {
          for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = v[i] != b[i];
          }
        }
      }
      if (std::find(v.begin(), v.end(), true) == v.end()) {
        return false;
      }
      // keep the echelon property: clear the new lead from older rows
      auto lead = static_cast<std::size_t>(std::find(v.begin(), v.end(), true) - v.begin());
      for (auto& b : basis) {
        if (b[lead]) {
          for (std::size_t i = 0; i < v.size(); ++i) {
            b[i] = b[i] != v[i];
          }
        }
      }
      basis.push_back(std::move(v));
      return true;
    }

    Cycle rotated_to(Cycle const& c, std::size_t base_arc) {
      auto it = std::find_if(c.arcs.begin(), c.arcs.end(), [&](CycleArc const& a) { return a.edge == base_arc; });
      if (it == c.arcs.end()) {
        throw InvalidInput("arc " + std::to_string(base_arc) + " is not on the cycle");
      }
      Cycle out;
      out.arcs.insert(out.arcs.end(), it, c.arcs.end());
      out.arcs.insert(out.arcs.end(), c.arcs.begin(), it);
      return out;
    }

    // Arc whose removal leaves a forest when the cyclomatic number is at
    // most one: the largest arc index on the cycle, or the largest index.
    std::optional<std::size_t> breaking_arc(LabelledDigraph const& g) {
      if (g.arcs.empty()) {
        return std::nullopt;
      }
      auto const cyc = cyclomatic_number(g);
      if (cyc == 0) {
        return g.arcs.size() - 1;
      }
      if (cyc > 1) {
        return std::nullopt;
      }
      auto const cycles = enumerate_simple_cycles(g, 2);
      std::size_t best = 0;
      for (auto const& a : cycles.cycles.front().arcs) {
        best = std::max(best, a.edge);
      }
      return best;
    }

    // Reverse of a leaf elimination of the forest g minus `removed`, as arc
    // sources. Each arc in the result meets a node absent from earlier arcs.
    std::vector<std::size_t> forest_order(LabelledDigraph const& g, std::size_t removed) {
      std::map<Generator, std::size_t> degree;
      std::set<std::size_t>            remaining;
      for (std::size_t i = 0; i < g.arcs.size(); ++i) {
        if (i == removed) {
          continue;
        }
        remaining.insert(i);
        ++degree[g.arcs[i].from];
        ++degree[g.arcs[i].to];
      }
      std::vector<std::size_t> peeled;
      while (!remaining.empty()) {
        auto it = std::find_if(remaining.begin(), remaining.end(), [&](std::size_t i) {
          auto const& a = g.arcs[i];
          return a.from != a.to && (degree[a.from] == 1 || degree[a.to] == 1);
        });
        if (it == remaining.end()) {
          return {};
        }
        auto const& a = g.arcs[*it];
        --degree[a.from];
        --degree[a.to];
        peeled.push_back(a.source);
        remaining.erase(it);
      }
      return std::vector<std::size_t>(peeled.rbegin(), peeled.rend());
    }

    // Concatenation order for the relators of p other than s: forest order
    // first, the full search when that order does not validate.
    std::optional<ConcatOrder> forest_concat(Presentation const&    w,
                                             Weighting const&       phi,
                                             LabelledDigraph const& g,
                                             std::size_t            removed,
                                             std::size_t            cap) {
      auto const s     = g.arcs[removed].source;
      auto       order = forest_order(g, removed);
      if (order.size() + 1 == w.relators.size()) {
        if (auto c = concat_with_order(w.relators, phi, order)) {
          return c;
        }
      }
      std::vector<std::vector<Generator>> family;
      std::vector<std::size_t>            index;
      for (std::size_t i = 0; i < w.relators.size(); ++i) {
        if (i != s) {
          family.push_back(minima_multiset(w.relators[i], phi).entries);
          index.push_back(i);
        }
      }
      auto c = concatenable(family, cap);
      if (c) {
        for (auto& step : c->steps) {
          step.relator = index[step.relator];
        }
      }
      return c;
    }

    // Tree components are everything but X0; returns X0's index when the
    // component pattern holds.
    std::optional<std::size_t> core_component(std::vector<Component> const& comps, std::string& why) {
      std::optional<std::size_t> core;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].cyclomatic == 0) {
          continue;
        }
        if (core) {
          why = "more than one component has cycles";
          return std::nullopt;
        }
        core = i;
      }
      if (!core) {
        why = "the graph is a forest";
        return std::nullopt;
      }
      if (comps.size() - 1 != comps[*core].cyclomatic) {
        why = "cyclomatic number " + std::to_string(comps[*core].cyclomatic) + " of X0 differs from the "
              + std::to_string(comps.size() - 1) + " tree components";
        return std::nullopt;
      }
      return core;
    }

    bool label_allowed(Generator const&              label,
                       Generator const&              x,
                       std::vector<Component> const& comps,
                       std::size_t                   core,
                       std::size_t                   current,
                       std::vector<bool> const&      used) {
      if (label == x) {
        return true;
      }
      for (std::size_t j = 0; j < comps.size(); ++j) {
        bool const later = j != core && j != current && !used[j];
        if ((j == current || later) && comps[j].contains(label)) {
          return false;
        }
      }
      return true;
    }

    struct CiclosetiqSearch {
      LabelledDigraph const&        g;
      std::vector<Component> const& comps;
      std::size_t                   core;
      std::vector<Cycle> const&     cycles;
      SearchConfig const&           cfg;
      std::size_t                   budget = kCiclosetiqBudget;
      bool                          exhausted = false;

      std::vector<bool>             used{};
      std::vector<CycleAssignment>  chosen{};
      TransformScript               script{};

      std::optional<Certificate> inner{};
      Presentation               final_presentation{};

      bool run(Presentation const& w, std::vector<std::vector<bool>> const& basis) {
        if (chosen.size() == comps[core].cyclomatic) {
          SearchConfig plain = cfg;
          plain.use_maxima   = false;
          auto weak          = check_weak(w, Weighting::ones(w.generators), plain);
          if (weak) {
            inner              = std::move(weak.certificate);
            final_presentation = w;
            return true;
          }
          return false;
        }
        for (std::size_t t = 0; t < comps.size(); ++t) {
          if (t == core || used[t]) {
            continue;
          }
          for (auto const& c : cycles) {
            auto b = basis;
            if (!add_independent(b, cycle_vector(c, g.arcs.size()))) {
              continue;
            }
            for (auto const& ca : c.arcs) {
              auto const& arc = g.arcs[ca.edge];
              if (!arc.label || !comps[t].contains(*arc.label)) {
                continue;
              }
              auto const& x       = *arc.label;
              bool        allowed = std::all_of(c.arcs.begin(), c.arcs.end(), [&](CycleArc const& other) {
                return label_allowed(*g.arcs[other.edge].label, x, comps, core, t, used);
              });
              if (!allowed || !properly_labelled(g, c, ca.edge)) {
                continue;
              }
              if (budget == 0) {
                exhausted = true;
                return false;
              }
              --budget;
              Transformed next;
              try {
                next = ciclo_transform(w, g, c, ca.edge);
              } catch (std::exception const&) {
                continue;
              }
              used[t] = true;
              chosen.push_back(CycleAssignment{t, x, ca.edge, rotated_to(c, ca.edge).arcs});
              auto const mark = script.steps.size();
              script.steps.insert(script.steps.end(), next.script.steps.begin(), next.script.steps.end());
              if (run(next.presentation, b)) {
                return true;
              }
              script.steps.resize(mark);
              chosen.pop_back();
              used[t] = false;
            }
          }
        }
        return false;
      }
    };

    LabelledDigraph lot_side(Lot const& lot, char side) {
      return side == 'T' ? t_graph(lot) : i_graph(lot);
    }

  }  // namespace

  std::optional<std::size_t> LabelledDigraph::node_index(Generator const& g) const {
    auto it = std::find(nodes.begin(), nodes.end(), g);
    if (it == nodes.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - nodes.begin());
  }

  LabelledDigraph t_graph(Lot const& lot) {
    LabelledDigraph g{lot.vertices, {}};
    for (std::size_t i = 0; i < lot.edges.size(); ++i) {
      auto const& e = lot.edges[i];
      g.arcs.push_back(Arc{e.initial, e.label, e.terminal, i});
    }
    return g;
  }

  LabelledDigraph i_graph(Lot const& lot) {
    LabelledDigraph g{lot.vertices, {}};
    for (std::size_t i = 0; i < lot.edges.size(); ++i) {
      auto const& e = lot.edges[i];
      g.arcs.push_back(Arc{e.label, e.terminal, e.initial, i});
    }
    return g;
  }

  std::pair<LabelledDigraph, LabelledDigraph> adian_graphs(AdianPresentation const& p) {
    validate(p);
    LabelledDigraph t{p.generators, {}};
    LabelledDigraph i{p.generators, {}};
    for (std::size_t k = 0; k < p.relations.size(); ++k) {
      auto const& r = p.relations[k];
      t.arcs.push_back(Arc{r.lhs[0].gen, r.rhs[0].gen, std::nullopt, k});
      i.arcs.push_back(Arc{r.lhs[r.lhs.size() - 1].gen, r.rhs[r.rhs.size() - 1].gen, std::nullopt, k});
    }
    return {std::move(t), std::move(i)};
  }

  bool Component::contains(Generator const& g) const {
    return std::find(nodes.begin(), nodes.end(), g) != nodes.end();
  }

  std::vector<Component> components(LabelledDigraph const& g) {
    std::vector<std::size_t> parent(g.nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (auto const& a : g.arcs) {
      auto x = find_root(parent, *g.node_index(a.from));
      auto y = find_root(parent, *g.node_index(a.to));
      if (x != y) {
        parent[std::max(x, y)] = std::min(x, y);
      }
    }
    std::map<std::size_t, std::size_t> slot;  // root -> component index
    std::vector<Component>             out;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      auto r = find_root(parent, i);
      if (!slot.count(r)) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].nodes.push_back(g.nodes[i]);
    }
    for (std::size_t k = 0; k < g.arcs.size(); ++k) {
      out[slot[find_root(parent, *g.node_index(g.arcs[k].from))]].arcs.push_back(k);
    }
    for (auto& c : out) {
      c.cyclomatic = c.arcs.size() + 1 - c.nodes.size();
    }
    return out;
  }

  std::size_t cyclomatic_number(LabelledDigraph const& g) {
    return g.arcs.size() + components(g).size() - g.nodes.size();
  }

  std::vector<Generator> cycle_nodes(LabelledDigraph const& g, Cycle const& c) {
    std::vector<Generator> out;
    if (c.arcs.empty()) {
      return out;
    }
    out.push_back(traversal_start(g.arcs.at(c.arcs.front().edge), c.arcs.front().forward));
    for (auto const& a : c.arcs) {
      out.push_back(traversal_end(g.arcs.at(a.edge), a.forward));
    }
    return out;
  }

  void validate_cycle(LabelledDigraph const& g, Cycle const& c) {
    if (c.arcs.empty()) {
      throw InvalidInput("empty cycle");
    }
    std::set<std::size_t> arcs;
    std::set<Generator>   visited;
    for (std::size_t i = 0; i < c.arcs.size(); ++i) {
      auto const& a = c.arcs[i];
      if (a.edge >= g.arcs.size() || !arcs.insert(a.edge).second) {
        throw InvalidInput("cycle repeats or names a missing arc");
      }
      auto const& arc  = g.arcs[a.edge];
      auto const& next = c.arcs[(i + 1) % c.arcs.size()];
      if (next.edge >= g.arcs.size()
          || !(traversal_end(arc, a.forward) == traversal_start(g.arcs[next.edge], next.forward))) {
        throw InvalidInput("consecutive cycle arcs do not meet");
      }
      if (!visited.insert(traversal_start(arc, a.forward)).second) {
        throw InvalidInput("cycle is not simple");
      }
    }
  }

  CycleEnumeration enumerate_simple_cycles(LabelledDigraph const& g, std::size_t limit) {
    struct Incidence {
      std::size_t arc;
      std::size_t other;
      bool        forward;
    };
    auto const                          n = g.nodes.size();
    std::vector<std::vector<Incidence>> adj(n);
    CycleEnumeration                    out;
    for (std::size_t k = 0; k < g.arcs.size(); ++k) {
      auto f = *g.node_index(g.arcs[k].from);
      auto t = *g.node_index(g.arcs[k].to);
      if (f == t) {
        continue;
      }
      adj[f].push_back({k, t, true});
      adj[t].push_back({k, f, false});
    }

    std::vector<bool>     on_path(n, false);
    std::vector<CycleArc> path;

    auto dfs = [&](auto&& self, std::size_t start, std::size_t u) -> bool {
      for (auto const& inc : adj[u]) {
        if (!path.empty() && inc.arc == path.back().edge) {
          continue;
        }
        if (inc.other == start) {
          if (path.empty() || path.front().edge >= inc.arc) {
            continue;
          }
          Cycle c{path};
          c.arcs.push_back({inc.arc, inc.forward});
          if (out.cycles.size() >= limit) {
            out.truncated = true;
            return false;
          }
          out.cycles.push_back(std::move(c));
          continue;
        }
        if (inc.other < start || on_path[inc.other]) {
          continue;
        }
        on_path[inc.other] = true;
        path.push_back({inc.arc, inc.forward});
        bool const go_on = self(self, start, inc.other);
        path.pop_back();
        on_path[inc.other] = false;
        if (!go_on) {
          return false;
        }
      }
      return true;
    };

    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t k = 0; k < g.arcs.size(); ++k) {
        if (g.arcs[k].from == g.nodes[s] && g.arcs[k].to == g.nodes[s]) {
          if (out.cycles.size() >= limit) {
            out.truncated = true;
            return out;
          }
          out.cycles.push_back(Cycle{{{k, true}}});
        }
      }
      on_path[s] = true;
      bool const go_on = dfs(dfs, s, s);
      on_path[s] = false;
      if (!go_on) {
        break;
      }
    }
    return out;
  }

  bool properly_labelled(LabelledDigraph const& g, Cycle const& c, std::size_t arc) {
    auto it = std::find_if(c.arcs.begin(), c.arcs.end(), [&](CycleArc const& a) { return a.edge == arc; });
    if (it == c.arcs.end()) {
      throw InvalidInput("arc " + std::to_string(arc) + " is not on the cycle");
    }
    auto const& label = g.arcs.at(arc).label;
    std::size_t with = 0, against = 0;
    for (auto const& a : c.arcs) {
      if (g.arcs.at(a.edge).label == label) {
        (a.forward ? with : against)++;
      }
    }
    return with != against;
  }

  Transformed ciclo_transform(Presentation const&    p,
                              LabelledDigraph const& g,
                              Cycle const&           c,
                              std::size_t            base_arc) {
    validate_cycle(g, c);
    auto const cycle = rotated_to(c, base_arc);
    auto const nodes = cycle_nodes(g, cycle);
    auto const& label = g.arcs.at(base_arc).label;
    if (label && std::find(nodes.begin(), nodes.end(), *label) != nodes.end()) {
      throw InvalidInput("the label " + label->name() + " of the base arc is a vertex of the cycle");
    }

    std::vector<move::Factor> factors;
    for (std::size_t i = 0; i < cycle.arcs.size(); ++i) {
      auto const& arc = g.arcs[cycle.arcs[i].edge];
      auto const& u   = nodes[i];
      auto const& v   = nodes[i + 1];
      if (arc.source >= p.relators.size()) {
        throw InvalidInput("arc source has no relator");
      }
      auto const len = p.relators[arc.source].size();
      std::optional<move::Factor> found;
      for (bool invert : {false, true}) {
        for (std::size_t shift = 0; shift < len && !found; ++shift) {
          move::Factor f{arc.source, shift, invert};
          auto const   w = factor_word(p, f);
          if (w.size() < 2 || !(w[0] == Letter(u, 1)) || !(w[w.size() - 1] == Letter(v, -1))) {
            continue;
          }
          Word middle(std::vector<Letter>(w.letters().begin() + 1, w.letters().end() - 1));
          if (is_zigzag(middle)) {
            found = f;
          }
        }
        if (found) {
          break;
        }
      }
      if (!found) {
        throw InvalidInput("relator " + std::to_string(arc.source) + " has no form " + u.name() + " w "
                           + v.name() + "^-1 with w a zig-zag");
      }
      factors.push_back(*found);
    }
    return replace_relator_by_product(p, g.arcs[base_arc].source, factors);
  }

  CertSubject lot_subject(Lot const& lot) {
    return {"lot", serialize(lot)};
  }

  CertSubject adian_subject(AdianPresentation const& p) {
    return {"adian", serialize(p)};
  }

  CheckResult check_ciclos(Lot const& lot, SearchConfig const& cfg) {
    CheckResult out;
    std::vector<std::string> warnings;
    auto const p = lot_to_presentation(lot, warnings);
    if (!lot_is_reduced(lot)) {
      out.notes.push_back("LOT is not reduced; relators were cyclically reduced");
    }
    std::vector<std::string> reasons;
    for (char side : {'T', 'I'}) {
      auto const g   = lot_side(lot, side);
      auto const cyc = cyclomatic_number(g);
      if (cyc > 1) {
        reasons.push_back(std::string(1, side) + " has cyclomatic number " + std::to_string(cyc));
        continue;
      }
      auto removed = breaking_arc(g);
      if (!removed) {
        reasons.push_back("LOT has no edges");
        continue;
      }
      auto const w      = working_presentation(p, {}, side == 'I');
      auto const phi    = Weighting::ones(p.generators);
      auto       concat = forest_concat(w, phi, g, *removed, cfg.concat_cap);
      if (!concat) {
        reasons.push_back(std::string(1, side) + " forest order does not give concatenable minima");
        continue;
      }
      Certificate inner;
      inner.method                = Method::Main;
      inner.subject               = presentation_subject(p);
      inner.phi                   = phi;
      inner.mirrored              = side == 'I';
      inner.distinguished_relator = g.arcs[*removed].source;
      inner.concat                = std::move(concat);

      Certificate cert;
      cert.method   = Method::Ciclos;
      cert.subject  = lot_subject(lot);
      cert.mirrored = side == 'I';
      cert.graph    = GraphWitness{side, cyc, *removed, {}, {}};
      cert.inner    = std::move(inner);
      out.certificate = std::move(cert);
      return out;
    }
    out.reason = reasons.empty() ? "no applicable side" : reasons.front();
    for (std::size_t i = 1; i < reasons.size(); ++i) {
      out.reason += "; " + reasons[i];
    }
    return out;
  }

  CheckResult check_adian(AdianPresentation const& ap, SearchConfig const& cfg) {
    CheckResult out;
    auto const  p = adian_to_presentation(ap);
    if (p.deficiency() != 1 || !is_homology_circle(p)) {
      out.reason = "not a deficiency-one homology circle";
      return out;
    }
    auto const [t, i] = adian_graphs(ap);
    std::string note;
    auto const  weightings = enumerate_weightings(p, cfg.phi_bound, true, &note);
    if (!note.empty()) {
      out.notes.push_back(note);
    }
    if (weightings.empty()) {
      out.reason = "no strictly positive surjection onto Z within bound " + std::to_string(cfg.phi_bound);
      return out;
    }
    out.reason = "both graphs have cyclomatic number above one";
    for (auto const& phi : weightings) {
      for (char side : {'T', 'I'}) {
        auto const& g   = side == 'T' ? t : i;
        auto const  cyc = cyclomatic_number(g);
        if (cyc > 1) {
          continue;
        }
        auto removed = breaking_arc(g);
        if (!removed) {
          continue;
        }
        auto const w      = working_presentation(p, phi, side == 'I');
        auto       concat = forest_concat(w, phi, g, *removed, cfg.concat_cap);
        if (!concat) {
          out.reason = "minima multisets do not follow the graph";
          continue;
        }
        Certificate inner;
        inner.method                = Method::Pesos;
        inner.subject               = presentation_subject(p);
        inner.phi                   = phi;
        inner.mirrored              = side == 'I';
        inner.distinguished_relator = g.arcs[*removed].source;
        inner.concat                = std::move(concat);

        Certificate cert;
        cert.method   = Method::Adian;
        cert.subject  = adian_subject(ap);
        cert.mirrored = side == 'I';
        cert.graph    = GraphWitness{side, cyc, *removed, {}, {}};
        cert.inner    = std::move(inner);
        out.certificate = std::move(cert);
        out.reason.clear();
        return out;
      }
    }
    return out;
  }

  CheckResult check_ciclosetiq(Lot const& lot, SearchConfig const& cfg) {
    CheckResult out;
    auto const  p = lot_to_presentation(lot);
    std::vector<std::string> reasons;
    for (char side : {'T', 'I'}) {
      auto const  g     = lot_side(lot, side);
      auto const  comps = components(g);
      std::string why;
      auto const  core = core_component(comps, why);
      if (!core) {
        reasons.push_back(std::string(1, side) + ": " + why);
        continue;
      }
      auto const cycles = enumerate_simple_cycles(g, cfg.cycle_limit);
      if (cycles.truncated) {
        out.notes.push_back(std::string(1, side) + ": cycle enumeration truncated at "
                            + std::to_string(cfg.cycle_limit));
      }
      CiclosetiqSearch search{g, comps, *core, cycles.cycles, cfg};
      search.used.assign(comps.size(), false);
      auto const w0 = working_presentation(p, {}, side == 'I');
      if (!search.run(w0, {})) {
        if (search.exhausted) {
          out.notes.push_back(std::string(1, side) + ": assignment search budget exhausted");
        }
        reasons.push_back(std::string(1, side) + ": no assignment of cycles and labels passes the weak test");
        continue;
      }
      Certificate cert;
      cert.method    = Method::Ciclosetiq;
      cert.subject   = lot_subject(lot);
      cert.mirrored  = side == 'I';
      cert.transform = search.script;
      cert.graph     = GraphWitness{side, comps[*core].cyclomatic, std::nullopt, search.chosen, kCiclosetiqReadings};
      cert.inner     = std::move(*search.inner);
      out.certificate = std::move(cert);
      return out;
    }
    out.reason = reasons.front() + "; " + reasons.back();
    return out;
  }

  Verification verify_lot_certificate(Lot const& lot, Certificate const& cert) {
    if (cert.version != kCertificateVersion) {
      return fail("unsupported certificate version");
    }
    if (!(cert.subject == lot_subject(lot))) {
      return fail("certificate subject does not match the LOT");
    }
    if (cert.method != Method::Ciclos && cert.method != Method::Ciclosetiq) {
      return fail("method does not apply to a LOT subject");
    }
    if (!cert.phi.values.empty() || !cert.phi.flipped.empty() || cert.distinguished_relator || cert.concat
        || cert.genho) {
      return fail("certificate carries witnesses of another method");
    }
    if (!cert.graph || !cert.inner) {
      return fail("missing graph witness or inner certificate");
    }
    auto const& gw = *cert.graph;
    if (cert.mirrored != (gw.side == 'I')) {
      return fail("mirrored flag disagrees with the graph side");
    }
    auto const g = lot_side(lot, gw.side);
    auto const p = lot_to_presentation(lot);

    if (cert.method == Method::Ciclos) {
      if (cert.transform || !gw.assignments.empty() || !gw.readings.empty()) {
        return fail("ciclos certificate carries cycle assignments");
      }
      auto const cyc = cyclomatic_number(g);
      if (cyc > 1 || cyc != gw.cyclomatic) {
        return fail("graph cyclomatic number does not match or exceeds one");
      }
      if (gw.removed_edge != breaking_arc(g)) {
        return fail("removed edge is not the canonical cycle-breaking edge");
      }
      auto const& inner = *cert.inner;
      if (inner.method != Method::Main || inner.mirrored != (gw.side == 'I')
          || inner.distinguished_relator != g.arcs[*gw.removed_edge].source) {
        return fail("inner certificate does not match the graph witness");
      }
      auto v = verify_presentation_certificate(p, inner);
      return v ? ok() : fail("inner certificate: " + v.reason);
    }

    // Ciclosetiq
    if (!cert.transform || gw.removed_edge) {
      return fail("ciclosetiq certificate needs a transformation and no removed edge");
    }
    if (gw.readings != kCiclosetiqReadings) {
      return fail("interpretation readings do not match");
    }
    auto const  comps = components(g);
    std::string why;
    auto const  core = core_component(comps, why);
    if (!core) {
      return fail("component pattern fails: " + why);
    }
    if (gw.cyclomatic != comps[*core].cyclomatic || gw.assignments.size() != gw.cyclomatic) {
      return fail("number of assignments does not match the cyclomatic number of X0");
    }
    std::vector<bool>              used(comps.size(), false);
    std::vector<std::vector<bool>> basis;
    Presentation                   w = working_presentation(p, {}, gw.side == 'I');
    TransformScript                expected;
    for (auto const& a : gw.assignments) {
      if (a.component >= comps.size() || a.component == *core || used[a.component]) {
        return fail("assignment components are not a bijection onto the tree components");
      }
      Cycle const c{a.cycle};
      try {
        validate_cycle(g, c);
      } catch (InvalidInput const& e) {
        return fail(std::string("invalid cycle: ") + e.what());
      }
      if (c.arcs.front().edge != a.base_edge) {
        return fail("cycle does not start at its base arc");
      }
      if (!comps[*core].contains(cycle_nodes(g, c).front())) {
        return fail("cycle does not lie in X0");
      }
      if (!add_independent(basis, cycle_vector(c, g.arcs.size()))) {
        return fail("cycles are not independent");
      }
      auto const& base = g.arcs[a.base_edge];
      if (!base.label || !(*base.label == a.label) || !comps[a.component].contains(a.label)) {
        return fail("base arc label is not the recorded vertex of its tree component");
      }
      if (!properly_labelled(g, c, a.base_edge)) {
        return fail("base arc is not properly labelled");
      }
      for (auto const& other : c.arcs) {
        if (!label_allowed(*g.arcs[other.edge].label, a.label, comps, *core, a.component, used)) {
          return fail("cycle carries a forbidden label");
        }
      }
      Transformed t;
      try {
        t = ciclo_transform(w, g, c, a.base_edge);
      } catch (std::exception const& e) {
        return fail(std::string("cycle transformation failed: ") + e.what());
      }
      expected.steps.insert(expected.steps.end(), t.script.steps.begin(), t.script.steps.end());
      w               = std::move(t.presentation);
      used[a.component] = true;
    }
    if (!(expected == *cert.transform)) {
      return fail("transformation script does not match");
    }
    auto const& inner = *cert.inner;
    if (inner.method != Method::Weak || inner.mirrored || !(inner.phi == Weighting::ones(w.generators))) {
      return fail("inner certificate must be a plain weak certificate with the all-ones weighting");
    }
    auto v = verify_presentation_certificate(w, inner);
    return v ? ok() : fail("inner certificate: " + v.reason);
  }

  Verification verify_adian_certificate(AdianPresentation const& ap, Certificate const& cert) {
    if (cert.version != kCertificateVersion) {
      return fail("unsupported certificate version");
    }
    if (!(cert.subject == adian_subject(ap))) {
      return fail("certificate subject does not match the Adian presentation");
    }
    if (cert.method != Method::Adian) {
      return fail("method does not apply to an Adian subject");
    }
    if (!cert.phi.values.empty() || !cert.phi.flipped.empty() || cert.distinguished_relator || cert.concat
        || cert.genho || cert.transform) {
      return fail("certificate carries witnesses of another method");
    }
    if (!cert.graph || !cert.inner) {
      return fail("missing graph witness or inner certificate");
    }
    auto const& gw = *cert.graph;
    if (cert.mirrored != (gw.side == 'I') || !gw.assignments.empty() || !gw.readings.empty()) {
      return fail("graph witness is ill-formed");
    }
    auto const [t, i] = adian_graphs(ap);
    auto const& g     = gw.side == 'T' ? t : i;
    auto const  cyc   = cyclomatic_number(g);
    if (cyc > 1 || cyc != gw.cyclomatic) {
      return fail("graph cyclomatic number does not match or exceeds one");
    }
    if (gw.removed_edge != breaking_arc(g)) {
      return fail("removed edge is not the canonical cycle-breaking edge");
    }
    auto const  p     = adian_to_presentation(ap);
    auto const& inner = *cert.inner;
    if (inner.method != Method::Pesos || inner.mirrored != (gw.side == 'I')
        || inner.distinguished_relator != g.arcs[*gw.removed_edge].source) {
      return fail("inner certificate does not match the graph witness");
    }
    if (!inner.phi.flipped.empty()
        || std::any_of(inner.phi.values.begin(), inner.phi.values.end(), [](auto const& kv) { return kv.second <= 0; })) {
      return fail("inner weighting is not strictly positive");
    }
    auto v = verify_presentation_certificate(p, inner);
    return v ? ok() : fail("inner certificate: " + v.reason);
  }

  std::string to_dot(LabelledDigraph const& g, std::string const& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    for (auto const& n : g.nodes) {
      out << "  \"" << n.name() << "\";\n";
    }
    for (std::size_t k = 0; k < g.arcs.size(); ++k) {
      auto const& a = g.arcs[k];
      out << "  \"" << a.from.name() << "\" -> \"" << a.to.name() << "\" [label=\""
          << (a.label ? a.label->name() : "r" + std::to_string(a.source)) << "\"];\n";
    }
    auto const comps = components(g);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      out << "  // component " << c << ":";
      for (auto const& n : comps[c].nodes) {
        out << ' ' << n.name();
      }
      out << " cyclomatic " << comps[c].cyclomatic << "\n";
    }
    out << "}\n";
    return out.str();
  }

  std::string to_text(LabelledDigraph const& g, std::string const& name) {
    std::ostringstream out;
    out << "graph " << name << "\n";
    for (std::size_t k = 0; k < g.arcs.size(); ++k) {
      auto const& a = g.arcs[k];
      out << "  arc " << k << ": " << a.from.name() << " -> " << a.to.name();
      if (a.label) {
        out << " [" << a.label->name() << "]";
      }
      out << "\n";
    }
    auto const comps = components(g);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      out << "  component " << c << ":";
      for (auto const& n : comps[c].nodes) {
        out << ' ' << n.name();
      }
      out << " | cyclomatic " << comps[c].cyclomatic << "\n";
    }
    out << "  cyclomatic number " << cyclomatic_number(g) << "\n";
    return out.str();
  }

}  // namespace locind
