#pragma once

// The graphs T and I of LOTs and Adian presentations, their cycle structure,
// and the checkers built on them.

#include "locind/certificate.hpp"
#include "locind/criteria.hpp"
#include "locind/presentation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace locind {

  struct Arc {
    Generator                from;
    Generator                to;
    std::optional<Generator> label;   // absent on Adian graphs
    std::size_t              source;  // LOT edge or Adian relation index

    bool operator==(Arc const&) const = default;
  };

  struct LabelledDigraph {
    std::vector<Generator> nodes;
    std::vector<Arc>       arcs;

    std::optional<std::size_t> node_index(Generator const& g) const;
  };

  // T: i -> lambda labelled t.  I: lambda -> t labelled i.
  LabelledDigraph t_graph(Lot const& lot);
  LabelledDigraph i_graph(Lot const& lot);
  // T: first(u) -> first(v).  I: last(u) -> last(v).
  std::pair<LabelledDigraph, LabelledDigraph> adian_graphs(AdianPresentation const& p);

  struct Component {
    std::vector<Generator>   nodes;  // in graph node order
    std::vector<std::size_t> arcs;   // increasing
    std::size_t              cyclomatic = 0;

    bool contains(Generator const& g) const;
  };

  // Connected components of the underlying multigraph, ordered by their
  // first node.
  std::vector<Component> components(LabelledDigraph const& g);
  std::size_t            cyclomatic_number(LabelledDigraph const& g);

  struct Cycle {
    std::vector<CycleArc> arcs;

    bool operator==(Cycle const&) const = default;
  };

  // Node sequence of a cycle, closing node repeated at the end.
  std::vector<Generator> cycle_nodes(LabelledDigraph const& g, Cycle const& c);
  // Throws InvalidInput unless c is a closed simple cycle of g.
  void validate_cycle(LabelledDigraph const& g, Cycle const& c);

  struct CycleEnumeration {
    std::vector<Cycle> cycles;
    bool               truncated = false;
  };

  // Simple cycles of the underlying multigraph (loops and parallel pairs
  // included). Each starts at its least node; of the two traversal
  // directions the one whose first arc index is smaller is kept.
  CycleEnumeration enumerate_simple_cycles(LabelledDigraph const& g, std::size_t limit);

  // Throws InvalidInput when `arc` is not on c.
  bool properly_labelled(LabelledDigraph const& g, Cycle const& c, std::size_t arc);

  // Replaces the relator of the base arc by the product of the relators
  // around c, each normalized to u w v^-1 with w a zig-zag. Relator indices
  // are arc sources.
  Transformed ciclo_transform(Presentation const&    p,
                              LabelledDigraph const& g,
                              Cycle const&           c,
                              std::size_t            base_arc);

  CertSubject lot_subject(Lot const& lot);
  CertSubject adian_subject(AdianPresentation const& p);

  CheckResult check_ciclos(Lot const& lot, SearchConfig const& cfg = {});
  CheckResult check_adian(AdianPresentation const& p, SearchConfig const& cfg = {});
  CheckResult check_ciclosetiq(Lot const& lot, SearchConfig const& cfg = {});

  Verification verify_lot_certificate(Lot const& lot, Certificate const& cert);
  Verification verify_adian_certificate(AdianPresentation const& p, Certificate const& cert);

  std::string to_dot(LabelledDigraph const& g, std::string const& name);
  std::string to_text(LabelledDigraph const& g, std::string const& name);

}  // namespace locind
