#include "locind/criteria.hpp"

#include "locind/abelian.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace locind {

  namespace {

    // A family of sets with, per set, the entries allowed to witness it.
    struct Family {
      std::vector<std::vector<Generator>> sets;
      std::vector<std::vector<Generator>> candidates;
      std::map<Generator, std::uint32_t>  contain;  // bitmask of sets holding g

      std::size_t size() const {
        return sets.size();
      }

      std::optional<Generator> witness(std::size_t i, std::uint32_t earlier) const {
        for (auto const& x : candidates[i]) {
          if ((contain.at(x) & earlier) == 0) {
            return x;
          }
        }
        return std::nullopt;
      }
    };

    Family make_family(std::vector<std::vector<Generator>> sets,
                       std::vector<std::vector<Generator>> candidates,
                       std::size_t                         cap) {
      if (sets.size() > cap || sets.size() > 24) {
        throw CapExceeded("concatenation search over " + std::to_string(sets.size())
                          + " relators exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 24)));
      }
      Family f{std::move(sets), std::move(candidates), {}};
      for (std::size_t i = 0; i < f.sets.size(); ++i) {
        for (auto const& g : f.sets[i]) {
          f.contain[g] |= std::uint32_t{1} << i;
        }
      }
      return f;
    }

    // Distinct entries in first-occurrence order.
    std::vector<Generator> distinct_in_order(std::vector<Generator> const& entries) {
      std::vector<Generator> out;
      for (auto const& g : entries) {
        if (std::find(out.begin(), out.end(), g) == out.end()) {
          out.push_back(g);
        }
      }
      return out;
    }

    // Lexicographically least valid order, built front to back.
    std::optional<std::vector<std::size_t>> forward_order(Family const& f) {
      auto const          k    = f.size();
      std::uint32_t const full = k == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
      std::vector<std::int8_t> memo(std::size_t{1} << k, -1);

      // completable(mask): the sets outside mask can follow the ones in mask
      auto completable = [&](auto&& self, std::uint32_t mask) -> bool {
        if (mask == full) {
          return true;
        }
        auto& slot = memo[mask];
        if (slot >= 0) {
          return slot != 0;
        }
        bool ok = false;
        for (std::size_t i = 0; i < k && !ok; ++i) {
          std::uint32_t const bit = std::uint32_t{1} << i;
          if ((mask & bit) == 0 && f.witness(i, mask) && self(self, mask | bit)) {
            ok = true;
          }
        }
        slot = ok ? 1 : 0;
        return ok;
      };

      if (!completable(completable, 0)) {
        return std::nullopt;
      }
      std::vector<std::size_t> order;
      std::uint32_t            mask = 0;
      while (mask != full) {
        for (std::size_t i = 0; i < k; ++i) {
          std::uint32_t const bit = std::uint32_t{1} << i;
          if ((mask & bit) == 0 && f.witness(i, mask) && completable(completable, mask | bit)) {
            order.push_back(i);
            mask |= bit;
            break;
          }
        }
      }
      return order;
    }

    // Valid order found by repeatedly peeling the smallest removable index
    // off the end.
    std::optional<std::vector<std::size_t>> backward_order(Family const& f) {
      auto const          k    = f.size();
      std::uint32_t const full = k == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
      std::vector<std::int8_t> memo(std::size_t{1} << k, -1);

      // orderable(S): the sets in S admit a valid order on their own
      auto orderable = [&](auto&& self, std::uint32_t s) -> bool {
        if (s == 0) {
          return true;
        }
        auto& slot = memo[s];
        if (slot >= 0) {
          return slot != 0;
        }
        bool ok = false;
        for (std::size_t i = 0; i < k && !ok; ++i) {
          std::uint32_t const bit = std::uint32_t{1} << i;
          if ((s & bit) != 0 && f.witness(i, s & ~bit) && self(self, s & ~bit)) {
            ok = true;
          }
        }
        slot = ok ? 1 : 0;
        return ok;
      };

      if (!orderable(orderable, full)) {
        return std::nullopt;
      }
      std::vector<std::size_t> reversed;
      std::uint32_t            s = full;
      while (s != 0) {
        for (std::size_t i = 0; i < k; ++i) {
          std::uint32_t const bit = std::uint32_t{1} << i;
          if ((s & bit) != 0 && f.witness(i, s & ~bit) && orderable(orderable, s & ~bit)) {
            reversed.push_back(i);
            s &= ~bit;
            break;
          }
        }
      }
      return std::vector<std::size_t>(reversed.rbegin(), reversed.rend());
    }

    ConcatOrder realize(Family const& f, std::vector<std::size_t> const& order) {
      ConcatOrder   out;
      std::uint32_t earlier = 0;
      for (auto i : order) {
        out.steps.push_back(ConcatStep{i, *f.witness(i, earlier), f.sets[i], std::nullopt});
        earlier |= std::uint32_t{1} << i;
      }
      return out;
    }

    std::vector<bool> variants(SearchConfig const& cfg) {
      return cfg.use_maxima ? std::vector<bool>{false, true} : std::vector<bool>{false};
    }

    bool unbalanced(CountSignature const& c) {
      return c.neg_count != c.pos_count;
    }

    Verification ok() {
      return {true, {}};
    }
    Verification fail(std::string reason) {
      return {false, std::move(reason)};
    }

    // Weighting on the genho-transformed presentation: d inherits phi(a).
    Weighting genho_weighting(Weighting const& phi0, Transformed const& t, Generator const& a) {
      Weighting out;
      for (auto const& g : t.presentation.generators) {
        auto it = phi0.values.find(g);
        out.values.emplace(g, it != phi0.values.end() ? it->second : phi0.at(a));
      }
      return out;
    }

    // The concatenation search of the Pesos method for one weighting: every
    // variant and every distinguished relator, plain first, last relator
    // first.
    std::optional<Certificate> pesos_core(Presentation const& p,
                                          Weighting const&    phi,
                                          Method              method,
                                          SearchConfig const& cfg) {
      auto const phi0 = unflipped(phi);
      for (bool mirrored : variants(cfg)) {
        auto const                          w = working_presentation(p, phi, mirrored);
        std::vector<std::vector<Generator>> ms;
        for (auto const& r : w.relators) {
          ms.push_back(minima_multiset(r, phi0).entries);
        }
        for (std::size_t s = w.relators.size(); s-- > 0;) {
          std::vector<std::vector<Generator>> family;
          std::vector<std::size_t>            index;
          for (std::size_t i = 0; i < ms.size(); ++i) {
            if (i != s) {
              family.push_back(ms[i]);
              index.push_back(i);
            }
          }
          auto order = concatenable(family, cfg.concat_cap);
          if (!order) {
            continue;
          }
          for (auto& step : order->steps) {
            step.relator = index[step.relator];
          }
          Certificate cert;
          cert.method                = method;
          cert.subject               = presentation_subject(p);
          cert.phi                   = phi;
          cert.mirrored              = mirrored;
          cert.distinguished_relator = s;
          cert.concat                = std::move(order);
          return cert;
        }
      }
      return std::nullopt;
    }

    std::optional<Certificate> weak_core(Presentation const& p, Weighting const& phi, SearchConfig const& cfg) {
      auto const phi0 = unflipped(phi);
      for (bool mirrored : variants(cfg)) {
        auto const w     = working_presentation(p, phi, mirrored);
        auto       order = weakly_concatenable(w.relators, phi0, cfg.concat_cap);
        if (!order) {
          continue;
        }
        Certificate cert;
        cert.method   = Method::Weak;
        cert.subject  = presentation_subject(p);
        cert.phi      = phi;
        cert.mirrored = mirrored;
        cert.concat   = std::move(order);
        return cert;
      }
      return std::nullopt;
    }

    std::vector<Weighting> weightings_for(Presentation const&             p,
                                          std::optional<Weighting> const& given,
                                          SearchConfig const&             cfg,
                                          bool                            strict,
                                          CheckResult&                    result) {
      if (given) {
        if (!is_surjective_weighting(p, *given)) {
          result.reason = "given weighting is not a surjection onto Z";
          return {};
        }
        return {*given};
      }
      std::string note;
      auto        out = enumerate_weightings(p, cfg.phi_bound, strict, &note);
      if (!note.empty()) {
        result.notes.push_back(note);
      }
      if (out.empty()) {
        result.reason = "no surjection onto Z within bound " + std::to_string(cfg.phi_bound);
      }
      return out;
    }

    Verification verify_concat(Presentation const&               w,
                               Weighting const&                  phi0,
                               std::optional<std::size_t> const& s,
                               ConcatOrder const&                concat,
                               bool                              weak) {
      std::vector<bool> seen(w.relators.size(), false);
      if (s) {
        if (*s >= w.relators.size()) {
          return fail("distinguished relator out of range");
        }
        seen[*s] = true;
      }
      std::set<Generator> earlier;
      for (auto const& step : concat.steps) {
        if (step.relator >= w.relators.size() || seen[step.relator]) {
          return fail("concatenation order is not a permutation of the relators");
        }
        seen[step.relator] = true;
        auto const& r  = w.relators[step.relator];
        auto const  ms = minima_multiset(r, phi0);
        if (ms.entries != step.multiset) {
          return fail("recorded multiset of relator " + std::to_string(step.relator)
                      + " does not match");
        }
        std::optional<Generator> canonical;
        for (auto const& x : ms.entries) {
          if (earlier.count(x) != 0) {
            continue;
          }
          bool const eligible = weak ? unbalanced(min_count_signature(r, phi0, x))
                                     : ms.multiplicity(x) == 1;
          if (eligible) {
            canonical = x;
            break;
          }
        }
        if (!canonical) {
          return fail("relator " + std::to_string(step.relator) + " has no fresh witness");
        }
        if (!(*canonical == step.witness)) {
          return fail("witness of relator " + std::to_string(step.relator)
                      + " is not the canonical one");
        }
        if (weak) {
          if (!step.counts || !(*step.counts == min_count_signature(r, phi0, step.witness))) {
            return fail("recorded counts of relator " + std::to_string(step.relator)
                        + " do not match");
          }
        } else if (step.counts) {
          return fail("counts recorded outside weak mode");
        }
        earlier.insert(ms.entries.begin(), ms.entries.end());
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        return fail("concatenation order misses a relator");
      }
      return ok();
    }

  }  // namespace

  std::optional<ConcatOrder> concatenable(std::vector<std::vector<Generator>> const& multisets,
                                          std::size_t                               cap) {
    std::vector<std::vector<Generator>> candidates;
    for (auto const& set : multisets) {
      std::vector<Generator> c;
      for (auto const& g : distinct_in_order(set)) {
        if (std::count(set.begin(), set.end(), g) == 1) {
          c.push_back(g);
        }
      }
      candidates.push_back(std::move(c));
    }
    auto const f     = make_family(multisets, std::move(candidates), cap);
    auto       order = forward_order(f);
    if (!order) {
      return std::nullopt;
    }
    return realize(f, *order);
  }

  std::optional<ConcatOrder> weakly_concatenable(std::vector<Word> const& relators,
                                                 Weighting const&         phi,
                                                 std::size_t              cap) {
    std::vector<std::vector<Generator>> sets;
    std::vector<std::vector<Generator>> candidates;
    for (auto const& r : relators) {
      auto ms = minima_multiset(r, phi);
      std::vector<Generator> c;
      for (auto const& g : distinct_in_order(ms.entries)) {
        if (unbalanced(min_count_signature(r, phi, g))) {
          c.push_back(g);
        }
      }
      sets.push_back(std::move(ms.entries));
      candidates.push_back(std::move(c));
    }
    auto const f     = make_family(std::move(sets), std::move(candidates), cap);
    auto       order = backward_order(f);
    if (!order) {
      return std::nullopt;
    }
    auto out = realize(f, *order);
    for (auto& step : out.steps) {
      step.counts = min_count_signature(relators[step.relator], phi, step.witness);
    }
    return out;
  }

  std::optional<ConcatOrder> concat_with_order(std::vector<Word> const&        relators,
                                               Weighting const&                phi,
                                               std::vector<std::size_t> const& order) {
    ConcatOrder         out;
    std::set<Generator> earlier;
    for (auto i : order) {
      auto const ms = minima_multiset(relators.at(i), phi);
      auto const it = std::find_if(ms.entries.begin(), ms.entries.end(), [&](Generator const& x) {
        return earlier.count(x) == 0 && ms.multiplicity(x) == 1;
      });
      if (it == ms.entries.end()) {
        return std::nullopt;
      }
      out.steps.push_back(ConcatStep{i, *it, ms.entries, std::nullopt});
      earlier.insert(ms.entries.begin(), ms.entries.end());
    }
    return out;
  }

  std::vector<std::size_t> ConcatOrder::order() const {
    std::vector<std::size_t> out;
    for (auto const& s : steps) {
      out.push_back(s.relator);
    }
    return out;
  }

  Weighting unflipped(Weighting phi) {
    phi.flipped.clear();
    return phi;
  }

  Presentation working_presentation(Presentation const& p, Weighting const& phi, bool mirrored) {
    Presentation w = p;
    for (auto const& g : phi.flipped) {
      w = flip_generator(std::move(w), g);
    }
    return mirrored ? mirror(std::move(w)) : w;
  }

  CertSubject presentation_subject(Presentation const& p) {
    return {"presentation", serialize(p)};
  }

  BigInt weight_range(Word const& w, Weighting const& phi) {
    BigInt lo = 0, hi = 0;
    for (auto const& v : weight_sequence(w, phi)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  }

  CheckResult check_one_relator(Presentation const& p) {
    CheckResult out;
    if (p.relators.size() != 1) {
      out.reason = "has " + std::to_string(p.relators.size()) + " relators, not one";
      return out;
    }
    if (auto pp = is_proper_power(p.relators.front())) {
      out.reason = "the relator is a proper power (exponent " + std::to_string(pp->exponent) + ")";
      return out;
    }
    Certificate cert;
    cert.method  = Method::OneRelator;
    cert.subject = presentation_subject(p);
    out.certificate = std::move(cert);
    return out;
  }

  CheckResult check_main(Presentation const& p, SearchConfig const& cfg) {
    if (p.relators.size() == 1) {
      return check_one_relator(p);
    }
    CheckResult out;
    if (p.relators.empty()) {
      out.reason = "no relators";
      return out;
    }
    if (!is_homology_circle(p)) {
      out.reason = "not a homology circle";
      return out;
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (p.relators[i].total_exponent() != 0) {
        out.reason = "relator " + std::to_string(i) + " has nonzero total exponent";
        return out;
      }
    }
    out.certificate = pesos_core(p, Weighting::ones(p.generators), Method::Main, cfg);
    if (!out.certificate) {
      out.reason = "minima multisets are not concatenable for any distinguished relator";
    }
    return out;
  }

  CheckResult check_pesos(Presentation const&             p,
                          std::optional<Weighting> const& given,
                          SearchConfig const&             cfg) {
    if (p.relators.size() == 1) {
      return check_one_relator(p);
    }
    CheckResult out;
    if (p.relators.empty()) {
      out.reason = "no relators";
      return out;
    }
    if (!is_homology_circle(p)) {
      out.reason = "not a homology circle";
      return out;
    }
    for (auto const& phi : weightings_for(p, given, cfg, false, out)) {
      if (auto cert = pesos_core(p, phi, Method::Pesos, cfg)) {
        out.certificate = std::move(cert);
        out.reason.clear();
        return out;
      }
      out.reason = given ? "minima multisets are not concatenable under the given weighting"
                         : "no weighting within bound " + std::to_string(cfg.phi_bound)
                               + " gives concatenable minima multisets";
    }
    return out;
  }

  CheckResult check_weak(Presentation const&             p,
                         std::optional<Weighting> const& given,
                         SearchConfig const&             cfg) {
    CheckResult out;
    if (!is_homology_wedge(p)) {
      out.reason = "not a homology wedge";
      return out;
    }
    for (auto const& phi : weightings_for(p, given, cfg, false, out)) {
      if (auto cert = weak_core(p, phi, cfg)) {
        out.certificate = std::move(cert);
        out.reason.clear();
        return out;
      }
      out.reason = given ? "relators are not weakly concatenable under the given weighting"
                         : "no weighting within bound " + std::to_string(cfg.phi_bound)
                               + " makes the relators weakly concatenable";
    }
    return out;
  }

  CheckResult check_genho(Presentation const& p, SearchConfig const& cfg) {
    CheckResult out;
    if (p.generators.size() != 3 || p.relators.size() != 2) {
      out.reason = "needs 3 generators and 2 relators";
      return out;
    }
    if (!is_homology_circle(p)) {
      out.reason = "not a homology circle";
      return out;
    }
    bool any_minimum = false;
    for (auto const& phi : weightings_for(p, std::nullopt, cfg, false, out)) {
      auto const phi0    = unflipped(phi);
      BigInt     min_pos = 0;
      for (auto const& [g, v] : phi0.values) {
        if (v > 0 && (min_pos == 0 || v < min_pos)) {
          min_pos = v;
        }
      }
      for (bool mirrored : variants(cfg)) {
        auto const w = working_presentation(p, phi, mirrored);
        for (std::size_t r = 0; r < w.relators.size(); ++r) {
          BigInt const      bound = weight_range(w.relators[r], phi0) / min_pos + 2;
          std::size_t const m_max =
              bound > BigInt(cfg.genho_m_cap) ? cfg.genho_m_cap : static_cast<std::size_t>(bound);
          for (auto const& a : w.generators) {
            auto rm = unique_relative_minimum(w.relators[r], phi0, a);
            if (!rm) {
              continue;
            }
            any_minimum = true;
            for (auto const& c : w.generators) {
              if (c == a || phi0.at(c) == 0) {
                continue;
              }
              for (std::size_t m = 1; m <= m_max; ++m) {
                Transformed t;
                try {
                  t = genho_transform(w, a, c, m);
                } catch (TrivialRelatorError const&) {
                  continue;
                }
                auto const phi1  = genho_weighting(phi0, t, a);
                auto       inner = pesos_core(t.presentation, phi1, Method::Pesos, cfg);
                if (!inner) {
                  continue;
                }
                Certificate cert;
                cert.method    = Method::Genho;
                cert.subject   = presentation_subject(p);
                cert.phi       = phi;
                cert.mirrored  = mirrored;
                cert.transform = t.script;
                cert.genho     = GenhoWitness{r, a, c, m, rm->position, rm->which};
                cert.inner     = std::move(*inner);
                out.certificate = std::move(cert);
                out.reason.clear();
                return out;
              }
            }
          }
        }
      }
    }
    if (out.reason.empty() || any_minimum) {
      out.reason = any_minimum
                       ? "no transformed presentation within the m bound passes the pesos test"
                       : "no relator attains a unique relative minimum";
    }
    return out;
  }

  Verification verify_presentation_certificate(Presentation const& p, Certificate const& cert) {
    if (cert.version != kCertificateVersion) {
      return fail("unsupported certificate version");
    }
    if (!(cert.subject == presentation_subject(p))) {
      return fail("certificate subject does not match the presentation");
    }
    bool const has_phi = !cert.phi.values.empty() || !cert.phi.flipped.empty();

    switch (cert.method) {
      case Method::OneRelator: {
        if (has_phi || cert.mirrored || cert.distinguished_relator || cert.concat || cert.transform
            || cert.genho || cert.graph || cert.inner) {
          return fail("one-relator certificate carries extra witnesses");
        }
        if (p.relators.size() != 1) {
          return fail("presentation does not have exactly one relator");
        }
        if (is_proper_power(p.relators.front())) {
          return fail("the relator is a proper power");
        }
        return ok();
      }
      case Method::Main:
      case Method::Pesos: {
        if (cert.transform || cert.genho || cert.graph || cert.inner) {
          return fail("certificate carries witnesses of another method");
        }
        if (!cert.distinguished_relator || !cert.concat) {
          return fail("missing distinguished relator or concatenation order");
        }
        if (!is_homology_circle(p)) {
          return fail("not a homology circle");
        }
        if (!is_surjective_weighting(p, cert.phi)) {
          return fail("weighting is not a surjection onto Z");
        }
        if (cert.method == Method::Main && !(cert.phi == Weighting::ones(p.generators))) {
          return fail("main certificate must use the all-ones weighting");
        }
        auto const w = working_presentation(p, cert.phi, cert.mirrored);
        return verify_concat(w, unflipped(cert.phi), cert.distinguished_relator, *cert.concat, false);
      }
      case Method::Weak: {
        if (cert.distinguished_relator || cert.transform || cert.genho || cert.graph || cert.inner) {
          return fail("certificate carries witnesses of another method");
        }
        if (!cert.concat) {
          return fail("missing concatenation order");
        }
        if (!is_homology_wedge(p)) {
          return fail("not a homology wedge");
        }
        if (!is_surjective_weighting(p, cert.phi)) {
          return fail("weighting is not a surjection onto Z");
        }
        auto const w = working_presentation(p, cert.phi, cert.mirrored);
        return verify_concat(w, unflipped(cert.phi), std::nullopt, *cert.concat, true);
      }
      case Method::Genho: {
        if (cert.distinguished_relator || cert.concat || cert.graph) {
          return fail("certificate carries witnesses of another method");
        }
        if (!cert.transform || !cert.genho || !cert.inner) {
          return fail("missing transformation, genho witness or inner certificate");
        }
        if (p.generators.size() != 3 || p.relators.size() != 2 || !is_homology_circle(p)) {
          return fail("presentation is not a 3-generator 2-relator homology circle");
        }
        if (!is_surjective_weighting(p, cert.phi)) {
          return fail("weighting is not a surjection onto Z");
        }
        auto const  phi0 = unflipped(cert.phi);
        auto const  w    = working_presentation(p, cert.phi, cert.mirrored);
        auto const& g    = *cert.genho;
        if (g.relator >= w.relators.size() || !w.has_generator(g.a) || !w.has_generator(g.c)
            || g.a == g.c || g.m == 0 || phi0.at(g.c) == 0) {
          return fail("genho witness is ill-formed");
        }
        auto rm = unique_relative_minimum(w.relators[g.relator], phi0, g.a);
        if (!rm || rm->position != g.position || rm->which != g.which) {
          return fail("relator does not attain the recorded unique relative minimum");
        }
        Transformed t;
        try {
          t = genho_transform(w, g.a, g.c, g.m);
        } catch (std::exception const& e) {
          return fail(std::string("genho transformation failed: ") + e.what());
        }
        if (!(t.script == *cert.transform)) {
          return fail("transformation script does not match");
        }
        if (cert.inner->method != Method::Pesos) {
          return fail("inner certificate must be a pesos certificate");
        }
        if (!(cert.inner->phi == genho_weighting(phi0, t, g.a))) {
          return fail("inner weighting does not extend the outer one");
        }
        auto inner = verify_presentation_certificate(t.presentation, *cert.inner);
        if (!inner) {
          return fail("inner certificate: " + inner.reason);
        }
        return ok();
      }
      default:
        return fail("graph certificates need a LOT or Adian subject");
    }
  }

}  // namespace locind
