#include "locind/certificate.hpp"

#include "json.hpp"

#include <array>
#include <limits>

namespace locind {

  using nlohmann::json;

  namespace {

    constexpr std::array<std::string_view, 8> kMethodNames{
        "OneRelator", "Main", "Pesos", "Genho", "Weak", "Ciclos", "Adian", "Ciclosetiq"};

    [[noreturn]] void bad(std::string const& what) {
      throw CertificateFormatError(what);
    }

    // Object access that rejects missing and unexpected keys.
    class Fields {
     public:
      Fields(json const& j, std::string context, std::initializer_list<char const*> keys)
          : j_(j), context_(std::move(context)) {
        if (!j.is_object()) {
          bad(context_ + " must be an object");
        }
        for (auto const& [k, v] : j.items()) {
          bool known = false;
          for (auto const* key : keys) {
            known = known || k == key;
          }
          if (!known) {
            bad(context_ + " has unexpected key '" + k + "'");
          }
        }
        for (auto const* key : keys) {
          if (!j.contains(key)) {
            bad(context_ + " lacks key '" + std::string(key) + "'");
          }
        }
      }

      json const& operator[](char const* key) const {
        return j_.at(key);
      }

      std::string const& context() const {
        return context_;
      }

     private:
      json const& j_;
      std::string context_;
    };

    std::size_t get_index(json const& j, std::string const& what) {
      if (!j.is_number_unsigned()) {
        bad(what + " must be a non-negative integer");
      }
      return j.get<std::size_t>();
    }

    bool get_bool(json const& j, std::string const& what) {
      if (!j.is_boolean()) {
        bad(what + " must be a boolean");
      }
      return j.get<bool>();
    }

    std::string get_string(json const& j, std::string const& what) {
      if (!j.is_string()) {
        bad(what + " must be a string");
      }
      return j.get<std::string>();
    }

    Generator get_generator(json const& j, std::string const& what) {
      auto name = get_string(j, what);
      if (!is_valid_generator_name(name)) {
        bad(what + " is not a generator name");
      }
      return Generator(name);
    }

    json bigint_to_json(BigInt const& v) {
      if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        return json(v.convert_to<std::uint64_t>());
      }
      if (v < 0 && v >= BigInt(std::numeric_limits<std::int64_t>::min())) {
        return json(v.convert_to<std::int64_t>());
      }
      return json(v.str());
    }

    BigInt bigint_from_json(json const& j, std::string const& what) {
      if (j.is_number_unsigned()) {
        return BigInt(j.get<std::uint64_t>());
      }
      if (j.is_number_integer()) {
        return BigInt(j.get<std::int64_t>());
      }
      if (j.is_string()) {
        auto const s = j.get<std::string>();
        auto const digits = s.substr(!s.empty() && s[0] == '-' ? 1 : 0);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
          bad(what + " is not an integer");
        }
        return BigInt(s);
      }
      bad(what + " must be an integer");
    }

    json word_to_json(Word const& w) {
      json out = json::array();
      for (auto const& l : w) {
        out.push_back({{"gen", l.gen.name()}, {"sign", l.sign}});
      }
      return out;
    }

    Word word_from_json(json const& j, std::string const& what) {
      if (!j.is_array()) {
        bad(what + " must be an array of letters");
      }
      Word w;
      for (auto const& item : j) {
        Fields f(item, what + " letter", {"gen", "sign"});
        if (!f["sign"].is_number_integer()) {
          bad(what + " letter sign must be an integer");
        }
        auto const sign = f["sign"].get<long long>();
        if (sign != 1 && sign != -1) {
          bad(what + " letter sign must be 1 or -1");
        }
        w.push_back(Letter(get_generator(f["gen"], what + " letter"), static_cast<int>(sign)));
      }
      return w;
    }

    json generators_to_json(std::vector<Generator> const& gens) {
      json out = json::array();
      for (auto const& g : gens) {
        out.push_back(g.name());
      }
      return out;
    }

    std::vector<Generator> generators_from_json(json const& j, std::string const& what) {
      if (!j.is_array()) {
        bad(what + " must be an array");
      }
      std::vector<Generator> out;
      for (auto const& item : j) {
        out.push_back(get_generator(item, what + " entry"));
      }
      return out;
    }

    json factor_to_json(move::Factor const& f) {
      return {{"relator", f.relator}, {"shift", f.shift}, {"invert", f.invert}};
    }

    move::Factor factor_from_json(json const& j) {
      Fields f(j, "factor", {"relator", "shift", "invert"});
      return {get_index(f["relator"], "factor relator"), get_index(f["shift"], "factor shift"),
              get_bool(f["invert"], "factor invert")};
    }

    json move_to_json(Move const& m) {
      return std::visit(
          [](auto const& mv) -> json {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, move::AddGeneratorWithRelator>) {
              return {{"move", "AddGeneratorWithRelator"},
                      {"gen", mv.gen.name()},
                      {"relator", word_to_json(mv.relator)}};
            } else if constexpr (std::is_same_v<T, move::SubstituteGenerator>) {
              return {{"move", "SubstituteGenerator"},
                      {"gen", mv.gen.name()},
                      {"replacement", word_to_json(mv.replacement)},
                      {"defining_relator", mv.defining_relator}};
            } else if constexpr (std::is_same_v<T, move::RemoveGeneratorAndRelator>) {
              return {{"move", "RemoveGeneratorAndRelator"},
                      {"gen", mv.gen.name()},
                      {"relator", mv.relator}};
            } else if constexpr (std::is_same_v<T, move::ReplaceRelatorByProduct>) {
              json factors = json::array();
              for (auto const& f : mv.factors) {
                factors.push_back(factor_to_json(f));
              }
              return {{"move", "ReplaceRelatorByProduct"},
                      {"target", mv.target},
                      {"factors", factors}};
            } else if constexpr (std::is_same_v<T, move::CyclicPermute>) {
              return {{"move", "CyclicPermute"}, {"relator", mv.relator}, {"shift", mv.shift}};
            } else {
              return {{"move", "InvertRelator"}, {"relator", mv.relator}};
            }
          },
          m);
    }

    Move move_from_json(json const& j) {
      if (!j.is_object() || !j.contains("move")) {
        bad("transform step must be an object with a 'move' key");
      }
      auto const kind = get_string(j.at("move"), "move kind");
      if (kind == "AddGeneratorWithRelator") {
        Fields f(j, kind, {"move", "gen", "relator"});
        return move::AddGeneratorWithRelator{get_generator(f["gen"], kind + " gen"),
                                             word_from_json(f["relator"], kind + " relator")};
      }
      if (kind == "SubstituteGenerator") {
        Fields f(j, kind, {"move", "gen", "replacement", "defining_relator"});
        return move::SubstituteGenerator{get_generator(f["gen"], kind + " gen"),
                                         word_from_json(f["replacement"], kind + " replacement"),
                                         get_index(f["defining_relator"], kind + " defining_relator")};
      }
      if (kind == "RemoveGeneratorAndRelator") {
        Fields f(j, kind, {"move", "gen", "relator"});
        return move::RemoveGeneratorAndRelator{get_generator(f["gen"], kind + " gen"),
                                               get_index(f["relator"], kind + " relator")};
      }
      if (kind == "ReplaceRelatorByProduct") {
        Fields f(j, kind, {"move", "target", "factors"});
        if (!f["factors"].is_array()) {
          bad("factors must be an array");
        }
        std::vector<move::Factor> factors;
        for (auto const& item : f["factors"]) {
          factors.push_back(factor_from_json(item));
        }
        return move::ReplaceRelatorByProduct{get_index(f["target"], kind + " target"),
                                             std::move(factors)};
      }
      if (kind == "CyclicPermute") {
        Fields f(j, kind, {"move", "relator", "shift"});
        return move::CyclicPermute{get_index(f["relator"], kind + " relator"),
                                   get_index(f["shift"], kind + " shift")};
      }
      if (kind == "InvertRelator") {
        Fields f(j, kind, {"move", "relator"});
        return move::InvertRelator{get_index(f["relator"], kind + " relator")};
      }
      bad("unknown move '" + kind + "'");
    }

    json script_json(TransformScript const& s) {
      json steps = json::array();
      for (auto const& m : s.steps) {
        steps.push_back(move_to_json(m));
      }
      return {{"steps", steps}};
    }

    TransformScript script_from_json(json const& j) {
      Fields          f(j, "transform", {"steps"});
      TransformScript out;
      if (!f["steps"].is_array()) {
        bad("transform steps must be an array");
      }
      for (auto const& item : f["steps"]) {
        out.steps.push_back(move_from_json(item));
      }
      return out;
    }

    json to_json(Certificate const& c) {
      json phi_values = json::object();
      for (auto const& [g, v] : c.phi.values) {
        phi_values[g.name()] = bigint_to_json(v);
      }
      json flipped = json::array();
      for (auto const& g : c.phi.flipped) {
        flipped.push_back(g.name());
      }

      json concat = nullptr;
      if (c.concat) {
        json steps = json::array();
        for (auto const& s : c.concat->steps) {
          json counts = nullptr;
          if (s.counts) {
            counts = {{"neg", s.counts->neg_count}, {"pos", s.counts->pos_count}};
          }
          steps.push_back({{"relator", s.relator},
                           {"witness", s.witness.name()},
                           {"multiset", generators_to_json(s.multiset)},
                           {"counts", counts}});
        }
        concat = {{"steps", steps}};
      }

      json genho = nullptr;
      if (c.genho) {
        auto const& g = *c.genho;
        genho = {{"relator", g.relator},
                 {"a", g.a.name()},
                 {"c", g.c.name()},
                 {"m", g.m},
                 {"position", g.position},
                 {"case", g.which == RelativeMinimumCase::NegativeLetter ? "negative" : "positive"}};
      }

      json graph = nullptr;
      if (c.graph) {
        auto const& g           = *c.graph;
        json        assignments = json::array();
        for (auto const& a : g.assignments) {
          json cycle = json::array();
          for (auto const& arc : a.cycle) {
            cycle.push_back({{"edge", arc.edge}, {"forward", arc.forward}});
          }
          assignments.push_back({{"component", a.component},
                                 {"label", a.label.name()},
                                 {"base_edge", a.base_edge},
                                 {"cycle", cycle}});
        }
        graph = {{"side", std::string(1, g.side)},
                 {"cyclomatic", g.cyclomatic},
                 {"removed_edge", g.removed_edge ? json(*g.removed_edge) : json(nullptr)},
                 {"assignments", assignments},
                 {"readings", g.readings}};
      }

      return {{"version", c.version},
              {"method", std::string(method_name(c.method))},
              {"subject", {{"kind", c.subject.kind}, {"text", c.subject.text}}},
              {"phi", {{"values", phi_values}, {"flipped", flipped}}},
              {"mirrored", c.mirrored},
              {"distinguished_relator",
               c.distinguished_relator ? json(*c.distinguished_relator) : json(nullptr)},
              {"concat", concat},
              {"transform", c.transform ? script_json(*c.transform) : json(nullptr)},
              {"genho", genho},
              {"graph", graph},
              {"inner", c.inner ? to_json(*c.inner) : json(nullptr)}};
    }

    Certificate from_json(json const& j) {
      if (j.is_object() && j.contains("version")) {
        auto const& v = j.at("version");
        if (!v.is_number_integer() || v.get<long long>() != kCertificateVersion) {
          throw CertificateVersionError("unsupported certificate version " + v.dump());
        }
      }
      Fields f(j,
               "certificate",
               {"version", "method", "subject", "phi", "mirrored", "distinguished_relator",
                "concat", "transform", "genho", "graph", "inner"});
      Certificate c;
      c.version = kCertificateVersion;

      auto method = parse_method(get_string(f["method"], "method"));
      if (!method) {
        bad("unknown method");
      }
      c.method = *method;

      Fields subject(f["subject"], "subject", {"kind", "text"});
      c.subject.kind = get_string(subject["kind"], "subject kind");
      c.subject.text = get_string(subject["text"], "subject text");
      if (c.subject.kind != "presentation" && c.subject.kind != "lot" && c.subject.kind != "adian") {
        bad("unknown subject kind");
      }

      Fields phi(f["phi"], "phi", {"values", "flipped"});
      if (!phi["values"].is_object()) {
        bad("phi values must be an object");
      }
      for (auto const& [name, v] : phi["values"].items()) {
        if (!is_valid_generator_name(name)) {
          bad("phi names an invalid generator");
        }
        c.phi.values.emplace(Generator(name), bigint_from_json(v, "phi value"));
      }
      for (auto const& g : generators_from_json(phi["flipped"], "phi flipped")) {
        if (!c.phi.flipped.insert(g).second) {
          bad("phi flipped repeats a generator");
        }
      }

      c.mirrored = get_bool(f["mirrored"], "mirrored");
      if (!f["distinguished_relator"].is_null()) {
        c.distinguished_relator = get_index(f["distinguished_relator"], "distinguished_relator");
      }

      if (!f["concat"].is_null()) {
        Fields      concat(f["concat"], "concat", {"steps"});
        ConcatOrder order;
        if (!concat["steps"].is_array()) {
          bad("concat steps must be an array");
        }
        for (auto const& item : concat["steps"]) {
          Fields     s(item, "concat step", {"relator", "witness", "multiset", "counts"});
          ConcatStep step{get_index(s["relator"], "step relator"),
                          get_generator(s["witness"], "step witness"),
                          generators_from_json(s["multiset"], "step multiset"),
                          std::nullopt};
          if (!s["counts"].is_null()) {
            Fields counts(s["counts"], "step counts", {"neg", "pos"});
            step.counts = CountSignature{get_index(counts["neg"], "neg count"),
                                         get_index(counts["pos"], "pos count")};
          }
          order.steps.push_back(std::move(step));
        }
        c.concat = std::move(order);
      }

      if (!f["transform"].is_null()) {
        c.transform = script_from_json(f["transform"]);
      }

      if (!f["genho"].is_null()) {
        Fields g(f["genho"], "genho", {"relator", "a", "c", "m", "position", "case"});
        auto   which = get_string(g["case"], "genho case");
        if (which != "negative" && which != "positive") {
          bad("genho case must be 'negative' or 'positive'");
        }
        c.genho = GenhoWitness{get_index(g["relator"], "genho relator"),
                               get_generator(g["a"], "genho a"),
                               get_generator(g["c"], "genho c"),
                               get_index(g["m"], "genho m"),
                               get_index(g["position"], "genho position"),
                               which == "negative" ? RelativeMinimumCase::NegativeLetter
                                                   : RelativeMinimumCase::PositiveLetter};
      }

      if (!f["graph"].is_null()) {
        Fields       g(f["graph"], "graph", {"side", "cyclomatic", "removed_edge", "assignments", "readings"});
        GraphWitness gw;
        auto         side = get_string(g["side"], "graph side");
        if (side != "T" && side != "I") {
          bad("graph side must be 'T' or 'I'");
        }
        gw.side       = side[0];
        gw.cyclomatic = get_index(g["cyclomatic"], "graph cyclomatic");
        if (!g["removed_edge"].is_null()) {
          gw.removed_edge = get_index(g["removed_edge"], "removed_edge");
        }
        if (!g["assignments"].is_array() || !g["readings"].is_array()) {
          bad("graph assignments and readings must be arrays");
        }
        for (auto const& item : g["assignments"]) {
          Fields          a(item, "assignment", {"component", "label", "base_edge", "cycle"});
          CycleAssignment ca{get_index(a["component"], "assignment component"),
                             get_generator(a["label"], "assignment label"),
                             get_index(a["base_edge"], "assignment base_edge"),
                             {}};
          if (!a["cycle"].is_array()) {
            bad("assignment cycle must be an array");
          }
          for (auto const& arc : a["cycle"]) {
            Fields af(arc, "cycle arc", {"edge", "forward"});
            ca.cycle.push_back({get_index(af["edge"], "arc edge"), get_bool(af["forward"], "arc forward")});
          }
          gw.assignments.push_back(std::move(ca));
        }
        for (auto const& r : g["readings"]) {
          gw.readings.push_back(get_string(r, "reading"));
        }
        c.graph = std::move(gw);
      }

      if (!f["inner"].is_null()) {
        c.inner = from_json(f["inner"]);
      }
      return c;
    }

  }  // namespace

  std::string_view method_name(Method m) {
    return kMethodNames.at(static_cast<std::size_t>(m));
  }

  std::optional<Method> parse_method(std::string_view name) {
    for (std::size_t i = 0; i < kMethodNames.size(); ++i) {
      if (kMethodNames[i] == name) {
        return static_cast<Method>(i);
      }
    }
    return std::nullopt;
  }

  bool Certificate::operator==(Certificate const& o) const {
    return version == o.version && method == o.method && subject == o.subject && phi == o.phi
           && mirrored == o.mirrored && distinguished_relator == o.distinguished_relator
           && concat == o.concat && transform == o.transform && genho == o.genho
           && graph == o.graph && inner == o.inner;
  }

  std::string certificate_to_json(Certificate const& cert, int indent) {
    return to_json(cert).dump(indent);
  }

  Certificate parse_certificate(std::string_view text) {
    json j;
    try {
      j = json::parse(text);
    } catch (json::parse_error const& e) {
      throw CertificateSyntaxError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
      return from_json(j);
    } catch (json::exception const& e) {
      throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
    } catch (DomainError const& e) {
      throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
    }
  }

  std::string script_to_json(TransformScript const& script, int indent) {
    return script_json(script).dump(indent);
  }

}  // namespace locind
