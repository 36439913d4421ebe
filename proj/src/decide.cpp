#include "locind/decide.hpp"

#include "locind/graphs.hpp"

#include "json.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

namespace locind {

  namespace {

    bool ends_with(std::string const& s, std::string_view suffix) {
      return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    }

    struct Stage {
      Method                        method;
      std::function<CheckResult()> run;
    };

  }  // namespace

  InputFormat format_from_path(std::string const& path) {
    if (ends_with(path, ".lot")) {
      return InputFormat::Lot;
    }
    if (ends_with(path, ".adian")) {
      return InputFormat::Adian;
    }
    return InputFormat::Pres;
  }

  std::optional<InputFormat> parse_format(std::string_view name) {
    if (name == "pres") {
      return InputFormat::Pres;
    }
    if (name == "lot") {
      return InputFormat::Lot;
    }
    if (name == "adian") {
      return InputFormat::Adian;
    }
    return std::nullopt;
  }

  Subject parse_subject(std::string_view text, InputFormat format, std::vector<std::string>& warnings) {
    switch (format) {
      case InputFormat::Lot: {
        auto lot = parse_lot(text);
        lot_to_presentation(lot, warnings);
        return lot;
      }
      case InputFormat::Adian: {
        auto ap = parse_adian(text);
        adian_to_presentation(ap, warnings);
        return ap;
      }
      case InputFormat::Pres:
        break;
    }
    return parse_presentation(text, warnings);
  }

  Presentation subject_presentation(Subject const& subject) {
    return std::visit(
        [](auto const& s) -> Presentation {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Presentation>) {
            return s;
          } else if constexpr (std::is_same_v<T, Lot>) {
            return lot_to_presentation(s);
          } else {
            return adian_to_presentation(s);
          }
        },
        subject);
  }

  std::string subject_kind(Subject const& subject) {
    switch (subject.index()) {
      case 1:
        return "lot";
      case 2:
        return "adian";
      default:
        return "presentation";
    }
  }

  Verification verify_certificate(Subject const& subject, Certificate const& cert) {
    if (cert.subject.kind == "presentation") {
      return verify_presentation_certificate(subject_presentation(subject), cert);
    }
    if (cert.subject.kind == "lot" && std::holds_alternative<Lot>(subject)) {
      return verify_lot_certificate(std::get<Lot>(subject), cert);
    }
    if (cert.subject.kind == "adian" && std::holds_alternative<AdianPresentation>(subject)) {
      return verify_adian_certificate(std::get<AdianPresentation>(subject), cert);
    }
    return {false, "certificate subject kind '" + cert.subject.kind + "' does not fit a " + subject_kind(subject)
                       + " input"};
  }

  CheckReport decide(Subject const& subject, SearchConfig const& cfg) {
    CheckReport report;
    auto const  p = subject_presentation(subject);

    std::vector<Stage> stages;
    stages.push_back({Method::OneRelator, [&] { return check_one_relator(p); }});
    if (auto const* lot = std::get_if<Lot>(&subject)) {
      stages.push_back({Method::Ciclos, [&cfg, lot] { return check_ciclos(*lot, cfg); }});
    }
    if (auto const* ap = std::get_if<AdianPresentation>(&subject)) {
      stages.push_back({Method::Adian, [&cfg, ap] { return check_adian(*ap, cfg); }});
    }
    stages.push_back({Method::Main, [&] { return check_main(p, cfg); }});
    stages.push_back({Method::Pesos, [&] { return check_pesos(p, std::nullopt, cfg); }});
    stages.push_back({Method::Genho, [&] { return check_genho(p, cfg); }});
    if (auto const* lot = std::get_if<Lot>(&subject)) {
      stages.push_back({Method::Ciclosetiq, [&cfg, lot] { return check_ciclosetiq(*lot, cfg); }});
    }
    stages.push_back({Method::Weak, [&] { return check_weak(p, std::nullopt, cfg); }});

    for (auto const& stage : stages) {
      if (report.certificate && !cfg.all_methods) {
        break;
      }
      MethodOutcome outcome{stage.method, false, {}, 0};
      auto const    t0 = std::chrono::steady_clock::now();
      CheckResult   result;
      try {
        result = stage.run();
      } catch (CapExceeded const& e) {
        result.reason = e.what();
        report.notes.push_back(std::string(method_name(stage.method)) + ": " + e.what());
      }
      outcome.millis =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto const& n : result.notes) {
        report.notes.push_back(std::string(method_name(stage.method)) + ": " + n);
      }
      if (result.certificate) {
        auto v = verify_certificate(subject, *result.certificate);
        if (!v) {
          result.reason = "certificate failed verification: " + v.reason;
          report.warnings.push_back(std::string(method_name(stage.method)) + " produced a certificate that does not verify");
          result.certificate.reset();
        }
      }
      if (result.certificate) {
        outcome.certified = true;
        if (report.certificate) {
          report.also_applicable.push_back(stage.method);
        } else {
          report.certificate = std::move(result.certificate);
        }
      } else {
        outcome.reason = result.reason;
      }
      report.outcomes.push_back(std::move(outcome));
    }
    return report;
  }

  std::string report_to_text(CheckReport const& report, bool timings) {
    std::ostringstream out;
    if (report.certificate) {
      out << "verdict: locally indicable (" << method_name(report.certificate->method) << ")\n";
    } else {
      out << "verdict: inconclusive\n";
    }
    for (auto const& o : report.outcomes) {
      out << "  " << std::left << std::setw(12) << method_name(o.method)
          << (o.certified ? "certified" : "declined: " + o.reason);
      if (timings) {
        out << "  [" << std::fixed << std::setprecision(2) << o.millis << " ms]";
      }
      out << "\n";
    }
    if (!report.also_applicable.empty()) {
      out << "also applicable:";
      for (auto m : report.also_applicable) {
        out << ' ' << method_name(m);
      }
      out << "\n";
    }
    for (auto const& w : report.warnings) {
      out << "warning: " << w << "\n";
    }
    for (auto const& n : report.notes) {
      out << "note: " << n << "\n";
    }
    return out.str();
  }

  std::string report_to_json(CheckReport const& report, bool timings) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["verdict"]  = report.certificate ? "LocallyIndicable" : "Inconclusive";
    j["method"]   = report.certificate ? ordered_json(std::string(method_name(report.certificate->method)))
                                       : ordered_json(nullptr);
    j["outcomes"] = ordered_json::array();
    for (auto const& o : report.outcomes) {
      ordered_json e{{"method", std::string(method_name(o.method))},
                     {"certified", o.certified},
                     {"reason", o.reason}};
      if (timings) {
        e["millis"] = o.millis;
      }
      j["outcomes"].push_back(std::move(e));
    }
    j["also_applicable"] = ordered_json::array();
    for (auto m : report.also_applicable) {
      j["also_applicable"].push_back(std::string(method_name(m)));
    }
    j["warnings"]    = report.warnings;
    j["notes"]       = report.notes;
    j["certificate"] = report.certificate ? ordered_json::parse(certificate_to_json(*report.certificate))
                                          : ordered_json(nullptr);
    return j.dump(2);
  }

}  // namespace locind
