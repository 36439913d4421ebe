#pragma once

// The decision cascade over all checkers and certificate verification for
// any subject kind.

#include "locind/certificate.hpp"
#include "locind/criteria.hpp"
#include "locind/presentation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace locind {

  using Subject = std::variant<Presentation, Lot, AdianPresentation>;

  enum class InputFormat { Pres, Lot, Adian };

  // By extension: .lot, .adian, anything else is a presentation.
  InputFormat format_from_path(std::string const& path);
  std::optional<InputFormat> parse_format(std::string_view name);

  Subject parse_subject(std::string_view text, InputFormat format, std::vector<std::string>& warnings);

  // The presentation the word criteria read.
  Presentation subject_presentation(Subject const& subject);
  std::string  subject_kind(Subject const& subject);

  struct MethodOutcome {
    Method      method;
    bool        certified = false;
    std::string reason;  // empty when certified
    double      millis = 0;
  };

  struct CheckReport {
    std::optional<Certificate> certificate;  // verified
    std::vector<MethodOutcome> outcomes;     // in cascade order, as run
    std::vector<Method>        also_applicable;  // with all_methods
    std::vector<std::string>   warnings;
    std::vector<std::string>   notes;

    bool locally_indicable() const {
      return certificate.has_value();
    }
  };

  // One-relator; Ciclos or Adian (LOT / Adian input); Main; Pesos; Genho;
  // Ciclosetiq (LOT); Weak. The first certificate that verifies wins.
  CheckReport decide(Subject const& subject, SearchConfig const& cfg = {});

  // Presentation-kind certificates are checked against the subject's
  // presentation; LOT and Adian kinds against the subject itself.
  Verification verify_certificate(Subject const& subject, Certificate const& cert);

  std::string report_to_text(CheckReport const& report, bool timings = false);
  std::string report_to_json(CheckReport const& report, bool timings = false);

}  // namespace locind
