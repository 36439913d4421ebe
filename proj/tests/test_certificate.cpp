#include "doctest.h"
#include "test_util.hpp"

#include "locind/certificate.hpp"
#include "locind/criteria.hpp"
#include "locind/graphs.hpp"

#include "json.hpp"

using namespace locind;
using namespace testutil;

TEST_SUITE("certificate") {
  TEST_CASE("method names") {
    for (auto m : {Method::OneRelator, Method::Main, Method::Pesos, Method::Genho, Method::Weak, Method::Ciclos,
                   Method::Adian, Method::Ciclosetiq}) {
      CHECK(parse_method(method_name(m)) == m);
    }
    CHECK_FALSE(parse_method("Nope").has_value());
  }

  TEST_CASE("JSON round trips") {
    std::vector<Certificate> certs{*check_main(pres("main_example.pres")).certificate,
                                   *check_pesos(pres("pesos_example.pres"), std::nullopt).certificate,
                                   *check_ciclos(lot("first_lot.lot")).certificate,
                                   *check_ciclosetiq(lot("last_lot.lot")).certificate};
    SearchConfig cfg;
    cfg.use_maxima = false;
    certs.push_back(*check_genho(pres("genho_example.pres"), cfg).certificate);
    for (auto const& c : certs) {
      auto text = certificate_to_json(c);
      CHECK(parse_certificate(text) == c);
      CHECK(certificate_to_json(parse_certificate(text)) == text);
    }
  }

  TEST_CASE("error classes") {
    auto text = certificate_to_json(*check_main(pres("main_example.pres")).certificate);
    CHECK_THROWS_AS(parse_certificate(text.substr(0, text.size() / 2)), CertificateSyntaxError);

    auto j       = nlohmann::json::parse(text);
    j["version"] = 2;
    CHECK_THROWS_AS(parse_certificate(j.dump()), CertificateVersionError);

    j            = nlohmann::json::parse(text);
    j["method"]  = "Unknown";
    CHECK_THROWS_AS(parse_certificate(j.dump()), CertificateFormatError);

    j = nlohmann::json::parse(text);
    j.erase("phi");
    CHECK_THROWS_AS(parse_certificate(j.dump()), CertificateFormatError);

    j          = nlohmann::json::parse(text);
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_certificate(j.dump()), CertificateFormatError);
  }
}
