#include "doctest.h"
#include "test_util.hpp"

#include "locind/cli.hpp"
#include "locind/decide.hpp"
#include "locind/fuzz.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace locind;
using namespace testutil;

namespace {

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::filesystem::path scratch_dir(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / ("locind_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
  }

  std::string slurp(std::filesystem::path const& p) {
    std::ifstream      in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::vector<std::string> const kExamples{"main_example.pres", "pesos_example.pres", "genho_example.pres",
                                           "weak_example.pres", "first_lot.lot",      "last_lot.lot",
                                           "adian_example.adian", "adian_weighted.adian"};

}  // namespace

TEST_SUITE("decide") {
  TEST_CASE("cascade verdicts") {
    std::vector<std::string> w;
    auto first = decide(parse_subject(read_data("first_lot.lot"), InputFormat::Lot, w));
    REQUIRE(first.certificate);
    CHECK(first.certificate->method == Method::Ciclos);
    auto last = decide(parse_subject(read_data("last_lot.lot"), InputFormat::Lot, w));
    REQUIRE(last.certificate);
    CHECK(last.certificate->method == Method::Ciclosetiq);
    auto pesos = decide(Subject(pres("pesos_example.pres")));
    REQUIRE(pesos.certificate);
    CHECK(pesos.certificate->method == Method::Pesos);
    auto torsion = decide(Subject(pres("torsion.pres")));
    CHECK_FALSE(torsion.locally_indicable());
    CHECK_FALSE(torsion.outcomes.empty());
    for (auto const& o : torsion.outcomes) {
      CHECK_FALSE(o.reason.empty());
    }
  }

  TEST_CASE("minima-only cascade") {
    SearchConfig cfg;
    cfg.use_maxima = false;
    auto genho     = decide(Subject(pres("genho_example.pres")), cfg);
    REQUIRE(genho.certificate);
    CHECK(genho.certificate->method == Method::Genho);
    auto weak = decide(Subject(pres("weak_example.pres")), cfg);
    REQUIRE(weak.certificate);
    CHECK(verify_certificate(Subject(pres("weak_example.pres")), *weak.certificate));
  }

  TEST_CASE("all methods") {
    SearchConfig cfg;
    cfg.all_methods = true;
    auto r          = decide(Subject(pres("main_example.pres")), cfg);
    REQUIRE(r.certificate);
    CHECK(r.certificate->method == Method::Main);
    CHECK(std::find(r.also_applicable.begin(), r.also_applicable.end(), Method::Pesos) != r.also_applicable.end());
  }

  TEST_CASE("reports") {
    auto r = decide(Subject(pres("main_example.pres")));
    CHECK(report_to_text(r).find("Main") != std::string::npos);
    CHECK(report_to_json(r).find("\"LocallyIndicable\"") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("check exit codes") {
    auto first = cli({"check", data_path("first_lot.lot")});
    CHECK(first.code == kExitCertified);
    CHECK(first.out.find("Ciclos") != std::string::npos);
    CHECK(cli({"check", data_path("torsion.pres")}).code == kExitInconclusive);
    CHECK(cli({"check", "/nonexistent/file.pres"}).code == kExitInputError);
    CHECK(cli({"frobnicate"}).code == kExitInputError);

    auto genho = cli({"check", data_path("genho_example.pres"), "--minima-only"});
    CHECK(genho.code == kExitCertified);
    CHECK(genho.out.find("locally indicable (Genho)") != std::string::npos);
    CHECK(genho.out.find("Main        declined") != std::string::npos);
    CHECK(genho.out.find("Pesos       declined") != std::string::npos);
  }

  TEST_CASE("emit then verify") {
    auto dir = scratch_dir("verify");
    for (auto const& name : kExamples) {
      auto cert = (dir / (name + ".json")).string();
      CHECK(cli({"check", data_path(name), "--emit-cert", cert}).code == kExitCertified);
      CHECK(cli({"verify", data_path(name), cert}).code == kExitCertified);
    }
    auto main_cert = (dir / "main_example.pres.json").string();
    CHECK(cli({"verify", data_path("pesos_example.pres"), main_cert}).code == kExitVerifyFailed);

    auto text = slurp(main_cert);
    std::ofstream(dir / "truncated.json") << text.substr(0, text.size() / 3);
    CHECK(cli({"verify", data_path("main_example.pres"), (dir / "truncated.json").string()}).code == kExitInputError);
  }

  TEST_CASE("graphs") {
    auto dot = cli({"graphs", data_path("last_lot.lot"), "--out", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    Lot  single{gens({"a", "b"}), {{G("a"), G("b"), G("a")}}};
    auto dir  = scratch_dir("graphs");
    std::ofstream(dir / "single.lot") << serialize(single);
    auto text = cli({"graphs", (dir / "single.lot").string()});
    CHECK(text.out.find("arc 0: a -> a [b]") != std::string::npos);
    CHECK(text.out.find("arc 0: a -> b [a]") != std::string::npos);
    auto adian = cli({"graphs", data_path("adian_example.adian")});
    CHECK(adian.code == 0);
    CHECK(adian.out.find("graph T") != std::string::npos);
  }

  TEST_CASE("cover") {
    auto alpha = cli({"cover", data_path("main_example.pres"), "--alpha", "10"});
    CHECK(alpha.code == 0);
    CHECK(alpha.out.find("non-decreasing: yes") != std::string::npos);
    CHECK(alpha.out.find("bound satisfied: yes") != std::string::npos);
    CHECK(cli({"cover", data_path("pesos_example.pres"), "--phi", "a=1,b=1,c=1"}).code == kExitInputError);
    auto dir = scratch_dir("cover");
    std::ofstream(dir / "forest.lot") << "verts: a b c\na c b\nb a c\n";
    auto red = cli({"cover", (dir / "forest.lot").string(), "--range", "0", "8", "--reduce"});
    CHECK(red.code == 0);
    CHECK(red.out.find("\"two_cells\": 0") != std::string::npos);
    CHECK(red.out.find("replay: ok") != std::string::npos);
  }

  TEST_CASE("fuzz") {
    auto a = cli({"fuzz", "--vertices", "5", "--count", "20", "--seed", "9"});
    auto b = cli({"fuzz", "--vertices", "5", "--count", "20", "--seed", "9"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("hash,kind,verdict,method,millis\n", 0) == 0);

    auto small = run_fuzz(FuzzOptions{3, 40, 4, InputFormat::Lot, false, 2, {}});
    for (auto const& row : small) {
      CHECK(row.verdict == "LocallyIndicable");
      CHECK(row.verified);
    }
    CHECK(cli({"fuzz", "--vertices", "2"}).code == kExitInputError);
    CHECK(cli({"fuzz", "--kind", "adian", "--vertices", "3", "--count", "5"}).code != kExitInputError);
  }
}
