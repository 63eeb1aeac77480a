#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "taulab/errors.hpp"
#include "taulab/io_json.hpp"
#include "taulab/rng.hpp"

using namespace taulab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("taulab_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string cli_bin() {
  const char* bin = std::getenv("TAULAB_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr,
                  "TAULAB_CLI_BIN must point at the taulab binary (ctest sets "
                  "it automatically)");
  return bin;
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = "\"" + cli_bin() + "\" " + args + " > " +
                          stdout_file.string() + " 2> " +
                          (stdout_file.string() + ".err");
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
}

}  // namespace

TEST_CASE("measure JSON round-trip is structurally exact") {
  SplitMix64 rng(0x10c0u);
  for (int rep = 0; rep < 20; ++rep) {
    const Measure mu = fixtures::random_measure(rng, -3.0, 2.0);
    const Measure back = io::measure_from_json(io::measure_to_json(mu));
    CHECK(back == mu);
  }
}

TEST_CASE("param_seq JSON round-trip and decimal-string parsing") {
  SplitMix64 rng(0x20c0u);
  for (int rep = 0; rep < 20; ++rep) {
    const ParamSeq a = fixtures::random_param_seq(rng);
    const ParamSeq back = io::param_seq_from_json(io::param_seq_to_json(a));
    CHECK(back == a);
  }

  const json j = {{"prefix", {"0.125", 0.2}},
                  {"tail", {{"kind", "constant"}, {"c", "0.1"}}}};
  const ParamSeq a = io::param_seq_from_json(j);
  CHECK(a.at(0) == 0.125);
  CHECK(a.at(1) == 0.2);
  CHECK(a.at(5) == 0.1);

  CHECK_THROWS_WITH_AS(
      (void)io::param_seq_from_json(json{
          {"prefix", {0.3}}, {"tail", {{"kind", "constant"}, {"c", 0.1}}}}),
      doctest::Contains("index 0"), ValidationError);
  CHECK_THROWS_AS((void)io::parse_real(json("zzz"), "x"), ValidationError);
}

TEST_CASE("measure loader: weight tolerance 1e-9 and schema errors") {
  const json good = {{"atoms", {{{"x", 0.5}, {"w", 1.0 + 5e-10}}}}};
  CHECK_NOTHROW((void)io::measure_from_json(good));
  const json bad = {{"atoms", {{{"x", 0.5}, {"w", 0.9}}}}};
  CHECK_THROWS_AS((void)io::measure_from_json(bad), ValidationError);
  const json missing = {{"atoms", {{{"x", 0.5}}}}};
  CHECK_THROWS_WITH_AS((void)io::measure_from_json(missing),
                       doctest::Contains("atoms[0]"), ValidationError);
}

TEST_CASE("cli charfn: measure rows, determinism, closed-form value") {
  const fs::path dir = test_dir();
  const fs::path lebesgue = dir / "lebesgue.json";
  spit(lebesgue, io::measure_to_json(Measure::uniform(0.0, 1.0)).dump());

  const fs::path out1 = dir / "charfn1.csv";
  const fs::path out2 = dir / "charfn2.csv";
  int rc = run_cli("charfn --input " + lebesgue.string() +
                       " --t-list 0,1 --out " + out1.string(),
                   dir / "charfn1.log");
  CHECK(rc == 0);
  rc = run_cli("charfn --input " + lebesgue.string() + " --t-list 0,1 --out " +
                   out2.string(),
               dir / "charfn2.log");
  CHECK(rc == 0);
  CHECK(slurp(out1) == slurp(out2));  // byte-identical reruns

  std::ifstream csv(out1);
  std::string header, row0, row1;
  std::getline(csv, header);
  std::getline(csv, row0);
  std::getline(csv, row1);
  CHECK(header == "t,re,im");
  CHECK(row0 == "0,1,0");  // exact transform at t = 0
  double t = 0, re = 0, im = 0;
  REQUIRE(std::sscanf(row1.c_str(), "%lf,%lf,%lf", &t, &re, &im) == 3);
  CHECK(t == 1.0);
  CHECK(std::fabs(re) < 1e-12);  // uniform block transform vanishes at t = 1
  CHECK(std::fabs(im) < 1e-12);
}

TEST_CASE("cli charfn: bracket rows for parameter sequences and exit 3") {
  const fs::path dir = test_dir();
  const fs::path seq = dir / "c8.json";
  spit(seq, io::param_seq_to_json(fixtures::constant_seq(0.125)).dump());

  const fs::path out = dir / "charfn_seq.json";
  int rc = run_cli("charfn --input " + seq.string() +
                       " --t-list 0 --format json --out " + out.string(),
                   dir / "charfn_seq.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["kind"] == "charfn_bracket_rows");
  const double lo = std::strtod(
      doc["rows"][0]["lo"].get<std::string>().c_str(), nullptr);
  const double hi = std::strtod(
      doc["rows"][0]["hi"].get<std::string>().c_str(), nullptr);
  CHECK(lo <= 1.0);
  CHECK(1.0 <= hi);

  // deliberately small truncation: enclosure failure contract
  rc = run_cli("charfn --input " + seq.string() +
                   " --t-list 64 --trunc-N 2 --out " + (dir / "x.csv").string(),
               dir / "charfn_fail.log");
  CHECK(rc == 3);
}

TEST_CASE("cli: schema violation exits 2 and names the index") {
  const fs::path dir = test_dir();
  const fs::path bad = dir / "bad_seq.json";
  spit(bad, R"({"prefix":[0.3],"tail":{"kind":"constant","c":0.125}})");
  const int rc = run_cli("charfn --input " + bad.string() + " --t-list 0",
                         dir / "bad.log");
  CHECK(rc == 2);
  const std::string err = slurp(dir / "bad.log.err");
  CHECK(err.find("index 0") != std::string::npos);
}

TEST_CASE("cli metric: constant sequence reproduces 1/24 rows; empty range") {
  const fs::path dir = test_dir();
  const fs::path seq = dir / "c8m.json";
  spit(seq, io::param_seq_to_json(fixtures::constant_seq(0.125)).dump());

  const fs::path out = dir / "metric.json";
  int rc = run_cli("metric --input " + seq.string() +
                       " --m-max 5 --format json --out " + out.string(),
                   dir / "metric.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 6);
  for (const auto& row : doc["rows"]) {
    const double lo =
        std::strtod(row["d2"]["lo"].get<std::string>().c_str(), nullptr);
    const double hi =
        std::strtod(row["d2"]["hi"].get<std::string>().c_str(), nullptr);
    CHECK(lo <= 1.0 / 24.0);
    CHECK(1.0 / 24.0 <= hi);
    // both bound flavors present
    CHECK(row.contains("lower"));
    CHECK(row.contains("displayed_lower"));
  }

  rc = run_cli("metric --input " + seq.string() + " --m-max -1",
               dir / "metric_empty.log");
  CHECK(rc == 2);
}

TEST_CASE("cli separate: witness document and reload round-trip") {
  const fs::path dir = test_dir();
  const fs::path a = dir / "geo.json";
  const fs::path b = dir / "c8s.json";
  spit(a, io::param_seq_to_json(fixtures::geometric_quarter_seq()).dump());
  spit(b, io::param_seq_to_json(fixtures::constant_seq(0.125)).dump());

  const fs::path out = dir / "separate.json";
  const int rc = run_cli("separate --input " + a.string() + " --input-b " +
                             b.string() +
                             " --epsilon 0.1 --m-max 10 --format json --out " +
                             out.string(),
                         dir / "separate.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["witness_status"] == "found");
  CHECK(doc["witness"]["m"] == 1);
  CHECK(doc["witness"]["swapped"] == false);
  // report document reloads through the schema
  const ParamSeq reloaded =
      io::param_seq_from_json(doc["null_report_a"]["param_seq"]);
  CHECK(reloaded == fixtures::geometric_quarter_seq());
  // identical inputs yield none
  const fs::path out2 = dir / "separate_none.json";
  const int rc2 = run_cli("separate --input " + a.string() + " --input-b " +
                              a.string() +
                              " --epsilon 0.1 --format json --out " +
                              out2.string(),
                          dir / "separate_none.log");
  CHECK(rc2 == 0);
  CHECK(json::parse(slurp(out2))["witness_status"] == "none");
}

TEST_CASE("cli validate: stock suite passes; fault fixture exits 4") {
  const fs::path dir = test_dir();
  int rc = run_cli("validate", dir / "validate.log");
  CHECK(rc == 0);
  const std::string log = slurp(dir / "validate.log");
  CHECK(log.find("[ok]") != std::string::npos);
  CHECK(log.find("runtime_ms=") != std::string::npos);

  // exported symbol table passes; corrupting f2 fails the named invariant
  const Measure lambda = Measure::uniform(0.0, 1.0);
  const FawSymbol s = build_faw_symbol(lambda, 0.5);
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  json table = io::faw_symbol_table_to_json(s, grid);
  const fs::path good = dir / "symbol_good.json";
  spit(good, table.dump());
  rc = run_cli("validate --input " + good.string(), dir / "validate_good.log");
  CHECK(rc == 0);

  for (auto& row : table["table"]) row["f2"] = row["f1"];
  const fs::path fault = dir / "symbol_fault.json";
  spit(fault, table.dump());
  rc = run_cli("validate --input " + fault.string(), dir / "validate_bad.log");
  CHECK(rc == 4);
  CHECK(slurp(dir / "validate_bad.log").find("faw_f1_plus_f2") !=
        std::string::npos);
}

TEST_CASE("cli separate: undecided brackets are reported distinctly") {
  const fs::path dir = test_dir();
  const fs::path a = dir / "c8u.json";
  spit(a, io::param_seq_to_json(fixtures::constant_seq(0.125)).dump());
  const double eps = d_a_dyadic_sq(fixtures::constant_seq(0.125), 0, 40)
                         .sqrt()
                         .mid();
  const fs::path out = dir / "undecided.json";
  const int rc = run_cli("separate --input " + a.string() + " --epsilon " +
                             io::format_real(eps) +
                             " --m-max 3 --format json --out " + out.string(),
                         dir / "undecided.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["null_report_a"]["hits"].empty());
  CHECK(doc["null_report_a"]["undecided"].size() == 4);
}

TEST_CASE("cli: TAULAB_SLACK widens brackets") {
  const fs::path dir = test_dir();
  const fs::path seq = dir / "slack_seq.json";
  spit(seq, io::param_seq_to_json(fixtures::constant_seq(0.125)).dump());
  auto width_at = [&](const std::string& env_prefix, const char* name) {
    const fs::path out = dir / name;
    const std::string cmd = env_prefix + "\"" + cli_bin() +
                            "\" charfn --input " + seq.string() +
                            " --t-list 1 --format json --out " + out.string() +
                            " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const json doc = json::parse(slurp(out));
    const double lo = std::strtod(
        doc["rows"][0]["lo"].get<std::string>().c_str(), nullptr);
    const double hi = std::strtod(
        doc["rows"][0]["hi"].get<std::string>().c_str(), nullptr);
    return hi - lo;
  };
  const double base = width_at("", "slack_base.json");
  const double wide = width_at("TAULAB_SLACK=1e-6 ", "slack_wide.json");
  CHECK(wide > 100.0 * base);
}

TEST_CASE("cli symbol: exported table re-validates") {
  const fs::path dir = test_dir();
  const fs::path m = dir / "sym_measure.json";
  SplitMix64 rng(0x51515u);
  const Measure mu = fixtures::random_measure(rng, 0.0, 1.0);
  spit(m, io::measure_to_json(mu).dump());

  const fs::path out = dir / "symbol.json";
  int rc = run_cli("symbol --input " + m.string() +
                       " --q 0.3 --grid-n 64 --format json --out " +
                       out.string(),
                   dir / "symbol.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["kind"] == "faw_symbol_table");
  const io::SymbolTable table = io::symbol_table_from_json(doc);
  CHECK(table.q == 0.3);
  for (const auto& row : table.rows)
    CHECK(std::fabs(row.f1 + row.f2 - 1.0) <= 1e-12);

  // the exported document passes the validate suite
  rc = run_cli("validate --input " + out.string(), dir / "symbol_validate.log");
  CHECK(rc == 0);

  // out-of-range q rejected
  rc = run_cli("symbol --input " + m.string() + " --q 2.0", dir / "symq.log");
  CHECK(rc == 2);
}

TEST_CASE("cli interpolate: endpoint reproduction and convexity") {
  const fs::path dir = test_dir();
  const fs::path m0 = dir / "eta0.json";
  const fs::path m1 = dir / "eta1.json";
  SplitMix64 rng(0xc0ffeeu);
  const Measure eta0 = fixtures::random_measure(rng, 0.0, 1.0);
  const Measure eta1 = fixtures::random_measure(rng, 0.0, 1.0);
  spit(m0, io::measure_to_json(eta0).dump());
  spit(m1, io::measure_to_json(eta1).dump());

  const fs::path out = dir / "interp.json";
  const int rc = run_cli(
      "interpolate --input " + m0.string() + " --input-b " + m1.string() +
          " --w-list 0,0.5,1 --t-list 0.7,2.5 --format json --out " +
          out.string(),
      dir / "interp.log");
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 6);
  for (const auto& row : doc["rows"]) {
    const double w = std::strtod(row["w"].get<std::string>().c_str(), nullptr);
    const double t = std::strtod(row["t"].get<std::string>().c_str(), nullptr);
    const double re =
        std::strtod(row["re"].get<std::string>().c_str(), nullptr);
    const double im =
        std::strtod(row["im"].get<std::string>().c_str(), nullptr);
    const auto expected =
        w * char_fn(eta0, t) + (1.0 - w) * char_fn(eta1, t);
    CHECK(std::abs(expected - std::complex<double>(re, im)) <= 1e-12);
  }
  CHECK(doc.contains("decay_profile_eta1"));
}
