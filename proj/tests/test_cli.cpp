#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = momlab::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Splits one CSV row, honouring double-quoted fields.
std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

TEST_CASE("arith-factor record") {
  const auto o = run({"--format", "json", "arith-factor", "--k", "1", "--beta", "2", "--prime-cutoff", "100000"});
  REQUIRE(o.code == 0);
  const auto doc = json::parse(o.out);
  CHECK(doc["metadata"]["schema"] == momlab::cli::kSchema);
  CHECK(doc["metadata"]["config"]["prime_cutoff"] == 100000);
  const auto& rec = doc["records"].at(0);
  CHECK(rec["value"].get<double>() == doctest::Approx(0.607927).epsilon(1e-5));
  CHECK(rec["extra"].contains("tail_bound"));
  CHECK(rec["extra"]["tail_bound"].get<double>() <= 1e-4);
}

TEST_CASE("rmt-mom record") {
  const auto o = run({"--format", "json", "rmt-mom", "--group", "unitary", "--k", "1", "--beta", "1", "--N", "20",
                      "--samples", "10000", "--seed", "7"});
  REQUIRE(o.code == 0);
  const auto rec = json::parse(o.out)["records"].at(0);
  CHECK(std::abs(rec["value"].get<double>() - 21.0) < 3.0 * rec["uncertainty"].get<double>());
  CHECK(rec["seed"] == 7);
  CHECK(rec["method"] == "monte-carlo");
}

TEST_CASE("csv output re-parses under the schema") {
  const auto o = run({"rmt-mom", "--exact", "--group", "orthogonal", "--N-grid", "2,4,8"});
  REQUIRE(o.code == 0);
  const auto ls = lines(o.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0].rfind("# ", 0) == 0);
  const auto meta = json::parse(ls[0].substr(2));
  CHECK(meta["schema"] == momlab::cli::kSchema);
  CHECK(meta["version"] == momlab::cli::kVersion);
  CHECK(ls[1] == "command,k,beta,scale,value,uncertainty,method,seed,extra");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto f = split_csv(ls[i]);
    REQUIRE(f.size() == 9);
    CHECK(f[0] == "rmt-mom");
    const double N = std::stod(f[3]);
    CHECK(std::stod(f[4]) == doctest::Approx(2.0 * (N + 1.0)).epsilon(1e-10));
    CHECK(f[6] == "heine-determinant");
    CHECK(json::parse(f[8])["group"] == "orthogonal");
  }
}

TEST_CASE("identical argv gives identical data rows") {
  const std::vector<std::string> args{"zeta-mom", "--k", "2", "--T", "300", "--samples", "100", "--seed", "4"};
  const auto a = lines(run(args).out);
  const auto b = lines(run(args).out);
  REQUIRE(a.size() == 3);
  CHECK(std::vector<std::string>(a.begin() + 1, a.end()) == std::vector<std::string>(b.begin() + 1, b.end()));
}

TEST_CASE("fit-exponent") {
  const auto o =
      run({"--format", "json", "fit-exponent", "--k", "2", "--scales", "10,20,40", "--values", "1000,8000,64000"});
  REQUIRE(o.code == 0);
  const auto rec = json::parse(o.out)["records"].at(0);
  CHECK(rec["value"].get<double>() == doctest::Approx(3.0));
  CHECK(rec["extra"]["expected_exponent"] == 3);
}

TEST_CASE("compare table") {
  const auto o = run({"--format", "json", "compare", "--k", "1", "--beta", "1", "--T-grid", "1e3,3e3,1e4",
                      "--samples", "100"});
  REQUIRE(o.code == 0);
  const auto recs = json::parse(o.out)["records"];
  REQUIRE(recs.size() == 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(recs[i]["extra"].contains("predictor"));
    CHECK(recs[i]["extra"].contains("leading_prediction"));
    CHECK(recs[i]["value"].get<double>() > 0.0);
  }
  CHECK(recs[3]["method"] == "fit:empirical");
  CHECK(recs[4]["method"] == "fit:predictor");
  CHECK(recs[5]["method"] == "fit:leading_prediction");
  CHECK(recs[5]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("output file") {
  const std::string path = "test_cli_out.csv";
  const auto o = run({"--out", path, "gamma-coeff", "--k", "1", "--beta", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto ls = lines(buf.str());
  REQUIRE(ls.size() == 3);
  CHECK(std::stod(split_csv(ls[2])[4]) == doctest::Approx(1.0 / 12.0).epsilon(1e-8));
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{{},
                                                                {"bogus"},
                                                                {"arith-factor", "--k", "9"},
                                                                {"fit-exponent", "--scales", "1,2,3"},
                                                                {"rmt-mom", "--group", "klein"},
                                                                {"--format", "xml", "gamma-coeff"},
                                                                {"zeta-mom", "--T", "10", "--T-grid", "1,2"}}) {
    const auto o = run(args);
    CHECK(o.code == 2);
    CHECK(o.err.find("Usage") != std::string::npos);
  }
}

TEST_CASE("computational errors exit with 1 and a structured cause") {
  const auto o = run({"cfkrs-predict", "--x", "0.5"});
  CHECK(o.code == 1);
  const auto e = json::parse(o.err);
  CHECK(e["error"]["type"] == "DomainError");
  CHECK(e["error"]["command"] == "cfkrs-predict");
  CHECK(run({"rmt-mom", "--N", "600", "--samples", "10"}).code == 1);
}

TEST_CASE("help exits with 0") {
  const auto o = run({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("zeta-mom") != std::string::npos);
}
