#include "doctest.h"
#include "json.hpp"
#include "qmu/io.hpp"
#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

using namespace qmu;

TEST_CASE("parse dichotomic shorthand") {
  const AnyPovm p = parse_povm(R"({"gamma": 0.1, "c": [0.2, 0.3, -0.4]})");
  const DichotomicPovm d = as_dichotomic(p);
  CHECK(d.gamma() == 0.1);
  CHECK(d.c() == BlochVector(0.2, 0.3, -0.4));
  CHECK(as_discrete(p).size() == 2);
}

TEST_CASE("parse discrete form") {
  const AnyPovm p = parse_povm(
      R"({"outcomes": [1, -1], "effects": [{"alpha": 1, "vec": [0, 0, 1]}, {"alpha": 1, "vec": [0, 0, -1]}]})");
  CHECK(as_dichotomic(p).c() == BlochVector(0, 0, 1));
  const AnyPovm three = parse_povm(
      R"({"outcomes": [0, 1, 2], "effects": [{"alpha": 1, "vec": [0, 0, 1]}, {"alpha": 0.5, "vec": [0, 0, -0.5]},
          {"alpha": 0.5, "vec": [0, 0, -0.5]}]})");
  CHECK(as_discrete(three).size() == 3);
  CHECK_THROWS_AS(as_dichotomic(three), ParseError);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_povm("{"), ParseError);
  CHECK_THROWS_AS(parse_povm("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"gamma": 0.1})"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"gamma": "x", "c": [0, 0, 0]})"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"gamma": 0, "c": [0, 0]})"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"gamma": 0.5, "c": [0.9, 0, 0]})"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"outcomes": [1], "effects": [{"alpha": 1}]})"), ParseError);
  CHECK_THROWS_AS(parse_povm(R"({"outcomes": [1, 2], "effects": [{"alpha": 1, "vec": [0, 0, 0]}]})"), ParseError);
}

TEST_CASE("property: JSON round trip preserves POVMs exactly") {
  SampleRng rng(81);
  for (int i = 0; i < 500; ++i) {
    const DichotomicPovm d = qmu::testing::random_dichotomic(rng);
    const DichotomicPovm back = as_dichotomic(parse_povm(to_json(d)));
    REQUIRE(back.gamma() == d.gamma());
    REQUIRE(back.c() == d.c());

    const DiscretePovm e = qmu::testing::random_discrete(rng, 2 + i % 4);
    const DiscretePovm eb = as_discrete(parse_povm(to_json(e)));
    REQUIRE(eb.size() == e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      REQUIRE(eb.outcome(k) == e.outcome(k));
      REQUIRE(eb.effect(k).alpha() == e.effect(k).alpha());
      REQUIRE(eb.effect(k).vec() == e.effect(k).vec());
    }
  }
}

TEST_CASE("format_real reads back the same double") {
  SampleRng rng(82);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-10, 10) * std::pow(10.0, rng.uniform(-20, 20));
    REQUIRE(std::strtod(format_real(v).c_str(), nullptr) == v);
  }
  CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("csv writer") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.row({1.0, 0.25});
  CHECK(out.str() == "a,b\n1,0.25\n");
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);

  std::ostringstream curve;
  write_branciard_csv(curve, branciard_curve(1.0, 5));
  std::string first;
  std::istringstream lines(curve.str());
  std::getline(lines, first);
  CHECK(first == "theta,phi,eps_a,eps_b,lhs,rhs");
  const std::string text = curve.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.find('\r') == std::string::npos);

  std::ostringstream yo;
  write_yu_oh_csv(yo, yu_oh_curve(1.0, 3));
  CHECK(yo.str().rfind("theta,phi,M2,d_a,d_b,u_c,u_d\n", 0) == 0);

  std::ostringstream region;
  const ErrorPoint pts[] = {ErrorPoint(0.5, 0.25, Measure::noise_eps)};
  write_region_csv(region, 7, 1.0, pts);
  CHECK(region.str() == "seed,theta,measure,e_a,e_b\n7,1,noise,0.5,0.25\n");
}

TEST_CASE("curve endpoints hit the grid ends exactly") {
  const auto b = branciard_curve(0.9, 7);
  CHECK(b.front().phi == 0.0);
  CHECK(b.back().phi == 0.9);
  const auto y = yu_oh_curve(0.9, 7);
  CHECK(y.back().phi == kHalfPi);
  CHECK_THROWS_AS(branciard_curve(0.9, 1), std::invalid_argument);
}

TEST_CASE("report JSON layout") {
  const CounterexampleReport r = run_example("ebar");
  const nlohmann::json j = nlohmann::json::parse(to_json(r));
  CHECK(j["name"].is_string());
  CHECK(j["all_passed"].get<bool>());
  CHECK(j["inputs"].is_array());
  CHECK(j["quantities"].is_object());
  REQUIRE(j["assertions"].size() == r.assertions.size());
  for (const auto& a : j["assertions"]) {
    for (const char* key : {"label", "expected", "actual", "tolerance", "relation", "pass", "paper_ref"}) {
      CAPTURE(key);
      CHECK(a.contains(key));
    }
    const std::string rel = a["relation"];
    CHECK((rel == "eq" || rel == "gt" || rel == "ge" || rel == "le"));
  }
}
