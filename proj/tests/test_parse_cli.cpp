#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "valfield/cli_core.hpp"
#include "valfield/parse.hpp"
#include "valfield/poly.hpp"

using namespace valfield;

TEST_CASE("series literals round-trip bit-exactly") {
  std::vector<std::string> canon = {
      "GF(2)[[t]]: t^-1 + 1 + O(t^4)",
      "GF(3)[[t]]: 2*t^2",
      "GF(2)[[t]]: 0",
      "GF(2)[[t]]: O(t^5)",
      "GF(5)[[t]]: 3*t^-7 + 4 + t^2 + 2*t^19",
      "GF(2)[[t]]: 1",
  };
  for (const auto& s : canon) {
    auto x = parse_series(s);
    CHECK(print_series(x) == s);
    CHECK(parse_series(print_series(x)) == x);
  }

  // normalization sorts exponents
  CHECK(print_series(parse_series("GF(2)[[t]]: 1 + t^-1 + O(t^4)")) ==
        "GF(2)[[t]]: t^-1 + 1 + O(t^4)");
  // bare t means t^1
  CHECK(print_series(parse_series("GF(3)[[t]]: 2*t")) == "GF(3)[[t]]: 2*t^1");
}

TEST_CASE("parse errors carry positions and codes") {
  try {
    parse_series("GF(2)[[t]]: 3*t");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("coefficient out of range") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(parse_series("GF(4)[[t]]: 1"), Error);
  CHECK_THROWS_AS(parse_series("GF(2)[[t]]: t^"), Error);
  CHECK_THROWS_AS(parse_series("GF(2)[[t]]: t + + t"), Error);
}

TEST_CASE("random series round-trip through print and parse") {
  for (std::int64_t p : {2, 3, 5}) {
    SeriesSampler gen(p, 2024);
    for (int i = 0; i < 80; ++i) {
      auto x = gen.series(-15, 15, 24);
      CHECK(parse_series(print_series(x)) == x);
    }
  }
}

TEST_CASE("hahn literals round-trip") {
  std::vector<std::string> canon = {
      "GF(2)[[s^Q; t^(1/p^1)]]: s^(-1/4) + t^(1/2)*s^(-1/5)",
      "GF(2)[[s^Q; t^(1/p^0)]]: 0",
      "GF(3)[[s^Q; t^(1/p^2)]]: 2*t^(1/9)*s^(-1/3) + t^(2)*s^(5/7) + "
      "O(s^(2))",
      "GF(2)[[s^Q; t^(1/p^3)]]: (1 + t^(1/8))*s^(-1/2)",
      "GF(2)[[s^Q; t^(1/p^1)]]: (t^(-1/2) + O(t^(3)))*s^(1/3)",
  };
  for (const auto& s : canon) {
    auto x = parse_hahn(s);
    CHECK(print_hahn(x) == s);
    CHECK(parse_hahn(print_hahn(x)) == x);
  }
  CHECK_THROWS_AS(parse_hahn("GF(2)[[s^Q; t^(1/p^0)]]: t^(1/2)*s^(-1)"),
                  Error);
}

TEST_CASE("polynomial literals") {
  auto wp = parse_poly("wp(X)", 2);
  auto add = wp.as_additive();
  REQUIRE(add.has_value());
  CHECK(add->coeffs()[0] == LaurentSeries::one(2));  // -1 = 1 in F_2
  CHECK(add->coeffs()[1] == LaurentSeries::one(2));

  auto tw = parse_poly("t*X^2", 2);
  CHECK(tw.degree() == 2);
  CHECK(tw.as_additive().has_value());

  auto mixed = parse_poly("X^2 + t*X", 2);
  CHECK(mixed.as_additive().has_value());

  auto cubic = parse_poly("X^3", 2);
  CHECK(!cubic.as_additive().has_value());

  auto sum = parse_poly("(1 + t)*X^2 + X", 3);
  CHECK(sum.degree() == 2);

  auto spec = parse_polygroup("wp(X); t*X^2", 2);
  CHECK(spec.fs.size() == 2);
  CHECK(spec.twist_shape().has_value());
}

TEST_CASE("manifest parsing") {
  auto params = manifest_from_string(
      "p = 2\nn = 1\nm = 1\nJ = 4\nM = 4\nq = 5,11,17,23\n"
      "sprec = exact\nmodification = base\n# comment\n");
  CHECK(params.p == 2);
  CHECK(params.J == 4);
  CHECK(params.q == std::vector<std::vector<std::int64_t>>{{5, 11, 17, 23}});

  auto autoq = manifest_from_string("p = 3\nJ = 2\nM = 2\nq = auto\n");
  CHECK(autoq.q == std::vector<std::vector<std::int64_t>>{{11, 29}});

  auto multi = manifest_from_string(
      "p = 3\nm = 2\nJ = 2\nM = 2\nmodification = mod1\nq = 11,29 | 13,31\n");
  CHECK(multi.q.size() == 2);

  CHECK_THROWS_AS(manifest_from_string("p = 2\nJ = 2\nM = 1\n"), Error);
  CHECK_THROWS_AS(manifest_from_string("bogus_key = 1\n"), Error);
}

TEST_CASE("cli decompose matches the worked example") {
  auto r = run_cli({"decompose", "--prime", "2", "--prec", "32",
                    "GF(2)[[t]]: t^-2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("x_0 = GF(2)[[t]]: t^-1") != std::string::npos);
  CHECK(r.out.find("x_1 = GF(2)[[t]]: t^-1") != std::string::npos);
}

TEST_CASE("cli pd verdict on the twist polygroup") {
  auto r = run_cli({"pd", "--spec", "wp(X); t*X^2", "--samples", "100",
                    "--seed", "7"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("HoldsOnSamples") != std::string::npos);
}

TEST_CASE("cli telescope against a manifest") {
  std::string path = "acceptance_base_manifest.toml";
  {
    std::ofstream f(path);
    f << "p = 2\nJ = 4\nM = 4\nq = 5,11,17,23\n";
  }
  auto r = run_cli({"telescope", "--manifest", path, "--k", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("-1/4") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes partition the outcomes") {
  // usage error
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  // domain error in a literal
  CHECK(run_cli({"decompose", "GF(2)[[t]]: 3*t"}).exit_code == 2);
  // dependent coefficients report a witness with exit 1
  CHECK(run_cli({"independent", "--prime", "3", "--coeffs", "1; 1"})
            .exit_code == 1);
  // undecidable-at-precision
  auto r = run_cli({"approx", "--spec", "t*X^2", "--budget", "64",
                    "GF(2)[[t]]: t^1 + t^3 + O(t^9)"});
  CHECK(r.exit_code == 3);
}

TEST_CASE("fixed seed and inputs give byte-identical output") {
  std::vector<std::string> args = {"pd",     "--wp-twist", "--samples", "50",
                                   "--seed", "9",          "--format",  "json"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"schema\": 1") != std::string::npos);
  CHECK(a.out.find("\"provenance\"") != std::string::npos);
}
