#include "doctest.h"

#include <cfloat>
#include <cmath>
#include <cstring>
#include <sstream>

#include "grand/io.hpp"
#include "support.hpp"

using namespace grand;
using namespace grand::io;

namespace {

SampledFunction parse(const std::string& text, FunctionFormat fmt = FunctionFormat::csv) {
  std::istringstream in(text);
  return parse_function(in, fmt);
}

std::string error_of(const std::string& text, FunctionFormat fmt = FunctionFormat::csv) {
  try {
    parse(text, fmt);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("csv parsing") {
  const SampledFunction f = parse("0,0.5,1\n1,0.5,2");
  CHECK(testing_support::as_vec(f) == std::vector<double>{1.0, 2.0});
  CHECK(testing_support::weights_of(f.space()) == std::vector<double>{0.5, 0.5});

  const SampledFunction shuffled = parse("index,weight,value\n\n 2 , 1, -3\n0,1,5\r\n1,1,4\n");
  CHECK(testing_support::as_vec(shuffled) == std::vector<double>{5.0, 4.0, -3.0});
  CHECK(shuffled.space().ids()[2] == 2);
}

TEST_CASE("jsonl parsing") {
  const SampledFunction f = parse("{\"i\":1,\"w\":0.5,\"v\":2}\n{\"i\":0,\"w\":0.5,\"v\":1}\n",
                                  FunctionFormat::jsonl);
  CHECK(testing_support::as_vec(f) == std::vector<double>{1.0, 2.0});
  CHECK(error_of("{\"i\":0,\"w\":1}", FunctionFormat::jsonl).find("missing key 'v'") !=
        std::string::npos);
  CHECK(error_of("{\"i\":0,\"w\":1,\"v\":1,\"x\":2}", FunctionFormat::jsonl).find("unknown key") !=
        std::string::npos);
  CHECK(error_of("{\"i\":0.5,\"w\":1,\"v\":1}", FunctionFormat::jsonl).find("integer") !=
        std::string::npos);
  CHECK(error_of("{\"i\":0,\"w\":1,\"v\":1}\n[1,2]", FunctionFormat::jsonl).find("line 2") !=
        std::string::npos);
}

TEST_CASE("input errors") {
  CHECK(error_of("") == "no rows");
  CHECK(error_of("\n\n") == "no rows");
  const std::string zero = error_of("0,1,1\n1,0,2\n");
  CHECK(zero.find("line 2") != std::string::npos);
  CHECK(zero.find("non-positive weight") != std::string::npos);
  CHECK(zero.find("index 1") != std::string::npos);
  CHECK(error_of("0,-1,1").find("non-positive weight") != std::string::npos);
  const std::string dup = error_of("0,1,1\n3,1,1\n0,1,2\n");
  CHECK(dup.find("duplicate index 0") != std::string::npos);
  CHECK(dup.find("line 3") != std::string::npos);
  CHECK(error_of("0,1\n").find("expected 3 fields") != std::string::npos);
  CHECK(error_of("0,1,abc\n").find("cannot parse value") != std::string::npos);
  CHECK(error_of("0,1,1\n1,1,nan\n").find("line 2") != std::string::npos);
  CHECK_THROWS_AS(load_function("/nonexistent/file.csv", FunctionFormat::csv), InputError);
  CHECK_THROWS_AS(parse_format("xml"), InputError);
}

TEST_CASE("round trip is bit-exact") {
  testing_support::Gen gen(77);
  for (FunctionFormat fmt : {FunctionFormat::csv, FunctionFormat::jsonl}) {
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = gen.index(1, 30);
      std::vector<std::int64_t> ids(n);
      for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i * 3) - 7;
      std::vector<double> w = gen.weights(n);
      std::vector<double> v = gen.values(n, -1e6, 1e6);
      w[0] = DBL_MIN;
      v[0] = -0.0;
      if (n > 1) {
        v[1] = 1.0 / 3.0;
        w[1] = 1e300;
      }
      if (n > 2) v[2] = 4.9e-324;
      const SampledFunction f(share(MeasureSpace(ids, w)), v);
      std::ostringstream out;
      write_function(out, f, fmt);
      std::istringstream in(out.str());
      const SampledFunction g = parse_function(in, fmt);
      REQUIRE(g.size() == n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(g.space().ids()[i] == ids[i]);
        CHECK(same_bits(g.space().weight(i), w[i]));
        CHECK_MESSAGE(same_bits(g[i], v[i]), i, " ", v[i]);
      }
    }
  }
}

TEST_CASE("config parsing") {
  using nlohmann::json;
  const RunConfig d = parse_config(json::object());
  CHECK(d.eps_grid.points == 64);
  CHECK(d.eps_grid.min_eps_fraction == 1e-6);
  CHECK(d.global().p() == d.local().p());

  const RunConfig c = parse_config(json::parse(R"({
    "eps_grid": {"points": 16, "refinement_rounds": 2},
    "space": {"kind": "cyclic", "atoms": 16, "normalization": "probability"},
    "exponents": {"p": 1.5, "q": 3, "theta": 1},
    "window": {"size": 4},
    "bupu": {"block_size": 4},
    "seed": 9, "trials": 5, "witness": {"m": 4}
  })"));
  CHECK(c.eps_grid.points == 16);
  CHECK(c.topology() == Topology::cyclic);
  CHECK(c.global().p() == 3.0);
  CHECK(c.make_space().is_probability());
  CHECK(c.make_window(c.make_space()).size() == 4);
  CHECK(c.grid_for(c.local()).values().size() == 16);
  CHECK(*c.bupu.block_size == 4);
  CHECK(c.seed == 9);
  CHECK(c.witness_m == 4);

  const RunConfig m = parse_config(json::parse(R"({"window": {"members": [0, 2]}})"));
  CHECK(m.make_window(MeasureSpace::counting(4)).members() == std::vector<std::size_t>{0, 2});

  const auto rejects = [](const char* text, const char* fragment) {
    try {
      parse_config(json::parse(text));
    } catch (const InputError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  CHECK(rejects(R"({"bogus": 1})", "unknown key 'bogus'"));
  CHECK(rejects(R"({"eps_grid": {"pionts": 3}})", "unknown key 'eps_grid.pionts'"));
  CHECK(rejects(R"({"exponents": {"p": 1}})", "need 1 < p"));
  CHECK(rejects(R"({"exponents": {"p": "two"}})", "must be a number"));
  CHECK(rejects(R"({"eps_grid": {"points": 1}})", "at least 2"));
  CHECK(rejects(R"({"space": {"kind": "torus"}})", "space.kind"));
  CHECK(rejects(R"({"window": {"size": 2, "members": [1]}})", "not both"));
  CHECK(rejects(R"({"bupu": {"block_size": -1}})", "non-negative integer"));
  CHECK(rejects(R"({"witness": {"m": 1}})", "witness.m"));
  CHECK(rejects(R"([1, 2])", "must be an object"));
  CHECK_THROWS_AS(RunConfig{}.make_space(), InputError);
  CHECK_THROWS_AS(RunConfig{}.make_window(MeasureSpace::counting(3)), InputError);
}
