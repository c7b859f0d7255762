#include "doctest.h"
#include "sdist/error.hpp"
#include "sdist/serialize.hpp"

using namespace sdist;

TEST_CASE("twelve significant digits") {
  CHECK(round_significant(1.0 / 3) == 0.333333333333);
  CHECK(round_significant(1.6180339887498949) == 1.61803398875);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(dump_json(Json{{"x", 2.0 / 3}}) == std::string(R"({"x":0.666666666667})") + "\n");
}

TEST_CASE("point set JSON round trip") {
  const auto x = construct_named(NamedSet::pentagon);
  const auto back = parse_points(dump_json(to_json(x)), PointFormat::json);
  CHECK(back.size() == 5);
  CHECK((back.points() - x.points()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("matrix files") {
  const auto f = parse_matrix_file(R"({"matrix": [[0, 1], [1, 0]], "kind": "squared_distance"})");
  CHECK_FALSE(f.gram);
  CHECK(f.matrix(0, 1) == 1);
  const auto g = parse_matrix_file(R"({"matrix": [[1, 0], [0, 1]], "kind": "gram"})");
  CHECK(g.gram);
  CHECK_THROWS_AS(parse_matrix_file(R"({"matrix": [[1, 0], [0]], "kind": "gram"})"), Error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"matrix": [[1]], "kind": "distance"})"), Error);
}

TEST_CASE("ratio report JSON fields") {
  const auto j = to_json(analyze(construct_johnson(10, 3)));
  CHECK(j["n"] == 165);
  CHECK(j["reports"][0]["rounded_k"] == Json::array({3, -3, 1}));
  CHECK(j["theorem_violated"] == false);
}
