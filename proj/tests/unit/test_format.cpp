#include <catch2/catch_amalgamated.hpp>

#include "sigmap/dtw.hpp"
#include "sigmap/format.hpp"

using namespace sigmap;

namespace {

const char* kGoldenMatrix =
    "0.5 0.2 0.2\n"
    "0.2 0.3 0.9\n"
    "0.2 0.2 0.4\n";

const char* kPlainListing =
    "0 1 0 0 0.500000\n"
    "1 1 1 1 0.300000\n"
    "2 1 1 2 0.900000\n"
    "3 1 2 2 0.400000\n"
    "total=2.100000 rejections=0 nodes=4\n";

const char* kRecoveryListing =
    "0 1 0 0 0.500000\n"
    "# reject layer=1 i=1 j=1 score=0.300000 V=-0.600000\n"
    "1 1 0 1 0.200000\n"
    "2 1 1 2 0.900000\n"
    "3 1 2 2 0.400000\n"
    "total=2.000000 rejections=1 nodes=4\n";

}  // namespace

TEST_CASE("score matrices parse into layer 1") {
  ScoreGrid g = parse_score_matrix(kGoldenMatrix);
  REQUIRE(g.rows() == 3);
  REQUIRE(g.cols() == 3);
  CHECK(*g.at(0, 0) == 0.5);
  CHECK(*g.at(1, 2) == 0.9);
}

TEST_CASE("matrix files allow comments and absent cells") {
  ScoreGrid g = parse_score_matrix("# layer one\n0.1 -\n- 0.4\n\n");
  REQUIRE(g.rows() == 2);
  CHECK(g.at(0, 0).has_value());
  CHECK_FALSE(g.at(0, 1).has_value());
  CHECK_FALSE(g.at(1, 0).has_value());
}

TEST_CASE("matrix diagnostics") {
  CHECK_THROWS_AS(parse_score_matrix(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_score_matrix("0.1 0.2\n0.3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_score_matrix("0.1 fish\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_score_matrix("0.1x 0.2\n"), std::invalid_argument);
}

TEST_CASE("plain listing matches the frozen format") {
  LayeredMatrix m = LayeredMatrix::single(parse_score_matrix(kGoldenMatrix));
  CHECK(format_map_output(map_strokes(m, false)) == kPlainListing);
}

TEST_CASE("recovery listing interleaves the rejection where it happened") {
  LayeredMatrix m = LayeredMatrix::single(parse_score_matrix(kGoldenMatrix));
  CHECK(format_map_output(map_strokes(m, true)) == kRecoveryListing);
}

TEST_CASE("layer dump prints dimensions and absent markers") {
  LayeredMatrix m = LayeredMatrix::single(parse_score_matrix("0.25 0.75\n"));
  const std::string dump = format_layers(m);
  CHECK(dump.find("layer 1 (1x2)") != std::string::npos);
  CHECK(dump.find("layer 2 (1x1)") != std::string::npos);
  CHECK(dump.find("layer 3 (0x2)") != std::string::npos);
  CHECK(dump.find("0.250000 0.750000") != std::string::npos);
  CHECK(dump.find("-") != std::string::npos);
}
