#include <catch2/catch_amalgamated.hpp>

#include "sigmap/evaluation.hpp"
#include "sigmap/pipeline.hpp"
#include "test_helpers.hpp"

using namespace sigmap;

namespace {

std::vector<SectionVerdict> one_pair(std::initializer_list<int> failed_sections) {
  std::vector<SectionVerdict> v;
  for (int s = 1; s <= 5; ++s) {
    bool failed = false;
    for (int f : failed_sections)
      if (f == s) failed = true;
    v.push_back(SectionVerdict{"p1", s, failed});
  }
  return v;
}

}  // namespace

TEST_CASE("five sections of near equal size") {
  auto sizes = [](std::size_t n) {
    std::array<std::size_t, 5> out{};
    const auto ranges = divide_sections(n);
    for (std::size_t k = 0; k < 5; ++k) out[k] = ranges[k].size();
    return out;
  };
  CHECK(sizes(10) == std::array<std::size_t, 5>{2, 2, 2, 2, 2});
  CHECK(sizes(7) == std::array<std::size_t, 5>{2, 2, 1, 1, 1});
  CHECK(sizes(3) == std::array<std::size_t, 5>{1, 1, 1, 0, 0});
  CHECK(sizes(1) == std::array<std::size_t, 5>{1, 0, 0, 0, 0});
  CHECK_THROWS_AS(divide_sections(0), std::invalid_argument);
}

TEST_CASE("sections are contiguous, ordered, and cover the strokes") {
  for (std::size_t n = 1; n <= 100; ++n) {
    const auto ranges = divide_sections(n);
    std::size_t at = 0, min_size = n, max_size = 0;
    for (const SectionRange& r : ranges) {
      REQUIRE(r.begin == at);
      at = r.end;
      min_size = std::min(min_size, r.size());
      max_size = std::max(max_size, r.size());
    }
    REQUIRE(at == n);
    REQUIRE(max_size - min_size <= 1);
  }
}

TEST_CASE("one pair with two failed sections scores forty percent") {
  MappingErrorReport r = mapping_error(one_pair({2, 3}));
  CHECK(r.pairs_evaluated == 1);
  CHECK(r.failed_sections == 2);
  CHECK(r.error == 2.0 / 5.0);
  CHECK(format_percent(r.error) == "40.00%");
}

TEST_CASE("no failures means zero error") {
  MappingErrorReport r = mapping_error(one_pair({}));
  CHECK(r.error == 0.0);
  CHECK(format_percent(r.error) == "0.00%");
}

TEST_CASE("ten pairs with nine failures") {
  std::vector<SectionVerdict> v;
  int failures = 9;
  for (int p = 0; p < 10; ++p) {
    for (int s = 1; s <= 5; ++s) {
      const bool failed = failures > 0 && s == 1;
      v.push_back(SectionVerdict{"pair" + std::to_string(p), s, failed});
    }
    if (failures > 0) --failures;
  }
  MappingErrorReport r = mapping_error(v);
  CHECK(r.pairs_evaluated == 10);
  CHECK(r.failed_sections == 9);
  CHECK(format_percent(r.error) == "18.00%");
}

TEST_CASE("replicating every pair leaves the error unchanged") {
  std::vector<SectionVerdict> base = one_pair({2, 3});
  std::vector<SectionVerdict> tripled;
  for (int copy = 0; copy < 3; ++copy)
    for (SectionVerdict v : base) {
      v.pair_id += "-" + std::to_string(copy);
      tripled.push_back(v);
    }
  CHECK(mapping_error(tripled).error == mapping_error(base).error);
}

TEST_CASE("incomplete or duplicated verdicts name the pair") {
  std::vector<SectionVerdict> v = one_pair({1});
  v.pop_back();
  try {
    mapping_error(v);
    FAIL("expected VerdictError");
  } catch (const VerdictError& e) {
    CHECK(std::string(e.what()).find("pair \"p1\"") != std::string::npos);
    CHECK(std::string(e.what()).find("section 5") != std::string::npos);
  }

  v = one_pair({});
  v.push_back(SectionVerdict{"p1", 3, false});
  CHECK_THROWS_AS(mapping_error(v), VerdictError);

  CHECK_THROWS_AS(mapping_error({SectionVerdict{"p1", 6, false}}), VerdictError);
  CHECK_THROWS_AS(mapping_error({}), VerdictError);
}

TEST_CASE("verdict files parse with comments and a fixed header") {
  const char* text =
      "# reviewed by hand, biased towards the established technique\n"
      "pair_id,section,failed\n"
      "a-b,1,0\n"
      "a-b,2,1\n"
      "\n"
      "a-b,3,1\n"
      "a-b,4,0\n"
      "a-b,5,0\n";
  std::vector<SectionVerdict> v = parse_verdicts(text);
  REQUIRE(v.size() == 5);
  CHECK(v[0] == SectionVerdict{"a-b", 1, false});
  CHECK(v[1] == SectionVerdict{"a-b", 2, true});
  CHECK(mapping_error(v).error == 0.4);
}

TEST_CASE("verdict parse diagnostics") {
  auto message = [](const char* text) {
    try {
      parse_verdicts(text);
    } catch (const VerdictError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("nope\n") == "line 1: expected header \"pair_id,section,failed\"");
  CHECK(message("") == "line 1: expected header \"pair_id,section,failed\"");
  CHECK(message("pair_id,section,failed\np1,1\n").find("3 comma-separated fields") !=
        std::string::npos);
  CHECK(message("pair_id,section,failed\np1,1,0,9\n").find("3 comma-separated fields") !=
        std::string::npos);
  CHECK(message("pair_id,section,failed\np1,six,0\n") ==
        "line 2: section must be an integer in 1..5");
  CHECK(message("pair_id,section,failed\np1,0,0\n") ==
        "line 2: section must be an integer in 1..5");
  CHECK(message("pair_id,section,failed\np1,1,maybe\n") == "line 2: failed must be 0 or 1");
  CHECK(message("pair_id,section,failed\n,1,0\n") == "line 2: empty pair_id");
}

TEST_CASE("report and comparison formatting") {
  MappingErrorReport a;
  a.pairs_evaluated = 1;
  a.failed_sections = 2;
  a.error = 0.4;
  CHECK(format_report(a) ==
        "pairs evaluated: 1\nfailed sections: 2\nmapping error: 40.00%\n");

  MappingErrorReport b;
  b.pairs_evaluated = 1;
  b.failed_sections = 1;
  b.error = 0.2;
  CHECK(format_comparison(a, b) ==
        "Technique Name\tError Percentage\n"
        "Similarity Maximization\t40.00%\n"
        "Similarity Maximization with Lost Box Recovery\t20.00%\n");
}

namespace {

Trajectory wave(const std::string& id) {
  std::vector<std::int64_t> ys{0,  20, 40, 60, 80, 100, 80, 60, 40,  20, 10, 0, 10,
                               20, 40, 60, 80, 100, 80, 60, 40, 20, 10, 5,  0};
  std::vector<std::int64_t> xs(ys.size());
  std::vector<int> pens(ys.size(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<std::int64_t>(10 * i);
  return test_support::make_trajectory(xs, ys, pens, id);
}

}  // namespace

TEST_CASE("rendering is deterministic and self mapping lines are vertical") {
  Trajectory ref = wave("ref");
  Trajectory test = wave("test");
  MappingRun run = run_mapping(ref, test);

  const std::string svg =
      render_mapping(ref, test, run.result.path, run.ref_strokes, run.test_strokes);
  const std::string again =
      render_mapping(ref, test, run.result.path, run.ref_strokes, run.test_strokes);
  CHECK(svg == again);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);

  // identity mapping: every connecting line joins equal x positions
  std::size_t at = 0;
  int lines = 0;
  while ((at = svg.find("stroke=\"#2e8b57\"", at)) != std::string::npos) {
    const std::size_t begin = svg.rfind("<line", at);
    const std::string tag = svg.substr(begin, svg.find('>', begin) - begin);
    const auto grab = [&](const char* key) {
      const std::size_t p = tag.find(key);
      REQUIRE(p != std::string::npos);
      return std::stod(tag.substr(p + std::string(key).size()));
    };
    CHECK(grab("x1=\"") == Catch::Approx(grab("x2=\"")));
    CHECK(grab("y1=\"") < grab("y2=\""));
    ++at;
    ++lines;
  }
  CHECK(lines == static_cast<int>(run.result.path.nodes.size()));
}

TEST_CASE("an empty path draws polylines but no connecting lines") {
  Trajectory ref = wave("ref");
  Trajectory test = wave("test");
  MappingRun run = run_mapping(ref, test);
  const std::string svg = render_mapping(ref, test, DtwPath{}, run.ref_strokes, run.test_strokes);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("#2e8b57") == std::string::npos);
}

TEST_CASE("a path outside the stroke lists is rejected") {
  Trajectory ref = wave("ref");
  Trajectory test = wave("test");
  MappingRun run = run_mapping(ref, test);
  DtwPath bad;
  bad.nodes.push_back(PathNode{1, 99, 0, 0.5});
  CHECK_THROWS_AS(render_mapping(ref, test, bad, run.ref_strokes, run.test_strokes),
                  std::invalid_argument);
}
