// Maps two small synthetic signatures and prints the accepted nodes with
// and without lost box recovery, then walks a score grid where recovery
// rejects a hop and reroutes.

#include <cstdio>
#include <string>
#include <vector>

#include "sigmap/sigmap.hpp"

namespace {

sigmap::Trajectory wave(const std::string& id, const std::vector<std::int64_t>& ys) {
  sigmap::Trajectory t;
  t.source_id = id;
  for (std::size_t i = 0; i < ys.size(); ++i)
    t.points.push_back({static_cast<std::int64_t>(1000 + 10 * i),
                        static_cast<std::int64_t>(10 * i), ys[i], true});
  return t;
}

}  // namespace

int main() {
  const std::vector<std::int64_t> ref_ys = {0,  20, 40, 60, 80, 100, 80, 60, 40,
                                            20, 10, 0,  10, 20, 40,  60, 80, 100,
                                            80, 60, 40, 20, 10, 5,   0};
  std::vector<std::int64_t> test_ys = ref_ys;
  test_ys[5] = 90;    // blunt the first peak
  test_ys[17] = 120;  // sharpen the second

  const sigmap::Trajectory ref = wave("ref", ref_ys);
  const sigmap::Trajectory test = wave("test", test_ys);

  for (bool lbr : {false, true}) {
    const sigmap::MappingRun run = sigmap::run_mapping(ref, test, {}, lbr);
    std::printf("%s\n", lbr ? "with lost box recovery:" : "plain similarity maximization:");
    std::printf("%s\n", sigmap::format_map_output(run.result).c_str());
  }

  // On this grid the plain walk grabs the 0.3 hop and recovery vetoes it:
  // moving there would forfeit the 0.9 cell, so the hop scores V = -0.6 and
  // the path reroutes through the top row instead.
  const sigmap::ScoreGrid grid = sigmap::parse_score_matrix(
      "0.5 0.2 0.2\n"
      "0.2 0.3 0.9\n"
      "0.2 0.2 0.4\n");
  for (bool lbr : {false, true}) {
    const sigmap::MapResult r = sigmap::map_strokes(sigmap::LayeredMatrix::single(grid), lbr);
    std::printf("grid walk %s:\n", lbr ? "with recovery" : "without recovery");
    std::printf("%s\n", sigmap::format_map_output(r).c_str());
  }
  return 0;
}
