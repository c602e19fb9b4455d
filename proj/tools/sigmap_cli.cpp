// Command-line front end for the signature stroke-mapping library.
//
// Subcommands: parse | extremes | segment | map | render | score.
// `map` aligns two signatures (or a raw score matrix via --matrix) and
// prints the path; `score` turns human verdict files into the five-section
// mapping error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmap/sigmap.hpp"

namespace {

struct CommonOpts {
  int l = 3;
  int S = 5;
  std::string columns;
  bool flip_y = false;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--l", c.l, "extreme window half-width")->check(CLI::PositiveNumber);
  sub->add_option("--S", c.S, "minimum gap between same-kind extremes")
      ->check(CLI::PositiveNumber);
  sub->add_option("--columns", c.columns,
                  "input column order as a permutation of the letters xytp");
  sub->add_flag("--flip-y", c.flip_y, "treat raw y as growing downward");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("cannot write file: " + path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

sigmap::Trajectory load_signature(const std::string& path, const CommonOpts& c) {
  sigmap::ColumnMap cmap;
  if (!c.columns.empty()) cmap = sigmap::ColumnMap::from_string(c.columns);
  const std::string text = read_file(path);
  sigmap::Trajectory traj;
  try {
    traj = sigmap::parse_svc2004(text, cmap, std::filesystem::path(path).stem().string());
  } catch (const sigmap::ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (c.flip_y)
    for (sigmap::SamplePoint& p : traj.points) p.y = -p.y;
  return traj;
}

sigmap::DetectionParams detection_params(const CommonOpts& c) {
  sigmap::DetectionParams p;
  p.window = static_cast<std::size_t>(c.l);
  p.gap = static_cast<std::size_t>(c.S);
  return p;
}

std::string describe_parse(const sigmap::Trajectory& traj) {
  std::size_t down = 0;
  for (const sigmap::PenRun& r : sigmap::pen_runs(traj))
    if (r.kind == sigmap::RunKind::Down) ++down;
  std::string out;
  out += "points: " + std::to_string(traj.size()) + "\n";
  out += "pen-down runs: " + std::to_string(down) + "\n";
  return out;
}

std::string describe_extremes(const std::vector<sigmap::Extreme>& extremes) {
  std::string out;
  for (const sigmap::Extreme& e : extremes) {
    out += std::to_string(e.index);
    out += ' ';
    out += sigmap::to_string(e.kind);
    out += ' ';
    out += std::to_string(e.class_id);
    out += ' ';
    out += sigmap::to_string(e.rotation);
    out += '\n';
  }
  return out;
}

std::string describe_strokes(const std::vector<sigmap::Stroke>& strokes) {
  std::string out;
  for (std::size_t k = 0; k < strokes.size(); ++k) {
    const sigmap::Stroke& s = strokes[k];
    out += std::to_string(k);
    out += ' ';
    out += std::to_string(s.start_index);
    out += ' ';
    out += std::to_string(s.end_index);
    out += ' ';
    out += sigmap::to_string(s.border_start.kind);
    out += ' ';
    out += sigmap::to_string(s.border_end.kind);
    out += ' ';
    out += std::to_string(s.interior_extremes.size());
    out += ' ';
    out += sigmap::validate_stroke(s) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online signature stroke mapping toolkit"};
  app.require_subcommand(1);

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "read a signature file and report its shape");
  CommonOpts parse_opts;
  std::string parse_file, parse_out;
  parse_cmd->add_option("file", parse_file, "signature file")->required();
  add_common(parse_cmd, parse_opts);
  parse_cmd->add_option("--out", parse_out, "re-serialize the parsed signature to this path");
  parse_cmd->callback([&] {
    const sigmap::Trajectory traj = load_signature(parse_file, parse_opts);
    std::cout << describe_parse(traj);
    if (!parse_out.empty()) {
      sigmap::ColumnMap cmap;
      if (!parse_opts.columns.empty()) cmap = sigmap::ColumnMap::from_string(parse_opts.columns);
      write_file(parse_out, sigmap::serialize_svc2004(traj, cmap));
    }
  });

  // extremes
  auto* ext_cmd = app.add_subcommand("extremes", "detect and classify extreme points");
  CommonOpts ext_opts;
  std::string ext_file, ext_out;
  ext_cmd->add_option("file", ext_file, "signature file")->required();
  add_common(ext_cmd, ext_opts);
  ext_cmd->add_option("--out", ext_out, "write the listing to this path");
  ext_cmd->callback([&] {
    const sigmap::Trajectory traj = load_signature(ext_file, ext_opts);
    emit(describe_extremes(sigmap::detect_extremes(traj, detection_params(ext_opts))), ext_out);
  });

  // segment
  auto* seg_cmd = app.add_subcommand("segment", "split a signature into bordered strokes");
  CommonOpts seg_opts;
  std::string seg_file, seg_out;
  seg_cmd->add_option("file", seg_file, "signature file")->required();
  add_common(seg_cmd, seg_opts);
  seg_cmd->add_option("--out", seg_out, "write the listing to this path");
  seg_cmd->callback([&] {
    const sigmap::Trajectory traj = load_signature(seg_file, seg_opts);
    const auto extremes = sigmap::detect_extremes(traj, detection_params(seg_opts));
    emit(describe_strokes(sigmap::segment_strokes(traj, extremes)), seg_out);
  });

  // map
  auto* map_cmd = app.add_subcommand("map", "align two signatures stroke by stroke");
  CommonOpts map_opts;
  std::vector<std::string> map_files;
  std::string map_out, map_render, map_matrix;
  bool map_no_lbr = false, map_dump_layers = false;
  map_cmd->add_option("files", map_files, "reference and test signature files")->expected(0, 2);
  add_common(map_cmd, map_opts);
  map_cmd->add_flag("--no-lbr", map_no_lbr, "disable lost box recovery");
  map_cmd->add_option("--matrix", map_matrix, "align a raw score matrix instead of signatures");
  map_cmd->add_flag("--dump-layers", map_dump_layers, "print the similarity layers first");
  map_cmd->add_option("--render", map_render, "also write the mapping as SVG to this path");
  map_cmd->add_option("--out", map_out, "write the path listing to this path");
  map_cmd->callback([&] {
    std::string listing;
    if (!map_matrix.empty()) {
      if (!map_files.empty())
        throw std::runtime_error("--matrix cannot be combined with signature files");
      if (!map_render.empty())
        throw std::runtime_error("--render needs signature files, not --matrix");
      const sigmap::LayeredMatrix layers =
          sigmap::LayeredMatrix::single(sigmap::parse_score_matrix(read_file(map_matrix)));
      if (map_dump_layers) listing += sigmap::format_layers(layers);
      listing += sigmap::format_map_output(sigmap::map_strokes(layers, !map_no_lbr));
    } else {
      if (map_files.size() != 2)
        throw std::runtime_error("map needs a reference file and a test file");
      const sigmap::Trajectory ref = load_signature(map_files[0], map_opts);
      const sigmap::Trajectory test = load_signature(map_files[1], map_opts);
      const sigmap::MappingRun run =
          sigmap::run_mapping(ref, test, detection_params(map_opts), !map_no_lbr);
      if (map_dump_layers) listing += sigmap::format_layers(run.layers);
      listing += sigmap::format_map_output(run.result);
      if (!map_render.empty()) {
        sigmap::RenderOptions ropt;
        ropt.flip_y = map_opts.flip_y;
        write_file(map_render, sigmap::render_mapping(ref, test, run.result.path,
                                                      run.ref_strokes, run.test_strokes, ropt));
      }
    }
    emit(listing, map_out);
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "draw a mapped signature pair as SVG");
  CommonOpts render_opts;
  std::string render_ref, render_test, render_out;
  bool render_no_lbr = false;
  render_cmd->add_option("reference", render_ref, "reference signature file")->required();
  render_cmd->add_option("test", render_test, "test signature file")->required();
  add_common(render_cmd, render_opts);
  render_cmd->add_flag("--no-lbr", render_no_lbr, "disable lost box recovery");
  render_cmd->add_option("--out", render_out, "write the SVG to this path");
  render_cmd->callback([&] {
    const sigmap::Trajectory ref = load_signature(render_ref, render_opts);
    const sigmap::Trajectory test = load_signature(render_test, render_opts);
    const sigmap::MappingRun run =
        sigmap::run_mapping(ref, test, detection_params(render_opts), !render_no_lbr);
    sigmap::RenderOptions ropt;
    ropt.flip_y = render_opts.flip_y;
    emit(sigmap::render_mapping(ref, test, run.result.path, run.ref_strokes, run.test_strokes,
                                ropt),
         render_out);
  });

  // score
  auto* score_cmd = app.add_subcommand("score", "compute the mapping error from verdict files");
  std::vector<std::string> score_files;
  std::string score_out;
  score_cmd
      ->add_option("verdicts", score_files,
                   "one verdict file, or two (plain then recovery) for a comparison table")
      ->expected(1, 2);
  score_cmd->add_option("--out", score_out, "write the report to this path");
  score_cmd->callback([&] {
    auto report = [&](const std::string& path) {
      try {
        return sigmap::mapping_error(sigmap::parse_verdicts(read_file(path)));
      } catch (const sigmap::VerdictError& e) {
        throw std::runtime_error(path + ": " + e.what());
      }
    };
    if (score_files.size() == 1)
      emit(sigmap::format_report(report(score_files[0])), score_out);
    else
      emit(sigmap::format_comparison(report(score_files[0]), report(score_files[1])), score_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
