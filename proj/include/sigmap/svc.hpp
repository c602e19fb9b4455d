#pragma once

// SVC2004-style online signature files.
//
// Line 1 holds the sample count N; lines 2..N+1 hold whitespace-separated
// integer columns. Four columns are consumed (x, y, timestamp, pen state);
// a ColumnMap says which of the first four columns carries which field.
// Columns beyond the mapped four are ignored. Pen state is nonzero while
// the pen touches the tablet.

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigmap {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Point&) const = default;
};

struct SamplePoint {
  std::int64_t t = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool pen = false;  // true: pen down
  bool operator==(const SamplePoint&) const = default;
  Point pos() const { return Point{x, y}; }
};

struct Trajectory {
  std::vector<SamplePoint> points;
  std::string source_id;
  bool operator==(const Trajectory&) const = default;
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Placement of the x / y / timestamp / pen fields among the first four
// columns. The default matches SVC2004 task files (x y t pen); from_string
// accepts a four-letter layout such as "xytp" or "txyp", letter i naming
// the field stored in column i.
struct ColumnMap {
  int x_col = 0;
  int y_col = 1;
  int t_col = 2;
  int pen_col = 3;

  bool valid() const {
    int seen[4] = {0, 0, 0, 0};
    for (int c : {x_col, y_col, t_col, pen_col}) {
      if (c < 0 || c > 3) return false;
      ++seen[c];
    }
    return seen[0] == 1 && seen[1] == 1 && seen[2] == 1 && seen[3] == 1;
  }

  static ColumnMap from_string(std::string_view layout) {
    if (layout.size() != 4)
      throw std::invalid_argument("column layout must have four letters, e.g. \"xytp\"");
    ColumnMap m{-1, -1, -1, -1};
    for (int i = 0; i < 4; ++i) {
      switch (layout[i]) {
        case 'x': m.x_col = i; break;
        case 'y': m.y_col = i; break;
        case 't': m.t_col = i; break;
        case 'p': m.pen_col = i; break;
        default:
          throw std::invalid_argument("column layout letters must be x, y, t, p");
      }
    }
    if (!m.valid())
      throw std::invalid_argument("column layout must name each of x, y, t, p once");
    return m;
  }

  std::string to_string() const {
    std::string s(4, '?');
    s[static_cast<std::size_t>(x_col)] = 'x';
    s[static_cast<std::size_t>(y_col)] = 'y';
    s[static_cast<std::size_t>(t_col)] = 't';
    s[static_cast<std::size_t>(pen_col)] = 'p';
    return s;
  }
};

enum class RunKind { Down, Up };

// Maximal run of consecutive samples sharing one pen state; indices inclusive.
struct PenRun {
  std::size_t start = 0;
  std::size_t end = 0;
  RunKind kind = RunKind::Down;
  bool operator==(const PenRun&) const = default;
  std::size_t length() const { return end - start + 1; }
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { BadHeader, CountMismatch, BadToken, ShortRow };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

namespace detail {

inline std::string_view next_token(std::string_view& rest) {
  std::size_t b = rest.find_first_not_of(" \t");
  if (b == std::string_view::npos) {
    rest = {};
    return {};
  }
  std::size_t e = rest.find_first_of(" \t", b);
  std::string_view tok = rest.substr(b, e == std::string_view::npos ? e : e - b);
  rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
  return tok;
}

inline std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(ParseError::Kind::BadToken, line,
                     "expected an integer, got \"" + std::string(tok) + "\"");
  return v;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

inline bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace detail

inline Trajectory parse_svc2004(std::string_view text, const ColumnMap& cmap = {},
                                std::string source_id = {}) {
  if (!cmap.valid()) throw std::invalid_argument("invalid column map");
  auto lines = detail::split_lines(text);

  std::size_t header_line = 0;
  while (header_line < lines.size() && detail::blank(lines[header_line])) ++header_line;
  if (header_line == lines.size())
    throw ParseError(ParseError::Kind::BadHeader, 1, "missing point-count header");

  std::string_view header = lines[header_line];
  std::string_view rest = header;
  std::string_view count_tok = detail::next_token(rest);
  std::int64_t declared = 0;
  {
    auto [p, ec] = std::from_chars(count_tok.data(), count_tok.data() + count_tok.size(), declared);
    if (ec != std::errc{} || p != count_tok.data() + count_tok.size() || !detail::blank(rest))
      throw ParseError(ParseError::Kind::BadHeader, header_line + 1,
                       "header must be a single integer point count");
  }
  if (declared < 1)
    throw ParseError(ParseError::Kind::BadHeader, header_line + 1,
                     "point count must be positive");

  Trajectory traj;
  traj.source_id = std::move(source_id);
  traj.points.reserve(static_cast<std::size_t>(declared));

  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (detail::blank(lines[li])) continue;
    std::size_t lineno = li + 1;
    if (traj.points.size() == static_cast<std::size_t>(declared))
      throw ParseError(ParseError::Kind::CountMismatch, lineno,
                       "declared " + std::to_string(declared) + " points, found more");
    std::string_view row = lines[li];
    std::int64_t cols[4];
    for (int c = 0; c < 4; ++c) {
      std::string_view tok = detail::next_token(row);
      if (tok.empty())
        throw ParseError(ParseError::Kind::ShortRow, lineno,
                         "row has fewer than four columns");
      cols[c] = detail::parse_int(tok, lineno);
    }
    SamplePoint p;
    p.x = cols[cmap.x_col];
    p.y = cols[cmap.y_col];
    p.t = cols[cmap.t_col];
    p.pen = cols[cmap.pen_col] != 0;
    traj.points.push_back(p);
  }

  if (traj.points.size() != static_cast<std::size_t>(declared))
    throw ParseError(ParseError::Kind::CountMismatch, header_line + 1,
                     "declared " + std::to_string(declared) + " points, found " +
                         std::to_string(traj.points.size()));
  return traj;
}

inline std::string serialize_svc2004(const Trajectory& traj, const ColumnMap& cmap = {}) {
  if (!cmap.valid()) throw std::invalid_argument("invalid column map");
  std::string out = std::to_string(traj.points.size());
  out += '\n';
  for (const SamplePoint& p : traj.points) {
    std::int64_t cols[4];
    cols[cmap.x_col] = p.x;
    cols[cmap.y_col] = p.y;
    cols[cmap.t_col] = p.t;
    cols[cmap.pen_col] = p.pen ? 1 : 0;
    for (int c = 0; c < 4; ++c) {
      if (c) out += ' ';
      out += std::to_string(cols[c]);
    }
    out += '\n';
  }
  return out;
}

// Runs partition the trajectory and alternate between Down and Up.
inline std::vector<PenRun> pen_runs(const Trajectory& traj) {
  std::vector<PenRun> runs;
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    RunKind k = traj.points[i].pen ? RunKind::Down : RunKind::Up;
    if (!runs.empty() && runs.back().kind == k)
      runs.back().end = i;
    else
      runs.push_back(PenRun{i, i, k});
  }
  return runs;
}

// One polyline per pen-down run: the drawn ink, pen-up travel dropped.
inline std::vector<std::vector<Point>> reconstruct_polylines(const Trajectory& traj) {
  std::vector<std::vector<Point>> lines;
  for (const PenRun& run : pen_runs(traj)) {
    if (run.kind != RunKind::Down) continue;
    std::vector<Point> line;
    line.reserve(run.length());
    for (std::size_t i = run.start; i <= run.end; ++i) line.push_back(traj.points[i].pos());
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::vector<std::int64_t> x_series(const Trajectory& traj) {
  std::vector<std::int64_t> xs;
  xs.reserve(traj.points.size());
  for (const SamplePoint& p : traj.points) xs.push_back(p.x);
  return xs;
}

inline std::vector<std::int64_t> y_series(const Trajectory& traj) {
  std::vector<std::int64_t> ys;
  ys.reserve(traj.points.size());
  for (const SamplePoint& p : traj.points) ys.push_back(p.y);
  return ys;
}

}  // namespace sigmap
