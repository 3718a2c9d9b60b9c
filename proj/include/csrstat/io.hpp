#pragma once

// Text file formats: point CSVs, grid/mask files, curve and result tables,
// fitted-model JSON, suite manifests and per-cell delta tables.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csrstat/analysis.hpp"
#include "csrstat/csr_test.hpp"
#include "csrstat/errors.hpp"
#include "csrstat/measure.hpp"
#include "csrstat/null_models.hpp"
#include "csrstat/ripley.hpp"
#include "csrstat/synthgen.hpp"

namespace csrstat {

using Json = nlohmann::ordered_json;

/// 12 significant digits, the fixed format of every numeric text output.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Shortest text that reads back to the same double.
inline std::string fmt_exact(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("cannot parse " + what + " '" + s + "'");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

/// Rows of a simple comma-separated file (no quoting); blank lines skipped.
inline std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    for (auto& c : cells) c = trim(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Points

inline PointSample parse_points(const std::string& text, const Window& window) {
  std::istringstream in(text);
  std::string line;
  std::size_t cols = 0;
  std::vector<Coord> pts;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    for (auto& c : cells) c = trim(c);
    if (cols == 0) {
      if (cells == std::vector<std::string>{"x", "y"}) cols = 2;
      else if (cells == std::vector<std::string>{"x", "y", "z"}) cols = 3;
      else throw InputError("point file header must be x,y or x,y,z");
      if (static_cast<int>(cols) != window.dim()) throw InputError("point file dimension does not match the window");
      continue;
    }
    if (cells.size() != cols) throw InputError("point row has " + std::to_string(cells.size()) + " columns");
    Coord p{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < cols; ++a) p[a] = parse_double(cells[a], "coordinate");
    pts.push_back(p);
  }
  if (cols == 0) throw InputError("point file is empty");
  return PointSample(window, std::move(pts));
}

inline PointSample read_points(const std::filesystem::path& path, const Window& window) {
  return parse_points(read_text(path), window);
}

inline std::string format_points(const PointSample& s) {
  std::string out = s.dim() == 2 ? "x,y\n" : "x,y,z\n";
  for (const Coord& p : s.points()) {
    out += fmt(p[0]) + "," + fmt(p[1]);
    if (s.dim() == 3) out += "," + fmt(p[2]);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grids and masks

struct RawGrid {
  Window window;
  std::vector<double> values;
};

inline RawGrid parse_raw_grid(const std::string& text) {
  const auto nl = text.find('\n');
  const std::string header = text.substr(0, nl);
  Window window;
  try {
    const auto h = Json::parse(header);
    const int dim = h.at("dim").get<int>();
    const auto extent = h.at("extent").get<std::vector<std::size_t>>();
    if (static_cast<int>(extent.size()) != dim) throw InputError("grid header dim disagrees with extent");
    window = Window(std::span<const std::size_t>(extent), h.at("voxel_len").get<double>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad grid header: ") + e.what());
  }
  std::vector<double> values;
  values.reserve(window.voxel_count());
  if (nl != std::string::npos) {
    std::istringstream body(text.substr(nl + 1));
    std::string tok;
    while (body >> tok) values.push_back(parse_double(tok, "grid value"));
  }
  if (values.size() != window.voxel_count())
    throw InputError("grid body has " + std::to_string(values.size()) + " values, header implies " +
                     std::to_string(window.voxel_count()));
  return {window, std::move(values)};
}

inline Mask parse_mask(const std::string& text, const Window& window) {
  RawGrid raw = parse_raw_grid(text);
  if (!(raw.window == window)) throw InputError("mask shape does not match grid");
  std::vector<std::uint8_t> m(raw.values.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (raw.values[i] != 0.0 && raw.values[i] != 1.0) throw InputError("mask values must be 0 or 1");
    m[i] = raw.values[i] != 0.0;
  }
  return m;
}

inline VoxelGrid read_grid(const std::filesystem::path& path,
                           const std::optional<std::filesystem::path>& mask_path = std::nullopt) {
  RawGrid raw = parse_raw_grid(read_text(path));
  Mask mask;
  if (mask_path) mask = parse_mask(read_text(*mask_path), raw.window);
  return VoxelGrid(raw.window, std::move(raw.values), std::move(mask));
}

inline std::string grid_header(const Window& w) {
  Json h;
  h["dim"] = w.dim();
  h["extent"] = w.extents();
  h["voxel_len"] = w.voxel_len();
  return h.dump();
}

/// One line of values per (i[, j]) row, so 2D grids read as a matrix.
inline std::string format_values(const Window& w, std::span<const double> values) {
  std::string out = grid_header(w) + "\n";
  const std::size_t row = w.dim() == 2 ? w.extent(1) : w.extent(2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += fmt_exact(values[i]);
    out += (i + 1) % row == 0 ? "\n" : " ";
  }
  return out;
}

inline std::string format_grid(const VoxelGrid& g) { return format_values(g.window(), g.values()); }

inline std::string format_mask(const VoxelGrid& g) {
  std::vector<double> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.active(i) ? 1.0 : 0.0;
  return format_values(g.window(), m);
}

// ---------------------------------------------------------------------------
// Curves and test results

inline std::string format_curves(const RipleyCurves& c) {
  std::string out = "r,K,L,H\n";
  for (std::size_t i = 0; i < c.radii.size(); ++i)
    out += fmt(c.radii[i]) + "," + fmt(c.K[i]) + "," + fmt(c.L[i]) + "," + fmt(c.H[i]) + "\n";
  return out;
}

inline std::string format_result_csv(const ClusterTestResult& r) {
  std::string out = "r,H_obs,q_lo,q_med,q_hi,H_star\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i)
    out += fmt(r.radii[i]) + "," + fmt(r.h_obs[i]) + "," + fmt(r.q_lo[i]) + "," + fmt(r.q_med[i]) + "," +
           fmt(r.q_hi[i]) + "," + fmt(r.h_star[i]) + "\n";
  out += "delta," + fmt(r.delta) + "\n";
  return out;
}

inline Json to_json(const GammaParams& p) { return Json{{"kind", "gamma"}, {"a", p.a}, {"b", p.b}}; }

inline Json to_json(const WSPParams& p) {
  return Json{{"kind", "wsp"}, {"weights", p.weights}, {"alphas", p.alphas}};
}

inline Json config_json(const TestConfig& c) {
  Json j;
  j["null"] = to_string(c.null_spec.kind);
  j["trials"] = c.trials;
  j["omega"] = c.omega;
  j["radii"] = std::vector<double>(c.radii.values().begin(), c.radii.values().end());
  j["seed"] = c.base_seed;
  j["point_estimator"] = to_string(c.point_estimator);
  if (c.null_spec.kind == NullKind::WSPFit) {
    j["wsp_weights"] = c.null_spec.wsp_weights;
    j["wsp_iters"] = c.null_spec.wsp_iters;
  }
  j["quantile_rule"] = "nearest-rank";
  return j;
}

inline Json result_json(const ClusterTestResult& r) {
  Json j;
  j["config"] = config_json(r.config);
  j["lambda"] = r.lambda;
  j["r"] = std::vector<double>(r.radii.values().begin(), r.radii.values().end());
  j["H_obs"] = r.h_obs;
  j["q_lo"] = r.q_lo;
  j["q_med"] = r.q_med;
  j["q_hi"] = r.q_hi;
  j["H_star"] = r.h_star;
  j["delta"] = r.delta;
  if (r.fitted_gamma) j["fitted"] = to_json(*r.fitted_gamma);
  if (r.fitted_wsp) j["fitted"] = to_json(*r.fitted_wsp);
  return j;
}

// ---------------------------------------------------------------------------
// Suite manifest

inline std::string format_suite_manifest(std::span<const LabeledGrid> grids, std::span<const std::string> paths) {
  std::string out = "id,generator,params,seed,path\n";
  for (std::size_t i = 0; i < grids.size(); ++i)
    out += grids[i].id + "," + grids[i].generator + "," + grids[i].params + "," + std::to_string(grids[i].seed) +
           "," + paths[i] + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Per-cell deltas

inline std::string format_deltas(std::span<const DeltaRecord> records) {
  std::string out = "id,species,kind,time,delta\n";
  for (const auto& r : records)
    out += r.id + "," + r.species + "," + to_string(r.kind) + "," + fmt(r.time) + "," + fmt(r.delta) + "\n";
  return out;
}

inline std::vector<DeltaRecord> read_deltas(const std::filesystem::path& path) {
  const auto rows = read_csv_rows(path);
  if (rows.empty() || rows[0] != std::vector<std::string>{"id", "species", "kind", "time", "delta"})
    throw InputError("delta table header must be id,species,kind,time,delta");
  std::vector<DeltaRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (c.size() != 5) throw InputError("delta table row " + std::to_string(i) + " needs 5 columns");
    out.push_back({c[0], c[1], parse_molecule_kind(c[2]), parse_double(c[3], "time"), parse_double(c[4], "delta")});
  }
  return out;
}

inline std::string format_profiles(std::span<const Profile> profiles) {
  std::string out = "species,kind,time,median_delta,normalized\n";
  for (const auto& p : profiles)
    for (std::size_t i = 0; i < p.times.size(); ++i)
      out += p.species + "," + to_string(p.kind) + "," + fmt(p.times[i]) + "," + fmt(p.medians[i]) + "," +
             (p.normalized ? fmt((*p.normalized)[i]) : std::string("NA")) + "\n";
  return out;
}

} // namespace csrstat
