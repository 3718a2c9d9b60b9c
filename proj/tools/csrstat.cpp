// csrstat: command-line front end for the clustering-index toolkit.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csrstat/csrstat.hpp"

namespace fs = std::filesystem;
using namespace csrstat;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const auto& item : split(text, ';')) {
    const std::string kv = trim(item);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("parameter '" + kv + "' is not key=value");
    out[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
  }
  return out;
}

double param_num(const std::map<std::string, std::string>& p, const std::string& key, std::optional<double> fallback) {
  const auto it = p.find(key);
  if (it == p.end()) {
    if (!fallback) throw InputError("missing parameter '" + key + "'");
    return *fallback;
  }
  return parse_double(it->second, key);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ':') {
      if (!trim(cur).empty()) out.push_back(parse_double(trim(cur), "list entry"));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

void check_known(const std::map<std::string, std::string>& p, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw InputError("unknown parameter '" + k + "'");
  }
}

/// Where inputs come from and how point files are windowed.
struct InputOptions {
  std::string path;
  std::string format = "auto";
  std::vector<std::size_t> extent;
  double voxel_len = 1.0;
  std::string mask;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool required = true) {
  auto* opt = cmd->add_option("--input,-i", in.path, "grid file or point CSV");
  if (required) opt->required();
  cmd->add_option("--format", in.format, "grid | points | auto (by extension)")
      ->check(CLI::IsMember({"auto", "grid", "points"}));
  cmd->add_option("--extent", in.extent, "window extent in voxels for point input, e.g. 50,50")->delimiter(',');
  cmd->add_option("--voxel-len", in.voxel_len, "voxel side length for point input");
  cmd->add_option("--mask", in.mask, "mask file (grid input only)");
}

bool is_points(const std::string& path, const std::string& format) {
  if (format != "auto") return format == "points";
  return fs::path(path).extension() == ".csv";
}

Observation load_observation(const std::string& path, const std::string& format, const std::vector<std::size_t>& extent,
                             double voxel_len, const std::string& mask) {
  if (is_points(path, format)) {
    if (extent.empty()) throw InputError("point input needs --extent");
    if (!mask.empty()) throw InputError("masks apply to grid input only");
    return read_points(path, Window(std::span<const std::size_t>(extent), voxel_len));
  }
  std::optional<fs::path> mask_path;
  if (!mask.empty()) mask_path = mask;
  return read_grid(path, mask_path);
}

Observation load_observation(const InputOptions& in) {
  return load_observation(in.path, in.format, in.extent, in.voxel_len, in.mask);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else write_text(out, text);
}

/// Options shared by `test` and `profile`.
struct TestOptions {
  std::string null_kind = "permutation";
  std::size_t trials = 99;
  double omega = 0.05;
  double rmax = 10.0;
  double rstep = 1.0;
  std::uint64_t seed = 1;
  std::vector<std::string> references;
  std::string weights;
  int iters = 5;
  std::string estimator = "classic";
  unsigned threads = 0;
};

void add_test_options(CLI::App* cmd, TestOptions& t) {
  cmd->add_option("--null", t.null_kind, "permutation|gamma|gamma-cond|wsp|empirical|reference|poisson|binomial")
      ->check(CLI::IsMember(
          {"permutation", "gamma", "gamma-cond", "wsp", "empirical", "reference", "poisson", "binomial"}));
  cmd->add_option("--trials,-T", t.trials, "number of null trials");
  cmd->add_option("--omega", t.omega, "significance level");
  cmd->add_option("--rmax", t.rmax, "largest radius");
  cmd->add_option("--rstep", t.rstep, "radius spacing");
  cmd->add_option("--seed", t.seed, "base seed");
  cmd->add_option("--reference", t.references, "reference grid(s) for --null reference");
  cmd->add_option("--weights", t.weights, "WSP mark weights, comma separated");
  cmd->add_option("--iters", t.iters, "WSP EM iterations");
  cmd->add_option("--estimator", t.estimator, "point estimator for point nulls: classic|edge")
      ->check(CLI::IsMember({"classic", "edge"}));
  cmd->add_option("--threads", t.threads, std::string("worker threads (default: $") + kThreadsEnv + " or all cores)");
}

TestConfig make_config(const TestOptions& t) {
  TestConfig c;
  c.trials = t.trials;
  c.omega = t.omega;
  c.radii = RadiiGrid::uniform(t.rmax, t.rstep);
  c.null_spec.kind = parse_null_kind(t.null_kind);
  if (!t.weights.empty()) c.null_spec.wsp_weights = parse_list(t.weights);
  c.null_spec.wsp_iters = t.iters;
  for (const auto& r : t.references) c.null_spec.references.push_back(read_grid(r));
  if (c.null_spec.kind == NullKind::EmpiricalReference && c.null_spec.references.empty())
    throw InputError("--null reference needs at least one --reference grid");
  c.base_seed = t.seed;
  c.point_estimator = parse_point_estimator(t.estimator);
  c.threads = t.threads;
  return c;
}

std::vector<std::size_t> default_extent(const std::vector<std::size_t>& extent) {
  return extent.empty() ? std::vector<std::size_t>{50, 50} : extent;
}

// ---------------------------------------------------------------------------

int run_simulate(const std::string& generator, const std::string& params_text, std::uint64_t seed,
                 const std::string& out, const std::vector<std::size_t>& extent_opt, double voxel_len) {
  if (out.empty()) throw InputError("--out is required");
  if (generator == "suite") {
    if (!params_text.empty()) throw InputError("the scenario suite takes no --params");
    const auto suite = gen_scenario_suite(seed);
    const fs::path dir(out);
    fs::create_directories(dir);
    std::vector<std::string> paths;
    for (const auto& g : suite) {
      paths.push_back(g.id + ".grid");
      write_text(dir / paths.back(), format_grid(g.grid));
    }
    write_text(dir / "manifest.csv", format_suite_manifest(suite, paths));
    return 0;
  }
  const auto p = parse_params(params_text);
  const auto extent = default_extent(extent_opt);
  const Window window(std::span<const std::size_t>(extent), voxel_len);
  std::optional<VoxelGrid> grid;
  if (generator == "gamma") {
    check_known(p, {"a", "b"});
    grid = sample_gamma_grid({param_num(p, "a", std::nullopt), param_num(p, "b", std::nullopt)}, window, std::nullopt,
                             seed);
  } else if (generator == "wsp") {
    check_known(p, {"weights", "alphas"});
    WSPParams wp{p.count("weights") ? parse_list(p.at("weights")) : default_wsp_weights(), {}};
    if (!p.count("alphas")) throw InputError("missing parameter 'alphas'");
    wp.alphas = parse_list(p.at("alphas"));
    grid = sample_wsp_grid(wp, window, std::nullopt, seed);
  } else if (generator == "poisson") {
    check_known(p, {"lambda"});
    grid = gen_poisson_grid(param_num(p, "lambda", kScenarioLambda), window, seed);
  } else if (generator == "ppgk") {
    check_known(p, {"lambda", "sigma", "margin"});
    const double sigma = param_num(p, "sigma", std::nullopt);
    KernelProcessParams kp{param_num(p, "lambda", kScenarioLambda), sigma, param_num(p, "margin", 4.0 * sigma)};
    grid = gen_ppgk(kp, window, seed);
  } else {
    throw InputError("unknown generator '" + generator + "'");
  }
  write_text(out, format_grid(*grid));
  return 0;
}

int run_fit(const InputOptions& in, const std::string& model, const std::string& weights, int iters,
            const std::string& out) {
  const auto obs = load_observation(in);
  const auto* grid = std::get_if<VoxelGrid>(&obs);
  if (!grid) throw InputError("fit needs a grid input");
  const auto values = detail::active_values(*grid);
  Json j;
  if (model == "gamma") {
    j = to_json(fit_gamma_mle(values, grid->window().voxel_volume()));
  } else {
    const auto w = weights.empty() ? default_wsp_weights() : parse_list(weights);
    const auto fit = fit_wsp_em(round_all_to_representable(values, w), w, iters);
    j = to_json(fit.params);
  }
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_estimate(const InputOptions& in, const std::string& estimator, double rmax, double rstep,
                 const std::string& out) {
  const auto obs = load_observation(in);
  const auto radii = RadiiGrid::uniform(rmax, rstep);
  RipleyCurves curves;
  if (estimator == "kbar") {
    if (const auto* pts = std::get_if<PointSample>(&obs)) curves = k_bar(voxelize(*pts, pts->window().voxel_len()).grid, radii);
    else curves = k_bar(std::get<VoxelGrid>(obs), radii);
  } else {
    const auto* pts = std::get_if<PointSample>(&obs);
    if (!pts) throw InputError("estimator '" + estimator + "' needs a point input");
    curves = estimator == "classic" ? k_point_classic(*pts, radii) : k_hat_edge_corrected(*pts, radii);
  }
  emit(out, format_curves(curves));
  return 0;
}

int run_test_cmd(const InputOptions& in, const TestOptions& t, const std::string& out, const std::string& json_out) {
  const auto obs = load_observation(in);
  const auto result = run_test(obs, make_config(t));
  emit(out, format_result_csv(result));
  if (!json_out.empty()) write_text(json_out, result_json(result).dump(2) + "\n");
  return 0;
}

/// Per-cell seed from the bytes of the cell's input files: independent of
/// manifest order and cell id, and identical inputs give identical results.
std::uint64_t cell_seed(std::uint64_t base, const fs::path& data, const std::string& mask) {
  std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
  auto feed = [&](const std::string& bytes) {
    for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ULL;
  };
  feed(read_text(data));
  if (!mask.empty()) feed("\n#mask\n" + read_text(mask));
  return derive_seed(base, h);
}

int run_profile(const std::string& manifest, const TestOptions& t, const std::vector<std::size_t>& extent,
                double voxel_len, const std::string& out_dir) {
  const auto rows = read_csv_rows(manifest);
  const std::vector<std::string> header{"id", "species", "kind", "time", "path", "mask"};
  if (rows.empty() || rows[0].size() < 5 ||
      !std::equal(rows[0].begin(), rows[0].end(), header.begin(), header.begin() + static_cast<long>(rows[0].size())))
    throw InputError("profile manifest header must be id,species,kind,time,path[,mask]");
  const fs::path base = fs::path(manifest).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  struct Cell {
    DeltaRecord record;
    fs::path path;
    std::string mask;
  };
  std::vector<Cell> cells;
  std::map<std::string, int> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (c.size() != rows[0].size()) throw InputError("manifest row " + std::to_string(i) + " has the wrong column count");
    if (seen[c[0]]++) throw InputError("duplicate manifest id '" + c[0] + "'");
    Cell cell{{c[0], c[1], parse_molecule_kind(c[2]), parse_double(c[3], "time"), 0.0}, resolve(c[4]), ""};
    if (c.size() > 5 && !c[5].empty()) cell.mask = resolve(c[5]).string();
    cells.push_back(std::move(cell));
  }
  if (cells.empty()) throw InputError("manifest lists no cells");

  TestConfig config = make_config(t);
  const unsigned outer = config.threads == 0 ? default_thread_count() : config.threads;
  config.threads = 1;
  parallel_for(cells.size(), outer, [&](std::size_t i) {
    TestConfig cfg = config;
    cfg.base_seed = cell_seed(t.seed, cells[i].path, cells[i].mask);
    const auto obs = load_observation(cells[i].path.string(), "auto", extent, voxel_len, cells[i].mask);
    cells[i].record.delta = run_test(obs, cfg).delta;
  });

  std::vector<DeltaRecord> records;
  for (const auto& c : cells) records.push_back(c.record);
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  const fs::path dir(out_dir);
  write_text(dir / "deltas.csv", format_deltas(records));
  write_text(dir / "profiles.csv", format_profiles(build_profiles(records)));
  return 0;
}

int run_analyze(const std::string& deltas, const std::string& out_dir) {
  const auto records = read_deltas(deltas);
  const auto profiles = build_profiles(records);
  const auto rep = analyze_pairings(profiles);
  const fs::path dir(out_dir);

  std::string matrix = "mRNA";
  for (const auto& p : rep.protein_species) matrix += "," + p;
  matrix += "\n";
  for (std::size_t i = 0; i < rep.mrna_species.size(); ++i) {
    matrix += rep.mrna_species[i];
    for (double r : rep.correlations[i]) matrix += "," + fmt(r);
    matrix += "\n";
  }
  write_text(dir / "correlations.csv", matrix);

  std::string pairs = "mRNA,protein,r,corresponding\n";
  for (std::size_t i = 0; i < rep.mrna_species.size(); ++i)
    for (std::size_t j = 0; j < rep.protein_species.size(); ++j)
      pairs += rep.mrna_species[i] + "," + rep.protein_species[j] + "," + fmt(rep.correlations[i][j]) + "," +
               (rep.mrna_species[i] == rep.protein_species[j] ? "1" : "0") + "\n";
  write_text(dir / "pairs.csv", pairs);

  std::string z = "species,r,z\n";
  for (const auto& pz : rep.zscores) z += pz.species + "," + fmt(pz.r) + "," + fmt(pz.z) + "\n";
  write_text(dir / "zscores.csv", z);

  Json j;
  j["mann_whitney_p"] = rep.mann_whitney_p ? Json(*rep.mann_whitney_p) : Json(nullptr);
  j["mann_whitney_method"] = rep.corresponding.size() + rep.others.size() <= kMannWhitneyExactLimit
                                 ? "exact enumeration"
                                 : "normal approximation with tie and continuity correction";
  j["n_corresponding"] = rep.corresponding.size();
  j["n_other"] = rep.others.size();
  Json zs = Json::array();
  for (const auto& pz : rep.zscores) zs.push_back({{"species", pz.species}, {"r", pz.r}, {"z", pz.z}});
  j["zscores"] = zs;
  j["zscore_std"] = "population";
  j["zscore_comparisons"] = "pairs sharing exactly one member with the tested pair; only the tested pair excluded";
  j["time_matching"] = "k-th mRNA time point paired with k-th protein time point";
  write_text(dir / "report.json", j.dump(2) + "\n");
  return 0;
}

/// Reads the r and H_star columns of a result CSV.
Series read_hstar_series(const std::string& path) {
  const auto rows = read_csv_rows(path);
  if (rows.empty() || rows[0].size() != 6 || rows[0][0] != "r" || rows[0][5] != "H_star")
    throw InputError(path + " is not a result CSV");
  Series s{fs::path(path).stem().string(), {}, {}};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == "delta") continue;
    if (rows[i].size() != 6) throw InputError("malformed result row in " + path);
    s.x.push_back(parse_double(rows[i][0], "r"));
    s.y.push_back(parse_double(rows[i][5], "H_star"));
  }
  return s;
}

int run_plot(const std::vector<std::string>& results, const std::string& deltas, const std::string& title,
             const std::string& out) {
  if (out.empty()) throw InputError("--out is required");
  if (results.empty() == deltas.empty()) throw InputError("plot needs either --result files or --deltas");
  if (!results.empty()) {
    std::vector<Series> series;
    for (const auto& r : results) series.push_back(read_hstar_series(r));
    write_text(out, svg_hstar_chart(series, title.empty() ? "clustering index H*" : title));
    return 0;
  }
  std::vector<std::string> labels;
  std::vector<double> values;
  for (const auto& p : build_profiles(read_deltas(deltas)))
    for (std::size_t i = 0; i < p.times.size(); ++i) {
      labels.push_back(p.species + " " + to_string(p.kind) + " " + fmt(p.times[i]) + "h");
      values.push_back(p.medians[i]);
    }
  write_text(out, svg_bar_chart(labels, values, title.empty() ? "median degree of clustering" : title));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ripley K/H statistics, clustering index tests and profile analysis"};
  app.require_subcommand(1);

  std::string generator = "suite", params, out, json_out, model = "gamma", weights, estimator = "kbar", manifest,
              deltas, title;
  std::uint64_t seed = 1;
  std::vector<std::size_t> extent;
  double voxel_len = 1.0, rmax = 10.0, rstep = 1.0;
  int iters = 5;
  std::vector<std::string> results;
  InputOptions in;
  TestOptions topt;

  auto* sim = app.add_subcommand("simulate", "generate synthetic grids");
  sim->add_option("--generator", generator, "suite|gamma|wsp|poisson|ppgk")
      ->check(CLI::IsMember({"suite", "gamma", "wsp", "poisson", "ppgk"}));
  sim->add_option("--params", params, "generator parameters, key=value;key=value");
  sim->add_option("--seed", seed, "seed");
  sim->add_option("--out,-o", out, "output grid file (directory for the suite)")->required();
  sim->add_option("--extent", extent, "window extent in voxels (default 50,50)")->delimiter(',');
  sim->add_option("--voxel-len", voxel_len, "voxel side length");

  auto* fit = app.add_subcommand("fit", "fit a CSR marginal model to a grid");
  add_input_options(fit, in);
  fit->add_option("--model", model, "gamma|wsp")->check(CLI::IsMember({"gamma", "wsp"}));
  fit->add_option("--weights", weights, "WSP mark weights, comma separated");
  fit->add_option("--iters", iters, "EM iterations");
  fit->add_option("--out,-o", out, "output JSON (stdout if omitted)");

  auto* est = app.add_subcommand("estimate", "K, L and H curves");
  add_input_options(est, in);
  est->add_option("--estimator", estimator, "kbar|classic|edge")->check(CLI::IsMember({"kbar", "classic", "edge"}));
  est->add_option("--rmax", rmax, "largest radius");
  est->add_option("--rstep", rstep, "radius spacing");
  est->add_option("--out,-o", out, "output CSV (stdout if omitted)");

  auto* test = app.add_subcommand("test", "clustering-index test against a CSR null");
  add_input_options(test, in);
  add_test_options(test, topt);
  test->add_option("--out,-o", out, "result CSV (stdout if omitted)");
  test->add_option("--json", json_out, "result JSON with configuration echo");

  auto* prof = app.add_subcommand("profile", "degree of clustering for every cell of a manifest");
  prof->add_option("--manifest", manifest, "CSV with id,species,kind,time,path[,mask]")->required();
  add_test_options(prof, topt);
  prof->add_option("--extent", extent, "window extent for point inputs")->delimiter(',');
  prof->add_option("--voxel-len", voxel_len, "voxel side length for point inputs");
  prof->add_option("--out-dir", out, "directory for deltas.csv and profiles.csv")->required();

  auto* ana = app.add_subcommand("analyze", "profile correlations, Mann-Whitney test and pair Z-scores");
  ana->add_option("--deltas", deltas, "deltas.csv written by profile")->required();
  ana->add_option("--out-dir", out, "output directory")->required();

  auto* plot = app.add_subcommand("plot", "SVG charts of H* curves or median deltas");
  plot->add_option("--result", results, "result CSV(s) from test");
  plot->add_option("--deltas", deltas, "deltas.csv for a bar chart");
  plot->add_option("--title", title, "chart title");
  plot->add_option("--out,-o", out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*sim) return run_simulate(generator, params, seed, out, extent, voxel_len);
    if (*fit) return run_fit(in, model, weights, iters, out);
    if (*est) return run_estimate(in, estimator, rmax, rstep, out);
    if (*test) return run_test_cmd(in, topt, out, json_out);
    if (*prof) return run_profile(manifest, topt, extent, voxel_len, out);
    if (*ana) return run_analyze(deltas, out);
    if (*plot) return run_plot(results, deltas, title, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
