// tvlearn command-line front end: dataset creation, model training, patch
// denoising, model evaluation, and certificate checks. All outputs are
// deterministic for fixed inputs, seed and thread count; on error, partial
// outputs are removed and a JSON error object goes to stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tvlearn/dataset.hpp"
#include "tvlearn/learning.hpp"
#include "tvlearn/metrics.hpp"
#include "tvlearn/model_io.hpp"
#include "tvlearn/parallel.hpp"
#include "tvlearn/pgm.hpp"
#include "tvlearn/rof.hpp"
#include "tvlearn/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tvlearn;

namespace {

// Files created by the running subcommand; deleted when the command fails so
// no partial outputs survive.
class OutputGuard {
 public:
  void track(const std::string& path) { paths_.push_back(path); }
  void commit() { paths_.clear(); }
  ~OutputGuard() {
    for (const auto& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  std::vector<std::string> paths_;
};

struct CliError : std::runtime_error {
  int code;
  explicit CliError(const std::string& msg, int exit_code = 1)
      : std::runtime_error(msg), code(exit_code) {}
};

int default_threads() {
  if (const char* env = std::getenv("TVLEARN_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

void write_text(OutputGuard& guard, const std::string& path, const std::string& text) {
  guard.track(path);
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path);
  out << text;
  if (!out) throw CliError("write failed for " + path);
}

void write_trace_csv(OutputGuard& guard, const std::string& path, const SolveTrace& trace) {
  guard.track(path);
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path);
  out << "k,residual,theta,objective\n";
  char buf[160];
  for (const auto& e : trace.entries) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", e.k, e.residual, e.theta,
                  e.objective);
    out << buf;
  }
  if (!out) throw CliError("write failed for " + path);
}

// ---------------------------------------------------------------- make-dataset

struct MakeDatasetArgs {
  std::string images_dir;
  std::string out_base;
  int patch_size = 16;
  int stride = 16;
  double noise_variance = 0.05;
  std::uint64_t seed = 0;
};

int run_make_dataset(const MakeDatasetArgs& args) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.images_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm")
      files.push_back(entry.path());
  }
  if (files.empty()) throw CliError("no .pgm images found in " + args.images_dir, 2);
  std::sort(files.begin(), files.end());

  PatchDataset ds;
  ds.data.patch_width = args.patch_size;
  for (const auto& file : files) {
    const GrayImage img = read_pgm(file.string());
    for (auto& patch : extract_patches(img, args.patch_size, args.stride)) {
      PatchPair pair;
      pair.noisy = add_noise(patch, args.noise_variance,
                             args.seed + 0x9E3779B97F4A7C15ull * ds.data.pairs.size());
      pair.ground_truth = std::move(patch);
      ds.data.pairs.push_back(std::move(pair));
    }
  }
  if (ds.data.pairs.empty()) throw CliError("images yielded no patches", 2);

  ds.manifest.noise_variance = args.noise_variance;
  ds.manifest.seed = args.seed;
  ds.manifest.noise_algorithm = "mt19937_64-box-muller; per-patch seed = seed + index * 0x9E3779B97F4A7C15";
  ds.manifest.source = std::to_string(files.size()) + " PGM image(s) from " + args.images_dir;

  OutputGuard guard;
  guard.track(args.out_base + ".json");
  guard.track(args.out_base + ".bin");
  save_dataset(args.out_base, ds);
  guard.commit();
  std::printf("dataset: %ld patches of size %d written to %s.{json,bin}\n",
              ds.manifest.count, args.patch_size, args.out_base.c_str());
  return 0;
}

// ----------------------------------------------------------------------- train

struct TrainArgs {
  std::string dataset;
  std::string out_base;
  std::string trace_path;
  TrainConfig cfg;
  std::string model_kind = "quadratic";
  std::string df_kind = "lipschitz";
  double lipschitz = 0.0;
};

int run_train(const TrainArgs& args) {
  const PatchDataset ds = load_dataset(args.dataset);
  TrainConfig cfg = args.cfg;
  cfg.model_kind = model_kind_from_string(args.model_kind);
  if (args.df_kind == "divergence")
    cfg.df_kind = LearnDfKind::divergence;
  else if (args.df_kind != "lipschitz")
    throw CliError("unknown --df-kind " + args.df_kind, 2);
  if (args.lipschitz > 0.0) cfg.lipschitz = args.lipschitz;

  const LearningState state = train(ds.data, cfg);

  ModelMeta meta;
  meta.lambda = cfg.lambda;
  meta.lipschitz = cfg.lipschitz.value_or(8.0 / static_cast<double>(ds.data.pairs.size()));
  meta.residual_tolerance = cfg.residual_tolerance;
  meta.iterations = state.iterations;
  meta.final_residual = state.final_residual;
  meta.converged = state.status == SolveStatus::converged;

  OutputGuard guard;
  guard.track(args.out_base + ".json");
  guard.track(args.out_base + ".bin");
  save_model(args.out_base, state.model, meta);
  if (!args.trace_path.empty()) write_trace_csv(guard, args.trace_path, state.trace);
  guard.commit();

  std::printf("train: %s model, %ld iterations, residual %.3e (%s)\n",
              args.model_kind.c_str(), state.iterations, state.final_residual,
              meta.converged ? "converged" : "iteration limit");
  return meta.converged ? 0 : 3;
}

// --------------------------------------------------------------------- denoise

struct DenoiseArgs {
  std::string input;
  std::string model_path;
  double alpha = 0.0;
  std::string out_dir;
  double tolerance = 1e-8;
  long max_iterations = 2000000;
  int threads = 1;
};

int run_denoise(const DenoiseArgs& args) {
  const GrayImage noisy = read_pgm(args.input);

  QuadraticModel model;
  bool have_model = false;
  if (!args.model_path.empty()) {
    model = load_model(args.model_path).model;
    have_model = true;
  } else if (!(args.alpha > 0.0)) {
    throw CliError("either --model or --alpha must be given", 2);
  }
  const int p = have_model ? model.patch_width : noisy.rows;

  if (noisy.rows % p != 0 || noisy.cols % p != 0)
    throw CliError("image dimensions " + std::to_string(noisy.rows) + "x" +
                       std::to_string(noisy.cols) + " are not a multiple of the patch size " +
                       std::to_string(p),
                   2);

  OutputGuard guard;
  fs::create_directories(args.out_dir);
  const int tile_rows = noisy.rows / p;
  const int tile_cols = noisy.cols / p;

  GrayImage out(noisy.rows, noisy.cols);
  std::string alphas_csv = "row,col,alpha\n";
  std::vector<ScalarField> tiles;
  for (int ti = 0; ti < tile_rows; ++ti) {
    for (int tj = 0; tj < tile_cols; ++tj) {
      ScalarField patch(p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) patch.at(i, j) = noisy.at(ti * p + i, tj * p + j);
      tiles.push_back(std::move(patch));
    }
  }

  std::vector<ScalarField> denoised(tiles.size());
  std::vector<double> alphas(tiles.size());
  std::vector<bool> converged(tiles.size(), true);
  parallel_for(static_cast<int>(tiles.size()), args.threads, [&](int t) {
    const double a = have_model ? std::max(model_alpha(model, tiles[t]), 1e-12) : args.alpha;
    alphas[t] = a;
    SolverConfig cfg{args.tolerance, args.max_iterations, args.max_iterations};
    const auto result = denoise(RofInstance(tiles[t], a), cfg);
    denoised[t] = result.pd.u;
    converged[t] = result.status == SolveStatus::converged;
  });

  char buf[96];
  for (int ti = 0; ti < tile_rows; ++ti) {
    for (int tj = 0; tj < tile_cols; ++tj) {
      const int t = ti * tile_cols + tj;
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) out.at(ti * p + i, tj * p + j) = denoised[t].at(i, j);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", ti, tj, alphas[t]);
      alphas_csv += buf;
      const auto patch_path =
          (fs::path(args.out_dir) / ("patch_" + std::to_string(ti) + "_" + std::to_string(tj) + ".pgm"))
              .string();
      guard.track(patch_path);
      write_pgm(patch_path, to_image(denoised[t]));
    }
  }

  const auto image_path = (fs::path(args.out_dir) / "denoised.pgm").string();
  guard.track(image_path);
  write_pgm(image_path, out);
  write_text(guard, (fs::path(args.out_dir) / "alphas.csv").string(), alphas_csv);
  guard.commit();

  const long bad = std::count(converged.begin(), converged.end(), false);
  std::printf("denoise: %zu patches -> %s\n", tiles.size(), image_path.c_str());
  if (bad > 0) std::fprintf(stderr, "warning: %ld patches hit the iteration limit\n", bad);
  return 0;
}

// ------------------------------------------------------------------------ eval

struct EvalArgs {
  std::string model_path;
  std::string constant_model_path;
  std::string dataset;
  std::string out_base;
  std::string oracle_cache;
  double tolerance = 1e-8;
  long max_iterations = 2000000;
  BestAlphaConfig oracle;
  double grid_min = 1e-4;
  double grid_max = 1e-1;
  int grid_count = 8;
  int threads = 1;
};

int run_eval(const EvalArgs& args) {
  const PatchDataset ds = load_dataset(args.dataset);
  const LoadedModel primary = load_model(args.model_path);
  if (primary.model.kind == ModelKind::quadratic &&
      primary.model.patch_width != ds.data.patch_width)
    throw CliError("model patch size " + std::to_string(primary.model.patch_width) +
                       " does not match dataset patch size " +
                       std::to_string(ds.data.patch_width),
                   2);

  const auto oracle_alphas =
      best_alphas(ds.data, args.oracle, args.oracle_cache, ds.manifest.payload_crc32,
                  args.threads);

  EvaluationReport report;
  report.denoise_tolerance = args.tolerance;
  report.denoise_max_iterations = args.max_iterations;
  report.oracle = args.oracle;
  const SolverConfig den_cfg{args.tolerance, args.max_iterations, args.max_iterations};

  ModelScores primary_scores;
  primary_scores.label = to_string(primary.model.kind);
  primary_scores.mse_alpha = mse_alpha(primary.model, ds.data, oracle_alphas);
  primary_scores.mse_u = mse_u(primary.model, ds.data, den_cfg, &oracle_alphas,
                               &report.per_patch, args.threads);
  report.models.push_back(primary_scores);

  if (!args.constant_model_path.empty()) {
    const LoadedModel cm = load_model(args.constant_model_path);
    ModelScores scores;
    scores.label = "trained-constant";
    scores.mse_alpha = mse_alpha(cm.model, ds.data, oracle_alphas);
    scores.mse_u = mse_u(cm.model, ds.data, den_cfg, nullptr, nullptr, args.threads);
    report.models.push_back(scores);
  }

  // Geometric grid of fixed constants between grid_min and grid_max.
  for (int g = 0; g < args.grid_count; ++g) {
    const double t = args.grid_count == 1 ? 0.0 : static_cast<double>(g) / (args.grid_count - 1);
    const double value = args.grid_min * std::pow(args.grid_max / args.grid_min, t);
    QuadraticModel constant = zero_model(ModelKind::constant, ds.data.patch_width);
    constant.a(0, 0) = value;
    ModelScores scores;
    char label[48];
    std::snprintf(label, sizeof label, "constant-%.6g", value);
    scores.label = label;
    scores.mse_alpha = mse_alpha(constant, ds.data, oracle_alphas);
    scores.mse_u = mse_u(constant, ds.data, den_cfg, nullptr, nullptr, args.threads);
    report.models.push_back(scores);
  }

  OutputGuard guard;
  guard.track(args.out_base + ".json");
  write_report_json(report, args.out_base + ".json");
  guard.track(args.out_base + ".csv");
  write_report_csv(report, args.out_base + ".csv");
  guard.commit();

  for (const auto& m : report.models)
    std::printf("eval: %-18s mse_alpha=%.6e mse_u=%.6e\n", m.label.c_str(), m.mse_alpha,
                m.mse_u);
  return 0;
}

// ------------------------------------------------------------------- gap-check

struct GapCheckArgs {
  std::string input;
  double alpha = 0.1;
  double tolerance = 1e-12;
  long max_iterations = 10000000;
  std::uint64_t probe_seed = 1;
  int probes = 5;
};

// Reference pair by projected gradient on the dual (step 1/8), which reaches
// very tight gaps on this problem; the decomposition itself is solver-agnostic.
PrimalDualPair reference_pair(const RofInstance& inst, double gap_tol, long max_iter) {
  const int p = inst.xi.width;
  VectorField v(p);
  for (long it = 0; it < max_iter; ++it) {
    const ScalarField r = div(v) + inst.xi;
    if (primal_dual_gap(r, v, inst) < gap_tol) break;
    const VectorField step = grad(r);
    for (std::size_t k = 0; k < v.x.size(); ++k) {
      double vx = v.x[k] + step.x[k] / 8.0;
      double vy = v.y[k] + step.y[k] / 8.0;
      const double norm = std::sqrt(vx * vx + vy * vy);
      if (norm > inst.alpha) {
        vx *= inst.alpha / norm;
        vy *= inst.alpha / norm;
      }
      v.x[k] = vx;
      v.y[k] = vy;
    }
  }
  PrimalDualPair pd;
  pd.u = div(v) + inst.xi;
  pd.v = std::move(v);
  pd.gap = primal_dual_gap(pd.u, pd.v, inst);
  return pd;
}

int run_gap_check(const GapCheckArgs& args) {
  const GrayImage img = read_pgm(args.input);
  if (img.rows != img.cols) throw CliError("gap-check expects a square patch", 2);
  ScalarField xi(img.rows);
  xi.values = img.values;
  const RofInstance inst(xi, args.alpha);

  const PrimalDualPair pd = reference_pair(inst, args.tolerance, args.max_iterations);

  json probes = json::array();
  std::mt19937_64 rng(args.probe_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  bool all_ok = true;

  const auto check_point = [&](const ScalarField& u, const VectorField& v, const char* name) {
    const double gap = primal_dual_gap(u, v, inst);
    const auto d = bregman_decomposition(u, v, pd, inst);
    const double err = std::abs(gap - d.sum());
    const bool ok = err <= 1e-7 * (1.0 + gap);
    all_ok = all_ok && ok;
    probes.push_back({{"name", name},
                      {"gap", gap},
                      {"d_f", d.d_f},
                      {"d_fstar", d.d_fstar},
                      {"d_gstar", d.d_gstar},
                      {"d_g", d.d_g},
                      {"sum", d.sum()},
                      {"identity_error", err},
                      {"ok", ok}});
  };

  check_point(xi, VectorField(xi.width), "data-with-zero-dual");
  check_point(pd.u, pd.v, "solution-pair");
  for (int r = 0; r < args.probes; ++r) {
    ScalarField u(xi.width);
    for (double& x : u.values) x = unif(rng);
    VectorField v(xi.width);
    for (std::size_t k = 0; k < v.x.size(); ++k) {
      const double radius = inst.alpha * std::sqrt(unif(rng));
      const double a = angle(rng);
      v.x[k] = radius * std::cos(a);
      v.y[k] = radius * std::sin(a);
    }
    check_point(u, v, ("random-feasible-" + std::to_string(r)).c_str());
  }

  json out{{"alpha", args.alpha},
           {"patch_size", xi.width},
           {"solution_gap", pd.gap},
           {"probes", probes},
           {"ok", all_ok}};
  std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------ rate-check

struct RateCheckArgs {
  std::string trace_path;
  long k_min = 10;
  long k_max = 5000;
  double factor = 2.0;
};

int run_rate_check(const RateCheckArgs& args) {
  std::ifstream in(args.trace_path);
  if (!in) throw CliError("cannot open " + args.trace_path, 2);
  std::string header;
  std::getline(in, header);
  if (header.rfind("k,residual,theta,objective", 0) != 0)
    throw CliError("not a trace CSV (bad header)", 2);

  std::vector<long> ks;
  std::vector<double> objectives;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long k;
    double residual, theta, objective;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf", &k, &residual, &theta, &objective) != 4)
      throw CliError("malformed trace row: " + line, 2);
    ks.push_back(k);
    objectives.push_back(objective);
  }
  if (ks.size() < 2) throw CliError("trace too short", 2);

  double best = objectives.front();
  for (double o : objectives) best = std::min(best, o);

  // r(k) <= factor * r(k_min) * (k_min / k)^{1/3} for k in [k_min, k_max].
  double r_min = -1.0;
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (ks[i] == args.k_min) r_min = objectives[i] - best;
  if (r_min < 0.0) throw CliError("trace has no row for k_min (need trace_every = 1)", 2);

  bool ok = true;
  double worst_ratio = 0.0;
  long worst_k = args.k_min;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long k = ks[i];
    if (k < args.k_min || k > args.k_max) continue;
    const double bound =
        args.factor * r_min * std::cbrt(static_cast<double>(args.k_min) / k) + 1e-15;
    const double r = objectives[i] - best;
    const double ratio = bound > 0.0 ? r / bound : (r > 0.0 ? 1e300 : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_k = k;
    }
    ok = ok && r <= bound;
  }

  json out{{"ok", ok},
           {"k_min", args.k_min},
           {"k_max", args.k_max},
           {"factor", args.factor},
           {"r_at_k_min", r_min},
           {"worst_ratio", worst_ratio},
           {"worst_k", worst_k}};
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-variation parameter learning toolkit"};
  app.require_subcommand(1);
  const int threads = default_threads();

  MakeDatasetArgs mk;
  auto* mk_cmd = app.add_subcommand("make-dataset", "Extract patches from PGM images and add noise");
  mk_cmd->add_option("--images", mk.images_dir, "Directory of .pgm images")->required();
  mk_cmd->add_option("--out", mk.out_base, "Output dataset base path")->required();
  mk_cmd->add_option("--patch-size", mk.patch_size)->check(CLI::PositiveNumber);
  mk_cmd->add_option("--stride", mk.stride)->check(CLI::PositiveNumber);
  mk_cmd->add_option("--noise-variance", mk.noise_variance)->check(CLI::NonNegativeNumber);
  mk_cmd->add_option("--seed", mk.seed);

  TrainArgs tr;
  tr.cfg.threads = threads;
  auto* tr_cmd = app.add_subcommand("train", "Train a TV-parameter model on a dataset");
  tr_cmd->add_option("--dataset", tr.dataset, "Dataset base path")->required();
  tr_cmd->add_option("--out", tr.out_base, "Output model base path")->required();
  tr_cmd->add_option("--trace", tr.trace_path, "Residual trace CSV path");
  tr_cmd->add_option("--model-kind", tr.model_kind)->check(CLI::IsMember({"quadratic", "constant"}));
  tr_cmd->add_option("--lambda", tr.cfg.lambda)->check(CLI::PositiveNumber);
  tr_cmd->add_option("--tolerance", tr.cfg.residual_tolerance)->check(CLI::PositiveNumber);
  tr_cmd->add_option("--max-iterations", tr.cfg.max_iterations)->check(CLI::PositiveNumber);
  tr_cmd->add_option("--trace-every", tr.cfg.trace_every)->check(CLI::PositiveNumber);
  tr_cmd->add_option("--lipschitz", tr.lipschitz, "Curvature constant (default 8/N)");
  tr_cmd->add_option("--df-kind", tr.df_kind)->check(CLI::IsMember({"lipschitz", "divergence"}));
  tr_cmd->add_option("--threads", tr.cfg.threads)->check(CLI::PositiveNumber);

  DenoiseArgs dn;
  dn.threads = threads;
  auto* dn_cmd = app.add_subcommand("denoise", "Denoise a PGM image patch-by-patch");
  dn_cmd->add_option("--input", dn.input, "Noisy PGM image")->required();
  dn_cmd->add_option("--model", dn.model_path, "Model base path");
  dn_cmd->add_option("--alpha", dn.alpha, "Fixed regularization parameter");
  dn_cmd->add_option("--out-dir", dn.out_dir, "Output directory")->required();
  dn_cmd->add_option("--tolerance", dn.tolerance)->check(CLI::PositiveNumber);
  dn_cmd->add_option("--max-iterations", dn.max_iterations)->check(CLI::PositiveNumber);
  dn_cmd->add_option("--threads", dn.threads)->check(CLI::PositiveNumber);

  EvalArgs ev;
  ev.threads = threads;
  auto* ev_cmd = app.add_subcommand("eval", "Evaluate a model against per-patch best constants");
  ev_cmd->add_option("--model", ev.model_path, "Model base path")->required();
  ev_cmd->add_option("--constant-model", ev.constant_model_path, "Trained constant model");
  ev_cmd->add_option("--dataset", ev.dataset, "Test dataset base path")->required();
  ev_cmd->add_option("--out", ev.out_base, "Report base path")->required();
  ev_cmd->add_option("--oracle-cache", ev.oracle_cache, "Best-alpha cache file");
  ev_cmd->add_option("--tolerance", ev.tolerance, "Denoise residual tolerance")->check(CLI::PositiveNumber);
  ev_cmd->add_option("--max-iterations", ev.max_iterations)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--oracle-lambda", ev.oracle.lambda)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--oracle-tolerance", ev.oracle.residual_tolerance)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--oracle-iterations", ev.oracle.max_iterations)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--grid-min", ev.grid_min)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--grid-max", ev.grid_max)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--grid-count", ev.grid_count)->check(CLI::PositiveNumber);
  ev_cmd->add_option("--threads", ev.threads)->check(CLI::PositiveNumber);

  GapCheckArgs gc;
  auto* gc_cmd = app.add_subcommand("gap-check", "Primal-dual gap and Bregman certificate");
  gc_cmd->add_option("--input", gc.input, "Square noisy PGM patch")->required();
  gc_cmd->add_option("--alpha", gc.alpha)->check(CLI::PositiveNumber);
  gc_cmd->add_option("--tolerance", gc.tolerance, "Gap tolerance for the reference pair")->check(CLI::PositiveNumber);
  gc_cmd->add_option("--max-iterations", gc.max_iterations)->check(CLI::PositiveNumber);
  gc_cmd->add_option("--probes", gc.probes)->check(CLI::NonNegativeNumber);
  gc_cmd->add_option("--probe-seed", gc.probe_seed);

  RateCheckArgs rc;
  auto* rc_cmd = app.add_subcommand("rate-check", "Check the k^{-1/3} decay proxy on a trace CSV");
  rc_cmd->add_option("--trace", rc.trace_path, "Trace CSV from train")->required();
  rc_cmd->add_option("--k-min", rc.k_min)->check(CLI::PositiveNumber);
  rc_cmd->add_option("--k-max", rc.k_max)->check(CLI::PositiveNumber);
  rc_cmd->add_option("--factor", rc.factor)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (mk_cmd->parsed()) return run_make_dataset(mk);
    if (tr_cmd->parsed()) return run_train(tr);
    if (dn_cmd->parsed()) return run_denoise(dn);
    if (ev_cmd->parsed()) return run_eval(ev);
    if (gc_cmd->parsed()) return run_gap_check(gc);
    if (rc_cmd->parsed()) return run_rate_check(rc);
  } catch (const CliError& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
