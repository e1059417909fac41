#include "tvlearn/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "tvlearn/parallel.hpp"

namespace tvlearn {

using nlohmann::json;

double best_alpha(const PatchPair& pair, const BestAlphaConfig& cfg) {
  TrainingSet single;
  single.patch_width = pair.noisy.width;
  single.pairs.push_back(pair);
  TrainConfig tc;
  tc.lambda = cfg.lambda;
  tc.residual_tolerance = cfg.residual_tolerance;
  tc.max_iterations = cfg.max_iterations;
  tc.trace_every = cfg.max_iterations;  // endpoints only
  tc.model_kind = ModelKind::constant;
  return train_constant(single, tc);
}

std::vector<double> best_alphas(const TrainingSet& testset, const BestAlphaConfig& cfg,
                                const std::string& cache_path, std::uint32_t dataset_crc,
                                int threads) {
  if (!cache_path.empty()) {
    std::ifstream in(cache_path);
    if (in) {
      try {
        json j;
        in >> j;
        if (j.value("format", "") == "tvlearn-alpha-cache" &&
            j.at("dataset_crc32").get<std::uint32_t>() == dataset_crc &&
            j.at("lambda").get<double>() == cfg.lambda &&
            j.at("residual_tolerance").get<double>() == cfg.residual_tolerance &&
            j.at("max_iterations").get<long>() == cfg.max_iterations &&
            j.at("alphas").size() == testset.pairs.size()) {
          return j.at("alphas").get<std::vector<double>>();
        }
      } catch (const json::exception&) {
        // stale or foreign cache; recompute
      }
    }
  }

  std::vector<double> alphas(testset.pairs.size());
  parallel_for(static_cast<int>(testset.pairs.size()), threads,
               [&](int i) { alphas[i] = best_alpha(testset.pairs[i], cfg); });

  if (!cache_path.empty()) {
    json j{{"format", "tvlearn-alpha-cache"},
           {"dataset_crc32", dataset_crc},
           {"lambda", cfg.lambda},
           {"residual_tolerance", cfg.residual_tolerance},
           {"max_iterations", cfg.max_iterations},
           {"alphas", alphas}};
    std::ofstream out(cache_path);
    if (out) out << j.dump(2) << "\n";
  }
  return alphas;
}

double mse_alpha(const QuadraticModel& model, const TrainingSet& testset,
                 const std::vector<double>& oracle_alphas) {
  if (oracle_alphas.size() != testset.pairs.size())
    throw std::invalid_argument("mse_alpha: oracle/test set size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < testset.pairs.size(); ++i) {
    const double diff = oracle_alphas[i] - model_alpha(model, testset.pairs[i].noisy);
    sum += diff * diff;
  }
  return sum / static_cast<double>(testset.pairs.size());
}

double mse_u(const QuadraticModel& model, const TrainingSet& testset,
             const SolverConfig& denoise_cfg, const std::vector<double>* oracle_alphas,
             std::vector<PatchEval>* records, int threads) {
  if (oracle_alphas && oracle_alphas->size() != testset.pairs.size())
    throw std::invalid_argument("mse_u: oracle/test set size mismatch");

  const int n = static_cast<int>(testset.pairs.size());
  std::vector<PatchEval> evals(n);
  parallel_for(n, threads, [&](int i) {
    const auto& pair = testset.pairs[i];
    PatchEval& e = evals[i];
    e.alpha_model = std::max(model_alpha(model, pair.noisy), 1e-12);
    e.alpha_star = oracle_alphas ? (*oracle_alphas)[i] : 0.0;
    const RofInstance instance(pair.noisy, e.alpha_model);
    const auto result = denoise(instance, denoise_cfg);
    e.converged = result.status == SolveStatus::converged;
    e.sq_err_u = norm_sq(pair.ground_truth - result.pd.u);
  });

  double sum = 0.0;
  for (const auto& e : evals) sum += e.sq_err_u;
  if (records) records->insert(records->end(), evals.begin(), evals.end());
  return sum / static_cast<double>(n);
}

void write_report_json(const EvaluationReport& report, const std::string& path) {
  json models = json::array();
  for (const auto& m : report.models)
    models.push_back({{"label", m.label}, {"mse_alpha", m.mse_alpha}, {"mse_u", m.mse_u}});
  json patches = json::array();
  for (const auto& e : report.per_patch)
    patches.push_back({{"alpha_star", e.alpha_star},
                       {"alpha_model", e.alpha_model},
                       {"sq_err_u", e.sq_err_u},
                       {"converged", e.converged}});
  json j{{"format", "tvlearn-report"},
         {"models", models},
         {"per_patch", patches},
         {"denoise_tolerance", report.denoise_tolerance},
         {"denoise_max_iterations", report.denoise_max_iterations},
         {"oracle",
          {{"lambda", report.oracle.lambda},
           {"residual_tolerance", report.oracle.residual_tolerance},
           {"max_iterations", report.oracle.max_iterations}}}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_report_csv(const EvaluationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot write " + path);
  out << "patch,alpha_star,alpha_model,sq_err_u,converged\n";
  char buf[128];
  for (std::size_t i = 0; i < report.per_patch.size(); ++i) {
    const auto& e = report.per_patch[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d\n", i, e.alpha_star,
                  e.alpha_model, e.sq_err_u, e.converged ? 1 : 0);
    out << buf;
  }
}

}  // namespace tvlearn
