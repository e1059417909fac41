// Evaluation of trained parameter models: per-patch best-constant reference
// parameters, parameter MSE, reconstruction MSE, and report serialization.

#ifndef TVLEARN_METRICS_HPP
#define TVLEARN_METRICS_HPP

#include <string>
#include <vector>

#include "tvlearn/dataset.hpp"
#include "tvlearn/learning.hpp"
#include "tvlearn/rof.hpp"

namespace tvlearn {

struct BestAlphaConfig {
  double lambda = 50.0;
  double residual_tolerance = 1e-5;
  long max_iterations = 100000;
};

// Best non-negative constant parameter for a single patch pair: the
// constant-model training problem on the singleton dataset.
double best_alpha(const PatchPair& pair, const BestAlphaConfig& cfg);

// Reference parameters for a whole test set; cached to disk keyed by the
// dataset checksum and the oracle settings (the many-iteration protocol is
// expensive). Pass an empty cache path to skip caching.
std::vector<double> best_alphas(const TrainingSet& testset, const BestAlphaConfig& cfg,
                                const std::string& cache_path, std::uint32_t dataset_crc,
                                int threads = 1);

// Mean squared error between reference and predicted parameters.
double mse_alpha(const QuadraticModel& model, const TrainingSet& testset,
                 const std::vector<double>& oracle_alphas);

struct PatchEval {
  double alpha_star = 0.0;   // best constant for this patch
  double alpha_model = 0.0;  // model prediction
  double sq_err_u = 0.0;     // ||gt - denoise(noisy, alpha_model)||^2
  bool converged = true;
};

// Mean squared reconstruction error under the model's predicted parameters;
// predictions of exactly zero are floored at 1e-12 so the denoiser stays
// well-posed. Per-patch records are appended to *records when given.
double mse_u(const QuadraticModel& model, const TrainingSet& testset,
             const SolverConfig& denoise_cfg, const std::vector<double>* oracle_alphas = nullptr,
             std::vector<PatchEval>* records = nullptr, int threads = 1);

struct ModelScores {
  std::string label;
  double mse_alpha = 0.0;
  double mse_u = 0.0;
};

struct EvaluationReport {
  std::vector<ModelScores> models;    // first entry is the primary model
  std::vector<PatchEval> per_patch;   // records for the primary model
  double denoise_tolerance = 0.0;
  long denoise_max_iterations = 0;
  BestAlphaConfig oracle;
};

void write_report_json(const EvaluationReport& report, const std::string& path);
void write_report_csv(const EvaluationReport& report, const std::string& path);

}  // namespace tvlearn

#endif  // TVLEARN_METRICS_HPP
