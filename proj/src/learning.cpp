#include "tvlearn/learning.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "tvlearn/parallel.hpp"
#include "tvlearn/tv_ops.hpp"

namespace tvlearn {

std::string to_string(ModelKind kind) {
  return kind == ModelKind::quadratic ? "quadratic" : "constant";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "quadratic") return ModelKind::quadratic;
  if (name == "constant") return ModelKind::constant;
  throw std::invalid_argument("unknown model kind: " + name);
}

QuadraticModel zero_model(ModelKind kind, int patch_width) {
  const long m = kind == ModelKind::quadratic
                     ? static_cast<long>(patch_width) * patch_width + 1
                     : 1;
  return {kind, patch_width, Eigen::MatrixXd::Zero(m, m)};
}

Eigen::VectorXd lift_patch(const ScalarField& xi) {
  Eigen::VectorXd bar(xi.size() + 1);
  for (int k = 0; k < xi.size(); ++k) bar[k] = xi.values[k];
  bar[xi.size()] = 1.0;
  return bar;
}

double model_alpha(const QuadraticModel& model, const ScalarField& xi) {
  if (model.kind == ModelKind::constant) return std::max(0.0, model.a(0, 0));
  if (model.a.rows() != xi.size() + 1)
    throw std::invalid_argument("model_alpha: model dimension does not match patch size");
  const Eigen::VectorXd bar = lift_patch(xi);
  return std::max(0.0, bar.dot(model.a * bar));
}

LearnPoint& LearnPoint::operator+=(const LearnPoint& o) {
  assert(duals.size() == o.duals.size());
  for (std::size_t i = 0; i < duals.size(); ++i) duals[i] += o.duals[i];
  a += o.a;
  return *this;
}

LearnPoint& LearnPoint::operator-=(const LearnPoint& o) {
  assert(duals.size() == o.duals.size());
  for (std::size_t i = 0; i < duals.size(); ++i) duals[i] -= o.duals[i];
  a -= o.a;
  return *this;
}

LearnPoint& LearnPoint::operator*=(double t) {
  for (auto& v : duals) v *= t;
  a *= t;
  return *this;
}

LearnPoint operator+(LearnPoint a, const LearnPoint& b) { return a += b; }
LearnPoint operator-(LearnPoint a, const LearnPoint& b) { return a -= b; }
LearnPoint operator*(double t, LearnPoint a) { return a *= t; }

LearningProblem::LearningProblem(const TrainingSet& data, const TrainConfig& cfg) {
  if (data.pairs.empty()) throw std::invalid_argument("learning: empty dataset");
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("learning: lambda must be > 0");
  if (cfg.lipschitz && !(*cfg.lipschitz > 0.0))
    throw std::invalid_argument("learning: lipschitz must be > 0");

  const int n_patches = static_cast<int>(data.pairs.size());
  patch_width_ = data.patch_width;
  lambda_ = cfg.lambda;
  lipschitz_ = cfg.lipschitz.value_or(8.0 / n_patches);
  df_kind_ = cfg.df_kind;
  threads_ = std::max(1, cfg.threads);

  xis_.reserve(n_patches);
  lifted_.reserve(n_patches);
  tv_gt_.reserve(n_patches);
  for (const auto& pair : data.pairs) {
    if (pair.ground_truth.width != patch_width_ || pair.noisy.width != patch_width_)
      throw std::invalid_argument("learning: inconsistent patch dimensions");
    xis_.push_back(pair.noisy);
    lifted_.push_back(cfg.model_kind == ModelKind::quadratic
                          ? lift_patch(pair.noisy)
                          : Eigen::VectorXd::Ones(1).eval());
    tv_gt_.push_back(tv(pair.ground_truth));
  }

  const long m = lifted_[0].size();
  grad_a_ = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < n_patches; ++i)
    grad_a_.noalias() += (tv_gt_[i] / n_patches) * (lifted_[i] * lifted_[i].transpose());
}

double LearningProblem::alpha_of(const Eigen::MatrixXd& a, int i) const {
  return std::max(0.0, lifted_[i].dot(a * lifted_[i]));
}

LearnPoint LearningProblem::zero_point() const {
  LearnPoint x;
  x.duals.assign(xis_.size(), VectorField(patch_width_));
  x.a = Eigen::MatrixXd::Zero(grad_a_.rows(), grad_a_.cols());
  return x;
}

LearnPoint LearningProblem::grad_f(const Point& x) const {
  const int n = patch_count();
  LearnPoint g;
  g.duals.resize(n);
  g.a = grad_a_;
  parallel_for(n, threads_, [&](int i) {
    g.duals[i] = (-1.0 / n) * grad(div(x.duals[i]) + xis_[i]);
  });
  return g;
}

LearnPoint LearningProblem::hybrid_argmin(const Point& x, const Point& grad_x) const {
  const int n = patch_count();

  // Per-patch pull c_i = TV(gt_i) - TV(div v_i + xi_i). The gradient of the
  // fit term is -(1/N) grad(div v_i + xi_i), so the per-patch direction field
  // is recovered from grad_x without another stencil pass.
  std::vector<double> c(n);
  parallel_for(n, threads_, [&](int i) {
    c[i] = tv_gt_[i] - static_cast<double>(n) * norm_1_2(grad_x.duals[i]);
  });

  // Model update: project the pulled matrix back onto the PSD cone.
  // The rank-one reduction runs sequentially in patch order so results do not
  // depend on the thread count.
  Eigen::MatrixXd pulled = x.a;
  for (int i = 0; i < n; ++i)
    pulled.noalias() -= (c[i] / (lambda_ * n)) * (lifted_[i] * lifted_[i].transpose());
  LearnPoint cand;
  cand.a = psd_project(pulled, &psd_stats_);

  // Dual updates: per pixel, the candidate saturates the updated ball along
  // the current gradient direction; zero-gradient pixels stay at zero.
  cand.duals.assign(n, VectorField(patch_width_));
  parallel_for(n, threads_, [&](int i) {
    const double alpha_i = alpha_of(cand.a, i);
    // grad_x.duals[i] = -(1/N) grad(div v_i + xi_i); undo the sign, the 1/N
    // scale drops out of the normalization.
    const VectorField& dir = grad_x.duals[i];
    VectorField& out = cand.duals[i];
    for (std::size_t k = 0; k < dir.x.size(); ++k) {
      const double gx = -dir.x[k];
      const double gy = -dir.y[k];
      const double norm = std::sqrt(gx * gx + gy * gy);
      if (norm > 0.0) {
        out.x[k] = alpha_i * gx / norm;
        out.y[k] = alpha_i * gy / norm;
      }
    }
  });
  return cand;
}

double LearningProblem::df(const Point& x, const Point& y) const {
  const int n = patch_count();
  if (df_kind_ == LearnDfKind::divergence) {
    std::vector<double> sq(n);
    parallel_for(n, threads_, [&](int i) { sq[i] = norm_sq(div(x.duals[i] - y.duals[i])); });
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += sq[i];
    return total / (2.0 * n);
  }
  double sq = (x.a - y.a).squaredNorm();
  for (std::size_t i = 0; i < x.duals.size(); ++i) sq += norm_sq(x.duals[i] - y.duals[i]);
  return 0.5 * lipschitz_ * sq;
}

double LearningProblem::p_norm_sq(const Point& x) const {
  return lambda_ * x.a.squaredNorm();
}

double LearningProblem::f_value(const Point& x) const {
  const int n = patch_count();
  std::vector<double> fit(n);
  parallel_for(n, threads_, [&](int i) {
    fit[i] = norm_sq(div(x.duals[i]) + xis_[i]);
  });
  double fit_sum = 0.0;
  for (int i = 0; i < n; ++i) fit_sum += fit[i];
  return fit_sum / (2.0 * n) + x.a.cwiseProduct(grad_a_).sum();
}

double LearningProblem::max_dual_violation(const Point& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < patch_count(); ++i) {
    const double bound = alpha_of(x.a, i) * (1.0 + kDualFeasTol);
    worst = std::max(worst, norm_inf_2(x.duals[i]) - bound);
  }
  return worst;
}

double LearningProblem::g_value(const Point& x) const {
  if (max_dual_violation(x) > 0.0)
    throw std::runtime_error(
        "learning: infeasible state (dual field outside its model ball)");
  return 0.0;
}

void LearningProblem::retract(Point& x) const {
  const int n = patch_count();
  parallel_for(n, threads_, [&](int i) {
    const double alpha_i = alpha_of(x.a, i);
    VectorField& v = x.duals[i];
    for (std::size_t k = 0; k < v.x.size(); ++k) {
      const double norm = std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k]);
      if (norm > alpha_i) {
        const double s = alpha_i / norm;
        v.x[k] *= s;
        v.y[k] *= s;
      }
    }
  });
}

double LearningProblem::dot(const Point& x, const Point& y) const {
  double s = x.a.cwiseProduct(y.a).sum();
  for (std::size_t i = 0; i < x.duals.size(); ++i) s += tvlearn::dot(x.duals[i], y.duals[i]);
  return s;
}

LearningState train(const TrainingSet& data, const TrainConfig& cfg) {
  LearningProblem problem(data, cfg);
  SolverConfig solver_cfg{cfg.residual_tolerance, cfg.max_iterations, cfg.trace_every};

  FeasibilityStats stats;
  auto audit = [&](long, const LearnPoint& x) {
    stats.max_dual_violation = std::max(stats.max_dual_violation,
                                        problem.max_dual_violation(x));
    const double mineig = min_eigenvalue(x.a);
    stats.min_psd_margin =
        std::min(stats.min_psd_margin, mineig + 1e-9 * x.a.norm());
    ++stats.checks;
  };

  auto solved = hpgcg_solve(problem, problem.zero_point(), solver_cfg, audit);

  LearningState state;
  state.model = {cfg.model_kind, data.patch_width, std::move(solved.point.a)};
  state.duals = std::move(solved.point.duals);
  state.status = solved.status;
  state.iterations = solved.iterations;
  state.final_residual = solved.final_residual;
  state.trace = std::move(solved.trace);
  state.trace.oracle_warnings = problem.psd_clamp_warnings();
  state.feasibility = stats;
  return state;
}

double train_constant(const TrainingSet& data, TrainConfig cfg) {
  cfg.model_kind = ModelKind::constant;
  return train(data, cfg).model.a(0, 0);
}

namespace {

LearnPoint to_point(const std::vector<VectorField>& duals, const QuadraticModel& model) {
  LearnPoint x;
  x.duals = duals;
  x.a = model.a;
  return x;
}

}  // namespace

LearnCandidate candidate_step(const std::vector<VectorField>& duals,
                              const QuadraticModel& model, const TrainingSet& data,
                              const TrainConfig& cfg) {
  LearningProblem problem(data, cfg);
  const LearnPoint x = to_point(duals, model);
  LearnPoint cand = problem.hybrid_argmin(x, problem.grad_f(x));
  return {{cfg.model_kind, data.patch_width, std::move(cand.a)}, std::move(cand.duals)};
}

double learning_residual(const std::vector<VectorField>& duals,
                         const QuadraticModel& model, const LearnCandidate& candidate,
                         const TrainingSet& data, const TrainConfig& cfg) {
  LearningProblem problem(data, cfg);
  return residual(problem, to_point(duals, model),
                  to_point(candidate.duals, candidate.model));
}

double learning_objective(const std::vector<VectorField>& duals,
                          const QuadraticModel& model, const TrainingSet& data,
                          const TrainConfig& cfg) {
  LearningProblem problem(data, cfg);
  const LearnPoint x = to_point(duals, model);
  return problem.f_value(x) + problem.g_value(x);
}

}  // namespace tvlearn
