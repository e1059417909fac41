// Joint training of the TV-parameter model and per-patch dual variables.
//
// The model predicts a per-patch regularization weight alpha(xi) =
// lift(xi)^T A lift(xi) with A symmetric PSD. For the quadratic model the
// lifting is [xi, 1] (dimension n+1); the constant model is the same machinery
// with lifting [1], so A is 1x1 and alpha(xi) = A(0,0) for every patch.
//
// Training minimizes, over A PSD and dual fields v_i with
// ||v_i||_{inf,2} <= alpha(xi_i),
//
//   1/(2N) sum_i ||div v_i + xi_i||^2 + 1/N sum_i alpha(xi_i) TV(gt_i),
//
// by the hybrid solver with metric ||(v, A)||_P^2 = lambda ||A||_F^2. The
// hybrid subproblem has a closed form: one PSD projection for the model and a
// per-pixel normalization for each dual field, so no projection onto the
// coupled feasible set is ever needed.

#ifndef TVLEARN_LEARNING_HPP
#define TVLEARN_LEARNING_HPP

#include <Eigen/Core>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tvlearn/dataset.hpp"
#include "tvlearn/grid.hpp"
#include "tvlearn/psd.hpp"
#include "tvlearn/solver.hpp"

namespace tvlearn {

enum class ModelKind { quadratic, constant };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct QuadraticModel {
  ModelKind kind = ModelKind::quadratic;
  int patch_width = 0;
  Eigen::MatrixXd a;  // symmetric PSD; (n+1)x(n+1) for quadratic, 1x1 for constant

  long dim() const { return a.rows(); }
};

QuadraticModel zero_model(ModelKind kind, int patch_width);

// [xi, 1] as a dense vector; the lifted dimension is patch pixels + 1.
Eigen::VectorXd lift_patch(const ScalarField& xi);

// alpha(xi) = lift^T A lift, clamped at zero (PSD round-off can dip slightly
// negative). Throws on a patch-size mismatch.
double model_alpha(const QuadraticModel& model, const ScalarField& xi);

// Curvature surrogate for the training objective.
enum class LearnDfKind {
  lipschitz,   // D_f(x, y) = L/2 ||x - y||^2 on the joint variable, L = 8/N
  divergence,  // D_f(x, y) = 1/(2N) sum ||div(v_i - w_i)||^2, the exact
               // quadratic gap (f is affine in A); no constant needed
};

struct TrainConfig {
  double lambda = 50.0;  // metric weight: ||(v, A)||_P^2 = lambda ||A||_F^2
  double residual_tolerance = 1e-4;
  long max_iterations = 100000;
  long trace_every = 1;
  ModelKind model_kind = ModelKind::quadratic;
  LearnDfKind df_kind = LearnDfKind::lipschitz;
  std::optional<double> lipschitz;  // curvature constant for D_f; default 8/N
  int threads = 1;
};

// Joint point (v_1, ..., v_N, A) of the training problem.
struct LearnPoint {
  std::vector<VectorField> duals;
  Eigen::MatrixXd a;

  LearnPoint& operator+=(const LearnPoint& o);
  LearnPoint& operator-=(const LearnPoint& o);
  LearnPoint& operator*=(double t);
};

LearnPoint operator+(LearnPoint a, const LearnPoint& b);
LearnPoint operator-(LearnPoint a, const LearnPoint& b);
LearnPoint operator*(double t, LearnPoint a);

// Solver oracle for the training problem. One instance drives one solve; the
// PSD clamp counter makes it not shareable across concurrent solves.
class LearningProblem {
 public:
  using Point = LearnPoint;

  LearningProblem(const TrainingSet& data, const TrainConfig& cfg);

  Point grad_f(const Point& x) const;
  // Closed-form minimizer of the hybrid subproblem; reuses the precomputed
  // gradient for the per-patch fields.
  Point hybrid_argmin(const Point& x, const Point& grad_x) const;
  double df(const Point& x, const Point& y) const;
  double p_norm_sq(const Point& x) const;
  double f_value(const Point& x) const;
  // 0 for feasible points; violations beyond the relative tolerance are an
  // internal error (iterates are convex combinations of feasible points) and
  // throw rather than silently returning +inf.
  double g_value(const Point& x) const;
  double dot(const Point& x, const Point& y) const;
  // Rounds floating-point drift of the dual fields back into their model
  // balls (alpha is linear in A, so exact arithmetic never needs this).
  void retract(Point& x) const;

  Point zero_point() const;

  int patch_count() const { return static_cast<int>(xis_.size()); }
  long lifted_dim() const { return lifted_.empty() ? 0 : lifted_[0].size(); }
  double lambda() const { return lambda_; }
  double lipschitz() const { return lipschitz_; }
  double alpha_of(const Eigen::MatrixXd& a, int i) const;  // clamped at zero
  long psd_clamp_warnings() const { return psd_stats_.clamped; }

  // Largest relative dual-ball violation over the patches (<= 0 when
  // feasible) and the smallest model eigenvalue; used by the training loop to
  // audit recorded iterates.
  double max_dual_violation(const Point& x) const;

 private:
  std::vector<ScalarField> xis_;
  std::vector<Eigen::VectorXd> lifted_;
  std::vector<double> tv_gt_;
  Eigen::MatrixXd grad_a_;  // constant A-gradient: 1/N sum TV(gt_i) lift_i lift_i^T
  double lambda_ = 0.0;
  double lipschitz_ = 0.0;
  LearnDfKind df_kind_ = LearnDfKind::lipschitz;
  int patch_width_ = 0;
  int threads_ = 1;
  mutable PsdProjectStats psd_stats_;
};

struct FeasibilityStats {
  double max_dual_violation = -std::numeric_limits<double>::infinity();
  double min_psd_margin = std::numeric_limits<double>::infinity();  // min_eig + 1e-9 ||A||_F
  long checks = 0;
};

struct LearningState {
  QuadraticModel model;
  std::vector<VectorField> duals;
  SolveStatus status = SolveStatus::converged;
  long iterations = 0;
  double final_residual = 0.0;
  SolveTrace trace;
  FeasibilityStats feasibility;  // audited at every recorded iterate
};

// Algorithm: initialize A = 0, v_i = 0 (feasible) and run the hybrid solver
// on the training problem. Non-convergence is a status, not an error.
LearningState train(const TrainingSet& data, const TrainConfig& cfg);

// Constant-model variant; returns the trained scalar alpha >= 0.
double train_constant(const TrainingSet& data, TrainConfig cfg);

// The pieces of one iteration, exposed for direct inspection: the linearized
// subproblem minimizer at (duals, model), the residual D against a candidate,
// and the training objective.
struct LearnCandidate {
  QuadraticModel model;
  std::vector<VectorField> duals;
};

LearnCandidate candidate_step(const std::vector<VectorField>& duals,
                              const QuadraticModel& model, const TrainingSet& data,
                              const TrainConfig& cfg);

double learning_residual(const std::vector<VectorField>& duals,
                         const QuadraticModel& model, const LearnCandidate& candidate,
                         const TrainingSet& data, const TrainConfig& cfg);

double learning_objective(const std::vector<VectorField>& duals,
                          const QuadraticModel& model, const TrainingSet& data,
                          const TrainConfig& cfg);

}  // namespace tvlearn

#endif  // TVLEARN_LEARNING_HPP
