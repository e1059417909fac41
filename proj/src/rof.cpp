#include "tvlearn/rof.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tvlearn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RofInstance::RofInstance(ScalarField data, double a) : xi(std::move(data)), alpha(a) {
  if (!(alpha > 0.0)) throw std::invalid_argument("RofInstance: alpha must be > 0");
}

VectorField lmo_ball(const VectorField& g_field, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("lmo_ball: alpha must be >= 0");
  VectorField v(g_field.width);
  for (std::size_t k = 0; k < v.x.size(); ++k) {
    const double gx = g_field.x[k];
    const double gy = g_field.y[k];
    const double n = std::sqrt(gx * gx + gy * gy);
    if (n > 0.0) {
      v.x[k] = -alpha * gx / n;
      v.y[k] = -alpha * gy / n;
    }
  }
  return v;
}

double RofDualProblem::df(const Point& v, const Point& w) const {
  const Point diff = v - w;
  if (df_kind == RofDfKind::divergence) return 0.5 * norm_sq(div(diff));
  return 4.0 * norm_sq(diff);
}

double RofDualProblem::g_value(const Point& v) const {
  return norm_inf_2(v) <= instance.alpha * (1.0 + kDualFeasTol) ? 0.0 : kInf;
}

void RofDualProblem::retract(Point& v) const {
  const double alpha = instance.alpha;
  for (std::size_t k = 0; k < v.x.size(); ++k) {
    const double n = std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k]);
    if (n > alpha) {
      v.x[k] *= alpha / n;
      v.y[k] *= alpha / n;
    }
  }
}

DenoiseResult denoise(const RofInstance& instance, const SolverConfig& config,
                      RofDfKind df_kind) {
  RofDualProblem problem{instance, df_kind};
  auto solved = hpgcg_solve(problem, VectorField(instance.xi.width), config);

  DenoiseResult result;
  result.status = solved.status;
  result.iterations = solved.iterations;
  result.trace = std::move(solved.trace);
  result.pd.u = div(solved.point) + instance.xi;
  result.pd.v = std::move(solved.point);
  result.pd.gap = primal_dual_gap(result.pd.u, result.pd.v, instance);
  return result;
}

double primal_dual_gap(const ScalarField& u, const VectorField& v,
                       const RofInstance& instance) {
  if (norm_inf_2(v) > instance.alpha * (1.0 + kDualFeasTol)) return kInf;
  const ScalarField& xi = instance.xi;
  const double f_u = 0.5 * norm_sq(u - xi);
  const double g_grad_u = instance.alpha * tv(u);
  const double fstar = 0.5 * norm_sq(div(v) + xi) - 0.5 * norm_sq(xi);
  return f_u + g_grad_u + fstar;
}

BregmanDecomposition bregman_decomposition(const ScalarField& u,
                                           const VectorField& v,
                                           const PrimalDualPair& pd,
                                           const RofInstance& instance) {
  const ScalarField& xi = instance.xi;
  const double alpha = instance.alpha;

  // Validate that pd really is a primal-dual pair: near-zero gap, dual
  // feasibility, and the recovery identity div v + xi = u within the slack
  // the gap itself allows.
  const double gap_scale = 1.0 + 0.5 * norm_sq(xi);
  if (!(pd.gap >= 0.0) || pd.gap > 1e-10 * gap_scale)
    throw std::invalid_argument("bregman_decomposition: not a primal-dual pair (gap too large)");
  if (norm_inf_2(pd.v) > alpha * (1.0 + kDualFeasTol))
    throw std::invalid_argument("bregman_decomposition: not a primal-dual pair (dual infeasible)");
  const double recovery = std::sqrt(norm_sq(div(pd.v) + xi - pd.u));
  if (recovery > std::sqrt(2.0 * pd.gap) + 1e-9)
    throw std::invalid_argument("bregman_decomposition: not a primal-dual pair (recovery identity fails)");

  BregmanDecomposition out;
  out.d_f = 0.5 * norm_sq(u - pd.u);

  const ScalarField div_v = div(v);
  const ScalarField div_vopt = div(pd.v);
  const auto fstar = [&](const ScalarField& w) {
    return 0.5 * norm_sq(w + xi) - 0.5 * norm_sq(xi);
  };
  out.d_fstar = fstar(div_v) - fstar(div_vopt) - dot(pd.u, div_v - div_vopt);

  // Indicator values vanish for feasible arguments, so only the linear term
  // of the g* divergence remains; an infeasible probe makes it +inf.
  if (norm_inf_2(v) > alpha * (1.0 + kDualFeasTol)) {
    out.d_gstar = kInf;
  } else {
    out.d_gstar = -dot(grad(pd.u), v - pd.v);
  }

  const VectorField grad_u = grad(u);
  const VectorField grad_uopt = grad(pd.u);
  out.d_g = alpha * norm_1_2(grad_u) - alpha * norm_1_2(grad_uopt) -
            dot(pd.v, grad_u - grad_uopt);
  return out;
}

}  // namespace tvlearn
