// Discrete differential operators and mixed norms on square grids.
//
// grad uses standard forward differences with Neumann boundary (zero in the
// last row/column); div is its exact negative adjoint, so
// <grad u, v> = -<u, div v> holds to machine precision by construction.

#ifndef TVLEARN_TV_OPS_HPP
#define TVLEARN_TV_OPS_HPP

#include "tvlearn/grid.hpp"

namespace tvlearn {

// Relative slack allowed when testing membership in a per-pixel norm ball
// ||v||_{inf,2} <= alpha; convex combinations of feasible points must not
// trip it.
inline constexpr double kDualFeasTol = 1e-12;

VectorField grad(const ScalarField& u);
ScalarField div(const VectorField& v);

// Sum over pixels of the per-pixel Euclidean norm.
double norm_1_2(const VectorField& v);
// Max over pixels of the per-pixel Euclidean norm (dual norm of norm_1_2).
double norm_inf_2(const VectorField& v);

// Discrete total variation: norm_1_2(grad(u)).
double tv(const ScalarField& u);

// Power-iteration estimate of ||grad||^2 on a p x p grid; classical bound
// puts the exact value in (0, 8].
double grad_norm_sq_estimate(int p, int iterations = 200);

}  // namespace tvlearn

#endif  // TVLEARN_TV_OPS_HPP
