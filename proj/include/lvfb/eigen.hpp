#pragma once

#include "lvfb/model.hpp"

namespace lvfb {

/// Bessel function of the first kind by its ascending power series
/// (60 terms).  Accurate for 0 < x <= 12 and the small orders used here.
double bessel_j_series(double nu, double x);

/// First positive zero j_{nu,1} of J_nu, nu >= -1/2, to 1e-10 absolute.
double bessel_first_zero(double nu);

/// Principal Dirichlet eigenvalue of -Laplacian on the ball of radius R in R^dim.
double lambda1(double radius, int dim);

/// Radius R* of the ball with lambda1(R*) = 1.
double critical_constant(int dim);

/// R* sqrt(d/a): the front radius separating the two outcomes of the scalar
/// logistic problem u_t = d Lap u + u(a - b u).
double critical_radius(double d, double a, int dim);

/// R* sqrt(d1 / (a1 - a2 c1/c2)); once the front passes it the invader can no
/// longer vanish.  Throws InvalidRegime when a1 - a2 c1/c2 <= 0.
double vanishing_bound(const ModelParams& p);

}  // namespace lvfb
