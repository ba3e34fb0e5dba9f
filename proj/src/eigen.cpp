#include "lvfb/eigen.hpp"

#include <cmath>
#include <string>

#include "lvfb/error.hpp"

namespace lvfb {

double bessel_j_series(double nu, double x) {
  // J_nu(x) = sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)), each term
  // obtained from the previous one by a two-factor recurrence.
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
  }
  return sum;
}

double bessel_first_zero(double nu) {
  if (!(nu >= -0.5)) throw Error(ErrorCode::InvalidArgument, "bessel order must be >= -1/2");
  const double lo_limit = nu + 1.0;
  const double hi_limit = nu + 10.0;
  constexpr double scan = 0.05;
  double lo = lo_limit;
  double f_lo = bessel_j_series(nu, lo);
  double hi = lo;
  bool bracketed = false;
  while (hi < hi_limit) {
    hi = std::min(lo + scan, hi_limit);
    const double f_hi = bessel_j_series(nu, hi);
    if ((f_lo > 0.0) != (f_hi > 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed) {
    throw Error(ErrorCode::ConvergenceFailure,
                "no sign change of J_nu on [nu+1, nu+10] for nu=" + std::to_string(nu));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = bessel_j_series(nu, mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double critical_constant(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
  return bessel_first_zero(0.5 * dim - 1.0);
}

double lambda1(double radius, int dim) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const double j = critical_constant(dim) / radius;
  return j * j;
}

double critical_radius(double d, double a, int dim) {
  if (!(d > 0.0) || !(a > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "critical_radius needs d, a > 0");
  }
  return critical_constant(dim) * std::sqrt(d / a);
}

double vanishing_bound(const ModelParams& p) {
  p.validate();
  const double rate = p.effective_invader_rate();
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::InvalidRegime, "a1 - a2*c1/c2 must be positive");
  }
  return critical_constant(p.dim) * std::sqrt(p.d1 / rate);
}

}  // namespace lvfb
