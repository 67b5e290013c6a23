#ifndef DSTABLE_MOMENTS_HPP
#define DSTABLE_MOMENTS_HPP

#include "dstable/distributions.hpp"

namespace dstable {

/// n-th factorial moment of PDS(1, lambda, kappa):
/// E[(X)_n] = kappa^n/(1-kappa)^n n! sum_{s<n} (lambda/kappa)^{s+1}
///            C(n-1,s)/(s+1)!; kappa = 0 gives the Poisson value lambda^n.
double factorial_moment_pds(double lambda, double kappa, int n);

/// n-th factorial moment of SDS(1, lambda, kappa) through partial Bell
/// polynomials with arguments x_j = j! (kappa^{j-1} + (-1)^j):
/// E[(X)_n] = (1-kappa)^{-n} sum_{k=1}^n (lambda/2)^k B_{n,k}(x_1,...).
double factorial_moment_sds(double lambda, double kappa, int n);

/// Fractional absolute moment E|X|^r of SDS(gamma, lambda, kappa) for
/// 0 < gamma < 1 and r in (0,2)\{1} by the characteristic-function integral
/// E|X|^r = c_r int_0^inf (1 - Re f(t)) t^{-r-1} dt,
/// c_r = r / (Gamma(1-r) cos(pi r/2)).
/// Returns +infinity when r >= 2 gamma.  r = 1 is rejected unless
/// allow_r1 is set, in which case the two-sided limit (average of
/// r = 1 +- 1e-3) is used.
double fractional_moment_sds(double gamma, double lambda, double kappa, double r,
                             bool allow_r1 = false);

/// Moment-existence classification.  `inferred` marks families whose cutoff
/// comes from their stable-attraction exponent rather than a stated theorem.
struct MomentClass {
    bool exists = false;
    bool inferred = false;
};
MomentClass moment_classification(const Dist& d, double r);

/// Convenience: moment_classification(...).exists.
bool moment_exists(const Dist& d, double r);

} // namespace dstable

#endif
