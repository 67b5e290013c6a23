#ifndef DSTABLE_SPECIAL_FUNCTIONS_HPP
#define DSTABLE_SPECIAL_FUNCTIONS_HPP

#include <vector>

// Self-contained special functions backing the closed-form probability and
// moment formulas: log-gamma, generalized binomial coefficients, modified
// Bessel I, terminating hypergeometric series, generalized Laguerre
// polynomials, partial Bell polynomials and the Chebyshev map
// T_p(x) = cos(p arccos x).

namespace dstable {

/// Natural log of Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

/// Generalized binomial coefficient a(a-1)...(a-k+1)/k! for real a, k >= 0.
double binom_real(double a, int k);

/// Modified Bessel function of the first kind, integer order.
/// I_{-k}(x) = I_k(x).  Power series for x <= 15, scaled backward
/// recurrence beyond.  Throws std::overflow_error once e^x overflows.
double bessel_i(int k, double x);

/// Kummer confluent hypergeometric 1F1(a, b, x).  Exact finite sum when a
/// is a nonpositive integer; otherwise the series is summed to convergence.
/// Throws std::domain_error when b is a nonpositive integer reached before
/// the series terminates.
double kummer_1f1(double a, double b, double x);

/// Terminating Gauss hypergeometric 2F1(a, b; c; x).  One of a, b must be
/// a nonpositive integer; non-terminating parameterizations are refused.
double gauss_2f1(double a, double b, double c, double x);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) via the 1F1 relation
/// L_n^{(alpha)}(x) = binom(n+alpha, n) 1F1(-n, alpha+1, x).
double laguerre_gen(int n, double alpha, double x);

/// Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}): sum over all index
/// tuples with i_1 + 2 i_2 + ... = n and i_1 + i_2 + ... = k of
/// n!/(i_1!...) prod_j (x_j/j!)^{i_j}.  Requires 1 <= k <= n <= 30 and
/// xs.size() == n-k+1.
double bell_partial(int n, int k, const std::vector<double>& xs);

/// Complete Bell polynomial B_n(x_1,...,x_n) = sum_k B_{n,k}; B_0 = 1.
double bell_complete(int n, const std::vector<double>& xs);

/// Chebyshev map T_p(x) = cos(p arccos x) for |x| <= 1 and any real p > 0.
/// For |x| > 1 only integer p is accepted (three-term recurrence).
double chebyshev_t(double p, double x);

} // namespace dstable

#endif
