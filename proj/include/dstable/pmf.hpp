#ifndef DSTABLE_PMF_HPP
#define DSTABLE_PMF_HPP

#include "dstable/series.hpp"

namespace dstable {

enum class PmfMethod {
    closed_form,
    series_sum,
    cf_inversion,
    asymptotic,
    tempered_moments,
};

/// A probability computation together with how it was obtained and its
/// error metadata.  Asymptotic results are expansions, not PMFs; they carry
/// an order-estimate instead of satisfying normalization.
struct PmfResult {
    LaurentSeries values;
    PmfMethod method = PmfMethod::closed_form;
    double error_estimate = 0.0;
    bool instability = false;
};

/// PDS(1, lambda, kappa) probabilities for k = 0..k_hi:
/// p(0) = e^-lambda,
/// p(k) = e^-lambda sum_{s<k} lambda^{s+1}/(s+1)! C(k-1,s)
///        kappa^{k-s-1} (1-kappa)^{s+1}.
/// kappa = 0 dispatches to the Poisson closed form.  Lattice m relabels the
/// support k -> m k.
PmfResult pmf_pds_gamma1(double lambda, double kappa, int k_hi, int m = 1);

/// Same probability through the Kummer confluent hypergeometric route,
/// p(k) = e^-lambda lambda (1-kappa) kappa^{k-1} 1F1(1-k, 2, lambda(kappa-1)/kappa),
/// k >= 1, kappa in (0,1).
double pmf_pds_gamma1_kummer(double lambda, double kappa, int k);

/// Laguerre-polynomial route:
/// p(k) = e^-lambda lambda (1-kappa) kappa^{k-1} (1/k) L^{(1)}_{k-1}(lambda(kappa-1)/kappa).
double pmf_pds_gamma1_laguerre(double lambda, double kappa, int k);

/// SDS(1, lambda): p(k) = e^-lambda I_k(lambda), symmetric in k.
double pmf_sds_gamma1(double lambda, long long k);

/// SDS(gamma, lambda) probability by the double series
/// p(k) = sum_{i>=|k|} sum_{j>=0} (-1)^{i+j} C(gamma j, i) lambda^j/j!
///        2^-i C(i, (i+k)/2), terms with i+k odd vanishing.
/// Sets `instability` when cancellation exceeds 1e6 * tol; lambda is capped
/// at 30 (use cf inversion beyond).
struct SeriesValue {
    double value = 0.0;
    bool instability = false;
};
SeriesValue pmf_sds_series(double gamma, double lambda, long long k,
                           double tol = 1e-9);

/// First-passage probabilities: for M = 1, p(m(2j-1)) = (-1)^{j-1} C(1/2, j);
/// general M by M-fold convolution.  Returns 0 off the support.
double pmf_first_passage(int M, int m, long long k);

/// PDS(gamma, lambda) probability via integer moments of the tempered stable
/// law Y with characteristic exponent -(theta - it)^gamma + lambda,
/// theta = lambda^{1/gamma}:
/// p(k) = e^-lambda lambda^{k/gamma}/k! E[Y^k].  Guard: gamma < 1, k <= 20.
double pmf_pds_tempered(double gamma, double lambda, int k);

/// Cumulants of that tempered stable law,
/// kappa_n = (-1)^{n+1} gamma(gamma-1)...(gamma-n+1) theta^{gamma-n}.
double tempered_stable_cumulant(double gamma, double theta, int n);

/// Asymptotic expansion of the SDS(gamma, lambda) PMF at large n:
/// p(n) ~ (1/pi) sum_{j=1}^{terms} ((-1)^{j+1}/j!) (lambda/2^gamma)^j
///        sin(gamma j pi) B(2 gamma j + 1, n - gamma j),
/// remainder O(n^{-2 gamma(terms+1)-1}) (returned as error_estimate).
struct AsymptoticValue {
    double value = 0.0;
    double order_exponent = 0.0; // remainder is O(n^{order_exponent})
};
AsymptoticValue pmf_sds_asymptotic(double gamma, double lambda, long long n,
                                   int terms);

/// The simplified power-law variant with terms = floor((gamma+1)/gamma):
/// p(n) ~ (1/pi) sum_j ((-1)^{j+1}/j!) (lambda/2^gamma)^j Gamma(2 gamma j + 1)
///        sin(gamma j pi) n^{-2 gamma j - 1}.
AsymptoticValue pmf_sds_asymptotic_simple(double gamma, double lambda,
                                          long long n);

} // namespace dstable

#endif
