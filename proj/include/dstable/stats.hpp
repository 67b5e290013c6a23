#ifndef DSTABLE_STATS_HPP
#define DSTABLE_STATS_HPP

#include "dstable/series.hpp"

#include <map>
#include <vector>

// Statistical machinery for the Monte Carlo verifications: regularized
// incomplete gamma, chi-square tests with a fixed pre-registered alpha,
// and total-variation distance against an oracle PMF.

namespace dstable {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Upper tail Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Chi-square upper-tail p-value with the given degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

/// Goodness-of-fit p-value of observed counts against expected
/// probabilities; cells with expected count < 5 are pooled.
double chi_square_gof_pvalue(const std::map<long long, long long>& counts,
                             const LaurentSeries& probs, double n_samples);

/// Two-sample chi-square homogeneity p-value over pooled integer counts.
double two_sample_chi_square_pvalue(const std::vector<long long>& xs,
                                    const std::vector<long long>& ys);

/// Histogram of a sample restricted to [k_lo, k_hi]; out-of-window mass is
/// returned via out_count.
std::map<long long, long long> histogram(const std::vector<long long>& xs,
                                         long long k_lo, long long k_hi,
                                         long long* out_count = nullptr);

/// Total-variation distance between the empirical law of `xs` and the
/// oracle PMF window, with everything outside the window lumped into one
/// bucket: TV = (sum_k |phat_k - p_k| + |phat_out - p_out|) / 2.
double tv_distance(const std::vector<long long>& xs, const LaurentSeries& oracle);

} // namespace dstable

#endif
