#ifndef DSTABLE_VERIFY_HPP
#define DSTABLE_VERIFY_HPP

#include "dstable/distributions.hpp"
#include "dstable/thinning.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Numerical certification of the stability identities, semigroup laws,
// limit theorems and tail constants.  Every check reports the maximum
// absolute residual over a declared grid against a fixed tolerance.

namespace dstable {

struct VerificationReport {
    std::string identity;
    std::string params;
    std::string grid;
    double max_abs_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // (a or n, sup-residual) pairs for schedule-based checks
    std::vector<std::pair<double, double>> schedule;

    std::string to_json() const;
};

/// 64 Chebyshev-extrema points on [lo, hi] (both endpoints included).
std::vector<double> chebyshev_z_grid(int n = 64, double lo = 0.01,
                                     double hi = 1.0);

/// n uniform points on the unit circle.
std::vector<cplx> circle_z_grid(int n = 64);

/// First sense: P(z) = P(Q_{p_n}(z))^n with p_n = n^{-1/gamma}.
/// Pairings: PDS with Bernoulli (kappa = 0) or ModGeometric sharing
/// (kappa, m); TPDS with ChebyshevThin sharing (b, m).
VerificationReport verify_first_sense(const Dist& d, ThinningFamily fam,
                                      const std::vector<int>& n_set,
                                      double tol = 1e-12);

/// Second sense: P(Q_{p_n}(z)) = P(z)^n.  Pairing by family:
/// FirstPassage with ChebyshevPortly(n) (shared m), GeomPortlyStable with
/// GeometricPortly(p = n^{-1/gamma}).
VerificationReport verify_second_sense(const Dist& d,
                                       const std::vector<int>& n_set,
                                       double tol = 1e-12);

/// Degenerate second-sense pair: P(z) = z with Q(z) = z^n.
VerificationReport verify_second_sense_degenerate(const std::vector<int>& n_set,
                                                  double tol = 1e-12);

/// Third sense for thinning families: P(Q_p(z)) = P(Q_{p1}(z)) P(Q_{p2}(z))
/// with p = (p1^gamma + p2^gamma)^{1/gamma}.  p > 1 is reported as
/// infeasible (passed = false), not thrown.
VerificationReport verify_third_sense(const Dist& d, ThinningFamily fam,
                                      double p1, double p2, double tol = 1e-12);

/// Third sense for the Chebyshev portlying pair: n = n1 + n2.
VerificationReport verify_third_sense_portly(const Dist& first_passage, int n1,
                                             int n2, double tol = 1e-12);

/// Semigroup commutativity: sup_z |Q_a(Q_b(z)) - Q_b(Q_a(z))|.
VerificationReport verify_commutativity(const ThinningOp& a, const ThinningOp& b,
                                        double tol = 1e-12);

// --- limit theorems -------------------------------------------------------

enum class LimitRule {
    pds_kappa,   // kappa = 1 - a c          -> exp(-lambda (-it/(c-it))^gamma)
    pds_lambda,  // lambda = b/a^gamma       -> skewed stable, index gamma
    ds_q,        // 2q - 1 = a (with lambda = l0 a^{-3 gamma}, scale a^2)
                 //                          -> skewed stable, index gamma
    sds_kappa,   // kappa = 1 - a c          -> exp(-lambda (t^2/(t^2+c^2))^gamma)
    sds_lambda,  // lambda = b/a^{2 gamma}   -> symmetric stable, index 2 gamma
    tpds_lambda, // lambda = sigma/a^{gamma/2} -> skewed stable, index gamma/2
};

const char* rule_name(LimitRule r);

struct LimitSpec {
    LimitRule rule = LimitRule::pds_kappa;
    double gamma = 0.5;
    double lambda = 1.0; // fixed rate (kappa-coupling rules) or the target l0
    double c = 1.0;      // kappa = 1 - a c
    double b_coef = 1.0; // lambda = b/a^gamma or b/a^{2 gamma}
    double sigma = 1.0;  // lambda = sigma/a^{gamma/2}
    double kappa = 0.0;  // fixed kappa (lambda-coupling rules)
    double beta = 0.5;   // DS skewness
    double b_cheb = 0.0; // Chebyshev-type b
    std::vector<double> a_seq = {0.1, 0.05, 0.025, 0.0125};
};

/// Scaled characteristic functions against the limiting stable
/// characteristic function: the sup-residual must decrease along a_seq
/// and end below tol.
VerificationReport verify_limit(const LimitSpec& spec,
                                std::vector<double> t_grid = {},
                                double tol = 0.02);

/// Domains of normal attraction: sup_t |f^n(t n^{-1/alpha}) - g(t)| over a
/// doubling n-schedule up to 2^14 (alpha = gamma for PDS, 2 gamma for SDS,
/// 1/2 with n^2 scaling for FirstPassage).
VerificationReport verify_attraction(const Dist& d,
                                     std::vector<int> n_seq = {},
                                     double tol = 0.02);

/// Tail constant of SDS(gamma, lambda, kappa), gamma in (0,1):
/// x^{2 gamma} P(|X| > x) against the limiting tail constant at x in x_set;
/// passes when the relative error at the largest x is below tol and
/// decreasing.
VerificationReport verify_tail_constant(double gamma, double lambda,
                                        double kappa,
                                        std::vector<int> x_set = {50, 100, 200},
                                        double tol = 0.1);

/// Stable-mixture characterization
/// PDS(gamma', lambda, kappa) = PDS(gamma'/gamma, lambda^{1/gamma} S_gamma, kappa):
/// the S-expectation is evaluated both through the Laplace-transform
/// identity (analytic route) and by Monte Carlo with a 4-sigma budget.
VerificationReport verify_mixture_characterization(double gamma_prime,
                                                   double gamma, double lambda,
                                                   double kappa,
                                                   std::uint64_t seed = 20240,
                                                   int n_mc = 100000,
                                                   double tol = 1e-13);

/// Y-mixture characterization of PDS(gamma, lambda) under binomial
/// thinning: P(z) = sum_k P(Y=k) P(z with rate scaled by k p_k^gamma)...
/// concretely, sum_k P(Y=k) P^k(B_{k^{-1/gamma}}(z)) = P(z) for any mixing
/// law Y on {1,...,K}.  Y = 0 would make the thinning level undefined, so
/// the check mixes over {1,...,K} (uniform weights).
VerificationReport verify_y_mixture_characterization(double gamma,
                                                     double lambda, int k_max,
                                                     double tol = 1e-13);

} // namespace dstable

#endif
