#include "dstable/pmf.hpp"

#include "dstable/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstable {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw std::domain_error(msg);
}

} // namespace

PmfResult pmf_pds_gamma1(double lambda, double kappa, int k_hi, int m)
{
    require(lambda > 0.0, "lambda must be positive");
    require(kappa >= 0.0 && kappa < 1.0, "kappa must lie in [0,1)");
    require(k_hi >= 0 && m >= 1, "k_hi must be nonnegative, m positive");

    std::vector<double> p(static_cast<std::size_t>(k_hi + 1), 0.0);
    const double e = std::exp(-lambda);
    p[0] = e;
    if (kappa == 0.0) {
        double v = e;
        for (int k = 1; k <= k_hi; ++k) {
            v *= lambda / k;
            p[static_cast<std::size_t>(k)] = v;
        }
    } else {
        for (int k = 1; k <= k_hi; ++k) {
            // sum_{s=0}^{k-1} lambda^{s+1}/(s+1)! C(k-1,s) kappa^{k-s-1} (1-kappa)^{s+1}
            double term = lambda * std::pow(kappa, k - 1) * (1.0 - kappa);
            double binom = 1.0;
            double sum = 0.0;
            for (int s = 0; s < k; ++s) {
                sum += term * binom;
                term *= lambda * (1.0 - kappa) / (kappa * (s + 2));
                binom *= static_cast<double>(k - 1 - s) / (s + 1);
            }
            p[static_cast<std::size_t>(k)] = e * sum;
        }
    }

    PmfResult result;
    result.method = PmfMethod::closed_form;
    result.values.lattice = m;
    if (m == 1) {
        result.values.k_min = 0;
        result.values.coeffs = std::move(p);
    } else {
        result.values.k_min = 0;
        result.values.coeffs.assign(static_cast<std::size_t>(m * k_hi + 1), 0.0);
        for (int k = 0; k <= k_hi; ++k)
            result.values.coeffs[static_cast<std::size_t>(m * k)] =
                p[static_cast<std::size_t>(k)];
    }
    return result;
}

double pmf_pds_gamma1_kummer(double lambda, double kappa, int k)
{
    require(k >= 1, "k must be >= 1");
    require(kappa > 0.0 && kappa < 1.0,
            "kappa must lie in (0,1) for the Kummer route");
    const double x = lambda * (kappa - 1.0) / kappa;
    return std::exp(-lambda) * lambda * (1.0 - kappa) *
           std::pow(kappa, k - 1) * kummer_1f1(1.0 - k, 2.0, x);
}

double pmf_pds_gamma1_laguerre(double lambda, double kappa, int k)
{
    require(k >= 1, "k must be >= 1");
    require(kappa > 0.0 && kappa < 1.0,
            "kappa must lie in (0,1) for the Laguerre route");
    const double x = lambda * (kappa - 1.0) / kappa;
    return std::exp(-lambda) * lambda * (1.0 - kappa) *
           std::pow(kappa, k - 1) * laguerre_gen(k - 1, 1.0, x) / k;
}

double pmf_sds_gamma1(double lambda, long long k)
{
    require(lambda > 0.0, "lambda must be positive");
    const int a = static_cast<int>(k < 0 ? -k : k);
    return std::exp(-lambda) * bessel_i(a, lambda);
}

SeriesValue pmf_sds_series(double gamma, double lambda, long long k, double tol)
{
    require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0,1]");
    require(lambda > 0.0 && lambda <= 30.0,
            "lambda must lie in (0,30] for the series route (use cf inversion "
            "beyond)");
    const long long a = k < 0 ? -k : k;

    // j is truncated once lambda^j/j! is negligible
    const int j_max = 40 + static_cast<int>(4.0 * lambda);
    std::vector<double> binoms(static_cast<std::size_t>(j_max) + 1, 0.0);
    std::vector<double> lam_fact(static_cast<std::size_t>(j_max) + 1, 0.0);
    {
        double lf = 1.0;
        for (int j = 1; j <= j_max; ++j) {
            lf *= lambda / j;
            lam_fact[static_cast<std::size_t>(j)] = lf;
            binoms[static_cast<std::size_t>(j)] =
                binom_real(gamma * j, static_cast<int>(a));
        }
    }

    double sum = 0.0;
    double max_term = 0.0;
    // i and k share parity; 2^-i C(i,(i+k)/2) ~ i^{-1/2} while the inner
    // j-sum decays like i^{-gamma-1}, so the tail is O(i^{-gamma-1/2})
    const long long i_cap = 4000000;
    double central = std::pow(0.5, static_cast<double>(a)); // C(a,a) 2^-a
    for (long long i = a; i <= i_cap; i += 2) {
        double inner = 0.0;
        for (int j = 1; j <= j_max; ++j) {
            const double t = (j % 2 == 0 ? 1.0 : -1.0) *
                             binoms[static_cast<std::size_t>(j)] *
                             lam_fact[static_cast<std::size_t>(j)];
            inner += t;
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double term = sign * central * inner;
        sum += term;
        max_term = std::max(max_term, std::abs(term));

        // tail bound ~ |term| * i / (2 gamma + 1) once terms decay
        if (i > a + 8 && std::abs(term) * static_cast<double>(i) <
                             tol * (gamma + 0.5))
            break;

        // advance C(gamma j, i) -> C(gamma j, i+2)
        for (int j = 1; j <= j_max; ++j) {
            const double gj = gamma * j;
            binoms[static_cast<std::size_t>(j)] *=
                (gj - static_cast<double>(i)) * (gj - static_cast<double>(i) - 1.0) /
                (static_cast<double>(i + 1) * static_cast<double>(i + 2));
        }
        // advance the central binomial: C(i+2, (i+2+a)/2) 2^{-i-2}
        const double l = static_cast<double>((i + a) / 2);
        central *= 0.25 * (static_cast<double>(i) + 1.0) *
                   (static_cast<double>(i) + 2.0) /
                   ((l + 1.0) * (static_cast<double>(i) - l + 1.0));
    }

    SeriesValue out;
    // the j = 0 term contributes only at i = 0, i.e. for k = 0
    out.value = sum + (a == 0 ? 1.0 : 0.0);
    out.instability = max_term * 1e-15 > tol;
    return out;
}

double pmf_first_passage(int M, int m, long long k)
{
    require(M >= 1 && m >= 1, "M and m must be positive integers");
    if (k <= 0 || k % m != 0)
        return 0.0;
    const long long j = k / m;
    if ((j - M) % 2 != 0 || j < M)
        return 0.0;
    if (M == 1) {
        const long long idx = (j + 1) / 2; // k = 2 idx - 1
        const double b = binom_real(0.5, static_cast<int>(idx));
        return (idx % 2 == 0 ? -1.0 : 1.0) * b;
    }
    // M-fold convolution of the single-passage law up to j
    std::vector<double> base(static_cast<std::size_t>(j + 1), 0.0);
    for (long long i = 1; i <= j; i += 2) {
        const long long idx = (i + 1) / 2;
        base[static_cast<std::size_t>(i)] =
            (idx % 2 == 0 ? -1.0 : 1.0) * binom_real(0.5, static_cast<int>(idx));
    }
    std::vector<double> acc = base;
    for (int step = 1; step < M; ++step) {
        std::vector<double> next(static_cast<std::size_t>(j + 1), 0.0);
        for (long long x = step; x <= j; ++x) {
            const double ax = acc[static_cast<std::size_t>(x)];
            if (ax == 0.0)
                continue;
            for (long long y = 1; x + y <= j; y += 2)
                next[static_cast<std::size_t>(x + y)] +=
                    ax * base[static_cast<std::size_t>(y)];
        }
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(j)];
}

double tempered_stable_cumulant(double gamma, double theta, int n)
{
    require(n >= 1, "cumulant order must be positive");
    double falling = 1.0;
    for (int i = 0; i < n; ++i)
        falling *= gamma - i;
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return sign * falling * std::pow(theta, gamma - n);
}

double pmf_pds_tempered(double gamma, double lambda, int k)
{
    require(gamma > 0.0 && gamma < 1.0,
            "gamma must lie in (0,1) for the tempered-moment route");
    require(lambda > 0.0, "lambda must be positive");
    require(k >= 0 && k <= 20, "k must lie in [0,20] (moment growth guard)");
    if (k == 0)
        return std::exp(-lambda);
    const double theta = std::pow(lambda, 1.0 / gamma);
    std::vector<double> cumulants;
    for (int n = 1; n <= k; ++n)
        cumulants.push_back(tempered_stable_cumulant(gamma, theta, n));
    const double moment = bell_complete(k, cumulants);
    double log_coef = -lambda + (k / gamma) * std::log(lambda);
    for (int i = 2; i <= k; ++i)
        log_coef -= std::log(static_cast<double>(i));
    return std::exp(log_coef) * moment;
}

AsymptoticValue pmf_sds_asymptotic(double gamma, double lambda, long long n,
                                   int terms)
{
    require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0,1)");
    require(lambda > 0.0, "lambda must be positive");
    require(n >= 10, "n must be >= 10");
    require(terms >= 1, "terms must be >= 1");
    if (static_cast<double>(n) - gamma * terms <= 0.0)
        throw std::domain_error(
            "pmf_sds_asymptotic: n - gamma*terms <= 0, reduce terms");

    const double nd = static_cast<double>(n);
    double sum = 0.0;
    double fact = 1.0;
    for (int j = 1; j <= terms; ++j) {
        fact *= j;
        const double sin_term = std::sin(gamma * j * kPi);
        if (sin_term == 0.0)
            continue;
        // B(2 gamma j + 1, n - gamma j)
        const double log_beta = log_gamma(2.0 * gamma * j + 1.0) +
                                log_gamma(nd - gamma * j) -
                                log_gamma(nd + gamma * j + 1.0);
        const double coef = std::pow(lambda / std::pow(2.0, gamma), j) / fact;
        sum += (j % 2 == 0 ? -1.0 : 1.0) * coef * sin_term * std::exp(log_beta);
    }
    AsymptoticValue out;
    out.value = sum / kPi;
    out.order_exponent = -2.0 * gamma * (terms + 1) - 1.0;
    return out;
}

AsymptoticValue pmf_sds_asymptotic_simple(double gamma, double lambda,
                                          long long n)
{
    require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0,1)");
    require(n >= 10, "n must be >= 10");
    const int terms = static_cast<int>(std::floor((gamma + 1.0) / gamma));
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    double fact = 1.0;
    for (int j = 1; j <= terms; ++j) {
        fact *= j;
        const double sin_term = std::sin(gamma * j * kPi);
        if (sin_term == 0.0)
            continue;
        const double coef = std::pow(lambda / std::pow(2.0, gamma), j) / fact;
        sum += (j % 2 == 0 ? -1.0 : 1.0) * coef * sin_term *
               std::exp(log_gamma(2.0 * gamma * j + 1.0)) *
               std::pow(nd, -2.0 * gamma * j - 1.0);
    }
    AsymptoticValue out;
    out.value = sum / kPi;
    out.order_exponent = -gamma - 2.0; // next correction beyond the kept terms
    return out;
}

} // namespace dstable
