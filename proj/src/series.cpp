#include "dstable/series.hpp"

#include "dstable/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dstable {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClamp = 1e-14;
constexpr int kMaxGrid = 1 << 25;

} // namespace

void LaurentSeries::clip_roundoff_negatives(double floor)
{
    for (double& c : coeffs) {
        if (c < 0.0) {
            if (c < floor)
                throw std::runtime_error(
                    "LaurentSeries: negative PMF coefficient " + std::to_string(c));
            c = 0.0;
        }
    }
}

void LaurentSeries::validate_pmf(double expected_mass, double mass_tol)
{
    clip_roundoff_negatives();
    const double s = sum();
    if (std::abs(s - expected_mass) > mass_tol)
        throw std::runtime_error("LaurentSeries: PMF mass " + std::to_string(s) +
                                 " deviates from " + std::to_string(expected_mass));
}

AnalyticPgf::AnalyticPgf(std::function<cplx(cplx)> f, SupportKind s, int m,
                         double r1)
    : eval(std::move(f)), support(s), lattice(m), radius_one(r1)
{
    const cplx at_one = eval(cplx(1.0, 0.0));
    if (std::abs(at_one - cplx(1.0, 0.0)) > 1e-12)
        throw std::domain_error("AnalyticPgf: evaluator(1) != 1, got " +
                                std::to_string(at_one.real()) + "+" +
                                std::to_string(at_one.imag()) + "i");
}

namespace {

// One pass of circle-grid extraction: values[j] = g(2 pi j / n).
std::vector<double> circle_coefficients(const std::function<cplx(double)>& g,
                                        int k_lo, int k_hi, int n)
{
    std::vector<cplx> a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        a[static_cast<std::size_t>(j)] = g(2.0 * kPi * j / n);
    fft_forward(a);
    std::vector<double> out(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (int k = k_lo; k <= k_hi; ++k) {
        int idx = k % n;
        if (idx < 0)
            idx += n;
        out[static_cast<std::size_t>(k - k_lo)] =
            a[static_cast<std::size_t>(idx)].real() / n;
    }
    return out;
}

PmfExtract extract_on_circle(const std::function<cplx(double)>& g, int k_lo,
                             int k_hi, int n_grid, int lattice)
{
    const int span = k_hi - k_lo + 1;
    if (span <= 0)
        throw std::invalid_argument("extract: empty coefficient window");
    if (n_grid < 4 * span || (n_grid & (n_grid - 1)) != 0)
        throw std::invalid_argument(
            "extract: n_grid must be a power of two >= 4*(window size)");

    std::vector<double> cur = circle_coefficients(g, k_lo, k_hi, n_grid);
    double delta = 0.0;
    int n = n_grid;
    for (;;) {
        std::vector<double> fine = circle_coefficients(g, k_lo, k_hi, 2 * n);
        delta = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i)
            delta = std::max(delta, std::abs(cur[i] - fine[i]));
        cur = std::move(fine);
        n *= 2;
        if (delta < 1e-10 || n >= kMaxGrid)
            break;
    }
    if (delta > 1e-8)
        throw non_convergence_error(
            "extract: coefficients not stable under grid doubling, change = " +
            std::to_string(delta));

    for (double& c : cur)
        if (std::abs(c) < kClamp)
            c = 0.0;

    PmfExtract result;
    result.series.k_min = k_lo;
    result.series.coeffs = std::move(cur);
    result.series.lattice = lattice;
    result.aliasing_error = delta;
    result.n_grid = n;
    return result;
}

} // namespace

PmfExtract extract_pmf(const AnalyticPgf& pgf, int k_lo, int k_hi, int n_grid)
{
    if (pgf.support == SupportKind::nonnegative && k_lo < 0)
        k_lo = 0;
    auto g = [&pgf](double theta) {
        return pgf.eval(std::polar(1.0, theta));
    };
    return extract_on_circle(g, k_lo, k_hi, n_grid, pgf.lattice);
}

PmfExtract extract_pmf(const AnalyticPgf& pgf, int k_lo, int k_hi)
{
    int span = k_hi - k_lo + 1;
    int n = 4096;
    while (n < 4 * span)
        n *= 2;
    return extract_pmf(pgf, k_lo, k_hi, n);
}

PmfExtract pmf_from_cf(const std::function<cplx(double)>& cf, int k_lo, int k_hi,
                       int n_grid)
{
    return extract_on_circle(cf, k_lo, k_hi, n_grid, 1);
}

PmfExtract pmf_from_cf(const std::function<cplx(double)>& cf, int k_lo, int k_hi)
{
    int span = k_hi - k_lo + 1;
    int n = 4096;
    while (n < 4 * span)
        n *= 2;
    return pmf_from_cf(cf, k_lo, k_hi, n);
}

AnalyticPgf compose(const AnalyticPgf& outer, const AnalyticPgf& inner)
{
    // check that the inner PGF keeps the closed disc inside the unit disc
    for (int j = 0; j < 64; ++j) {
        const cplx z = std::polar(1.0, 2.0 * kPi * j / 64.0);
        if (std::abs(inner.eval(z)) > 1.0 + 1e-12)
            throw std::domain_error(
                "compose: inner PGF leaves the unit disc on the check grid");
    }
    auto out_fn = outer.eval;
    auto in_fn = inner.eval;
    AnalyticPgf result;
    result.eval = [out_fn, in_fn](cplx z) { return out_fn(in_fn(z)); };
    result.support = outer.support;
    result.lattice = outer.lattice * inner.lattice;
    result.radius_one = 0.0;
    const cplx at_one = result.eval(cplx(1.0, 0.0));
    if (std::abs(at_one - cplx(1.0, 0.0)) > 1e-12)
        throw std::domain_error("compose: composition does not evaluate to 1 at z=1");
    return result;
}

cplx cf_eval(const AnalyticPgf& pgf, double t)
{
    return pgf.eval(std::polar(1.0, t));
}

namespace {

// Cauchy-integral Taylor coefficient of order n about z=1, radius r.
double cauchy_coefficient(const AnalyticPgf& pgf, int n, double r)
{
    int m = 64;
    double prev = 0.0;
    for (int iter = 0;; ++iter) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * kPi * j / m;
            acc += pgf.eval(cplx(1.0, 0.0) + std::polar(r, th)) *
                   std::polar(1.0, -n * th);
        }
        const double value = acc.real() / m / std::pow(r, n);
        if (iter > 0 && std::abs(value - prev) <=
                            1e-11 * std::max(1.0, std::abs(value)))
            return value;
        prev = value;
        m *= 2;
        if (m > (1 << 14))
            return value;
    }
}

} // namespace

double numeric_factorial_moment(const AnalyticPgf& pgf, int n)
{
    if (n < 1)
        throw std::domain_error("numeric_factorial_moment: n must be positive");
    const double avail = pgf.radius_one > 0.0 ? pgf.radius_one : 0.5;
    const double r1 = std::min(0.9, 0.75 * avail);
    const double r2 = 0.5 * r1;

    double lg = 0.0;
    for (int i = 2; i <= n; ++i)
        lg += std::log(static_cast<double>(i));
    const double nfac = std::exp(lg);

    const double m1 = cauchy_coefficient(pgf, n, r1) * nfac;
    const double m2 = cauchy_coefficient(pgf, n, r2) * nfac;
    // absolute floor keeps identically-zero moments from tripping the
    // relative cross-check on round-off noise
    const double scale = std::max({std::abs(m1), std::abs(m2), 1e-7});
    if (std::abs(m1 - m2) > 1e-5 * scale)
        throw std::runtime_error(
            "numeric_factorial_moment: refinements disagree (" +
            std::to_string(m1) + " vs " + std::to_string(m2) + ")");
    return m1;
}

AnalyticPgf pgf_from_pmf(const LaurentSeries& pmf, SupportKind support)
{
    LaurentSeries copy = pmf;
    AnalyticPgf result;
    result.support = support;
    result.lattice = pmf.lattice;
    result.eval = [copy, support](cplx z) {
        // split into nonnegative and negative powers, each by Horner
        cplx pos(0.0, 0.0);
        for (int k = copy.k_max(); k >= std::max(0, copy.k_min); --k)
            pos = pos * z + cplx(copy.at(k), 0.0);
        cplx neg(0.0, 0.0);
        if (copy.k_min < 0) {
            if (z == cplx(0.0, 0.0))
                throw std::domain_error("pgf_from_pmf: z=0 with negative support");
            const cplx w = cplx(1.0, 0.0) / z;
            for (int k = copy.k_min; k <= -1; ++k)
                neg = neg * w + cplx(copy.at(k), 0.0);
            neg *= w;
        }
        return pos + neg;
    };
    return result;
}

} // namespace dstable
