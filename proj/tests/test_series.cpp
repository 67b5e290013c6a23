#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dstable/series.hpp"
#include "dstable/special_functions.hpp"

#include <cmath>
#include <complex>

using namespace dstable;

namespace {

AnalyticPgf poisson_pgf(double lambda)
{
    return AnalyticPgf(
        [lambda](cplx z) { return std::exp(lambda * (z - 1.0)); },
        SupportKind::nonnegative, 1, 10.0);
}

AnalyticPgf bernoulli_pgf(double p)
{
    return AnalyticPgf([p](cplx z) { return p * z + (1.0 - p); },
                       SupportKind::nonnegative, 1, 10.0);
}

} // namespace

TEST_CASE("extract_pmf recovers the Poisson PMF")
{
    auto ex = extract_pmf(poisson_pgf(1.0), 0, 8, 64);
    const double e1 = std::exp(-1.0);
    double fact = 1.0;
    for (int k = 0; k <= 8; ++k) {
        if (k > 0)
            fact *= k;
        CHECK(ex.series.at(k) == doctest::Approx(e1 / fact).epsilon(1e-12));
    }
    CHECK(ex.aliasing_error < 1e-10);
    auto wide = extract_pmf(poisson_pgf(1.0), 0, 30, 128);
    wide.series.validate_pmf(1.0, 1e-9);
}

TEST_CASE("extract_pmf of the degenerate PGF z")
{
    AnalyticPgf unit([](cplx z) { return z; }, SupportKind::nonnegative, 1, 10.0);
    auto ex = extract_pmf(unit, 0, 5, 64);
    CHECK(ex.series.at(1) == doctest::Approx(1.0).epsilon(1e-14));
    for (int k : {0, 2, 3, 4, 5})
        CHECK(std::abs(ex.series.at(k)) < 1e-13);
}

TEST_CASE("extract_pmf rejects bad grids and non-lattice inputs")
{
    CHECK_THROWS_AS(extract_pmf(poisson_pgf(1.0), 0, 8, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(extract_pmf(poisson_pgf(1.0), 0, 8, 16),
                    std::invalid_argument);
    // a point mass at 1/2 is not lattice-supported: the trapezoid
    // coefficients never settle under grid doubling
    auto half_cf = [](double t) { return std::polar(1.0, 0.5 * t); };
    CHECK_THROWS_AS(pmf_from_cf(half_cf, -4, 4, 64), non_convergence_error);
}

TEST_CASE("compose multiplies Bernoulli parameters")
{
    auto c = compose(bernoulli_pgf(0.6), bernoulli_pgf(0.3));
    auto direct = bernoulli_pgf(0.18);
    for (int j = 0; j < 32; ++j) {
        const cplx z = std::polar(1.0, 2.0 * 3.14159265358979 * j / 32.0);
        CHECK(std::abs(c.eval(z) - direct.eval(z)) < 1e-14);
    }
}

TEST_CASE("compose with the identity and associativity on a grid")
{
    AnalyticPgf ident([](cplx z) { return z; }, SupportKind::nonnegative, 1, 10.0);
    auto q = poisson_pgf(0.7);
    auto c = compose(ident, q);
    auto a = compose(compose(poisson_pgf(0.3), bernoulli_pgf(0.5)),
                     bernoulli_pgf(0.8));
    auto b = compose(poisson_pgf(0.3),
                     compose(bernoulli_pgf(0.5), bernoulli_pgf(0.8)));
    for (int j = 0; j <= 20; ++j) {
        const cplx z(0.05 * j, 0.0);
        CHECK(std::abs(c.eval(z) - q.eval(z)) < 1e-14);
        CHECK(std::abs(a.eval(z) - b.eval(z)) < 1e-12);
    }
}

TEST_CASE("compose rejects an inner map escaping the disc")
{
    AnalyticPgf escape([](cplx z) { return 2.0 * z - 1.0; },
                       SupportKind::nonnegative, 1, 0.0);
    CHECK_THROWS_AS(compose(poisson_pgf(1.0), escape), std::domain_error);
}

TEST_CASE("cf_eval basics")
{
    auto p = poisson_pgf(2.0);
    CHECK(std::abs(cf_eval(p, 0.0) - cplx(1.0, 0.0)) < 1e-15);
    const double t = 0.8;
    const cplx expect = std::exp(2.0 * (std::polar(1.0, t) - 1.0));
    CHECK(std::abs(cf_eval(p, t) - expect) < 1e-14);
}

TEST_CASE("numeric_factorial_moment on the Poisson law")
{
    for (double lambda : {0.5, 1.0, 2.0}) {
        auto p = poisson_pgf(lambda);
        double expect = 1.0;
        for (int n = 1; n <= 6; ++n) {
            expect *= lambda;
            const double got = numeric_factorial_moment(p, n);
            CHECK(got == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("pmf_from_cf basics and Bessel identity at gamma = 1")
{
    auto ex = pmf_from_cf([](double) { return cplx(1.0, 0.0); }, -3, 3, 64);
    CHECK(ex.series.at(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ex.series.at(1)) < 1e-13);

    // symmetric discrete stable with gamma=1, kappa=0:
    // f(t) = exp(-lambda (1 - cos t)), p_k = e^-lambda I_k(lambda)
    const double lambda = 1.0;
    auto cf = [lambda](double t) {
        return cplx(std::exp(-lambda * (1.0 - std::cos(t))), 0.0);
    };
    auto sds = pmf_from_cf(cf, -10, 10, 256);
    for (int k = -10; k <= 10; ++k) {
        const double expect = std::exp(-lambda) * bessel_i(k, lambda);
        CHECK(sds.series.at(k) == doctest::Approx(expect).epsilon(1e-11));
    }
    sds.series.validate_pmf(1.0, 1e-9);
}

TEST_CASE("pmf_from_cf and extract_pmf agree: same integral, two routes")
{
    // P(e^{it}) sampled as a PGF on the circle vs as a characteristic
    // function; coefficients must coincide
    auto pois = poisson_pgf(1.3);
    auto by_pgf = extract_pmf(pois, 0, 20, 128);
    auto by_cf = pmf_from_cf(
        [&pois](double t) { return pois.eval(std::polar(1.0, t)); }, 0, 20, 128);
    for (int k = 0; k <= 20; ++k)
        CHECK(std::abs(by_pgf.series.at(k) - by_cf.series.at(k)) < 1e-10);
}

TEST_CASE("pgf reconstructed from a PMF window round-trips")
{
    auto ex = pmf_from_cf(
        [](double t) {
            return cplx(std::exp(-2.0 * (1.0 - std::cos(t))), 0.0);
        },
        -24, 24, 256);
    auto back = pgf_from_pmf(ex.series, SupportKind::two_sided);
    auto again = extract_pmf(back, -10, 10, 256);
    for (int k = -10; k <= 10; ++k)
        CHECK(again.series.at(k) ==
              doctest::Approx(ex.series.at(k)).epsilon(1e-10));
}
