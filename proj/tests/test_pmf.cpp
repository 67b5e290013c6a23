#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dstable/distributions.hpp"
#include "dstable/pmf.hpp"
#include "dstable/special_functions.hpp"

#include <cmath>
#include <complex>

using namespace dstable;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("pmf_pds_gamma1 closed form vs the series oracle")
{
    const double lambda = 1.0, kappa = 0.3;
    auto r = pmf_pds_gamma1(lambda, kappa, 60);
    CHECK(r.values.at(0) == doctest::Approx(std::exp(-lambda)).epsilon(1e-14));
    CHECK(r.values.at(1) ==
          doctest::Approx(std::exp(-lambda) * lambda * (1.0 - kappa))
              .epsilon(1e-14));

    auto d = Dist::pds(1.0, lambda, kappa, 1);
    auto ex = extract_pmf(d.as_pgf(), 0, 60, 512);
    for (int k = 0; k <= 60; ++k)
        CHECK(std::abs(r.values.at(k) - ex.series.at(k)) < 1e-11);
    r.values.validate_pmf(r.values.sum(), 1.0);
    CHECK(r.values.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pmf_pds_gamma1 dispatches to Poisson at kappa = 0")
{
    auto r = pmf_pds_gamma1(2.0, 0.0, 30);
    double v = std::exp(-2.0);
    for (int k = 0; k <= 30; ++k) {
        CHECK(r.values.at(k) == doctest::Approx(v).epsilon(1e-13));
        v *= 2.0 / (k + 1);
    }
}

TEST_CASE("pmf_pds_gamma1 lattice relabeling against the series oracle")
{
    auto r = pmf_pds_gamma1(1.0, 0.4, 20, 3);
    auto d = Dist::pds(1.0, 1.0, 0.4, 3);
    auto ex = extract_pmf(d.as_pgf(), 0, 60, 512);
    for (int k = 0; k <= 60; ++k)
        CHECK(std::abs(r.values.at(k) - ex.series.at(k)) < 1e-11);
}

TEST_CASE("Kummer and Laguerre routes agree with the direct sum")
{
    // k = 1: the 1F1 factor is an empty series
    CHECK(pmf_pds_gamma1_kummer(1.3, 0.4, 1) ==
          doctest::Approx(std::exp(-1.3) * 1.3 * 0.6).epsilon(1e-13));
    // k = 2 two-term check
    {
        const double lambda = 0.9, kappa = 0.5;
        const double expect = std::exp(-lambda) * lambda * (1.0 - kappa) *
                              kappa *
                              (1.0 - lambda * (kappa - 1.0) / (2.0 * kappa));
        CHECK(pmf_pds_gamma1_kummer(lambda, kappa, 2) ==
              doctest::Approx(expect).epsilon(1e-13));
    }
    for (double lambda : {0.5, 2.0}) {
        for (double kappa : {0.2, 0.8}) {
            auto direct = pmf_pds_gamma1(lambda, kappa, 30);
            for (int k = 1; k <= 30; ++k) {
                const double a = direct.values.at(k);
                const double b = pmf_pds_gamma1_kummer(lambda, kappa, k);
                const double c = pmf_pds_gamma1_laguerre(lambda, kappa, k);
                CHECK(std::abs(a - b) < 1e-11);
                CHECK(std::abs(a - c) < 1e-11);
                CHECK(std::abs(b - c) < 1e-11);
            }
        }
    }
    CHECK_THROWS_AS(pmf_pds_gamma1_kummer(1.0, 0.0, 2), std::domain_error);
}

TEST_CASE("pmf_sds_gamma1 Bessel values")
{
    CHECK(pmf_sds_gamma1(1.0, 0) == doctest::Approx(0.4657596076).epsilon(1e-9));
    for (long long k : {1LL, 3LL, 7LL})
        CHECK(pmf_sds_gamma1(1.0, k) == pmf_sds_gamma1(1.0, -k));

    auto d = Dist::sds(1.0, 1.0, 0.0, 1);
    auto ex = pmf_from_cf([&d](double t) { return d.char_fn(t); }, -20, 20, 256);
    for (int k = -20; k <= 20; ++k)
        CHECK(std::abs(pmf_sds_gamma1(1.0, k) - ex.series.at(k)) < 1e-10);
}

TEST_CASE("pmf_sds_series against the Bessel reduction and cf inversion")
{
    auto v = pmf_sds_series(1.0, 1.0, 0);
    CHECK_FALSE(v.instability);
    CHECK(std::abs(v.value - pmf_sds_gamma1(1.0, 0)) < 1e-8);
    CHECK(std::abs(pmf_sds_series(1.0, 1.0, 2).value - pmf_sds_gamma1(1.0, 2)) <
          1e-8);

    auto d = Dist::sds(0.6, 0.5, 0.0, 1);
    auto ex = pmf_from_cf([&d](double t) { return d.char_fn(t); }, -8, 8, 4096);
    for (long long k : {0LL, 1LL, 3LL}) {
        auto s = pmf_sds_series(0.6, 0.5, k, 1e-9);
        CHECK(std::abs(s.value - ex.series.at(static_cast<int>(k))) < 1e-7);
    }

    // far beyond the effective support with a tiny rate the mass vanishes
    // (gamma = 1: light tails)
    CHECK(std::abs(pmf_sds_series(1.0, 0.01, 25, 1e-10).value) < 1e-10);
    CHECK_THROWS_AS(pmf_sds_series(0.5, 50.0, 0), std::domain_error);
}

TEST_CASE("first-passage probabilities")
{
    CHECK(pmf_first_passage(1, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pmf_first_passage(1, 1, 3) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(pmf_first_passage(1, 1, 5) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(pmf_first_passage(1, 1, 2) == 0.0);
    CHECK(pmf_first_passage(1, 1, 0) == 0.0);
    CHECK(pmf_first_passage(1, 2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pmf_first_passage(1, 2, 3) == 0.0);
    CHECK(pmf_first_passage(2, 1, 1) == 0.0);

    // M = 2 against the squared PGF.  The law has a k^{-3/2} tail, so the
    // circle grid keeps a tiny wrap-around contribution sum_r p(k + rN);
    // add it to the closed form through the even-support asymptotic
    // p(n) ~ 2 sqrt(2/pi) n^{-3/2}.
    auto d = Dist::first_passage(2, 1);
    auto ex = extract_pmf(d.as_pgf(), 0, 200, 1 << 16);
    const double big_n = static_cast<double>(ex.n_grid);
    for (int k = 0; k <= 200; ++k) {
        double alias = 0.0;
        if (k % 2 == 0) {
            for (int r = 1; r <= 2000; ++r)
                alias += 2.0 * std::sqrt(2.0 / kPi) *
                         std::pow(k + r * big_n, -1.5);
        }
        CHECK(std::abs(pmf_first_passage(2, 1, k) + alias - ex.series.at(k)) <
              1e-11);
    }
}

TEST_CASE("tempered stable cumulants match Cauchy-integral differentiation")
{
    const double gamma = 0.6, lambda = 0.8;
    const double theta = std::pow(lambda, 1.0 / gamma);
    // K(t) = -(theta - i t)^gamma + lambda, kappa_n = K^(n)(0) / i^n
    auto cgf = [&](std::complex<double> t) {
        return -std::pow(theta - std::complex<double>(0.0, 1.0) * t, gamma) +
               lambda;
    };
    const double rho = 0.5 * theta;
    const int m_grid = 512;
    for (int n = 1; n <= 6; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < m_grid; ++j) {
            const double th = 2.0 * kPi * j / m_grid;
            const auto t = std::polar(rho, th);
            acc += cgf(t) * std::polar(1.0, -n * th);
        }
        double n_fact = 1.0;
        for (int i = 2; i <= n; ++i)
            n_fact *= i;
        const std::complex<double> deriv =
            acc / static_cast<double>(m_grid) * n_fact / std::pow(rho, n);
        const std::complex<double> kap =
            deriv / std::pow(std::complex<double>(0.0, 1.0), n);
        const double closed = tempered_stable_cumulant(gamma, theta, n);
        CHECK(std::abs(kap.imag()) < 1e-9 * std::abs(closed));
        CHECK(kap.real() == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("pmf_pds_tempered matches the inversion oracle")
{
    CHECK(pmf_pds_tempered(0.5, 1.0, 0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(pmf_pds_tempered(0.5, 1.0, 1) ==
          doctest::Approx(std::exp(-1.0) * 0.5).epsilon(1e-12));

    auto d = Dist::pds(0.7, 0.8, 0.0, 1);
    auto ex = pmf_from_cf([&d](double t) { return d.char_fn(t); }, 0, 40, 4096);
    for (int k = 0; k <= 10; ++k) {
        const double closed = pmf_pds_tempered(0.7, 0.8, k);
        CHECK(std::abs(closed - ex.series.at(k)) < 1e-8 * std::max(1.0, closed));
        CHECK(std::abs(closed - ex.series.at(k)) < 1e-8);
    }
    CHECK_THROWS_AS(pmf_pds_tempered(0.5, 1.0, 25), std::domain_error);
    CHECK_THROWS_AS(pmf_pds_tempered(1.0, 1.0, 3), std::domain_error);
}

TEST_CASE("SDS asymptotic expansion approaches the exact PMF")
{
    const double gamma = 0.5, lambda = 1.0;
    auto d = Dist::sds(gamma, lambda, 0.0, 1);
    auto cf = [&d](double t) { return d.char_fn(t); };

    double prev_err = 1.0;
    for (long long n : {50LL, 100LL, 200LL}) {
        auto ex = pmf_from_cf(cf, static_cast<int>(n), static_cast<int>(n), 4096);
        const double exact = ex.series.at(static_cast<int>(n));
        const double approx = pmf_sds_asymptotic_simple(gamma, lambda, n).value;
        const double err = std::abs(approx / exact - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 0.05);

    // the Beta-function form is at least as accurate as the power form
    auto full = pmf_sds_asymptotic(gamma, lambda, 200, 3);
    auto simple = pmf_sds_asymptotic_simple(gamma, lambda, 200);
    auto exact200 = pmf_from_cf(cf, 200, 200, 4096).series.at(200);
    CHECK(std::abs(full.value / exact200 - 1.0) <=
          std::abs(simple.value / exact200 - 1.0) + 1e-12);

    // for gamma = 1/2 the j = 2 term carries sin(pi) = 0 and vanishes
    CHECK(pmf_sds_asymptotic(gamma, lambda, 100, 2).value ==
          doctest::Approx(pmf_sds_asymptotic(gamma, lambda, 100, 1).value)
              .epsilon(1e-15));

    // pxn-vs-pxn2 gap shrinks with n
    double gap_prev = 1.0;
    for (long long n : {50LL, 100LL, 200LL}) {
        const double a = pmf_sds_asymptotic(gamma, lambda, n, 3).value;
        const double b = pmf_sds_asymptotic_simple(gamma, lambda, n).value;
        const double gap = std::abs(a - b) / std::abs(a);
        CHECK(gap < gap_prev);
        gap_prev = gap;
    }

    CHECK_THROWS_AS(pmf_sds_asymptotic(0.5, 1.0, 10, 25), std::domain_error);
}
