#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dstable/special_functions.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace dstable;

namespace {

// Independent long-double power-series oracle for I_k(x).
long double bessel_series_oracle(int k, long double x, int terms)
{
    long double sum = 0.0L;
    for (int l = 0; l < terms; ++l) {
        long double t = 1.0L;
        for (int i = 1; i <= l; ++i)
            t *= (x / 2.0L) / i;
        for (int i = 1; i <= l + k; ++i)
            t *= (x / 2.0L) / i;
        sum += t;
    }
    return sum;
}

} // namespace

TEST_CASE("log_gamma basics")
{
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    // log Gamma(1/2) = log sqrt(pi)
    CHECK(log_gamma(0.5) ==
          doctest::Approx(0.5723649429247001).epsilon(1e-13));
    CHECK(log_gamma(10.0) ==
          doctest::Approx(std::log(362880.0)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("binom_real values")
{
    CHECK(binom_real(0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(binom_real(0.5, 2) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(binom_real(3.0, 5) == 0.0);
    CHECK(binom_real(6.0, 3) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(binom_real(1.0, 0) == 1.0);
}

TEST_CASE("binom_real Pascal recurrence on random real arguments")
{
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = dist(gen);
        for (int k = 1; k <= 15; ++k) {
            const double lhs = binom_real(a, k);
            const double rhs = binom_real(a - 1.0, k) + binom_real(a - 1.0, k - 1);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel_i trivial and frozen values")
{
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(1, 0.0) == 0.0);
    // power-series oracle: I_0(1) = sum (1/2)^{2l}/(l!)^2
    CHECK(bessel_i(0, 1.0) ==
          doctest::Approx(1.2660658777520084).epsilon(1e-13));
    CHECK(bessel_i(-3, 2.5) == bessel_i(3, 2.5));
    CHECK_THROWS_AS(bessel_i(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0, 800.0), std::overflow_error);
}

TEST_CASE("bessel_i matches its power series on [0,20], orders <= 20")
{
    for (int k = 0; k <= 20; ++k) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 14.9, 16.0, 18.0, 20.0}) {
            const long double oracle = bessel_series_oracle(k, x, 120);
            const double got = bessel_i(k, x);
            CHECK(got == doctest::Approx(static_cast<double>(oracle))
                             .epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel_i backward recurrence branch agrees with series at x=30,50")
{
    for (double x : {30.0, 50.0}) {
        for (int k : {0, 1, 5, 12}) {
            const long double oracle = bessel_series_oracle(k, x, 260);
            CHECK(bessel_i(k, x) ==
                  doctest::Approx(static_cast<double>(oracle)).epsilon(1e-11));
        }
    }
}

TEST_CASE("kummer_1f1 terminating cases")
{
    CHECK(kummer_1f1(0.0, 2.0, 5.0) == 1.0);
    for (double x : {0.3, 1.0, 2.5})
        CHECK(kummer_1f1(-1.0, 2.0, x) ==
              doctest::Approx(1.0 - x / 2.0).epsilon(1e-14));
    // 1F1(-2, 2, 1) = 1 - 1 + 1/6
    CHECK(kummer_1f1(-2.0, 2.0, 1.0) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // convergent non-terminating case: 1F1(1, 1, x) = e^x
    CHECK(kummer_1f1(1.0, 1.0, 0.7) ==
          doctest::Approx(std::exp(0.7)).epsilon(1e-13));
    CHECK_THROWS_AS(kummer_1f1(-5.0, -2.0, 1.0), std::domain_error);
}

TEST_CASE("gauss_2f1 terminating cases")
{
    CHECK(gauss_2f1(0.0, 3.3, 1.7, 0.4) == 1.0);
    for (double x : {0.2, 0.9})
        CHECK(gauss_2f1(-1.0, 2.0, 5.0, x) ==
              doctest::Approx(1.0 - 2.0 * x / 5.0).epsilon(1e-14));
    // term-by-term oracle: 2F1(-2,-1;0.5;1) = 1 + (-2)(-1)/0.5 = 5
    // (the i=2 term vanishes because (-1)_2 = 0)
    CHECK(gauss_2f1(-2.0, -1.0, 0.5, 1.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.0, 0.3), std::domain_error);
}

TEST_CASE("laguerre_gen polynomial values")
{
    for (double x : {0.0, 0.5, 2.0})
        CHECK(laguerre_gen(0, 1.0, x) == 1.0);
    for (double x : {0.0, 0.5, 2.0})
        CHECK(laguerre_gen(1, 1.0, x) ==
              doctest::Approx(2.0 - x).epsilon(1e-14));
    // L_2(x) = 1 - 2x + x^2/2 at x=1
    CHECK(laguerre_gen(2, 0.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("bell_partial basic identities")
{
    CHECK(bell_partial(1, 1, {3.7}) == doctest::Approx(3.7).epsilon(1e-15));
    CHECK(bell_partial(3, 2, {1.0, 2.0}) == doctest::Approx(6.0).epsilon(1e-14));
    // brute-force oracle for B_{4,2}(1,2,3):
    //   (i1,i2,i3) = (1,0,1): 4!/(1!1!) * (1/1!)(3/3!) = 12
    //   (i1,i2,i3) = (0,2,0): 4!/2! * (2/2!)^2        = 12
    CHECK(bell_partial(4, 2, {1.0, 2.0, 3.0}) ==
          doctest::Approx(24.0).epsilon(1e-14));
    CHECK_THROWS_AS(bell_partial(3, 2, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(bell_partial(0, 0, {}), std::domain_error);
}

TEST_CASE("bell_partial factorial-argument identity up to n=10")
{
    // B_{n,k}(1!, 2!, ..., (n-k+1)!) = binom(n,k) binom(n-1,k-1) (n-k)!
    for (int n = 1; n <= 10; ++n) {
        for (int k = 1; k <= n; ++k) {
            std::vector<double> xs;
            double f = 1.0;
            for (int j = 1; j <= n - k + 1; ++j) {
                f *= j;
                xs.push_back(f);
            }
            double expect = binom_real(n, k) * binom_real(n - 1, k - 1);
            for (int i = 1; i <= n - k; ++i)
                expect *= i;
            CHECK(bell_partial(n, k, xs) ==
                  doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("chebyshev_t values and recurrence")
{
    for (double p : {1.0, 2.0, 3.5, 7.0})
        CHECK(chebyshev_t(p, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double x = -1.0; x <= 1.0; x += 0.125)
        CHECK(chebyshev_t(2.0, x) ==
              doctest::Approx(2.0 * x * x - 1.0).epsilon(1e-13));
    CHECK(chebyshev_t(0.5, 0.0) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
    // outside [-1,1] the integer recurrence applies
    CHECK(chebyshev_t(3.0, 2.0) == doctest::Approx(26.0).epsilon(1e-14));
    CHECK(chebyshev_t(2.0, -3.0) == doctest::Approx(17.0).epsilon(1e-14));
    CHECK_THROWS_AS(chebyshev_t(0.5, 1.5), std::domain_error);
}

TEST_CASE("chebyshev_t nesting property T_n(T_m(x)) = T_{nm}(x)")
{
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= 6; ++m) {
            for (int i = 0; i <= 32; ++i) {
                const double x = -1.0 + 2.0 * i / 32.0;
                const double nested =
                    chebyshev_t(n, chebyshev_t(m, x));
                const double direct = chebyshev_t(n * m, x);
                CHECK(std::abs(nested - direct) < 1e-12);
            }
        }
    }
}
