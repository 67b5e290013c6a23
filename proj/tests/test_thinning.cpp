#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dstable/thinning.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace dstable;

namespace {

std::vector<cplx> circle_grid(int n = 48)
{
    std::vector<cplx> g;
    for (int j = 0; j < n; ++j)
        g.push_back(std::polar(1.0, 2.0 * 3.14159265358979323846 * j / n));
    return g;
}

std::vector<cplx> real_grid()
{
    std::vector<cplx> g;
    for (int j = 1; j <= 19; ++j)
        g.emplace_back(0.05 * j, 0.0);
    return g;
}

// 4th-order central difference of the PGF at z=1 (real axis)
double pgf_derivative_at_one(const ThinningOp& op, double h = 1e-3)
{
    auto f = [&op](double x) { return op.pgf(cplx(x, 0.0)).real(); };
    return (-f(1.0 + 2.0 * h) + 8.0 * f(1.0 + h) - 8.0 * f(1.0 - h) +
            f(1.0 - 2.0 * h)) /
           (12.0 * h);
}

} // namespace

TEST_CASE("constructors enforce the parameter ranges")
{
    CHECK_THROWS_AS(ThinningOp::bernoulli(0.0), std::domain_error);
    CHECK_THROWS_AS(ThinningOp::bernoulli(1.0), std::domain_error);
    CHECK_THROWS_AS(ThinningOp::mod_geometric(0.5, 1.0, 1), std::domain_error);
    // m > 1 requires 0 < p < kappa < 1
    CHECK_THROWS_AS(ThinningOp::mod_geometric(0.7, 0.5, 2), std::domain_error);
    CHECK_NOTHROW(ThinningOp::mod_geometric(0.2, 0.6, 2));
    CHECK_THROWS_AS(ThinningOp::chebyshev_thin(0.5, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(ThinningOp::geometric_portly(1.5), std::domain_error);
    CHECK_THROWS_AS(ThinningOp::chebyshev_portly(0), std::domain_error);
}

TEST_CASE("every family evaluates to 1 at z = 1")
{
    std::vector<ThinningOp> ops = {
        ThinningOp::bernoulli(0.37),
        ThinningOp::mod_geometric(0.4, 0.5, 1),
        ThinningOp::mod_geometric(0.2, 0.6, 2),
        ThinningOp::two_sided_mod_geometric(0.4, 0.3, 0.7, 1),
        ThinningOp::chebyshev_thin(0.5, 0.0, 1),
        ThinningOp::chebyshev_thin(0.3, 0.2, 2),
        ThinningOp::degenerate_portly(3),
        ThinningOp::geometric_portly(0.6),
        ThinningOp::chebyshev_portly(3, 1),
    };
    for (const auto& op : ops)
        CHECK(std::abs(op.pgf(cplx(1.0, 0.0)) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("Bernoulli pgf and the ModGeometric reduction at kappa = 0")
{
    auto bern = ThinningOp::bernoulli(0.4);
    auto mg = ThinningOp::mod_geometric(0.4, 0.0, 1);
    for (const auto& z : circle_grid())
        CHECK(std::abs(bern.pgf(z) - (0.4 * z + 0.6)) < 1e-15);
    for (const auto& z : circle_grid())
        CHECK(std::abs(mg.pgf(z) - bern.pgf(z)) < 1e-14);
}

TEST_CASE("ChebyshevThin(1/2, 0) has the closed form (-2+2 sqrt(2-z))/(1-z)")
{
    auto op = ThinningOp::chebyshev_thin(0.5, 0.0, 1);
    CHECK(op.proven_pgf());
    for (const auto& z : real_grid()) {
        const cplx expect = (-2.0 + 2.0 * std::sqrt(2.0 - z)) / (1.0 - z);
        CHECK(std::abs(op.pgf(z) - expect) < 1e-13);
    }
    for (const auto& z : circle_grid()) {
        if (std::abs(z - cplx(1.0, 0.0)) < 1e-9)
            continue;
        const cplx expect = (-2.0 + 2.0 * std::sqrt(2.0 - z)) / (1.0 - z);
        CHECK(std::abs(op.pgf(z) - expect) < 1e-12);
    }
    CHECK_FALSE(ThinningOp::chebyshev_thin(0.3, 0.0, 1).proven_pgf());
    CHECK_FALSE(ThinningOp::chebyshev_thin(0.5, 0.1, 1).proven_pgf());
    CHECK(ThinningOp::chebyshev_thin(0.25, 0.0, 2).proven_pgf());
}

TEST_CASE("ModGeometric closed-form PMF")
{
    auto reduced = ThinningOp::mod_geometric(0.4, 0.0, 1).pmf(6);
    CHECK(reduced.at(0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(reduced.at(1) == doctest::Approx(0.4).epsilon(1e-14));
    for (int k = 2; k <= 6; ++k)
        CHECK(reduced.at(k) == 0.0);

    auto s = ThinningOp::mod_geometric(0.4, 0.5, 1).pmf(400);
    CHECK(s.at(0) == doctest::Approx(0.75).epsilon(1e-14));
    // q_n = p kappa^{n-1} (1-p)^{n-1} (1-kappa)^2 / (1-p kappa)^{n+1}
    for (int n : {1, 2, 5, 9}) {
        const double expect = 0.4 * std::pow(0.5, n - 1) * std::pow(0.6, n - 1) *
                              0.25 / std::pow(0.8, n + 1);
        CHECK(s.at(n) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ModGeometric m>1 closed-form PMF agrees with series extraction")
{
    auto op = ThinningOp::mod_geometric(0.2, 0.6, 2);
    auto closed = op.pmf(80);
    auto ex = extract_pmf(op.as_pgf(), 0, 80, 512);
    for (int k = 0; k <= 80; ++k)
        CHECK(std::abs(closed.at(k) - ex.series.at(k)) < 1e-12);
    // support on the even lattice
    for (int k = 1; k <= 79; k += 2)
        CHECK(closed.at(k) == 0.0);
    CHECK(closed.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ChebyshevThin PMF is a probability mass function")
{
    auto op = ThinningOp::chebyshev_thin(0.5, 0.0, 1);
    auto s = op.pmf(200);
    double total = 0.0;
    for (double c : s.coeffs) {
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        total += c;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two-sided PMF extraction and its mean")
{
    auto op = ThinningOp::two_sided_mod_geometric(0.4, 0.3, 0.7, 1);
    auto s = op.pmf(60);
    CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-9));
    double mean = 0.0;
    for (int k = s.k_min; k <= s.k_max(); ++k)
        mean += k * s.at(k);
    CHECK(mean == doctest::Approx(op.mean()).epsilon(1e-8));
}

TEST_CASE("mean matches the numerical PGF derivative at 1 for every family")
{
    std::vector<ThinningOp> ops = {
        ThinningOp::bernoulli(0.37),
        ThinningOp::mod_geometric(0.4, 0.5, 1),
        ThinningOp::mod_geometric(0.2, 0.6, 2),
        ThinningOp::two_sided_mod_geometric(0.4, 0.3, 0.7, 1),
        ThinningOp::chebyshev_thin(0.3, 0.1, 1),
        ThinningOp::degenerate_portly(3),
        ThinningOp::geometric_portly(0.6),
        ThinningOp::chebyshev_portly(3, 1),
    };
    for (const auto& op : ops) {
        const double numeric = pgf_derivative_at_one(op);
        CHECK(numeric == doctest::Approx(op.mean()).epsilon(1e-8));
    }
    CHECK(ThinningOp::chebyshev_thin(0.3, 0.1, 1).mean() ==
          doctest::Approx(0.09).epsilon(1e-15));
}

TEST_CASE("one_minus_pow_m agrees with 1 - Q(z)^m away from z = 1")
{
    std::vector<ThinningOp> ops = {
        ThinningOp::bernoulli(0.37),
        ThinningOp::mod_geometric(0.4, 0.5, 1),
        ThinningOp::mod_geometric(0.2, 0.6, 2),
        ThinningOp::chebyshev_thin(0.3, 0.2, 1),
        ThinningOp::chebyshev_thin(0.25, 0.0, 2),
    };
    for (const auto& op : ops) {
        for (const auto& z : real_grid()) {
            cplx direct = 1.0;
            for (int i = 0; i < op.lattice(); ++i)
                direct *= op.pgf(z);
            direct = 1.0 - direct;
            CHECK(std::abs(op.one_minus_pow_m(z) - direct) < 1e-13);
        }
    }
}

TEST_CASE("compose_ops closed forms")
{
    auto grid = circle_grid();

    auto bb = compose_ops(ThinningOp::bernoulli(0.5), ThinningOp::bernoulli(0.4));
    for (const auto& z : grid)
        CHECK(std::abs(bb.eval(z) - (0.2 * z + 0.8)) < 1e-14);

    auto g1 = ThinningOp::mod_geometric(0.3, 0.5, 1);
    auto g2 = ThinningOp::mod_geometric(0.7, 0.5, 1);
    auto g12 = compose_ops(g1, g2);
    auto g21 = compose_ops(g2, g1);
    auto direct = ThinningOp::mod_geometric(0.21, 0.5, 1);
    for (const auto& z : grid) {
        CHECK(std::abs(g12.eval(z) - g1.pgf(g2.pgf(z))) < 1e-13);
        CHECK(std::abs(g12.eval(z) - g21.eval(z)) < 1e-13);
        CHECK(std::abs(g12.eval(z) - direct.pgf(z)) < 1e-13);
    }

    auto c1 = ThinningOp::chebyshev_portly(2);
    auto c2 = ThinningOp::chebyshev_portly(3);
    auto c12 = compose_ops(c1, c2);
    for (const auto& z : real_grid())
        CHECK(std::abs(c12.eval(z) - c1.pgf(c2.pgf(z))) < 1e-12);

    CHECK_THROWS_AS(compose_ops(g1, ThinningOp::bernoulli(0.4)),
                    std::domain_error);
    CHECK_THROWS_AS(
        compose_ops(g1, ThinningOp::mod_geometric(0.3, 0.6, 1)),
        std::domain_error);
}

TEST_CASE("ChebyshevThin nesting: Q_{p/2} = Q_p o Q_{1/2}")
{
    for (double p : {0.5, 0.25}) {
        auto qp = ThinningOp::chebyshev_thin(p, 0.0, 1);
        auto qhalf = ThinningOp::chebyshev_thin(0.5, 0.0, 1);
        auto qph = ThinningOp::chebyshev_thin(p / 2.0, 0.0, 1);
        for (const auto& z : real_grid())
            CHECK(std::abs(qph.pgf(z) - qp.pgf(qhalf.pgf(z))) < 1e-12);
    }
}

TEST_CASE("apply_thinning: empty sum and empirical means")
{
    RandomStream rng(2024, 7);
    for (auto op : {ThinningOp::bernoulli(0.5),
                    ThinningOp::mod_geometric(0.4, 0.5, 1),
                    ThinningOp::chebyshev_thin(0.5, 0.0, 1)})
        CHECK(apply_thinning(op, 0, rng) == 0);

    const int trials = 100000;
    const long long x = 9;
    {
        auto op = ThinningOp::bernoulli(0.3);
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < trials; ++i) {
            const double v = static_cast<double>(apply_thinning(op, x, rng));
            sum += v;
            sq += v * v;
        }
        const double mean = sum / trials;
        const double sd = std::sqrt(sq / trials - mean * mean);
        CHECK(std::abs(mean - x * 0.3) < 4.0 * sd / std::sqrt(double(trials)));
    }
    {
        auto op = ThinningOp::mod_geometric(0.4, 0.5, 1);
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < trials; ++i) {
            const double v = static_cast<double>(apply_thinning(op, x, rng));
            sum += v;
            sq += v * v;
        }
        const double mean = sum / trials;
        const double sd = std::sqrt(sq / trials - mean * mean);
        CHECK(std::abs(mean - x * 0.4) < 4.0 * sd / std::sqrt(double(trials)));
    }
}

TEST_CASE("apply_two_sided basics")
{
    RandomStream rng(99, 0);
    auto sym = ThinningOp::two_sided_mod_geometric(0.4, 0.2, 0.5, 1);
    CHECK(apply_two_sided(sym, 0, rng) == 0);

    const int trials = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double v = static_cast<double>(apply_two_sided(sym, 10, rng));
        sum += v;
        sq += v * v;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(sq / trials - mean * mean);
    CHECK(std::abs(mean - 0.0) < 4.0 * sd / std::sqrt(double(trials)));

    // q = 1, kappa = 0 reduces to binomial thinning: compare moments
    auto reduce = ThinningOp::two_sided_mod_geometric(0.3, 0.0, 1.0, 1);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double v = static_cast<double>(apply_two_sided(reduce, 12, rng));
        s1 += v;
        s2 += v * v;
    }
    const double m1 = s1 / trials;
    const double var = s2 / trials - m1 * m1;
    const double se_mean = std::sqrt(12 * 0.3 * 0.7 / trials);
    CHECK(std::abs(m1 - 12 * 0.3) < 4.0 * se_mean);
    CHECK(var == doctest::Approx(12 * 0.3 * 0.7).epsilon(0.05));
}

TEST_CASE("every operator PGF extracts to a probability mass function")
{
    std::vector<ThinningOp> ops = {
        ThinningOp::bernoulli(0.37),
        ThinningOp::mod_geometric(0.4, 0.5, 1),
        ThinningOp::mod_geometric(0.2, 0.6, 2),
        ThinningOp::two_sided_mod_geometric(0.4, 0.3, 0.7, 1),
        ThinningOp::chebyshev_thin(0.5, 0.0, 1),
        ThinningOp::degenerate_portly(3),
        ThinningOp::geometric_portly(0.6),
        ThinningOp::chebyshev_portly(2, 1),
    };
    for (const auto& op : ops) {
        const int k_hi = op.family() == ThinningFamily::chebyshev_portly ? 400 : 120;
        const int k_lo =
            op.family() == ThinningFamily::two_sided_mod_geometric ? -k_hi : 0;
        auto ex = extract_pmf(op.as_pgf(), k_lo, k_hi);
        double total = 0.0;
        for (double c : ex.series.coeffs) {
            CHECK(c >= -1e-12);
            CHECK(c <= 1.0 + 1e-12);
            total += c;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("negative counts are rejected for one-sided thinning")
{
    RandomStream rng(5, 5);
    auto op = ThinningOp::bernoulli(0.4);
    CHECK_THROWS_AS(apply_thinning(op, -1, rng), std::domain_error);
}
