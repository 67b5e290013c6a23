#include "dstable/sampler.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dstable {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw std::domain_error(msg);
}

// Poisson draw whose mean may come from a heavy-tailed stable mixer.  Means
// beyond 1e12 use the (then essentially exact) normal approximation and are
// saturated before long long could overflow; such draws land far outside
// any observable window.
long long poisson_heavy(double mean, RandomStream& rng)
{
    if (mean > 1e12) {
        const double v = std::min(mean + std::sqrt(mean) * rng.normal(), 4.0e18);
        return static_cast<long long>(v);
    }
    return rng.poisson(mean);
}

// sum of n iid geometric({1,2,...}, success 1-kappa) jumps; large n goes
// through the negative-binomial identity sum = n + Poisson(Gamma(n) k/(1-k))
long long geometric_sum(long long n, double kappa, RandomStream& rng)
{
    if (n <= 0)
        return 0;
    if (kappa == 0.0)
        return n;
    if (n <= 4096) {
        long long total = 0;
        for (long long i = 0; i < n; ++i)
            total += rng.geometric_from_one(kappa);
        return total;
    }
    const double g = rng.gamma(static_cast<double>(n)) * kappa / (1.0 - kappa);
    return n + poisson_heavy(g, rng);
}

double stable_intensity(double gamma, double lambda, RandomStream& rng)
{
    if (gamma == 1.0)
        return lambda;
    return std::pow(lambda, 1.0 / gamma) * sample_positive_stable(gamma, rng);
}

} // namespace

double sample_positive_stable(double gamma, RandomStream& rng)
{
    require(gamma > 0.0 && gamma < 1.0,
            "sample_positive_stable: gamma must lie in (0,1)");
    const double u = rng.uniform();
    const double e = rng.exponential();
    const double pu = kPi * u;
    const double base = std::pow(std::sin(gamma * pu), gamma) *
                        std::pow(std::sin((1.0 - gamma) * pu), 1.0 - gamma) /
                        std::sin(pu);
    return std::pow(base, 1.0 / gamma) *
           std::pow(e, -(1.0 - gamma) / gamma);
}

long long sample_pds(double gamma, double lambda, double kappa, int m,
                     RandomStream& rng)
{
    const double intensity = stable_intensity(gamma, lambda, rng);
    const long long n = poisson_heavy(intensity, rng);
    return m * geometric_sum(n, kappa, rng);
}

long long sample_sds(double gamma, double lambda, double kappa, int m,
                     RandomStream& rng)
{
    const double intensity = stable_intensity(gamma, lambda, rng);
    const long long n_pos = poisson_heavy(0.5 * intensity, rng);
    const long long n_neg = poisson_heavy(0.5 * intensity, rng);
    return m * (geometric_sum(n_pos, kappa, rng) -
                geometric_sum(n_neg, kappa, rng));
}

long long sample_ds(double gamma, double beta, double lambda, double q,
                    double kappa, int m, RandomStream& rng)
{
    long long total = 0;
    // component 1 carries weight (1+beta)/2 with jumps +G w.p. q, -G w.p. 1-q;
    // component 2 is mirrored and subtracted
    const double lam1 = 0.5 * (1.0 + beta) * lambda;
    const double lam2 = 0.5 * (1.0 - beta) * lambda;
    if (lam1 > 0.0) {
        const double intensity = stable_intensity(gamma, lam1, rng);
        const long long n_pos = poisson_heavy(q * intensity, rng);
        const long long n_neg = poisson_heavy((1.0 - q) * intensity, rng);
        total += geometric_sum(n_pos, kappa, rng) -
                 geometric_sum(n_neg, kappa, rng);
    }
    if (lam2 > 0.0) {
        const double intensity = stable_intensity(gamma, lam2, rng);
        const long long n_pos = poisson_heavy(q * intensity, rng);
        const long long n_neg = poisson_heavy((1.0 - q) * intensity, rng);
        total -= geometric_sum(n_pos, kappa, rng) -
                 geometric_sum(n_neg, kappa, rng);
    }
    return m * total;
}

// ---------------------------------------------------------------------------
// Chebyshev-type sampler

struct TpdsJumpTable {
    std::vector<double> cdf; // over jump values 0..k_hi
    double table_mass = 1.0; // cdf.back()
    int k_hi = 0;
};

namespace {

std::shared_ptr<const TpdsJumpTable>
tpds_jump_table(double b, bool squared, int k_hi)
{
    static std::mutex mtx;
    static std::map<std::tuple<double, bool, int>,
                    std::shared_ptr<const TpdsJumpTable>>
        cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(b, squared, k_hi);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    // arccos(((1+b)z-2b)/(2-(1+b)z)) through the arcsine form, which is
    // exact at z = 1 and free of cancellation nearby
    auto theta = [b](cplx z) {
        const cplx u = 1.0 - z;
        const cplx omu = 2.0 * (1.0 + b) * u / ((1.0 - b) + (1.0 + b) * u);
        return 2.0 * std::asin(std::sqrt(0.5 * omu));
    };
    AnalyticPgf jump_pgf;
    if (!squared) {
        jump_pgf = AnalyticPgf(
            [theta](cplx z) { return 1.0 - theta(z) / kPi; },
            SupportKind::nonnegative, 1);
    } else {
        jump_pgf = AnalyticPgf(
            [theta](cplx z) {
                const cplx th = theta(z);
                return 1.0 - 4.0 * th * th / (kPi * kPi);
            },
            SupportKind::nonnegative, 1);
    }

    int window = squared ? 512 : k_hi;
    PmfExtract ex = extract_pmf(jump_pgf, 0, window);
    for (double c : ex.series.coeffs)
        if (c < -1e-12)
            throw std::runtime_error(
                "tpds jump PMF extraction: negative coefficient " +
                std::to_string(c) + " at b = " + std::to_string(b));

    auto tbl = std::make_shared<TpdsJumpTable>();
    tbl->k_hi = window;
    tbl->cdf.resize(ex.series.coeffs.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < ex.series.coeffs.size(); ++i) {
        cum += std::max(0.0, ex.series.coeffs[i]);
        tbl->cdf[i] = cum;
    }
    tbl->table_mass = cum;
    cache[key] = tbl;
    return tbl;
}

} // namespace

TpdsSampler::TpdsSampler(double gamma, double lambda, double b, int m,
                         int table_k_hi)
{
    require(gamma > 0.0 && gamma <= 2.0,
            "gamma must lie in (0,2] for family TPDS, got " + std::to_string(gamma));
    require(lambda > 0.0, "lambda must be positive for family TPDS");
    require(b > -1.0 && b < 1.0, "b must lie in (-1,1) for family TPDS");
    require(m >= 1, "m must be a positive integer for family TPDS");
    m_ = m;
    const bool squared = gamma > 1.0;
    gamma_base_ = squared ? 0.5 * gamma : gamma;
    lambda_root_ = std::pow(lambda, 1.0 / gamma_base_);
    intensity_scale_ = squared ? 0.25 * kPi * kPi : kPi;
    jumps_ = tpds_jump_table(b, squared, table_k_hi);
}

long long TpdsSampler::sample(RandomStream& rng) const
{
    const double mixer = gamma_base_ == 1.0
                             ? 1.0
                             : sample_positive_stable(gamma_base_, rng);
    const double mean = intensity_scale_ * lambda_root_ * mixer;
    const long long n = poisson_heavy(mean, rng);
    long long total = 0;
    const auto& tbl = *jumps_;
    for (long long i = 0; i < n; ++i) {
        const double u = rng.uniform();
        if (u >= tbl.table_mass) {
            // beyond the table: asymptotic k^{-3/2} conditional tail
            const double v = rng.uniform();
            total += static_cast<long long>(
                std::min(tbl.k_hi / (v * v), 4.0e18));
            continue;
        }
        std::size_t lo = 0, hi = tbl.cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (tbl.cdf[mid] < u)
                lo = mid + 1;
            else
                hi = mid;
        }
        total += static_cast<long long>(lo);
    }
    return m_ * total;
}

long long sample_tpds(double gamma, double lambda, double b, int m,
                      RandomStream& rng)
{
    TpdsSampler sampler(gamma, lambda, b, m);
    return sampler.sample(rng);
}

long long sample_first_passage(int M, int m, RandomStream& rng,
                               long long step_cap, long long* cap_hits)
{
    require(M >= 1 && m >= 1, "M and m must be positive integers");
    long long total = 0;
    for (int walk = 0; walk < M; ++walk) {
        long long pos = 0, steps = 0;
        bool done = false;
        while (!done && steps < step_cap) {
            std::uint64_t word = rng.next_u64();
            for (int bit = 0; bit < 64; ++bit) {
                ++steps;
                pos += (word & 1u) ? 1 : -1;
                word >>= 1;
                if (pos == 1) {
                    done = true;
                    break;
                }
            }
        }
        if (!done) {
            if (cap_hits)
                ++*cap_hits;
            // continue with the asymptotic conditional tail T ~ cap / U^2
            const double u = rng.uniform();
            long long t = static_cast<long long>(
                std::min(static_cast<double>(steps) / (u * u), 4.0e18));
            if (t % 2 == 0)
                ++t;
            total += t;
        } else {
            total += steps;
        }
    }
    return m * total;
}

long long sample_first_passage_invcdf(int M, int m, RandomStream& rng)
{
    require(M >= 1 && m >= 1, "M and m must be positive integers");
    long long total = 0;
    const long long j_cap = 100000000;
    for (int walk = 0; walk < M; ++walk) {
        const double u = rng.uniform();
        double cum = 0.0, p = 0.5;
        long long j = 1;
        for (; j <= j_cap; ++j) {
            cum += p;
            if (u <= cum)
                break;
            p *= (2.0 * j - 1.0) / (2.0 * j + 2.0);
        }
        if (j > j_cap) {
            const double v = rng.uniform();
            long long t = static_cast<long long>(
                std::min((2.0 * j_cap - 1.0) / (v * v), 4.0e18));
            if (t % 2 == 0)
                ++t;
            total += t;
        } else {
            total += 2 * j - 1;
        }
    }
    return m * total;
}

long long sample_pds_mixture_identity(double gamma_prime, double gamma,
                                      double lambda, double kappa, int m,
                                      RandomStream& rng)
{
    require(gamma_prime > 0.0 && gamma_prime <= gamma && gamma <= 1.0,
            "sample_pds_mixture_identity requires 0 < gamma' <= gamma <= 1");
    const double intensity = stable_intensity(gamma, lambda, rng);
    return sample_pds(gamma_prime / gamma, intensity, kappa, m, rng);
}

SampleBatch sample_batch(const Dist& d, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream_id)
{
    RandomStream rng(seed, stream_id);
    SampleBatch batch;
    batch.dist_json = d.to_json();
    batch.seed = seed;
    batch.stream_id = stream_id;
    batch.values.reserve(n);
    switch (d.family()) {
    case DistFamily::pds:
        batch.representation = "compound-poisson(stable intensity, geometric jumps)";
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(
                sample_pds(d.gamma(), d.lambda(), d.kappa(), d.lattice(), rng));
        break;
    case DistFamily::sds:
        batch.representation =
            "compound-poisson(stable intensity, two-sided geometric jumps)";
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(
                sample_sds(d.gamma(), d.lambda(), d.kappa(), d.lattice(), rng));
        break;
    case DistFamily::ds:
        batch.representation = "difference of two compound-poisson components";
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(sample_ds(d.gamma(), d.beta(), d.lambda(),
                                             d.q(), d.kappa(), d.lattice(), rng));
        break;
    case DistFamily::tpds: {
        batch.representation =
            "compound-poisson(stable intensity, arccos-law jumps)";
        TpdsSampler sampler(d.gamma(), d.lambda(), d.b(), d.lattice());
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(sampler.sample(rng));
        break;
    }
    case DistFamily::geom_portly_stable:
        // X has PGF exp(-lambda (1-1/z)^gamma); -X is PDS(gamma, lambda, 0)
        batch.representation = "negated PDS(gamma, lambda, 0)";
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(
                -sample_pds(d.gamma(), d.lambda(), 0.0, 1, rng));
        break;
    case DistFamily::first_passage:
        batch.representation = "symmetric random-walk first passage";
        for (std::size_t i = 0; i < n; ++i)
            batch.values.push_back(sample_first_passage(
                d.passages(), d.lattice(), rng, 100000000, &batch.cap_exceeded));
        break;
    }
    return batch;
}

} // namespace dstable
