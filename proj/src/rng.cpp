#include "dstable/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dstable {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
    std::uint64_t sm = seed ^ (0xd1b54a32d192ed03ULL * (stream_id + 1));
    for (auto& s : s_)
        s = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64()
{
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::uniform_co()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::exponential()
{
    return -std::log(uniform());
}

double RandomStream::normal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
}

long long RandomStream::poisson(double mean)
{
    if (mean < 0.0)
        throw std::domain_error("poisson: mean must be nonnegative");
    if (mean == 0.0)
        return 0;
    if (mean < 30.0)
        return poisson_inversion(mean);
    return poisson_ptrd(mean);
}

long long RandomStream::poisson_inversion(double mean)
{
    const double p0 = std::exp(-mean);
    double u = uniform();
    double p = p0, cum = p0;
    long long k = 0;
    while (u > cum) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
        if (k > 2000) // unreachable for mean < 30; guards roundoff
            break;
    }
    return k;
}

long long RandomStream::poisson_ptrd(double mean)
{
    // Hormann's PTRD transformed rejection.
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double u = uniform() - 0.5;
        double v = uniform();
        double us = 0.5 - std::abs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r)
            return static_cast<long long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us))
            continue;
        double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * std::log(mean) - mean - std::lgamma(k + 1.0))
            return static_cast<long long>(kf);
    }
}

long long RandomStream::geometric_from_one(double kappa)
{
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::domain_error("geometric_from_one: kappa must lie in [0,1)");
    if (kappa == 0.0)
        return 1;
    const double g = std::log(uniform()) / std::log(kappa);
    return 1 + static_cast<long long>(g);
}

double RandomStream::gamma(double shape)
{
    if (shape < 1.0)
        throw std::domain_error("gamma: shape must be >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

} // namespace dstable
