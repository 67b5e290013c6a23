#ifndef DSTABLE_RNG_HPP
#define DSTABLE_RNG_HPP

#include <cstdint>

// Reproducible random streams.  A stream is fully determined by
// (seed, stream_id); distinct stream_ids give statistically independent
// sequences, which is what parallel Monte Carlo hands out to workers.

namespace dstable {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Next raw 64-bit word (xoshiro256++).
    std::uint64_t next_u64();

    /// Uniform double in the open interval (0, 1).
    double uniform();

    /// Uniform double in [0, 1).
    double uniform_co();

    /// Exponential(1) variate.
    double exponential();

    /// Standard normal variate (Box-Muller, one value per call).
    double normal();

    /// Poisson variate: sequential inversion for mean < 30, transformed
    /// rejection (PTRD) above.
    long long poisson(double mean);

    /// Geometric on {1, 2, ...} with P(n) = (1-kappa) kappa^{n-1}.
    long long geometric_from_one(double kappa);

    /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang squeeze).
    double gamma(double shape);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t s_[4];

    long long poisson_inversion(double mean);
    long long poisson_ptrd(double mean);
};

} // namespace dstable

#endif
