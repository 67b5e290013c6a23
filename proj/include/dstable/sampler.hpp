#ifndef DSTABLE_SAMPLER_HPP
#define DSTABLE_SAMPLER_HPP

#include "dstable/distributions.hpp"
#include "dstable/rng.hpp"
#include "dstable/series.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// Exact samplers through the compound-Poisson-with-stable-intensity
// representations and the thinning identities.

namespace dstable {

/// One draw of the one-sided stable law S_gamma with Laplace transform
/// exp(-u^gamma), 0 < gamma < 1 (Kanter's representation).
double sample_positive_stable(double gamma, RandomStream& rng);

/// PDS(gamma, lambda, kappa, m): Poisson with random intensity
/// lambda^{1/gamma} S_gamma and geometric jumps on {1,2,...}
/// (P(Y=n) = (1-kappa) kappa^{n-1}); gamma = 1 uses intensity lambda.
long long sample_pds(double gamma, double lambda, double kappa, int m,
                     RandomStream& rng);

/// SDS: same random intensity with symmetric two-sided geometric jumps,
/// realized by independently thinning the jump process into a + and a -
/// Poisson stream.
long long sample_sds(double gamma, double lambda, double kappa, int m,
                     RandomStream& rng);

/// DS(gamma, beta, lambda, q, kappa, m): difference C1 - C2 of independent
/// compound Poisson draws with intensities lambda(1+beta)/2 and
/// lambda(1-beta)/2 (independent stable mixers) and q-mixed +-geometric
/// jumps, C2 mirrored.
long long sample_ds(double gamma, double beta, double lambda, double q,
                    double kappa, int m, RandomStream& rng);

/// Chebyshev-type positive discrete stable sampler.  For gamma <= 1 this is
/// compound Poisson with intensity pi lambda^{1/gamma} S_gamma and jumps
/// with PGF 1 - arccos(((1+b)z-2b)/(2-(1+b)z))/pi.  For gamma in (1,2] the
/// stable mixing runs through the base exponent gamma/2 and the squared-
/// arccos jump law with PGF 1 - (2 arccos(.)/pi)^2 and intensity
/// (pi^2/4) lambda^{2/gamma} S_{gamma/2}.
///
/// The jump PMF is extracted once per (b, regime) and sampled by inverse
/// CDF; `table_k_hi` bounds the tabulated support (jumps beyond it fall
/// back to the asymptotic k^{-3/2} tail law, which only matters above the
/// table edge).
class TpdsSampler {
public:
    TpdsSampler(double gamma, double lambda, double b, int m,
                int table_k_hi = (1 << 16));

    long long sample(RandomStream& rng) const;

private:
    double gamma_base_ = 1.0; // stable mixing exponent
    double intensity_scale_ = 0.0;
    double lambda_root_ = 0.0; // lambda^{1/gamma_base}
    int m_ = 1;
    std::shared_ptr<const struct TpdsJumpTable> jumps_;
};

/// Convenience wrapper (table size 2^16).
long long sample_tpds(double gamma, double lambda, double b, int m,
                      RandomStream& rng);

/// First passage of M symmetric +-1 walks through +1, times m.  Walks are
/// simulated exactly up to `step_cap` steps; the rare capped walk
/// (probability ~ sqrt(2/pi) cap^{-1/2}) continues with a draw from the
/// asymptotic conditional tail and increments *cap_hits.
long long sample_first_passage(int M, int m, RandomStream& rng,
                               long long step_cap = 100000000,
                               long long* cap_hits = nullptr);

/// Inverse-CDF alternative over the closed-form first-passage PMF.
long long sample_first_passage_invcdf(int M, int m, RandomStream& rng);

/// Nested representation PDS(gamma', lambda, kappa) =
/// PDS(gamma'/gamma, lambda^{1/gamma} S_gamma, kappa); exists to test that
/// identity against sample_pds.  Requires gamma' <= gamma <= 1.
long long sample_pds_mixture_identity(double gamma_prime, double gamma,
                                      double lambda, double kappa, int m,
                                      RandomStream& rng);

/// A reproducible batch of draws from a distribution.
struct SampleBatch {
    std::vector<long long> values;
    std::string dist_json;
    std::string representation;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    long long cap_exceeded = 0;
};

SampleBatch sample_batch(const Dist& d, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream_id = 0);

} // namespace dstable

#endif
