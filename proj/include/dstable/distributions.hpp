#ifndef DSTABLE_DISTRIBUTIONS_HPP
#define DSTABLE_DISTRIBUTIONS_HPP

#include "dstable/series.hpp"

#include <string>

namespace dstable {

enum class DistFamily {
    pds,                // positive discrete stable, geometric-type thinning
    ds,                 // discrete stable on Z (limit sense)
    sds,                // symmetric discrete stable on Z
    tpds,               // positive discrete stable, Chebyshev-type thinning
    geom_portly_stable, // second sense, geometric portlying
    first_passage,      // second sense, Chebyshev portlying
};

const char* family_name(DistFamily f);

/// Support descriptor: lattice, sign constraints and (for first passage)
/// the parity-and-offset structure m*{M, M+2, ...}.
struct SupportDesc {
    DistFamily family;
    int lattice = 1;
    int first_passage_min = 0; // M for the first-passage family

    bool contains(long long k) const;
    std::string to_string() const;
};

/// A discrete stable distribution as a parameterized value object.
class Dist {
public:
    /// PDS(gamma, lambda, kappa, m):
    /// P(z) = exp(-lambda ((1-z^m)/(1-kappa z^m))^gamma),
    /// gamma in (0,1], lambda > 0, kappa in [0,1).
    static Dist pds(double gamma, double lambda, double kappa = 0.0, int m = 1);

    /// DS(gamma, beta, lambda, q, kappa, m): two-sided modified geometric
    /// thinning, gamma in (0,1], beta in [-1,1], q in [0,1].
    static Dist ds(double gamma, double beta, double lambda, double q = 1.0,
                   double kappa = 0.0, int m = 1);

    /// SDS(gamma, lambda, kappa, m): the symmetric case (q = 1/2).
    static Dist sds(double gamma, double lambda, double kappa = 0.0, int m = 1);

    /// TPDS(gamma, lambda, b, m): Chebyshev-type thinning,
    /// P(z) = exp(-lambda (arccos((1+b)z^m-2b)/(2-(1+b)z^m))^gamma),
    /// gamma in (0,2].
    static Dist tpds(double gamma, double lambda, double b = 0.0, int m = 1);

    /// Second-sense stable under geometric portlying:
    /// P(z) = exp(-lambda (1-1/z)^gamma), supported on the nonpositive
    /// integers.
    static Dist geom_portly_stable(double gamma, double lambda);

    /// First passage of M symmetric walks through +1, lattice m:
    /// P(z) = ((1-sqrt(1-z^{2m}))/z^m)^M.
    static Dist first_passage(int M, int m = 1);

    DistFamily family() const { return family_; }
    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }
    double kappa() const { return kappa_; }
    double beta() const { return beta_; }
    double q() const { return q_; }
    double b() const { return b_; }
    int lattice() const { return m_; }
    int passages() const { return big_m_; }

    /// PGF value on the family's domain (|z| <= 1 for nonnegative supports;
    /// |z| = 1 or real z in (0,1] where 1/z appears; z != 0 for those).
    cplx pgf(cplx z) const;

    /// log of the PGF (the characteristic exponent), stable near z = 1.
    cplx log_pgf(cplx z) const;

    /// log-PGF evaluated from u = 1 - z^m without forming z; the
    /// cancellation-free path used by the stability verifications
    /// (PDS and TPDS only).
    cplx log_pgf_from_u(cplx u) const;

    /// Characteristic function f(t) = P(e^{it}).
    cplx char_fn(double t) const;

    SupportDesc support() const;

    /// Wrap as an AnalyticPgf carrying support kind, lattice and the
    /// analyticity radius about z=1 (for numerical differentiation).
    AnalyticPgf as_pgf() const;

    /// Serialization: {"family", "gamma", "lambda", "kappa", "beta", "q",
    /// "b", "m", "M"} with the conventional defaults m=1, kappa=0, q=1, b=0.
    std::string to_json() const;
    static Dist from_json(const std::string& text);

private:
    Dist() = default;

    DistFamily family_ = DistFamily::pds;
    double gamma_ = 1.0, lambda_ = 1.0, kappa_ = 0.0, beta_ = 1.0, q_ = 1.0,
           b_ = 0.0;
    int m_ = 1, big_m_ = 1;
};

/// Sum of two independent DS variables sharing (gamma, q, kappa, m):
/// lambda adds, beta averages with lambda weights.
Dist ds_sum(const Dist& d1, const Dist& d2);

/// Distribution of -X for X ~ DS: beta flips sign.
Dist ds_negate(const Dist& d);

} // namespace dstable

#endif
