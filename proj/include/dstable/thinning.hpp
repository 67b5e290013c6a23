#ifndef DSTABLE_THINNING_HPP
#define DSTABLE_THINNING_HPP

#include "dstable/rng.hpp"
#include "dstable/series.hpp"

#include <memory>

// Thinning and portlying operators: PGF evaluation, closed-form PMFs where
// known, composition semantics, means, and the random contraction p (.) X.

namespace dstable {

enum class ThinningFamily {
    bernoulli,
    mod_geometric,
    two_sided_mod_geometric,
    chebyshev_thin,
    degenerate_portly,
    geometric_portly,
    chebyshev_portly,
};

const char* family_name(ThinningFamily f);

class ThinningOp {
public:
    /// Bernoulli(p), Q(z) = p z + 1 - p, p in (0,1).
    static ThinningOp bernoulli(double p);

    /// Modified geometric G(p, kappa, m):
    /// Q(z) = (((1-p)+(p-kappa) z^m) / ((1-p kappa)-kappa(1-p) z^m))^{1/m},
    /// valid for {0 <= kappa < 1, 0 < p < 1, m = 1} or
    /// {0 < p < kappa < 1, m > 1}.
    static ThinningOp mod_geometric(double p, double kappa, int m = 1);

    /// Two-sided modified geometric 2G(p, kappa, q, m):
    /// R = S^{-1} o B_p o S2 with S2(z) = q S(z) + (1-q) S(1/z).
    static ThinningOp two_sided_mod_geometric(double p, double kappa, double q,
                                              int m = 1);

    /// Chebyshev-type thinning T(p, b, m) built from T_p(x) = cos(p arccos x).
    /// The PGF property is proven only for p = 2^{-k}, b = 0; other
    /// parameters are admitted experimentally (see proven_pgf()) and PMF
    /// extraction asserts nonnegativity at runtime.
    static ThinningOp chebyshev_thin(double p, double b, int m = 1);

    /// Degenerate portlying Q(z) = z^n.
    static ThinningOp degenerate_portly(int n);

    /// Geometric portlying Q(z) = p z / (1 - (1-p) z).
    static ThinningOp geometric_portly(double p);

    /// Chebyshev portlying Q(z) = (1 / T_n(1/z^m))^{1/m}.
    static ThinningOp chebyshev_portly(int n, int m = 1);

    ThinningFamily family() const { return family_; }
    double p() const { return p_; }
    double kappa() const { return kappa_; }
    double q() const { return q_; }
    double b() const { return b_; }
    int lattice() const { return m_; }
    int n() const { return n_; }

    /// True when the parameters lie in the subfamily with a proven PGF
    /// (always, except for chebyshev_thin outside p = 2^{-k}, b = 0).
    bool proven_pgf() const { return proven_; }

    /// PGF value; |z| <= 1 (identically |z| = 1 or z != 0 for the two-sided
    /// and portlying families where 1/z appears).
    cplx pgf(cplx z) const;

    /// 1 - Q(z)^m evaluated without cancellation; the building block for
    /// tight-tolerance stability checks (thinning families only).
    cplx one_minus_pow_m(cplx z) const;

    /// Expected value of the thinning/portlying variable.
    double mean() const;

    /// PMF window: closed forms for Bernoulli and modified geometric,
    /// series extraction otherwise.  Two-sided supports return [-k_hi, k_hi].
    LaurentSeries pmf(int k_hi) const;

    /// Wrap as an AnalyticPgf (validates Q(1) = 1).
    AnalyticPgf as_pgf() const;

private:
    ThinningOp() = default;

    ThinningFamily family_ = ThinningFamily::bernoulli;
    double p_ = 0.0, kappa_ = 0.0, q_ = 1.0, b_ = 0.0;
    int m_ = 1, n_ = 1;
    bool proven_ = true;

    // lazily built inverse-CDF table for families sampled via extraction
    struct Table;
    mutable std::shared_ptr<const Table> table_;
    const Table& sampling_table() const;

    friend long long apply_thinning(const ThinningOp&, long long, RandomStream&);
    friend long long apply_two_sided(const ThinningOp&, long long, RandomStream&);
};

/// Composition a o b as a PGF; exact closed forms where the semigroup gives
/// them (Bernoulli, modified geometric, Chebyshev families, portly families).
/// Throws std::domain_error on family or structural-parameter mismatch.
AnalyticPgf compose_ops(const ThinningOp& a, const ThinningOp& b);

/// p (.) x: sum of x independent draws from the operator's distribution.
long long apply_thinning(const ThinningOp& op, long long x, RandomStream& rng);

/// Two-sided thinning of an integer x: thinned positive part minus thinned
/// negative part, both with the operator's (two-sided) distribution.
long long apply_two_sided(const ThinningOp& op, long long x, RandomStream& rng);

} // namespace dstable

#endif
