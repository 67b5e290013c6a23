#ifndef DSTABLE_SERIES_HPP
#define DSTABLE_SERIES_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

// Laurent/power-series engine: extract PMF coefficients from analytic PGFs,
// compose PGFs, and invert characteristic functions on the lattice.  All
// closed forms in the library are cross-checked against this module.

namespace dstable {

using cplx = std::complex<double>;

enum class SupportKind { nonnegative, nonpositive, two_sided };

/// Coefficients c_k for k in [k_min, k_min + size - 1].  `lattice` records
/// the lattice m of the support (mass on multiples of m); indices are plain
/// integers regardless of m.
struct LaurentSeries {
    int k_min = 0;
    std::vector<double> coeffs;
    int lattice = 1;

    int k_max() const { return k_min + static_cast<int>(coeffs.size()) - 1; }

    double at(int k) const
    {
        if (k < k_min || k > k_max())
            return 0.0;
        return coeffs[static_cast<std::size_t>(k - k_min)];
    }

    double sum() const
    {
        double s = 0.0;
        for (double c : coeffs)
            s += c;
        return s;
    }

    /// PMF sanity: clips tiny negative round-off (>= -1e-12) to zero and
    /// checks the total mass captured by the window against `expected_mass`.
    void validate_pmf(double expected_mass = 1.0, double mass_tol = 1e-9);

    /// Clip round-off negatives only (no mass check); throws below `floor`.
    void clip_roundoff_negatives(double floor = -1e-12);
};

/// An analytic probability generating function together with its support
/// kind and lattice.  `radius_one` is the radius of a disc centered at z=1
/// on which the evaluator is known to be analytic (used for numerical
/// differentiation); 0 means unknown.
struct AnalyticPgf {
    std::function<cplx(cplx)> eval;
    SupportKind support = SupportKind::nonnegative;
    int lattice = 1;
    double radius_one = 0.0;

    AnalyticPgf() = default;
    AnalyticPgf(std::function<cplx(cplx)> f, SupportKind s, int m = 1,
                double r1 = 0.0);

    cplx operator()(cplx z) const { return eval(z); }
};

struct non_convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result of a coefficient extraction: the window of coefficients plus the
/// aliasing estimate obtained by doubling the grid.
struct PmfExtract {
    LaurentSeries series;
    double aliasing_error = 0.0;
    int n_grid = 0;
};

/// Trapezoidal unit-circle extraction of PGF coefficients,
/// c_k = (1/N) sum_j pgf(e^{2pi i j/N}) e^{-2pi i j k/N}, real parts taken,
/// |c| < 1e-14 clamped to zero.  The grid is doubled until the window is
/// stable; a change above 1e-8 after the final doubling raises
/// non_convergence_error.  n_grid must be a power of two >= 4*(window size).
PmfExtract extract_pmf(const AnalyticPgf& pgf, int k_lo, int k_hi, int n_grid);

/// As above with the default grid policy (start at max(4096, 4*window)).
PmfExtract extract_pmf(const AnalyticPgf& pgf, int k_lo, int k_hi);

/// Lattice inversion of a characteristic function,
/// p_k = (1/2pi) int_{-pi}^{pi} f(t) e^{-ikt} dt, same grid-doubling error
/// control as extract_pmf.
PmfExtract pmf_from_cf(const std::function<cplx(double)>& cf, int k_lo, int k_hi);
PmfExtract pmf_from_cf(const std::function<cplx(double)>& cf, int k_lo, int k_hi,
                       int n_grid);

/// Pointwise composition outer(inner(z)).  The inner PGF must map the closed
/// unit disc into itself; checked on a circle grid, violation raises
/// std::domain_error.
AnalyticPgf compose(const AnalyticPgf& outer, const AnalyticPgf& inner);

/// Characteristic function value f(t) = pgf(e^{it}).
cplx cf_eval(const AnalyticPgf& pgf, double t);

/// n-th factorial moment E[(X)_n] = P^{(n)}(1), computed by a Cauchy
/// integral on a circle about z=1 of radius < min(radius_one, 0.9), with
/// grid doubling and a radius cross-check.  Raises std::runtime_error when
/// refinements disagree by more than 1e-5 relative.
double numeric_factorial_moment(const AnalyticPgf& pgf, int n);

/// Reconstruct an AnalyticPgf from a coefficient window (Horner sum);
/// useful for round-trip checks and for sampling tables.
AnalyticPgf pgf_from_pmf(const LaurentSeries& pmf, SupportKind support);

} // namespace dstable

#endif
