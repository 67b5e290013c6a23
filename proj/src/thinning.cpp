#include "dstable/thinning.hpp"

#include "dstable/special_functions.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace dstable {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw std::domain_error(msg);
}

// principal m-th root; the base of every root taken here must stay off the
// negative real axis (the Moebius images of the closed disc are discs
// containing positive reals and avoiding 0)
cplx root_m(cplx w, int m, const char* who)
{
    if (m == 1)
        return w;
    if (w.real() <= 0.0 && std::abs(w.imag()) <= 1e-14 * (1.0 + std::abs(w.real())))
        throw std::domain_error(std::string("branch error: ") + who +
                                " root base on the negative real axis");
    return std::pow(w, 1.0 / static_cast<double>(m));
}

cplx pow_int(cplx z, int n)
{
    cplx r(1.0, 0.0);
    for (int i = 0; i < n; ++i)
        r *= z;
    return r;
}

// S(z) = (1-kappa) z^m / (1 - kappa z^m)
cplx geo_s(cplx zm, double kappa)
{
    return (1.0 - kappa) * zm / (1.0 - kappa * zm);
}

// 1 - S(z) from u = 1 - z^m, free of cancellation
cplx one_minus_geo_s(cplx u, double kappa)
{
    return u / ((1.0 - kappa) + kappa * u);
}

bool is_power_of_half(double p)
{
    int e = 0;
    const double mant = std::frexp(p, &e);
    return mant == 0.5 && e <= 0;
}

} // namespace

const char* family_name(ThinningFamily f)
{
    switch (f) {
    case ThinningFamily::bernoulli: return "Bernoulli";
    case ThinningFamily::mod_geometric: return "ModGeometric";
    case ThinningFamily::two_sided_mod_geometric: return "TwoSidedModGeometric";
    case ThinningFamily::chebyshev_thin: return "ChebyshevThin";
    case ThinningFamily::degenerate_portly: return "DegeneratePortly";
    case ThinningFamily::geometric_portly: return "GeometricPortly";
    case ThinningFamily::chebyshev_portly: return "ChebyshevPortly";
    }
    return "?";
}

ThinningOp ThinningOp::bernoulli(double p)
{
    require(p > 0.0 && p < 1.0,
            "p must lie in (0,1) for family Bernoulli, got " + std::to_string(p));
    ThinningOp op;
    op.family_ = ThinningFamily::bernoulli;
    op.p_ = p;
    return op;
}

ThinningOp ThinningOp::mod_geometric(double p, double kappa, int m)
{
    require(m >= 1, "m must be a positive integer for family ModGeometric");
    if (m == 1)
        require(kappa >= 0.0 && kappa < 1.0 && p > 0.0 && p < 1.0,
                "ModGeometric with m=1 requires 0 <= kappa < 1 and 0 < p < 1");
    else
        require(p > 0.0 && p < kappa && kappa < 1.0,
                "ModGeometric with m>1 requires 0 < p < kappa < 1");
    ThinningOp op;
    op.family_ = ThinningFamily::mod_geometric;
    op.p_ = p;
    op.kappa_ = kappa;
    op.m_ = m;
    return op;
}

ThinningOp ThinningOp::two_sided_mod_geometric(double p, double kappa, double q,
                                               int m)
{
    require(q >= 0.0 && q <= 1.0,
            "q must lie in [0,1] for family TwoSidedModGeometric");
    ThinningOp base = mod_geometric(p, kappa, m); // shares parameter ranges
    base.family_ = ThinningFamily::two_sided_mod_geometric;
    base.q_ = q;
    return base;
}

ThinningOp ThinningOp::chebyshev_thin(double p, double b, int m)
{
    require(p > 0.0 && p < 1.0,
            "p must lie in (0,1) for family ChebyshevThin, got " + std::to_string(p));
    require(b > -1.0 && b < 1.0,
            "b must lie in (-1,1) for family ChebyshevThin, got " + std::to_string(b));
    require(m >= 1, "m must be a positive integer for family ChebyshevThin");
    ThinningOp op;
    op.family_ = ThinningFamily::chebyshev_thin;
    op.p_ = p;
    op.b_ = b;
    op.m_ = m;
    op.proven_ = (b == 0.0) && is_power_of_half(p);
    return op;
}

ThinningOp ThinningOp::degenerate_portly(int n)
{
    require(n >= 1, "n must be a positive integer for family DegeneratePortly");
    ThinningOp op;
    op.family_ = ThinningFamily::degenerate_portly;
    op.n_ = n;
    return op;
}

ThinningOp ThinningOp::geometric_portly(double p)
{
    require(p > 0.0 && p < 1.0,
            "p must lie in (0,1) for family GeometricPortly, got " + std::to_string(p));
    ThinningOp op;
    op.family_ = ThinningFamily::geometric_portly;
    op.p_ = p;
    return op;
}

ThinningOp ThinningOp::chebyshev_portly(int n, int m)
{
    require(n >= 1, "n must be a positive integer for family ChebyshevPortly");
    require(m >= 1, "m must be a positive integer for family ChebyshevPortly");
    ThinningOp op;
    op.family_ = ThinningFamily::chebyshev_portly;
    op.n_ = n;
    op.m_ = m;
    return op;
}

namespace {

// T_n(w) for integer n and complex w via the three-term recurrence
cplx cheb_poly(int n, cplx w)
{
    if (n == 0)
        return cplx(1.0, 0.0);
    cplx tm1(1.0, 0.0), t = w;
    for (int i = 1; i < n; ++i) {
        cplx tp1 = 2.0 * w * t - tm1;
        tm1 = t;
        t = tp1;
    }
    return t;
}

} // namespace

cplx ThinningOp::pgf(cplx z) const
{
    switch (family_) {
    case ThinningFamily::bernoulli:
        return p_ * z + (1.0 - p_);
    case ThinningFamily::mod_geometric: {
        const cplx zm = pow_int(z, m_);
        const cplx base = ((1.0 - p_) + (p_ - kappa_) * zm) /
                          ((1.0 - p_ * kappa_) - kappa_ * (1.0 - p_) * zm);
        return root_m(base, m_, "ModGeometric pgf");
    }
    case ThinningFamily::two_sided_mod_geometric: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("TwoSidedModGeometric pgf: z = 0 not allowed");
        const cplx zm = pow_int(z, m_);
        const cplx s2 = q_ * geo_s(zm, kappa_) + (1.0 - q_) * geo_s(1.0 / zm, kappa_);
        const cplx y = 1.0 - p_ + p_ * s2;
        const cplx base = y / ((1.0 - kappa_) + kappa_ * y);
        return root_m(base, m_, "TwoSidedModGeometric pgf");
    }
    case ThinningFamily::chebyshev_thin: {
        const cplx zm = pow_int(z, m_);
        const cplx u = ((1.0 + b_) * zm - 2.0 * b_) / (2.0 - (1.0 + b_) * zm);
        const cplx t = std::cos(p_ * std::acos(u));
        const cplx base = 2.0 * (b_ + t) / ((1.0 + b_) * (1.0 + t));
        return root_m(base, m_, "ChebyshevThin pgf");
    }
    case ThinningFamily::degenerate_portly:
        return pow_int(z, n_);
    case ThinningFamily::geometric_portly:
        // denominator written as p + (1-p)(1-z): exact at z = 1
        return p_ * z / (p_ + (1.0 - p_) * (1.0 - z));
    case ThinningFamily::chebyshev_portly: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("ChebyshevPortly pgf: z = 0 not allowed");
        const cplx base = 1.0 / cheb_poly(n_, 1.0 / pow_int(z, m_));
        return root_m(base, m_, "ChebyshevPortly pgf");
    }
    }
    throw std::logic_error("unreachable");
}

cplx ThinningOp::one_minus_pow_m(cplx z) const
{
    const cplx u = 1.0 - pow_int(z, m_);
    switch (family_) {
    case ThinningFamily::bernoulli:
        return p_ * u;
    case ThinningFamily::mod_geometric: {
        const cplx om_s = one_minus_geo_s(u, kappa_);
        const cplx om_y = p_ * om_s; // 1 - B_p(S(z))
        const cplx y = 1.0 - om_y;
        return (1.0 - kappa_) * om_y / ((1.0 - kappa_) + kappa_ * y);
    }
    case ThinningFamily::two_sided_mod_geometric: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("TwoSidedModGeometric: z = 0 not allowed");
        const cplx u_inv = 1.0 - pow_int(1.0 / z, m_);
        const cplx om_s2 = q_ * one_minus_geo_s(u, kappa_) +
                           (1.0 - q_) * one_minus_geo_s(u_inv, kappa_);
        const cplx om_y = p_ * om_s2;
        const cplx y = 1.0 - om_y;
        return (1.0 - kappa_) * om_y / ((1.0 - kappa_) + kappa_ * y);
    }
    case ThinningFamily::chebyshev_thin: {
        // 1 - Q^m = (1-b)/(1+b) * tan(p*theta/2)^2, theta = arccos(u(z))
        const cplx omu = 2.0 * (1.0 + b_) * u / ((1.0 - b_) + (1.0 + b_) * u);
        const cplx theta = 2.0 * std::asin(std::sqrt(0.5 * omu));
        const cplx t = std::tan(0.5 * p_ * theta);
        return (1.0 - b_) / (1.0 + b_) * t * t;
    }
    default:
        return 1.0 - pow_int(pgf(z), m_);
    }
}

double ThinningOp::mean() const
{
    switch (family_) {
    case ThinningFamily::bernoulli: return p_;
    case ThinningFamily::mod_geometric: return p_;
    case ThinningFamily::two_sided_mod_geometric: return (2.0 * q_ - 1.0) * p_;
    case ThinningFamily::chebyshev_thin: return p_ * p_;
    case ThinningFamily::degenerate_portly: return static_cast<double>(n_);
    case ThinningFamily::geometric_portly: return 1.0 / p_;
    case ThinningFamily::chebyshev_portly:
        return static_cast<double>(n_) * static_cast<double>(n_);
    }
    throw std::logic_error("unreachable");
}

namespace {

LaurentSeries mod_geometric_pmf(double p, double kappa, int m, int k_hi)
{
    LaurentSeries s;
    s.k_min = 0;
    s.lattice = m;
    s.coeffs.assign(static_cast<std::size_t>(k_hi + 1), 0.0);
    if (m == 1) {
        s.coeffs[0] = (1.0 - p) / (1.0 - p * kappa);
        if (k_hi >= 1) {
            // q_n = C r^{n-1}, r = kappa(1-p)/(1-p kappa)
            const double c = p * (1.0 - kappa) * (1.0 - kappa) /
                             ((1.0 - p * kappa) * (1.0 - p * kappa));
            const double r = kappa * (1.0 - p) / (1.0 - p * kappa);
            double qn = c;
            for (int n = 1; n <= k_hi; ++n) {
                s.coeffs[static_cast<std::size_t>(n)] = qn;
                qn *= r;
            }
        }
        return s;
    }
    // m > 1: q_n = kappa^n ((1-p)/(1-p kappa))^{1/m+n} binom(1/m+n-1, n)
    //              2F1(-1/m, -n; 1-1/m-n; x) placed at index m*n
    const double ratio = (1.0 - p) / (1.0 - p * kappa);
    const double x = (kappa - p) * (1.0 - p * kappa) /
                     ((1.0 - p) * (1.0 - p) * kappa);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int n = 0; m * n <= k_hi; ++n) {
        const double qn = std::pow(kappa, n) * std::pow(ratio, inv_m + n) *
                          binom_real(inv_m + n - 1.0, n) *
                          gauss_2f1(-inv_m, -static_cast<double>(n),
                                    1.0 - inv_m - n, x);
        s.coeffs[static_cast<std::size_t>(m * n)] = qn;
    }
    return s;
}

} // namespace

LaurentSeries ThinningOp::pmf(int k_hi) const
{
    if (k_hi < 0)
        throw std::domain_error("pmf: k_hi must be nonnegative");
    switch (family_) {
    case ThinningFamily::bernoulli: {
        LaurentSeries s;
        s.k_min = 0;
        s.coeffs = {1.0 - p_, p_};
        if (k_hi == 0)
            s.coeffs.resize(1);
        return s;
    }
    case ThinningFamily::mod_geometric:
        return mod_geometric_pmf(p_, kappa_, m_, k_hi);
    case ThinningFamily::degenerate_portly: {
        LaurentSeries s;
        s.k_min = 0;
        s.coeffs.assign(static_cast<std::size_t>(k_hi + 1), 0.0);
        if (n_ <= k_hi)
            s.coeffs[static_cast<std::size_t>(n_)] = 1.0;
        return s;
    }
    case ThinningFamily::geometric_portly: {
        LaurentSeries s;
        s.k_min = 0;
        s.coeffs.assign(static_cast<std::size_t>(k_hi + 1), 0.0);
        double q = p_;
        for (int k = 1; k <= k_hi; ++k) {
            s.coeffs[static_cast<std::size_t>(k)] = q;
            q *= 1.0 - p_;
        }
        return s;
    }
    case ThinningFamily::two_sided_mod_geometric: {
        auto ex = extract_pmf(as_pgf(), -k_hi, k_hi);
        ex.series.clip_roundoff_negatives();
        return ex.series;
    }
    case ThinningFamily::chebyshev_thin:
    case ThinningFamily::chebyshev_portly: {
        auto ex = extract_pmf(as_pgf(), 0, k_hi);
        for (double c : ex.series.coeffs)
            if (c < -1e-12)
                throw std::runtime_error(
                    std::string(family_name(family_)) +
                    " pmf: negative coefficient " + std::to_string(c) +
                    " (parameters outside the proven subfamily)");
        for (double& c : ex.series.coeffs)
            if (c < 0.0)
                c = 0.0;
        return ex.series;
    }
    }
    throw std::logic_error("unreachable");
}

AnalyticPgf ThinningOp::as_pgf() const
{
    const ThinningOp op = *this;
    SupportKind kind = family_ == ThinningFamily::two_sided_mod_geometric
                           ? SupportKind::two_sided
                           : SupportKind::nonnegative;
    return AnalyticPgf([op](cplx z) { return op.pgf(z); }, kind, m_);
}

AnalyticPgf compose_ops(const ThinningOp& a, const ThinningOp& b)
{
    if (a.family() != b.family())
        throw std::domain_error(std::string("compose_ops: family mismatch (") +
                                family_name(a.family()) + " vs " +
                                family_name(b.family()) + ")");
    const bool same_struct = a.lattice() == b.lattice() &&
                             a.kappa() == b.kappa() && a.b() == b.b() &&
                             a.q() == b.q();
    if (!same_struct)
        throw std::domain_error(
            "compose_ops: structural parameters (kappa, b, q, m) must match");

    switch (a.family()) {
    case ThinningFamily::bernoulli:
        return ThinningOp::bernoulli(a.p() * b.p()).as_pgf();
    case ThinningFamily::mod_geometric:
        return ThinningOp::mod_geometric(a.p() * b.p(), a.kappa(), a.lattice())
            .as_pgf();
    case ThinningFamily::chebyshev_thin:
        return ThinningOp::chebyshev_thin(a.p() * b.p(), a.b(), a.lattice())
            .as_pgf();
    case ThinningFamily::chebyshev_portly:
        return ThinningOp::chebyshev_portly(a.n() * b.n(), a.lattice()).as_pgf();
    case ThinningFamily::degenerate_portly:
        return ThinningOp::degenerate_portly(a.n() * b.n()).as_pgf();
    case ThinningFamily::geometric_portly:
        return ThinningOp::geometric_portly(a.p() * b.p()).as_pgf();
    default:
        throw std::domain_error(
            "compose_ops: composition not defined for this family");
    }
}

// ---------------------------------------------------------------------------
// sampling

struct ThinningOp::Table {
    int k_min = 0;
    std::vector<double> cdf;
};

const ThinningOp::Table& ThinningOp::sampling_table() const
{
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (table_)
        return *table_;

    auto tbl = std::make_shared<Table>();
    int k_hi = 128 * m_;
    LaurentSeries series;
    for (;;) {
        series = pmf(k_hi);
        if (1.0 - series.sum() < 1e-12 || k_hi >= (1 << 22))
            break;
        k_hi *= 4;
    }
    tbl->k_min = series.k_min;
    tbl->cdf.resize(series.coeffs.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < series.coeffs.size(); ++i) {
        cum += series.coeffs[i];
        tbl->cdf[i] = cum;
    }
    table_ = tbl;
    return *table_;
}

namespace {

long long draw_from_cdf(const std::vector<double>& cdf, int k_min,
                        RandomStream& rng)
{
    const double u = rng.uniform() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cdf[mid] < u)
            lo = mid + 1;
        else
            hi = mid;
    }
    return k_min + static_cast<long long>(lo);
}

} // namespace

long long apply_thinning(const ThinningOp& op, long long x, RandomStream& rng)
{
    if (x < 0)
        throw std::domain_error("apply_thinning: x must be nonnegative");
    if (op.family() == ThinningFamily::two_sided_mod_geometric)
        return apply_two_sided(op, x, rng);
    long long total = 0;
    switch (op.family()) {
    case ThinningFamily::bernoulli:
        for (long long i = 0; i < x; ++i)
            total += rng.uniform() < op.p() ? 1 : 0;
        return total;
    case ThinningFamily::mod_geometric: {
        if (op.lattice() == 1) {
            const double p = op.p(), kappa = op.kappa();
            const double q0 = (1.0 - p) / (1.0 - p * kappa);
            const double r = kappa * (1.0 - p) / (1.0 - p * kappa);
            for (long long i = 0; i < x; ++i) {
                if (rng.uniform() < q0)
                    continue;
                total += rng.geometric_from_one(r);
            }
            return total;
        }
        const auto& tbl = op.sampling_table();
        for (long long i = 0; i < x; ++i)
            total += draw_from_cdf(tbl.cdf, tbl.k_min, rng);
        return total;
    }
    case ThinningFamily::degenerate_portly:
        return x * op.n();
    case ThinningFamily::geometric_portly:
        for (long long i = 0; i < x; ++i)
            total += rng.geometric_from_one(1.0 - op.p());
        return total;
    case ThinningFamily::chebyshev_thin:
    case ThinningFamily::chebyshev_portly: {
        const auto& tbl = op.sampling_table();
        for (long long i = 0; i < x; ++i)
            total += draw_from_cdf(tbl.cdf, tbl.k_min, rng);
        return total;
    }
    default:
        throw std::logic_error("unreachable");
    }
}

long long apply_two_sided(const ThinningOp& op, long long x, RandomStream& rng)
{
    if (op.family() != ThinningFamily::two_sided_mod_geometric)
        throw std::domain_error("apply_two_sided: operator must be two-sided");
    const auto& tbl = op.sampling_table();
    const long long x_pos = x > 0 ? x : 0;
    const long long x_neg = x < 0 ? -x : 0;
    long long total = 0;
    for (long long i = 0; i < x_pos; ++i)
        total += draw_from_cdf(tbl.cdf, tbl.k_min, rng);
    for (long long i = 0; i < x_neg; ++i)
        total -= draw_from_cdf(tbl.cdf, tbl.k_min, rng);
    return total;
}

} // namespace dstable
