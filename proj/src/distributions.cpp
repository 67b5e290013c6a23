#include "dstable/distributions.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace dstable {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw std::domain_error(msg);
}

cplx pow_int(cplx z, int n)
{
    cplx r(1.0, 0.0);
    for (int i = 0; i < n; ++i)
        r *= z;
    return r;
}

// w^gamma on the principal branch with the right-half-plane assertion the
// geometric-type exponents satisfy on the closed unit disc
cplx pow_rhp(cplx w, double gamma, const char* who)
{
    if (gamma == 1.0)
        return w; // analytic, no branch constraint
    if (w == cplx(0.0, 0.0))
        return cplx(0.0, 0.0);
    if (w.real() < -1e-10 * (1.0 + std::abs(w)))
        throw std::domain_error(std::string("branch error: ") + who +
                                " exponent base left the right half plane");
    if (w.real() < 0.0)
        w = cplx(0.0, w.imag());
    return std::pow(w, gamma);
}

cplx pow_principal(cplx w, double gamma)
{
    if (gamma == 1.0)
        return w;
    if (w == cplx(0.0, 0.0))
        return cplx(0.0, 0.0);
    return std::pow(w, gamma);
}

} // namespace

const char* family_name(DistFamily f)
{
    switch (f) {
    case DistFamily::pds: return "PDS";
    case DistFamily::ds: return "DS";
    case DistFamily::sds: return "SDS";
    case DistFamily::tpds: return "TPDS";
    case DistFamily::geom_portly_stable: return "GeomPortlyStable";
    case DistFamily::first_passage: return "FirstPassage";
    }
    return "?";
}

bool SupportDesc::contains(long long k) const
{
    if (k % lattice != 0)
        return false;
    const long long j = k / lattice;
    switch (family) {
    case DistFamily::pds:
    case DistFamily::tpds:
        return j >= 0;
    case DistFamily::ds:
    case DistFamily::sds:
        return true;
    case DistFamily::geom_portly_stable:
        return k <= 0;
    case DistFamily::first_passage:
        return j >= first_passage_min && (j - first_passage_min) % 2 == 0;
    }
    return false;
}

std::string SupportDesc::to_string() const
{
    const std::string m = std::to_string(lattice);
    switch (family) {
    case DistFamily::pds:
    case DistFamily::tpds:
        return m + "*{0,1,2,...}";
    case DistFamily::ds:
    case DistFamily::sds:
        return m + "*{...,-1,0,1,...}";
    case DistFamily::geom_portly_stable:
        return "{0,-1,-2,...}";
    case DistFamily::first_passage:
        return m + "*{" + std::to_string(first_passage_min) + "," +
               std::to_string(first_passage_min + 2) + ",...}";
    }
    return "?";
}

Dist Dist::pds(double gamma, double lambda, double kappa, int m)
{
    require(gamma > 0.0 && gamma <= 1.0,
            "gamma must lie in (0,1] for family PDS, got " + std::to_string(gamma));
    require(lambda > 0.0,
            "lambda must be positive for family PDS, got " + std::to_string(lambda));
    require(kappa >= 0.0 && kappa < 1.0,
            "kappa must lie in [0,1) for family PDS, got " + std::to_string(kappa));
    require(m >= 1, "m must be a positive integer for family PDS");
    Dist d;
    d.family_ = DistFamily::pds;
    d.gamma_ = gamma;
    d.lambda_ = lambda;
    d.kappa_ = kappa;
    d.m_ = m;
    return d;
}

Dist Dist::ds(double gamma, double beta, double lambda, double q, double kappa,
              int m)
{
    require(gamma > 0.0 && gamma <= 1.0,
            "gamma must lie in (0,1] for family DS, got " + std::to_string(gamma));
    require(beta >= -1.0 && beta <= 1.0,
            "beta must lie in [-1,1] for family DS, got " + std::to_string(beta));
    require(lambda > 0.0,
            "lambda must be positive for family DS, got " + std::to_string(lambda));
    require(q >= 0.0 && q <= 1.0,
            "q must lie in [0,1] for family DS, got " + std::to_string(q));
    require(kappa >= 0.0 && kappa < 1.0,
            "kappa must lie in [0,1) for family DS, got " + std::to_string(kappa));
    require(m >= 1, "m must be a positive integer for family DS");
    Dist d;
    d.family_ = DistFamily::ds;
    d.gamma_ = gamma;
    d.beta_ = beta;
    d.lambda_ = lambda;
    d.q_ = q;
    d.kappa_ = kappa;
    d.m_ = m;
    return d;
}

Dist Dist::sds(double gamma, double lambda, double kappa, int m)
{
    require(gamma > 0.0 && gamma <= 1.0,
            "gamma must lie in (0,1] for family SDS, got " + std::to_string(gamma));
    require(lambda > 0.0,
            "lambda must be positive for family SDS, got " + std::to_string(lambda));
    require(kappa >= 0.0 && kappa < 1.0,
            "kappa must lie in [0,1) for family SDS, got " + std::to_string(kappa));
    require(m >= 1, "m must be a positive integer for family SDS");
    Dist d;
    d.family_ = DistFamily::sds;
    d.gamma_ = gamma;
    d.lambda_ = lambda;
    d.kappa_ = kappa;
    d.beta_ = 0.0;
    d.q_ = 0.5;
    d.m_ = m;
    return d;
}

Dist Dist::tpds(double gamma, double lambda, double b, int m)
{
    require(gamma > 0.0 && gamma <= 2.0,
            "gamma must lie in (0,2] for family TPDS, got " + std::to_string(gamma));
    require(lambda > 0.0,
            "lambda must be positive for family TPDS, got " + std::to_string(lambda));
    require(b > -1.0 && b < 1.0,
            "b must lie in (-1,1) for family TPDS, got " + std::to_string(b));
    require(m >= 1, "m must be a positive integer for family TPDS");
    Dist d;
    d.family_ = DistFamily::tpds;
    d.gamma_ = gamma;
    d.lambda_ = lambda;
    d.b_ = b;
    d.m_ = m;
    return d;
}

Dist Dist::geom_portly_stable(double gamma, double lambda)
{
    require(gamma > 0.0 && gamma <= 1.0,
            "gamma must lie in (0,1] for family GeomPortlyStable, got " +
                std::to_string(gamma));
    require(lambda > 0.0, "lambda must be positive for family GeomPortlyStable");
    Dist d;
    d.family_ = DistFamily::geom_portly_stable;
    d.gamma_ = gamma;
    d.lambda_ = lambda;
    return d;
}

Dist Dist::first_passage(int M, int m)
{
    require(M >= 1, "M must be a positive integer for family FirstPassage");
    require(m >= 1, "m must be a positive integer for family FirstPassage");
    Dist d;
    d.family_ = DistFamily::first_passage;
    d.big_m_ = M;
    d.m_ = m;
    return d;
}

cplx Dist::log_pgf_from_u(cplx u) const
{
    switch (family_) {
    case DistFamily::pds: {
        const cplx w = u / ((1.0 - kappa_) + kappa_ * u);
        return -lambda_ * pow_rhp(w, gamma_, "PDS");
    }
    case DistFamily::tpds: {
        const cplx omu =
            2.0 * (1.0 + b_) * u / ((1.0 - b_) + (1.0 + b_) * u);
        const cplx theta = 2.0 * std::asin(std::sqrt(0.5 * omu));
        return -lambda_ * pow_principal(theta, gamma_);
    }
    default:
        throw std::domain_error(
            "log_pgf_from_u: only the PDS and TPDS families evaluate from u");
    }
}

cplx Dist::log_pgf(cplx z) const
{
    switch (family_) {
    case DistFamily::pds:
    case DistFamily::tpds:
        return log_pgf_from_u(1.0 - pow_int(z, m_));
    case DistFamily::sds: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("SDS pgf: z = 0 not allowed");
        const cplx zm = pow_int(z, m_);
        const cplx zmi = 1.0 / zm;
        const cplx base = 1.0 - 0.5 * (1.0 - kappa_) *
                                    (zm / (1.0 - kappa_ * zm) +
                                     zmi / (1.0 - kappa_ * zmi));
        return -lambda_ * pow_rhp(base, gamma_, "SDS");
    }
    case DistFamily::ds: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("DS pgf: z = 0 not allowed");
        const cplx zm = pow_int(z, m_);
        // evaluate only the mixture terms with nonzero weight so that the
        // unused side cannot contribute 0 * inf at its pole
        auto s_pos = [&] { return (1.0 - kappa_) * zm / (1.0 - kappa_ * zm); };
        auto s_neg = [&] {
            const cplx zmi = 1.0 / zm;
            return (1.0 - kappa_) * zmi / (1.0 - kappa_ * zmi);
        };
        cplx total(0.0, 0.0);
        const double w_pos = 0.5 * (1.0 + beta_);
        const double w_neg = 0.5 * (1.0 - beta_);
        if (w_pos > 0.0) {
            cplx g = cplx(1.0, 0.0);
            if (q_ > 0.0)
                g -= q_ * s_pos();
            if (q_ < 1.0)
                g -= (1.0 - q_) * s_neg();
            total -= lambda_ * w_pos * pow_rhp(g, gamma_, "DS");
        }
        if (w_neg > 0.0) {
            cplx h = cplx(1.0, 0.0);
            if (q_ > 0.0)
                h -= q_ * s_neg();
            if (q_ < 1.0)
                h -= (1.0 - q_) * s_pos();
            total -= lambda_ * w_neg * pow_rhp(h, gamma_, "DS");
        }
        return total;
    }
    case DistFamily::geom_portly_stable: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("GeomPortlyStable pgf: z = 0 not allowed");
        const cplx w = 1.0 - 1.0 / z;
        return -lambda_ * pow_principal(w, gamma_);
    }
    case DistFamily::first_passage: {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("FirstPassage pgf: z = 0 not allowed");
        // (1 - sqrt(1-z^2m))/z^m written cancellation-free
        const cplx zm = pow_int(z, m_);
        const cplx root = std::sqrt(1.0 - zm * zm);
        return static_cast<double>(big_m_) * std::log(zm / (1.0 + root));
    }
    }
    throw std::logic_error("unreachable");
}

cplx Dist::pgf(cplx z) const
{
    if (family_ == DistFamily::first_passage) {
        if (z == cplx(0.0, 0.0))
            throw std::domain_error("FirstPassage pgf: z = 0 not allowed");
        const cplx zm = pow_int(z, m_);
        return pow_int(zm / (1.0 + std::sqrt(1.0 - zm * zm)), big_m_);
    }
    return std::exp(log_pgf(z));
}

cplx Dist::char_fn(double t) const
{
    return pgf(std::polar(1.0, t));
}

SupportDesc Dist::support() const
{
    SupportDesc s;
    s.family = family_;
    s.lattice = family_ == DistFamily::geom_portly_stable ? 1 : m_;
    s.first_passage_min = big_m_;
    return s;
}

AnalyticPgf Dist::as_pgf() const
{
    const Dist d = *this;
    SupportKind kind = SupportKind::nonnegative;
    double radius = 1.0;
    switch (family_) {
    case DistFamily::pds:
        kind = SupportKind::nonnegative;
        radius = kappa_ > 0.0 ? (1.0 / kappa_ - 1.0) : 3.0;
        break;
    case DistFamily::tpds:
        kind = SupportKind::nonnegative;
        radius = (1.0 - b_) / (1.0 + b_);
        break;
    case DistFamily::ds:
    case DistFamily::sds:
        kind = SupportKind::two_sided;
        radius = 1.0 - kappa_;
        break;
    case DistFamily::geom_portly_stable:
        kind = SupportKind::nonpositive;
        radius = 1.0;
        break;
    case DistFamily::first_passage:
        kind = SupportKind::nonnegative;
        radius = 1.0;
        break;
    }
    return AnalyticPgf([d](cplx z) { return d.pgf(z); }, kind, m_, radius);
}

std::string Dist::to_json() const
{
    nlohmann::ordered_json j;
    j["family"] = family_name(family_);
    switch (family_) {
    case DistFamily::pds:
        j["gamma"] = gamma_;
        j["lambda"] = lambda_;
        j["kappa"] = kappa_;
        j["m"] = m_;
        break;
    case DistFamily::ds:
        j["gamma"] = gamma_;
        j["beta"] = beta_;
        j["lambda"] = lambda_;
        j["q"] = q_;
        j["kappa"] = kappa_;
        j["m"] = m_;
        break;
    case DistFamily::sds:
        j["gamma"] = gamma_;
        j["lambda"] = lambda_;
        j["kappa"] = kappa_;
        j["m"] = m_;
        break;
    case DistFamily::tpds:
        j["gamma"] = gamma_;
        j["lambda"] = lambda_;
        j["b"] = b_;
        j["m"] = m_;
        break;
    case DistFamily::geom_portly_stable:
        j["gamma"] = gamma_;
        j["lambda"] = lambda_;
        break;
    case DistFamily::first_passage:
        j["M"] = big_m_;
        j["m"] = m_;
        break;
    }
    return j.dump();
}

Dist Dist::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::domain_error(std::string("distribution JSON: ") + e.what());
    }
    static const char* known[] = {"family", "gamma", "lambda", "kappa",
                                  "beta",   "q",     "b",      "m",
                                  "M"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || it.key() == k;
        if (!ok)
            throw std::domain_error("distribution JSON: unknown field '" +
                                    it.key() + "'");
    }
    const std::string fam = j.at("family").get<std::string>();
    const double gamma = j.value("gamma", 1.0);
    const double lambda = j.value("lambda", 1.0);
    const double kappa = j.value("kappa", 0.0);
    const double beta = j.value("beta", 1.0);
    const double q = j.value("q", 1.0);
    const double b = j.value("b", 0.0);
    const int m = j.value("m", 1);
    const int big_m = j.value("M", 1);

    if (fam == "PDS")
        return pds(gamma, lambda, kappa, m);
    if (fam == "DS")
        return ds(gamma, beta, lambda, q, kappa, m);
    if (fam == "SDS")
        return sds(gamma, lambda, kappa, m);
    if (fam == "TPDS")
        return tpds(gamma, lambda, b, m);
    if (fam == "GeomPortlyStable")
        return geom_portly_stable(gamma, lambda);
    if (fam == "FirstPassage")
        return first_passage(big_m, m);
    throw std::domain_error("distribution JSON: unknown family '" + fam + "'");
}

Dist ds_sum(const Dist& d1, const Dist& d2)
{
    if (d1.family() != DistFamily::ds || d2.family() != DistFamily::ds)
        throw std::domain_error("ds_sum: both operands must be DS");
    if (d1.gamma() != d2.gamma() || d1.q() != d2.q() ||
        d1.kappa() != d2.kappa() || d1.lattice() != d2.lattice())
        throw std::domain_error("ds_sum: gamma, q, kappa and m must match");
    const double lambda = d1.lambda() + d2.lambda();
    const double beta =
        (d1.beta() * d1.lambda() + d2.beta() * d2.lambda()) / lambda;
    return Dist::ds(d1.gamma(), beta, lambda, d1.q(), d1.kappa(), d1.lattice());
}

Dist ds_negate(const Dist& d)
{
    if (d.family() != DistFamily::ds)
        throw std::domain_error("ds_negate: operand must be DS");
    return Dist::ds(d.gamma(), -d.beta(), d.lambda(), d.q(), d.kappa(),
                    d.lattice());
}

} // namespace dstable
