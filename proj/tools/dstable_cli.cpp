// Command-line front end: PMF tables, reproducible samples, moments, tail
// fits and verification reports as machine-readable JSON/CSV.
//
// Exit codes: 0 success, 1 parameter/usage error (diagnostic on stderr),
// 2 verification failure (some report not passed).

#include "dstable/distributions.hpp"
#include "dstable/moments.hpp"
#include "dstable/pmf.hpp"
#include "dstable/sampler.hpp"
#include "dstable/series.hpp"
#include "dstable/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace dstable;
using nlohmann::ordered_json;

namespace {

struct DistFlags {
    std::string family;
    std::string dist_json;
    double gamma = 1.0, lambda = 1.0, kappa = 0.0, beta = 1.0, q = 1.0, b = 0.0;
    int m = 1, big_m = 1;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--family", family,
                        "distribution family: PDS, DS, SDS, TPDS, "
                        "GeomPortlyStable, FirstPassage");
        cmd->add_option("--dist", dist_json,
                        "distribution as a JSON object (overrides flags)");
        cmd->add_option("--gamma", gamma, "stability index");
        cmd->add_option("--lambda", lambda, "rate parameter");
        cmd->add_option("--kappa", kappa, "geometric parameter (default 0)");
        cmd->add_option("--beta", beta, "skewness (DS only, default 1)");
        cmd->add_option("--q", q, "two-sided mixing weight (default 1)");
        cmd->add_option("--b", b, "Chebyshev parameter (default 0)");
        cmd->add_option("--m", m, "lattice (default 1)");
        cmd->add_option("--M", big_m, "number of passages (FirstPassage)");
    }

    Dist build() const
    {
        if (!dist_json.empty())
            return Dist::from_json(dist_json);
        if (family.empty())
            throw std::domain_error("no distribution given: use --family or --dist");
        ordered_json j;
        j["family"] = family;
        j["gamma"] = gamma;
        j["lambda"] = lambda;
        j["kappa"] = kappa;
        j["beta"] = beta;
        j["q"] = q;
        j["b"] = b;
        j["m"] = m;
        j["M"] = big_m;
        // strip fields the family does not use so from_json can validate
        if (family == "PDS" || family == "SDS") {
            j.erase("beta");
            j.erase("q");
            j.erase("b");
            j.erase("M");
        } else if (family == "DS") {
            j.erase("b");
            j.erase("M");
        } else if (family == "TPDS") {
            j.erase("beta");
            j.erase("q");
            j.erase("kappa");
            j.erase("M");
        } else if (family == "GeomPortlyStable") {
            j.erase("beta");
            j.erase("q");
            j.erase("b");
            j.erase("kappa");
            j.erase("m");
            j.erase("M");
        } else if (family == "FirstPassage") {
            j.erase("gamma");
            j.erase("lambda");
            j.erase("kappa");
            j.erase("beta");
            j.erase("q");
            j.erase("b");
        }
        return Dist::from_json(j.dump());
    }
};

std::unique_ptr<std::ostream> open_output(const std::string& path,
                                          std::ostream*& out)
{
    if (path.empty()) {
        out = &std::cout;
        return nullptr;
    }
    std::string full = path;
    const char* dir = std::getenv("DSTABLE_OUT_DIR");
    if (dir && *dir && path.front() != '/')
        full = std::string(dir) + "/" + path;
    auto file = std::make_unique<std::ofstream>(full, std::ios::binary);
    if (!*file)
        throw std::domain_error("cannot open output file: " + full);
    out = file.get();
    return file;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

int run_pmf(const DistFlags& flags, int k_lo, int k_hi,
            const std::string& format, const std::string& out_path)
{
    Dist d = flags.build();
    auto ex = extract_pmf(d.as_pgf(), k_lo, k_hi);
    std::ostream* out = nullptr;
    auto guard = open_output(out_path, out);
    if (format == "csv") {
        *out << "k,p\n";
        for (int k = ex.series.k_min; k <= ex.series.k_max(); ++k)
            *out << k << "," << format_double(ex.series.at(k)) << "\n";
    } else {
        ordered_json j;
        j["dist"] = ordered_json::parse(d.to_json());
        j["k_min"] = ex.series.k_min;
        j["k_max"] = ex.series.k_max();
        j["p"] = ex.series.coeffs;
        j["aliasing_error"] = ex.aliasing_error;
        *out << j.dump() << "\n";
    }
    return 0;
}

int run_sample(const DistFlags& flags, long long n, std::uint64_t seed,
               std::uint64_t stream, const std::string& format,
               const std::string& out_path)
{
    Dist d = flags.build();
    auto batch = sample_batch(d, static_cast<std::size_t>(n), seed, stream);
    std::ostream* out = nullptr;
    auto guard = open_output(out_path, out);
    if (format == "csv") {
        *out << "x\n";
        for (long long v : batch.values)
            *out << v << "\n";
    } else {
        ordered_json j;
        j["dist"] = ordered_json::parse(batch.dist_json);
        j["seed"] = batch.seed;
        j["stream_id"] = batch.stream_id;
        j["representation"] = batch.representation;
        j["cap_exceeded"] = batch.cap_exceeded;
        j["values"] = batch.values;
        *out << j.dump() << "\n";
    }
    return 0;
}

int run_moments(const DistFlags& flags, int order, double fractional,
                const std::string& out_path)
{
    Dist d = flags.build();
    ordered_json j;
    j["dist"] = ordered_json::parse(d.to_json());
    if (fractional > 0.0) {
        if (d.family() != DistFamily::sds)
            throw std::domain_error(
                "fractional moments are implemented for the SDS family only");
        j["order"] = fractional;
        j["kind"] = "fractional_absolute";
        const auto mc = moment_classification(d, fractional);
        j["exists"] = mc.exists;
        j["inferred_classification"] = mc.inferred;
        if (mc.exists)
            j["value"] =
                fractional_moment_sds(d.gamma(), d.lambda(), d.kappa(), fractional);
        else
            j["value"] = "infinite";
    } else {
        if (order < 1)
            throw std::domain_error("--order must be a positive integer");
        j["order"] = order;
        j["kind"] = "factorial";
        if (d.family() == DistFamily::pds && d.gamma() == 1.0)
            j["value"] = factorial_moment_pds(d.lambda(), d.kappa(), order);
        else if (d.family() == DistFamily::sds && d.gamma() == 1.0)
            j["value"] = factorial_moment_sds(d.lambda(), d.kappa(), order);
        else if (moment_exists(d, order))
            j["value"] = numeric_factorial_moment(d.as_pgf(), order);
        else
            j["value"] = "infinite";
        const auto mc = moment_classification(d, order);
        j["exists"] = mc.exists;
        j["inferred_classification"] = mc.inferred;
    }
    std::ostream* out = nullptr;
    auto guard = open_output(out_path, out);
    *out << j.dump() << "\n";
    return 0;
}

int emit_reports(const std::vector<VerificationReport>& reports,
                 const std::string& out_path)
{
    std::ostream* out = nullptr;
    auto guard = open_output(out_path, out);
    bool all_passed = true;
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        arr.push_back(ordered_json::parse(r.to_json()));
        all_passed = all_passed && r.passed;
    }
    *out << (reports.size() == 1 ? arr[0].dump() : arr.dump()) << "\n";
    return all_passed ? 0 : 2;
}

int run_tail(double gamma, double lambda, double kappa, std::vector<int> xs,
             const std::string& out_path)
{
    if (xs.empty())
        xs = {50, 100, 200};
    auto rep = verify_tail_constant(gamma, lambda, kappa, xs);
    return emit_reports({rep}, out_path);
}

int run_verify(const std::string& suite, const DistFlags& flags,
               std::uint64_t seed, const std::string& out_path)
{
    std::vector<VerificationReport> reports;
    if (suite == "first-sense") {
        Dist d = flags.build();
        ThinningFamily fam = d.family() == DistFamily::tpds
                                 ? ThinningFamily::chebyshev_thin
                                 : ThinningFamily::mod_geometric;
        reports.push_back(
            verify_first_sense(d, fam, {2, 3, 4, 5, 6, 7, 8, 9, 10}));
    } else if (suite == "second-sense") {
        Dist d = flags.build();
        reports.push_back(verify_second_sense(d, {2, 3, 4}));
    } else if (suite == "third-sense") {
        Dist d = flags.build();
        if (d.family() == DistFamily::first_passage) {
            reports.push_back(verify_third_sense_portly(d, 1, 1));
            reports.push_back(verify_third_sense_portly(d, 2, 3));
        } else {
            const double p = std::pow(2.0, -1.0 / d.gamma());
            ThinningFamily fam = d.family() == DistFamily::tpds
                                     ? ThinningFamily::chebyshev_thin
                                     : ThinningFamily::mod_geometric;
            reports.push_back(verify_third_sense(d, fam, p, p));
        }
    } else if (suite == "commutativity") {
        RandomStream rng(seed, 0);
        for (int i = 0; i < 5; ++i) {
            const double p1 = 0.05 + 0.9 * rng.uniform();
            const double p2 = 0.05 + 0.9 * rng.uniform();
            reports.push_back(verify_commutativity(ThinningOp::bernoulli(p1),
                                                   ThinningOp::bernoulli(p2)));
            reports.push_back(
                verify_commutativity(ThinningOp::mod_geometric(p1, 0.5, 1),
                                     ThinningOp::mod_geometric(p2, 0.5, 1)));
            reports.push_back(
                verify_commutativity(ThinningOp::chebyshev_thin(p1, 0.0, 1),
                                     ThinningOp::chebyshev_thin(p2, 0.0, 1)));
        }
        reports.push_back(verify_commutativity(ThinningOp::chebyshev_portly(2),
                                               ThinningOp::chebyshev_portly(3)));
    } else if (suite == "attraction") {
        reports.push_back(verify_attraction(flags.build()));
    } else if (suite == "mixture") {
        Dist d = flags.build();
        reports.push_back(verify_mixture_characterization(
            d.gamma() * 0.5, d.gamma(), d.lambda(), d.kappa(), seed));
    } else {
        throw std::domain_error(
            "unknown verify suite '" + suite +
            "' (expected first-sense, second-sense, third-sense, "
            "commutativity, attraction or mixture)");
    }
    return emit_reports(reports, out_path);
}

int run_limits(const std::string& rule, double gamma, double lambda, double c,
               double b_coef, double sigma, double kappa, double beta,
               double b_cheb, const std::string& format,
               const std::string& out_path)
{
    LimitSpec spec;
    if (rule == "pds-kappa")
        spec.rule = LimitRule::pds_kappa;
    else if (rule == "pds-lambda")
        spec.rule = LimitRule::pds_lambda;
    else if (rule == "ds-q")
        spec.rule = LimitRule::ds_q;
    else if (rule == "sds-kappa")
        spec.rule = LimitRule::sds_kappa;
    else if (rule == "sds-lambda")
        spec.rule = LimitRule::sds_lambda;
    else if (rule == "tpds-lambda")
        spec.rule = LimitRule::tpds_lambda;
    else
        throw std::domain_error("unknown limit rule '" + rule + "'");
    spec.gamma = gamma;
    spec.lambda = lambda;
    spec.c = c;
    spec.b_coef = b_coef;
    spec.sigma = sigma;
    spec.kappa = kappa;
    spec.beta = beta;
    spec.b_cheb = b_cheb;

    auto rep = verify_limit(spec);
    std::ostream* out = nullptr;
    auto guard = open_output(out_path, out);
    if (format == "csv") {
        *out << "a,sup_residual\n";
        for (const auto& e : rep.schedule)
            *out << format_double(e.first) << "," << format_double(e.second)
                 << "\n";
    } else {
        ordered_json j = ordered_json::parse(rep.to_json());
        ordered_json table = ordered_json::array();
        for (const auto& e : rep.schedule)
            table.push_back({{"a", e.first}, {"sup_residual", e.second}});
        j["schedule"] = table;
        *out << j.dump() << "\n";
    }
    return rep.passed ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"discrete stable distributions: PMFs, samples, moments, "
                 "tails and stability verification"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path,
                   "output path (default stdout; relative paths resolve "
                   "against DSTABLE_OUT_DIR)");

    // pmf
    auto* pmf_cmd = app.add_subcommand("pmf", "probability mass function table");
    DistFlags pmf_flags;
    pmf_flags.attach(pmf_cmd);
    std::vector<int> k_range = {0, 30};
    pmf_cmd->add_option("--k-range", k_range, "k_lo k_hi window")
        ->expected(2);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "reproducible random draws");
    DistFlags sample_flags;
    sample_flags.attach(sample_cmd);
    long long n_draws = 0;
    std::uint64_t seed = 0, stream_id = 0;
    sample_cmd->add_option("--n", n_draws, "number of draws")->required();
    auto* seed_opt =
        sample_cmd->add_option("--seed", seed, "RNG seed (required)");
    seed_opt->required();
    sample_cmd->add_option("--stream", stream_id, "substream id (default 0)");

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "factorial or fractional moments");
    DistFlags moments_flags;
    moments_flags.attach(moments_cmd);
    int order = 0;
    double fractional = 0.0;
    moments_cmd->add_option("--order", order, "factorial moment order");
    moments_cmd->add_option("--fractional", fractional,
                            "fractional absolute moment order r");

    // tail
    auto* tail_cmd = app.add_subcommand("tail", "tail constant verification");
    double t_gamma = 0.5, t_lambda = 1.0, t_kappa = 0.0;
    std::vector<int> t_xs;
    tail_cmd->add_option("--gamma", t_gamma, "stability index in (0,1)");
    tail_cmd->add_option("--lambda", t_lambda, "rate");
    tail_cmd->add_option("--kappa", t_kappa, "geometric parameter");
    tail_cmd->add_option("--x", t_xs, "evaluation points (default 50 100 200)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "stability identity suites");
    DistFlags verify_flags;
    verify_flags.attach(verify_cmd);
    std::string suite;
    std::uint64_t verify_seed = 20240;
    verify_cmd->add_option("--suite", suite, "first-sense, second-sense, "
                                             "third-sense, commutativity, "
                                             "attraction or mixture")
        ->required();
    verify_cmd->add_option("--seed", verify_seed, "seed for randomized checks");

    // limits
    auto* limits_cmd =
        app.add_subcommand("limits", "(a, sup-residual) convergence table");
    std::string rule;
    double l_gamma = 0.5, l_lambda = 1.0, l_c = 1.0, l_b = 1.0, l_sigma = 1.0,
           l_kappa = 0.0, l_beta = 0.5, l_bch = 0.0;
    limits_cmd->add_option("--rule", rule,
                           "pds-kappa, pds-lambda, ds-q, sds-kappa, "
                           "sds-lambda or tpds-lambda")
        ->required();
    limits_cmd->add_option("--gamma", l_gamma, "stability index");
    limits_cmd->add_option("--lambda", l_lambda, "fixed rate / target rate");
    limits_cmd->add_option("--c", l_c, "kappa coupling constant");
    limits_cmd->add_option("--b-coef", l_b, "lambda coupling coefficient");
    limits_cmd->add_option("--sigma", l_sigma, "Chebyshev coupling coefficient");
    limits_cmd->add_option("--kappa", l_kappa, "fixed kappa");
    limits_cmd->add_option("--beta", l_beta, "DS skewness");
    limits_cmd->add_option("--b", l_bch, "Chebyshev parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (*pmf_cmd)
            return run_pmf(pmf_flags, k_range[0], k_range[1], format, out_path);
        if (*sample_cmd)
            return run_sample(sample_flags, n_draws, seed, stream_id, format,
                              out_path);
        if (*moments_cmd)
            return run_moments(moments_flags, order, fractional, out_path);
        if (*tail_cmd)
            return run_tail(t_gamma, t_lambda, t_kappa, t_xs, out_path);
        if (*verify_cmd)
            return run_verify(suite, verify_flags, verify_seed, out_path);
        if (*limits_cmd)
            return run_limits(rule, l_gamma, l_lambda, l_c, l_b, l_sigma,
                              l_kappa, l_beta, l_bch, format, out_path);
    } catch (const std::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
