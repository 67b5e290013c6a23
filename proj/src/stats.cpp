#include "dstable/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace dstable {

namespace {

// series expansion of P(a,x), good for x < a+1
double gamma_p_series(double a, double x)
{
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a,x), good for x >= a+1
double gamma_q_cf(double a, double x)
{
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_p(double a, double x)
{
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("gamma_p: need a > 0 and x >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x)
{
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("gamma_q: need a > 0 and x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, double dof)
{
    if (dof <= 0.0)
        return 1.0;
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

double chi_square_gof_pvalue(const std::map<long long, long long>& counts,
                             const LaurentSeries& probs, double n_samples)
{
    // pool consecutive cells until the expected count reaches 5
    std::vector<double> expected;
    std::vector<double> observed;
    double e_acc = 0.0, o_acc = 0.0;
    for (int k = probs.k_min; k <= probs.k_max(); ++k) {
        e_acc += probs.at(k) * n_samples;
        auto it = counts.find(k);
        o_acc += it == counts.end() ? 0.0 : static_cast<double>(it->second);
        if (e_acc >= 5.0) {
            expected.push_back(e_acc);
            observed.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    // remainder cell: everything beyond the window plus leftover pool
    double seen = 0.0;
    for (double o : observed)
        seen += o;
    const double rest_obs = n_samples - seen;
    double e_total = 0.0;
    for (double e : expected)
        e_total += e;
    const double rest_exp = n_samples - e_total;
    if (rest_exp >= 5.0) {
        expected.push_back(rest_exp);
        observed.push_back(rest_obs);
    } else if (!expected.empty()) {
        expected.back() += rest_exp;
        observed.back() += rest_obs;
    }

    if (expected.size() < 2)
        return 1.0;
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return chi_square_pvalue(stat, static_cast<double>(expected.size()) - 1.0);
}

double two_sample_chi_square_pvalue(const std::vector<long long>& xs,
                                    const std::vector<long long>& ys)
{
    std::map<long long, std::pair<double, double>> cells;
    for (long long v : xs)
        cells[v].first += 1.0;
    for (long long v : ys)
        cells[v].second += 1.0;

    // pool adjacent values until both samples expect >= 5 per cell
    const double n1 = static_cast<double>(xs.size());
    const double n2 = static_cast<double>(ys.size());
    std::vector<std::pair<double, double>> pooled;
    double a = 0.0, b = 0.0;
    for (const auto& kv : cells) {
        a += kv.second.first;
        b += kv.second.second;
        const double tot = a + b;
        if (tot * n1 / (n1 + n2) >= 5.0 && tot * n2 / (n1 + n2) >= 5.0) {
            pooled.emplace_back(a, b);
            a = b = 0.0;
        }
    }
    if (a + b > 0.0) {
        if (!pooled.empty()) {
            pooled.back().first += a;
            pooled.back().second += b;
        } else {
            pooled.emplace_back(a, b);
        }
    }
    if (pooled.size() < 2)
        return 1.0;

    double stat = 0.0;
    for (const auto& cell : pooled) {
        const double tot = cell.first + cell.second;
        const double e1 = tot * n1 / (n1 + n2);
        const double e2 = tot * n2 / (n1 + n2);
        stat += (cell.first - e1) * (cell.first - e1) / e1 +
                (cell.second - e2) * (cell.second - e2) / e2;
    }
    return chi_square_pvalue(stat, static_cast<double>(pooled.size()) - 1.0);
}

std::map<long long, long long> histogram(const std::vector<long long>& xs,
                                         long long k_lo, long long k_hi,
                                         long long* out_count)
{
    std::map<long long, long long> h;
    long long outside = 0;
    for (long long v : xs) {
        if (v < k_lo || v > k_hi)
            ++outside;
        else
            ++h[v];
    }
    if (out_count)
        *out_count = outside;
    return h;
}

double tv_distance(const std::vector<long long>& xs, const LaurentSeries& oracle)
{
    long long outside = 0;
    auto h = histogram(xs, oracle.k_min, oracle.k_max(), &outside);
    const double n = static_cast<double>(xs.size());
    double acc = 0.0;
    for (int k = oracle.k_min; k <= oracle.k_max(); ++k) {
        auto it = h.find(k);
        const double phat = it == h.end() ? 0.0 : static_cast<double>(it->second) / n;
        acc += std::abs(phat - oracle.at(k));
    }
    const double out_oracle = std::max(0.0, 1.0 - oracle.sum());
    acc += std::abs(static_cast<double>(outside) / n - out_oracle);
    return 0.5 * acc;
}

} // namespace dstable
