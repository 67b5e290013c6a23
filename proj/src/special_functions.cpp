#include "dstable/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dstable {

namespace {

bool is_nonpositive_integer(double a)
{
    return a <= 0.0 && a == std::floor(a);
}

// Factorials up to 30! as doubles; enough for the Bell-polynomial guard.
const double kFactorial[31] = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
    3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
    1307674368000.0, 20922789888000.0, 355687428096000.0,
    6402373705728000.0, 121645100408832000.0, 2432902008176640000.0,
    51090942171709440000.0, 1124000727777607680000.0,
    25852016738884976640000.0, 620448401733239439360000.0,
    15511210043330985984000000.0, 403291461126605635584000000.0,
    10888869450418352160768000000.0, 304888344611713860501504000000.0,
    8841761993739701954543616000000.0, 265252859812191058636308480000000.0};

} // namespace

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(x));
    return std::lgamma(x);
}

double binom_real(double a, int k)
{
    if (k < 0)
        throw std::domain_error("binom_real: k must be nonnegative");
    double result = 1.0;
    for (int i = 0; i < k; ++i)
        result *= (a - i) / (i + 1);
    return result;
}

namespace {

double bessel_i_series(int k, double x)
{
    // I_k(x) = sum_l (x/2)^{k+2l} / (l! (l+k)!)
    const double h = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= k; ++i)
        term *= h / i;
    double sum = term;
    for (int l = 1; l < 400; ++l) {
        term *= h * h / (static_cast<double>(l) * (l + k));
        sum += term;
        if (term < sum * 1e-18)
            break;
    }
    return sum;
}

double bessel_i_backward(int k, double x)
{
    // Miller's algorithm: unnormalized downward recurrence
    // i_{j-1} = i_{j+1} + (2j/x) i_j, normalized by e^x = I_0 + 2 sum I_j.
    int start = k + static_cast<int>(std::ceil(2.0 * std::sqrt(40.0 * x))) + 40;
    double next = 0.0, cur = std::numeric_limits<double>::min() * 1e40;
    double norm = 0.0, target = 0.0;
    for (int j = start; j >= 1; --j) {
        double prev = next + (2.0 * j / x) * cur;
        next = cur;
        cur = prev;
        if (j - 1 == k)
            target = cur;
        norm += 2.0 * next; // accumulates 2 * i_j for j >= 1
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    norm += cur; // i_0
    return target / norm * std::exp(x);
}

} // namespace

double bessel_i(int k, double x)
{
    if (x < 0.0)
        throw std::domain_error("bessel_i: x must be nonnegative");
    if (k < 0)
        k = -k;
    if (x > 700.0)
        throw std::overflow_error("bessel_i: x too large, e^x overflows");
    if (x == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (x <= 15.0)
        return bessel_i_series(k, x);
    return bessel_i_backward(k, x);
}

double kummer_1f1(double a, double b, double x)
{
    const bool terminating = is_nonpositive_integer(a);
    const int n_terms = terminating ? static_cast<int>(-a) : 100000;
    double term = 1.0, sum = 1.0;
    for (int i = 0; i < n_terms; ++i) {
        const double bi = b + i;
        if (bi == 0.0)
            throw std::domain_error("kummer_1f1: series undefined, b hits a "
                                    "nonpositive integer before termination");
        term *= (a + i) * x / (bi * (i + 1));
        sum += term;
        if (!terminating && std::abs(term) < 1e-17 * std::abs(sum))
            return sum;
    }
    if (!terminating)
        throw std::domain_error("kummer_1f1: series did not converge");
    return sum;
}

double gauss_2f1(double a, double b, double c, double x)
{
    int n_terms;
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        double na = is_nonpositive_integer(a) ? -a
                                              : std::numeric_limits<double>::infinity();
        double nb = is_nonpositive_integer(b) ? -b
                                              : std::numeric_limits<double>::infinity();
        n_terms = static_cast<int>(std::min(na, nb));
    } else {
        throw std::domain_error("gauss_2f1: non-terminating parameterization "
                                "refused (neither a nor b is a nonpositive integer)");
    }
    double term = 1.0, sum = 1.0;
    for (int i = 0; i < n_terms; ++i) {
        const double ci = c + i;
        if (ci == 0.0)
            throw std::domain_error("gauss_2f1: c hits a nonpositive integer "
                                    "before the series terminates");
        term *= (a + i) * (b + i) * x / (ci * (i + 1));
        sum += term;
    }
    return sum;
}

double laguerre_gen(int n, double alpha, double x)
{
    if (n < 0)
        throw std::domain_error("laguerre_gen: n must be nonnegative");
    return binom_real(n + alpha, n) * kummer_1f1(-n, alpha + 1.0, x);
}

namespace {

// Depth-first enumeration over multiplicities i_j of part sizes j.
void bell_recurse(int j, int parts_left, int weight_left, double partial,
                  const std::vector<double>& xs, double& total)
{
    if (parts_left == 0) {
        if (weight_left == 0)
            total += partial;
        return;
    }
    const int max_j = static_cast<int>(xs.size());
    if (j > max_j || weight_left < parts_left * j)
        return;
    const double base = xs[j - 1] / kFactorial[j];
    double power = 1.0;
    for (int ij = 0; ij * j <= weight_left && ij <= parts_left; ++ij) {
        bell_recurse(j + 1, parts_left - ij, weight_left - ij * j,
                     partial * power / kFactorial[ij], xs, total);
        power *= base;
    }
}

} // namespace

double bell_partial(int n, int k, const std::vector<double>& xs)
{
    if (n < 1 || k < 1 || k > n)
        throw std::domain_error("bell_partial: need 1 <= k <= n");
    if (n > 30)
        throw std::domain_error("bell_partial: n > 30 not supported");
    if (static_cast<int>(xs.size()) != n - k + 1)
        throw std::invalid_argument("bell_partial: xs must have length n-k+1");
    double total = 0.0;
    bell_recurse(1, k, n, 1.0, xs, total);
    return kFactorial[n] * total;
}

double bell_complete(int n, const std::vector<double>& xs)
{
    if (n == 0)
        return 1.0;
    if (static_cast<int>(xs.size()) < n)
        throw std::invalid_argument("bell_complete: xs must have length >= n");
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        std::vector<double> head(xs.begin(), xs.begin() + (n - k + 1));
        sum += bell_partial(n, k, head);
    }
    return sum;
}

double chebyshev_t(double p, double x)
{
    if (std::abs(x) <= 1.0)
        return std::cos(p * std::acos(x));
    if (p != std::floor(p) || p < 0.0)
        throw std::domain_error("chebyshev_t: non-integer order requires |x| <= 1");
    const int n = static_cast<int>(p);
    if (n == 0)
        return 1.0;
    double tm1 = 1.0, t = x;
    for (int i = 1; i < n; ++i) {
        double tp1 = 2.0 * x * t - tm1;
        tm1 = t;
        t = tp1;
    }
    return t;
}

} // namespace dstable
