#include "wccmine/beta_stats.hpp"

#include <cmath>
#include <limits>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz method. Converges quickly for x < (a + 1) / (a + b + 2);
// the caller applies the symmetry transform outside that region.
double beta_cont_frac(double a, double b, double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double numer = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        numer = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) <= eps)
            break;
    }
    return h;
}

} // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw UsageError("reg_inc_beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw UsageError("reg_inc_beta: x must lie in [0, 1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cont_frac(a, b, x) / a;
    return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double beta_pdf(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw UsageError("beta_pdf: a and b must be positive");
    if (x <= 0.0 || x >= 1.0)
        return 0.0;
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                    log_beta(a, b));
}

void BoundParams::validate() const {
    if (trials < 0 || successes < 0 || successes > trials)
        throw UsageError("lower_credible_bound: need 0 <= successes <= trials");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("lower_credible_bound: alpha must lie in (0, 1)");
}

double lower_credible_bound(const BoundParams& p) {
    p.validate();
    const double a = p.successes + 1.0;
    const double b = p.trials - p.successes + 1.0;
    // Newton iteration on I_x(a, b) - alpha with a bisection bracket as the
    // safety net; the CDF is monotone so the bracket always contains the
    // root and every step either contracts it or is replaced by its
    // midpoint.
    double lo = 0.0;
    double hi = 1.0;
    double x = a / (a + b);
    for (int it = 0; it < 300 && hi - lo > 1e-16; ++it) {
        const double f = reg_inc_beta(x, a, b) - p.alpha;
        if (std::fabs(f) < 1e-14)
            break;
        (f > 0.0 ? hi : lo) = x;
        const double dens = beta_pdf(x, a, b);
        double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

} // namespace wccmine
