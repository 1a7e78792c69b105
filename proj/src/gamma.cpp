#include "reskit/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "reskit/error.hpp"

namespace reskit {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 1'000'000;

// log of x^a e^-x / Gamma(a)
double log_prefactor(double a, double x)
{
    return a * std::log(x) - x - std::lgamma(a);
}

// P(a, x) by its power series; converges quickly for x < a + 1.
double p_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < kMaxTerms; ++k)
    {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum * std::exp(log_prefactor(a, x));
    }
    throw NumericalError("incomplete gamma series did not converge for a=" + std::to_string(a));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); x >= a + 1.
double q_continued_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxTerms; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return h * std::exp(log_prefactor(a, x));
    }
    throw NumericalError("incomplete gamma continued fraction did not converge for a=" + std::to_string(a));
}

double standard_pdf(double a, double y)
{
    if (y <= 0)
        return a < 1 ? std::numeric_limits<double>::infinity() : (a == 1 ? 1.0 : 0.0);
    return std::exp((a - 1.0) * std::log(y) - y - std::lgamma(a));
}

} // namespace

double GammaParams::sd() const
{
    return std::sqrt(shape) / rate;
}

GammaParams gamma_from_moments(double mean, double sd)
{
    if (!(mean > 0) || !(sd > 0) || !std::isfinite(mean) || !std::isfinite(sd))
        throw DegenerateDistributionError("gamma moments need mean > 0 and sd > 0 (got mean=" + std::to_string(mean) +
                                          ", sd=" + std::to_string(sd) + ")");
    const double ratio = mean / sd;
    return {ratio * ratio, mean / (sd * sd)};
}

double regularized_gamma_p(double a, double x)
{
    if (!(a > 0))
        throw std::invalid_argument("incomplete gamma needs a > 0");
    if (x <= 0)
        return 0.0;
    if (x < a + 1.0)
        return p_series(a, x);
    return 1.0 - q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x)
{
    if (!(a > 0))
        throw std::invalid_argument("incomplete gamma needs a > 0");
    if (x <= 0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - p_series(a, x);
    return q_continued_fraction(a, x);
}

double gamma_pdf(const GammaParams& g, double x)
{
    if (x < 0)
        return 0.0;
    return g.rate * standard_pdf(g.shape, g.rate * x);
}

double gamma_cdf(const GammaParams& g, double x)
{
    return regularized_gamma_p(g.shape, g.rate * x);
}

double gamma_quantile(const GammaParams& g, double p)
{
    if (!(p > 0 && p < 1))
        throw std::invalid_argument("gamma quantile needs 0 < p < 1");
    if (!(g.shape > 0 && g.rate > 0))
        throw DegenerateDistributionError("gamma quantile needs shape > 0 and rate > 0");
    const double a = g.shape;

    // Work on the standard gamma, y = rate * x, using whichever tail keeps
    // precision. f is increasing in y with its root at the quantile.
    const bool upper = p > 0.5;
    const auto f = [&](double y) {
        return upper ? (1.0 - p) - regularized_gamma_q(a, y) : regularized_gamma_p(a, y) - p;
    };

    double lo = a, hi = a;
    double flo = f(lo);
    double fhi = flo;
    int expand = 0;
    while (flo > 0)
    {
        hi = lo;
        fhi = flo;
        lo *= 0.5;
        if (lo == 0)
            return 0.0;  // quantile below the smallest positive double
        flo = f(lo);
        if (++expand > 4000)
            throw NumericalError("gamma quantile: could not bracket from below");
    }
    while (fhi < 0)
    {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
        if (++expand > 4000 || !std::isfinite(hi))
            throw NumericalError("gamma quantile: could not bracket from above");
    }
    if (flo == 0)
        return lo / g.rate;
    if (fhi == 0)
        return hi / g.rate;

    double y = 0.5 * (lo + hi);
    for (int iter = 0; iter < 500; ++iter)
    {
        const double fy = f(y);
        if (fy == 0)
            return y / g.rate;
        if (fy < 0)
            lo = y;
        else
            hi = y;

        const double slope = standard_pdf(a, y);
        double next = y - fy / slope;
        if (!(slope > 0) || !std::isfinite(next) || next <= lo || next >= hi)
            next = (lo > 0 && hi > 4 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);

        if (std::abs(next - y) <= 1e-14 * y || (hi - lo) <= 1e-14 * hi)
            return next / g.rate;
        y = next;
    }
    throw NumericalError("gamma quantile did not converge for shape=" + std::to_string(a));
}

} // namespace reskit
