#pragma once

namespace reskit {

struct GammaParams
{
    double shape = 1;  // alpha
    double rate = 1;   // beta, per minute

    double mean() const noexcept { return shape / rate; }
    double sd() const;
};

/// Method of moments: alpha = (mean/sd)^2, beta = mean/sd^2.
/// Throws DegenerateDistributionError unless mean > 0 and sd > 0.
GammaParams gamma_from_moments(double mean, double sd);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double regularized_gamma_q(double a, double x);

double gamma_pdf(const GammaParams& g, double x);
double gamma_cdf(const GammaParams& g, double x);

/// x with P(alpha, beta x) = p, to 1e-10 relative; 0 when the root underflows.
/// Throws std::invalid_argument unless 0 < p < 1 and NumericalError if the
/// root search fails.
double gamma_quantile(const GammaParams& g, double p);

} // namespace reskit
