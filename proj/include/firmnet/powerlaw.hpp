#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace firmnet {

// Fitted discrete power law p(x) = x^-alpha / zeta(alpha, x_min) on the
// tail x >= x_min, selected by minimizing the Kolmogorov-Smirnov distance.
struct PowerLawFit {
    double alpha = 0.0;
    std::int64_t x_min = 0;
    double ks = 0.0;         // KS distance on the tail
    std::size_t n_tail = 0;  // observations >= x_min
};

// zeta(alpha, x_min) = sum_{n=0}^inf (n + x_min)^-alpha, absolute error
// <= 1e-10. The series is truncated where the analytic remainder bound
// drops below tolerance, so precision holds for every alpha > 1.
double hurwitz_zeta(double alpha, std::int64_t x_min);

// ln zeta, stable where zeta itself would over/underflow (large alpha or
// large x_min); this is what likelihood evaluations use.
double log_hurwitz_zeta(double alpha, std::int64_t x_min);

// p(x) = x^-alpha / zeta(alpha, x_min) for integer x >= x_min.
double power_law_pmf(std::int64_t x, double alpha, std::int64_t x_min);

// P(X >= x) = zeta(alpha, x) / zeta(alpha, x_min); equals 1 at x = x_min.
double power_law_ccdf(std::int64_t x, double alpha, std::int64_t x_min);

// Maximum-likelihood alpha for a fixed x_min: bracketed 1-D maximization
// of the exact discrete log-likelihood, started at the standard
// approximation 1 + n / sum(ln(x_i / (x_min - 0.5))), bracket width 1e-6.
// Throws DegenerateError when all tail values are equal (the likelihood
// has no finite maximizer).
double fit_alpha(std::span<const std::int64_t> tail, std::int64_t x_min);

// Full fit: every distinct data value except the largest is a candidate
// x_min; candidates whose tail has fewer than 2 points or no variation are
// skipped; the candidate with the smallest KS distance wins, ties broken
// toward smaller x_min.
PowerLawFit fit_power_law(std::span<const std::int64_t> data);

}  // namespace firmnet
