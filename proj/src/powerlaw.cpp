#include "firmnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firmnet/error.hpp"

namespace firmnet {

namespace {

// Scaled series S(alpha, a) = zeta(alpha, a) * a^alpha = sum (1 + k/a)^-alpha,
// always >= 1, so it stays representable where zeta itself underflows. The
// series is truncated where the analytic remainder bound (integral of the
// summand plus Euler-Maclaurin corrections; the summand is completely
// monotone, so the error is bounded by the first omitted term) drops below
// tolerance.
double scaled_zeta_series(double alpha, double a) {
    std::int64_t terms = 64;
    double sum = 0.0;
    std::int64_t summed = 0;
    while (true) {
        for (; summed < terms; ++summed) {
            sum += std::exp(-alpha * std::log1p(static_cast<double>(summed) / a));
        }
        const double from = a + static_cast<double>(terms);
        const double scale = std::exp(-alpha * std::log1p(static_cast<double>(terms) / a));
        const double tail =
            scale * (from / (alpha - 1.0) + 0.5 + (alpha / 12.0) / from -
                     (alpha * (alpha + 1.0) * (alpha + 2.0) / 720.0) / (from * from * from));
        const double error_bound = scale * alpha * (alpha + 1.0) * (alpha + 2.0) *
                                   (alpha + 3.0) * (alpha + 4.0) /
                                   (30240.0 * from * from * from * from * from);
        if (error_bound <= 1e-13 * (1.0 + sum + tail) || terms >= (1LL << 24)) {
            return sum + tail;
        }
        terms *= 2;
    }
}

void check_zeta_domain(double alpha, std::int64_t x_min) {
    if (!(alpha > 1.0)) {
        throw DomainError("hurwitz_zeta: alpha must be > 1, got " + std::to_string(alpha));
    }
    if (x_min < 1) {
        throw DomainError("hurwitz_zeta: x_min must be >= 1, got " + std::to_string(x_min));
    }
}

}  // namespace

double hurwitz_zeta(double alpha, std::int64_t x_min) {
    check_zeta_domain(alpha, x_min);
    const double a = static_cast<double>(x_min);
    return scaled_zeta_series(alpha, a) * std::exp(-alpha * std::log(a));
}

double log_hurwitz_zeta(double alpha, std::int64_t x_min) {
    check_zeta_domain(alpha, x_min);
    const double a = static_cast<double>(x_min);
    return std::log(scaled_zeta_series(alpha, a)) - alpha * std::log(a);
}

double power_law_pmf(std::int64_t x, double alpha, std::int64_t x_min) {
    if (x < x_min) {
        throw DomainError("pmf: x=" + std::to_string(x) + " below x_min=" + std::to_string(x_min));
    }
    return std::pow(static_cast<double>(x), -alpha) / hurwitz_zeta(alpha, x_min);
}

double power_law_ccdf(std::int64_t x, double alpha, std::int64_t x_min) {
    if (x < x_min) {
        throw DomainError("ccdf: x=" + std::to_string(x) + " below x_min=" + std::to_string(x_min));
    }
    if (x == x_min) {
        return 1.0;
    }
    return std::exp(log_hurwitz_zeta(alpha, x) - log_hurwitz_zeta(alpha, x_min));
}

namespace {

// Exact discrete log-likelihood of the tail for a given alpha, up to the
// constant factor n: L(alpha) = -n ln zeta(alpha, x_min) - alpha * sum(ln x).
double tail_log_likelihood(double alpha, std::int64_t x_min, std::size_t n, double sum_log) {
    return -static_cast<double>(n) * log_hurwitz_zeta(alpha, x_min) - alpha * sum_log;
}

}  // namespace

double fit_alpha(std::span<const std::int64_t> tail, std::int64_t x_min) {
    if (tail.size() < 2) {
        throw DomainError("fit_alpha: need at least 2 tail observations");
    }
    if (x_min < 1) {
        throw DomainError("fit_alpha: x_min must be >= 1");
    }
    double sum_log = 0.0;
    bool all_equal = true;
    for (std::int64_t x : tail) {
        if (x < x_min) {
            throw DomainError("fit_alpha: tail value " + std::to_string(x) + " below x_min");
        }
        sum_log += std::log(static_cast<double>(x));
        all_equal = all_equal && (x == tail.front());
    }
    if (all_equal) {
        throw DegenerateError("fit_alpha: all tail values equal; likelihood diverges");
    }

    const double n = static_cast<double>(tail.size());
    const double denom = sum_log - n * std::log(static_cast<double>(x_min) - 0.5);
    const double alpha0 = 1.0 + n / denom;

    auto ll = [&](double alpha) { return tail_log_likelihood(alpha, x_min, tail.size(), sum_log); };

    // The log-likelihood is strictly concave in alpha; expand the upper end
    // of the bracket until the maximum is interior, then golden-section.
    double lo = 1.0 + 1e-6;
    double hi = std::max(alpha0 + 2.0, alpha0 * 2.0);
    while (ll(hi) >= ll(0.5 * (lo + hi))) {
        hi *= 2.0;
        if (hi > 1e6) {
            throw DegenerateError("fit_alpha: likelihood increases without bound");
        }
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = ll(x1);
    double f2 = ll(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ll(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ll(x1);
        }
    }
    return 0.5 * (lo + hi);
}

PowerLawFit fit_power_law(std::span<const std::int64_t> data) {
    std::vector<std::int64_t> sorted(data.begin(), data.end());
    for (std::int64_t x : sorted) {
        if (x < 1) {
            throw DomainError("fit_power_law: data must be positive integers");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::int64_t> distinct(sorted);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) {
        throw DegenerateError("fit_power_law: need at least 2 distinct values");
    }

    PowerLawFit best;
    bool have_best = false;
    // Candidates in increasing order so strict comparison keeps the
    // smallest x_min among KS ties.
    for (std::size_t c = 0; c + 1 < distinct.size(); ++c) {
        const std::int64_t x_min = distinct[c];
        auto tail_begin = std::lower_bound(sorted.begin(), sorted.end(), x_min);
        std::span<const std::int64_t> tail(&*tail_begin,
                                           static_cast<std::size_t>(sorted.end() - tail_begin));
        if (tail.size() < 2 || tail.front() == tail.back()) {
            continue;
        }
        const double alpha = fit_alpha(tail, x_min);
        const double log_z_min = log_hurwitz_zeta(alpha, x_min);
        const double n_tail = static_cast<double>(tail.size());

        // Empirical and model tail CCDFs are both P(X >= x); the sup of
        // their gap over integers is attained at a distinct value or just
        // past one (the model is monotone between steps).
        double ks = 0.0;
        auto emp_ccdf = [&](std::int64_t x) {
            auto it = std::lower_bound(tail.begin(), tail.end(), x);
            return static_cast<double>(tail.end() - it) / n_tail;
        };
        for (auto it = tail_begin; it != sorted.end(); it = std::upper_bound(it, sorted.end(), *it)) {
            const std::int64_t v = *it;
            const double model_v = std::exp(log_hurwitz_zeta(alpha, v) - log_z_min);
            const double model_next = std::exp(log_hurwitz_zeta(alpha, v + 1) - log_z_min);
            ks = std::max(ks, std::abs(emp_ccdf(v) - model_v));
            ks = std::max(ks, std::abs(emp_ccdf(v + 1) - model_next));
        }
        if (!have_best || ks < best.ks) {
            best = PowerLawFit{alpha, x_min, ks, tail.size()};
            have_best = true;
        }
    }
    if (!have_best) {
        throw DegenerateError("fit_power_law: no candidate x_min admits a fit");
    }
    return best;
}

}  // namespace firmnet
