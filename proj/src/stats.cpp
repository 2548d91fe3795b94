#include "proxsamp/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

namespace proxsamp {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

double chi_squared_cdf(double x, double dof) {
    const boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(dist, x);
}

double chi_squared_sf(double x, double dof) {
    const boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double TruncatedNormal::acceptance() const {
    const double s = std::sqrt(variance);
    return normal_cdf((hi - mean) / s) - normal_cdf((lo - mean) / s);
}

double TruncatedNormal::cdf(double x) const {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double s = std::sqrt(variance);
    const double flo = normal_cdf((lo - mean) / s);
    const double fhi = normal_cdf((hi - mean) / s);
    return (normal_cdf((x - mean) / s) - flo) / (fhi - flo);
}

double TruncatedNormal::quantile(double p) const {
    if (p <= 0) return lo;
    if (p >= 1) return hi;
    const double s = std::sqrt(variance);
    const double flo = normal_cdf((lo - mean) / s);
    const double fhi = normal_cdf((hi - mean) / s);
    return mean + s * normal_quantile(flo + p * (fhi - flo));
}

double laplace_cdf(double x) {
    return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
}

double laplace_quantile(double p) {
    if (!(p > 0) || !(p < 1))
        throw std::invalid_argument("laplace_quantile: p must lie in (0,1)");
    return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
}

double TruncatedExponential::cdf(double x) const {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double zlo = std::exp(-rate * lo), zhi = std::exp(-rate * hi);
    return (zlo - std::exp(-rate * x)) / (zlo - zhi);
}

double TruncatedExponential::quantile(double p) const {
    if (p <= 0) return lo;
    if (p >= 1) return hi;
    const double zlo = std::exp(-rate * lo), zhi = std::exp(-rate * hi);
    return -std::log(zlo - p * (zlo - zhi)) / rate;
}

double kolmogorov_sf(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Stephens' small-sample correction for the asymptotic Kolmogorov law.
double ks_p_from_d(double d, double n_eff) {
    const double sqrt_n = std::sqrt(n_eff);
    return kolmogorov_sf((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
}

}  // namespace

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return {d, ks_p_from_d(d, n)};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, ks_p_from_d(d, n_eff)};
}

ChiSquareResult chi_square_test(const std::vector<long long>& observed,
                                const std::vector<double>& probs) {
    if (observed.size() != probs.size() || observed.empty())
        throw std::invalid_argument("chi_square_test: shape mismatch");
    long long total = 0;
    for (long long c : observed) total += c;
    const double n = static_cast<double>(total);

    // Pool cells whose expected count is below 5 into a running remainder.
    double stat = 0.0;
    int cells = 0;
    double pool_obs = 0.0, pool_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expect = n * probs[i];
        if (expect < 5.0) {
            pool_obs += static_cast<double>(observed[i]);
            pool_exp += expect;
            continue;
        }
        const double diff = static_cast<double>(observed[i]) - expect;
        stat += diff * diff / expect;
        ++cells;
    }
    if (pool_exp >= 5.0) {
        const double diff = pool_obs - pool_exp;
        stat += diff * diff / pool_exp;
        ++cells;
    }
    const int dof = std::max(1, cells - 1);
    return {stat, dof, chi_squared_sf(stat, dof)};
}

double MeanVar::stderr_mean() const {
    return n > 1 ? std::sqrt(variance / static_cast<double>(n)) : 0.0;
}

MeanVar mean_var(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_var: empty");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    if (xs.size() > 1) var /= static_cast<double>(xs.size() - 1);
    return {mean, var, xs.size()};
}

}  // namespace proxsamp
