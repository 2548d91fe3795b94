#pragma once

#include <functional>
#include <vector>

namespace proxsamp {

double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p);

double chi_squared_cdf(double x, double dof);
double chi_squared_sf(double x, double dof);

/// Normal distribution conditioned on [lo, hi].
struct TruncatedNormal {
    double mean;
    double variance;
    double lo;
    double hi;

    double cdf(double x) const;
    double quantile(double p) const;
    /// Mass the untruncated normal puts on [lo, hi].
    double acceptance() const;
};

/// Standard Laplace law (density exp(-|x|)/2): CDF and inverse CDF.
double laplace_cdf(double x);
double laplace_quantile(double p);

/// Exponential of the given rate conditioned on [lo, hi].
struct TruncatedExponential {
    double rate;
    double lo;
    double hi;
    double cdf(double x) const;
    double quantile(double p) const;
};

/// Survival function of the Kolmogorov distribution,
/// Q(l) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 l^2).
double kolmogorov_sf(double lambda);

struct KsResult {
    double statistic;
    double p_value;
};

/// One-sample Kolmogorov-Smirnov test against an exact CDF.  Sorts a copy of
/// the sample.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
    double statistic;
    int dof;
    double p_value;
};

/// Pearson chi-square of observed counts against cell probabilities (which
/// must sum to ~1).  Cells with tiny expectation are pooled into their
/// predecessor.
ChiSquareResult chi_square_test(const std::vector<long long>& observed,
                                const std::vector<double>& probs);

struct MeanVar {
    double mean;
    double variance;
    std::size_t n;
    double stderr_mean() const;
};

MeanVar mean_var(const std::vector<double>& xs);

}  // namespace proxsamp
