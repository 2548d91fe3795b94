#pragma once

#include <string>
#include <vector>

#include "proxsamp/grid.hpp"

namespace proxsamp {

enum class DivergenceMethod { Quadrature, ClosedForm, PluginHistogram };

struct DivergenceEstimate {
    double order = 2.0;
    double value = 0.0;
    DivergenceMethod method = DivergenceMethod::Quadrature;
    double error_bar = 0.0;
    bool infinite = false;  // support violation or finiteness failure
};

/// chi^q(mu || nu) = E_nu[(mu/nu)^q] - 1 on matching grids; infinite when mu
/// puts mass where nu has none.
double chi_q_quadrature(const Grid1D& mu, const Grid1D& nu, double q,
                        bool* support_violation = nullptr);

/// Renyi divergence of order q between grid densities, with a Richardson
/// error bar from recomputing at half resolution.
DivergenceEstimate renyi_quadrature(const Grid1D& mu, const Grid1D& nu, double q);

/// Renyi divergence between univariate Gaussians N(m1, s1), N(m2, s2)
/// (s are variances).  Infinite when the mixed variance q*s2 + (1-q)*s1 is
/// not positive.
DivergenceEstimate renyi_gaussians_closed_form(double m1, double s1, double m2,
                                               double s2, double q);

/// chi^q between Gaussians with equal variance s: exp(q(q-1)m^2/(2s)) - 1.
double chi_q_gaussians_equal_var(double mean_gap, double s, double q);

// Conversions between the divergence scales used for warm-start bookkeeping.
double renyi_from_chi_q(double chi_q, double q);
double chi_q_from_renyi(double renyi, double q);
double renyi_from_lq_warmness(double m_q, double q);
double lq_warmness_from_renyi(double renyi, double q);

/// Histogram plug-in estimate of chi^2(samples' law || reference) with the
/// given number of equal-width bins on [lo, hi].  bias_hint gets the additive
/// O(bins/n) bias of the plug-in; it is reported, not subtracted.
double chi2_histogram_plugin(const std::vector<double>& samples, double lo,
                             double hi, int bins,
                             const std::vector<double>& reference_probs,
                             double* bias_hint = nullptr);

std::string to_string(DivergenceMethod method);

}  // namespace proxsamp
