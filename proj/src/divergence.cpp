#include "proxsamp/divergence.hpp"

#include <cmath>
#include <stdexcept>

namespace proxsamp {

namespace {

void require_matching(const Grid1D& a, const Grid1D& b) {
    if (a.n() != b.n() || a.lo() != b.lo() || a.hi() != b.hi())
        throw std::invalid_argument("divergence: grids must match");
}

}  // namespace

double chi_q_quadrature(const Grid1D& mu, const Grid1D& nu, double q,
                        bool* support_violation) {
    require_matching(mu, nu);
    if (support_violation) *support_violation = false;

    // mu dust this far below its peak on nu's zero set is numerical residue
    // (flushed convolution tails), not a support violation.
    double mu_peak = 0.0;
    for (int i = 0; i < mu.n(); ++i) mu_peak = std::max(mu_peak, mu[i]);
    const double mu_dust = 1e-9 * mu_peak;

    double s = 0.0;
    for (int i = 0; i < mu.n(); ++i) {
        if (nu[i] <= 0.0) {
            if (mu[i] > mu_dust) {
                if (support_violation) *support_violation = true;
                return INFINITY;
            }
            continue;
        }
        s += std::pow(mu[i] / nu[i], q) * nu[i];
    }
    return s * mu.dx() - 1.0;
}

DivergenceEstimate renyi_quadrature(const Grid1D& mu, const Grid1D& nu, double q) {
    if (!(q > 1)) throw std::invalid_argument("renyi_quadrature: need q > 1");
    DivergenceEstimate est;
    est.order = q;
    est.method = DivergenceMethod::Quadrature;

    bool violated = false;
    const double chi = chi_q_quadrature(mu, nu, q, &violated);
    if (violated) {
        est.infinite = true;
        est.value = INFINITY;
        return est;
    }
    est.value = std::max(0.0, renyi_from_chi_q(chi, q));

    const double chi_half = chi_q_quadrature(mu.coarsened(), nu.coarsened(), q);
    const double half = std::max(0.0, renyi_from_chi_q(chi_half, q));
    est.error_bar = std::abs(est.value - half);
    return est;
}

DivergenceEstimate renyi_gaussians_closed_form(double m1, double s1, double m2,
                                               double s2, double q) {
    if (!(q > 1) || !(s1 > 0) || !(s2 > 0))
        throw std::invalid_argument("renyi_gaussians: need q > 1 and variances > 0");
    DivergenceEstimate est;
    est.order = q;
    est.method = DivergenceMethod::ClosedForm;

    const double mixed = q * s2 + (1.0 - q) * s1;
    if (!(mixed > 0)) {
        est.infinite = true;
        est.value = INFINITY;
        return est;
    }
    const double gap = m1 - m2;
    est.value = 0.5 * std::log(s2 / s1) +
                std::log(s2 / mixed) / (2.0 * (q - 1.0)) +
                q * gap * gap / (2.0 * mixed);
    est.value = std::max(0.0, est.value);
    return est;
}

double chi_q_gaussians_equal_var(double mean_gap, double s, double q) {
    return std::expm1(q * (q - 1.0) * mean_gap * mean_gap / (2.0 * s));
}

double renyi_from_chi_q(double chi_q, double q) {
    return std::log1p(chi_q) / (q - 1.0);
}

double chi_q_from_renyi(double renyi, double q) {
    return std::expm1((q - 1.0) * renyi);
}

double renyi_from_lq_warmness(double m_q, double q) {
    if (!(m_q > 0)) throw std::invalid_argument("warmness must be positive");
    return q / (q - 1.0) * std::log(m_q);
}

double lq_warmness_from_renyi(double renyi, double q) {
    return std::exp((q - 1.0) / q * renyi);
}

double chi2_histogram_plugin(const std::vector<double>& samples, double lo,
                             double hi, int bins,
                             const std::vector<double>& reference_probs,
                             double* bias_hint) {
    if (static_cast<int>(reference_probs.size()) != bins)
        throw std::invalid_argument("chi2_histogram_plugin: probs size mismatch");
    std::vector<double> counts(bins, 0.0);
    const double width = (hi - lo) / bins;
    double n_in = 0.0;
    for (double x : samples) {
        int b = static_cast<int>((x - lo) / width);
        if (b < 0 || b >= bins) continue;  // mass outside the partition
        counts[b] += 1.0;
        n_in += 1.0;
    }
    const double n = static_cast<double>(samples.size());
    double s = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double p_hat = counts[b] / n;
        if (reference_probs[b] <= 0.0) {
            if (p_hat > 0.0) return INFINITY;
            continue;
        }
        s += p_hat * p_hat / reference_probs[b];
    }
    if (bias_hint) *bias_hint = (bins - 1) / n;
    (void)n_in;
    return s - 1.0;
}

std::string to_string(DivergenceMethod method) {
    switch (method) {
        case DivergenceMethod::Quadrature: return "quadrature";
        case DivergenceMethod::ClosedForm: return "closed_form";
        case DivergenceMethod::PluginHistogram: return "plugin_histogram";
    }
    return "unknown";
}

}  // namespace proxsamp
