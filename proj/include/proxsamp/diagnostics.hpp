#pragma once

#include <functional>
#include <string>
#include <vector>

#include "proxsamp/divergence.hpp"
#include "proxsamp/grid.hpp"
#include "proxsamp/oracles.hpp"
#include "proxsamp/samplers.hpp"
#include "proxsamp/stats.hpp"

namespace proxsamp {

/// One verified inequality; every check in the suite reduces to rows of this
/// shape, and the CSV contract is one row per check.
struct CheckRow {
    std::string check_id;
    std::string claim;       // stable identifier of the claim being verified
    std::string parameters;  // key=value summary of the instance
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

std::string check_csv_header();
std::string to_csv(const CheckRow& row);

struct CheckReport {
    std::vector<CheckRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Contraction of chi^q under simultaneous Gaussian convolution of target and
/// warm start: the flowed ratio must sit below (1 + t/C_PI)^{-2/q} with
/// quadrature slack.  Grids flow via heat_flow on a shared extension.
CheckReport check_sdpi_chiq(const Grid1D& target, double c_pi, const Grid1D& warm,
                            double q, const std::vector<double>& t_list,
                            double slack = 1e-6);

/// Same contraction statement on the Gaussian pair N(mean_gap, s) vs N(0, s),
/// where chi^q is available in closed form.
CheckReport check_sdpi_chiq_gaussian(double mean_gap, double s, double q,
                                     const std::vector<double>& t_list,
                                     double slack = 1e-6);

/// Hypercontractive order growth along the heat flow on Gaussian instances:
/// with q(t) = 1 + (p-1)(1+t/s), the order-q(t) divergence of the flowed pair
/// never exceeds the order-p divergence of the original pair.
CheckReport check_hypercontractivity(double p, double s, double mean_gap,
                                     const std::vector<double>& t_list,
                                     double slack = 1e-9);

/// Monte Carlo mass of the forward law outside the delta-dilation of the
/// body, against exp(-delta^2/(2h) + delta d) plus three standard errors.
CheckRow check_concentration_uniform(const StandardBody& body, double h,
                                     double delta, std::size_t n_samples,
                                     Rng& rng);

/// Budget rule: observed mean trials per iteration <= 2 tau plus a one-sided
/// 99% confidence allowance.
CheckRow check_budget(std::uint64_t tau, const std::vector<double>& trials_per_iter,
                      const std::string& label);

struct StationarityReport {
    std::vector<double> p_values;
    double min_p = 1.0;
    bool pass(double threshold = 0.01) const { return min_p > threshold; }
};

/// KS test per coordinate against exact marginal CDFs (use for d = 1 targets
/// or product targets).
StationarityReport stationarity_ks(
    const std::vector<Vec>& samples,
    const std::vector<std::function<double(double)>>& coordinate_cdfs);

/// Chi-square test on a kx-by-ky partition with cell probabilities taken from
/// a quadrature grid of the target (d = 2).
StationarityReport stationarity_chi2(const std::vector<Vec>& samples,
                                     const Grid2D& target, int kx = 4, int ky = 4);

struct DecaySeries {
    std::vector<double> chi2;  // plug-in chi^2 at k = 0..k_max
    double h = 0.0;
    double c_pi = 0.0;
    double plugin_bias = 0.0;  // additive O(bins/n) bias, reported not removed
    bool non_increasing = false;
    bool rate_bound_ok = false;
};

/// Chi-square decay curve of the uniform proximal chain on an interval,
/// estimated from independent chains pooled per iteration, checked against
/// the (1 + h/C_PI)^{-k} contraction with multiplicative slack.
DecaySeries chi_sq_decay_curve(const StandardBody& interval, double warm_lo,
                               double warm_hi, double h, std::uint64_t tau,
                               int k_max, std::size_t n_chains, int bins,
                               Rng& rng, double rate_slack = 0.2);

/// Renyi-2 distance of the truncated Gaussian to the uniform target as the
/// variance grows: monotone decreasing, with the value at the early-stopping
/// threshold reported.
struct EarlyStopReport {
    std::vector<double> sigma2_grid;
    std::vector<double> renyi2;
    bool monotone = false;
    double threshold = 0.0;
    double value_at_threshold = 0.0;
};

EarlyStopReport check_early_stopping(double q, double r, double lambda,
                                     const std::vector<double>& sigma2_grid);

/// Order-q closeness of consecutive truncated Gaussians on [-1,1] against
/// q^2 a^2 R^2 / (2 s^2), by quadrature.
CheckReport check_gauss_closeness(double q, const std::vector<double>& sigma2_list,
                                  const std::vector<double>& alpha_list,
                                  double slack = 1e-6);

}  // namespace proxsamp
