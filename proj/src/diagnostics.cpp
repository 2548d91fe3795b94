#include "proxsamp/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "proxsamp/annealing.hpp"

namespace proxsamp {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt8(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

Grid1D truncated_gaussian_grid(double sigma2, double lo, double hi, int n) {
    Grid1D g = Grid1D::from_density(lo, hi, n, [sigma2](double x) {
        return std::exp(-x * x / (2.0 * sigma2));
    });
    g.normalize();
    return g;
}

constexpr int kGrid1D = 1 << 14;

}  // namespace

std::string check_csv_header() {
    return "check_id,claim,parameters,measured,bound,pass";
}

std::string to_csv(const CheckRow& row) {
    return row.check_id + "," + row.claim + "," + row.parameters + "," +
           fmt(row.measured) + "," + fmt(row.bound) + "," +
           (row.pass ? "1" : "0");
}

CheckReport check_sdpi_chiq(const Grid1D& target, double c_pi, const Grid1D& warm,
                            double q, const std::vector<double>& t_list,
                            double slack) {
    if (!(q >= 2)) throw std::invalid_argument("check_sdpi_chiq: need q >= 2");
    CheckReport report;
    const double base = chi_q_quadrature(warm, target, q);
    for (double t : t_list) {
        double ratio, bound;
        if (t == 0.0) {
            ratio = 1.0;
            bound = 1.0;
        } else {
            const Grid1D target_t = heat_flow(target, t);
            const Grid1D warm_t = heat_flow(warm, t);
            ratio = chi_q_quadrature(warm_t, target_t, q) / base;
            bound = std::pow(1.0 + t / c_pi, -2.0 / q);
        }
        CheckRow row;
        row.check_id = "sdpi-chiq";
        row.claim = "sdpi-chiq-contraction";
        row.parameters = "q=" + fmt8(q) + ";t=" + fmt8(t) + ";c_pi=" + fmt8(c_pi);
        row.measured = ratio;
        row.bound = bound;
        row.pass = ratio <= bound + slack;
        report.rows.push_back(std::move(row));
    }
    return report;
}

CheckReport check_sdpi_chiq_gaussian(double mean_gap, double s, double q,
                                     const std::vector<double>& t_list,
                                     double slack) {
    if (!(q >= 2)) throw std::invalid_argument("check_sdpi_chiq_gaussian: need q >= 2");
    CheckReport report;
    const double base = chi_q_gaussians_equal_var(mean_gap, s, q);
    for (double t : t_list) {
        const double flowed = chi_q_gaussians_equal_var(mean_gap, s + t, q);
        const double ratio = flowed / base;
        const double bound = std::pow(1.0 + t / s, -2.0 / q);  // C_PI(N(0,s)) = s
        CheckRow row;
        row.check_id = "sdpi-chiq-gaussian";
        row.claim = "sdpi-chiq-contraction";
        row.parameters =
            "q=" + fmt8(q) + ";t=" + fmt8(t) + ";m=" + fmt8(mean_gap) + ";s=" + fmt8(s);
        row.measured = ratio;
        row.bound = bound;
        row.pass = ratio <= bound + slack;
        report.rows.push_back(std::move(row));
    }
    return report;
}

CheckReport check_hypercontractivity(double p, double s, double mean_gap,
                                     const std::vector<double>& t_list,
                                     double slack) {
    if (!(p > 1) || !(s > 0))
        throw std::invalid_argument("check_hypercontractivity: need p > 1, s > 0");
    CheckReport report;
    const double rhs =
        renyi_gaussians_closed_form(mean_gap, s, 0.0, s, p).value;
    for (double t : t_list) {
        const double qt = 1.0 + (p - 1.0) * (1.0 + t / s);
        const double lhs =
            renyi_gaussians_closed_form(mean_gap, s + t, 0.0, s + t, qt).value;
        CheckRow row;
        row.check_id = "hypercontractivity";
        row.claim = "heat-flow-order-boost";
        row.parameters =
            "p=" + fmt8(p) + ";t=" + fmt8(t) + ";m=" + fmt8(mean_gap) + ";s=" + fmt8(s);
        row.measured = lhs;
        row.bound = rhs;
        row.pass = lhs <= rhs + slack;
        report.rows.push_back(std::move(row));
    }
    return report;
}

CheckRow check_concentration_uniform(const StandardBody& body, double h,
                                     double delta, std::size_t n_samples,
                                     Rng& rng) {
    if (!(h > 0) || !(delta > 0))
        throw std::invalid_argument("check_concentration_uniform: need h, delta > 0");
    const int d = body.dim();
    std::size_t outside = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Vec y = sample_uniform(body, rng) + std::sqrt(h) * rng.gaussian_vector(d);
        if (body.distance(y) > delta) ++outside;
    }
    const double p_hat = static_cast<double>(outside) / n_samples;
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / n_samples);
    const double bound = std::exp(-delta * delta / (2.0 * h) + delta * d);
    CheckRow row;
    row.check_id = "forward-concentration";
    row.claim = "forward-law-tail-mass";
    row.parameters =
        "d=" + std::to_string(d) + ";h=" + fmt8(h) + ";delta=" + fmt8(delta);
    row.measured = p_hat;
    row.bound = bound;
    row.pass = p_hat <= bound + 3.0 * se;
    return row;
}

CheckRow check_budget(std::uint64_t tau, const std::vector<double>& trials_per_iter,
                      const std::string& label) {
    const MeanVar mv = mean_var(trials_per_iter);
    const double z99 = 2.3263478740408408;  // one-sided 99% normal quantile
    CheckRow row;
    row.check_id = "query-budget:" + label;
    row.claim = "expected-trials-2tau";
    row.parameters = "tau=" + std::to_string(tau) +
                     ";iters=" + std::to_string(trials_per_iter.size());
    row.measured = mv.mean;
    row.bound = 2.0 * static_cast<double>(tau) + z99 * mv.stderr_mean();
    row.pass = row.measured <= row.bound;
    return row;
}

StationarityReport stationarity_ks(
    const std::vector<Vec>& samples,
    const std::vector<std::function<double(double)>>& coordinate_cdfs) {
    if (samples.empty()) throw std::invalid_argument("stationarity_ks: no samples");
    StationarityReport report;
    for (std::size_t c = 0; c < coordinate_cdfs.size(); ++c) {
        std::vector<double> coord(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            coord[i] = samples[i][static_cast<Eigen::Index>(c)];
        const KsResult ks = ks_test(std::move(coord), coordinate_cdfs[c]);
        report.p_values.push_back(ks.p_value);
        report.min_p = std::min(report.min_p, ks.p_value);
    }
    return report;
}

StationarityReport stationarity_chi2(const std::vector<Vec>& samples,
                                     const Grid2D& target, int kx, int ky) {
    const auto probs = target.partition_probs(kx, ky);
    std::vector<long long> counts(probs.size(), 0);
    std::size_t outside = 0;
    const double x_span = target.xhi() - target.xlo();
    const double y_span = target.yhi() - target.ylo();
    for (const Vec& v : samples) {
        const double fx = (v[0] - target.xlo()) / x_span;
        const double fy = (v[1] - target.ylo()) / y_span;
        if (fx < 0 || fx >= 1 || fy < 0 || fy >= 1) {
            ++outside;
            continue;
        }
        const int ix = std::min(kx - 1, static_cast<int>(fx * kx));
        const int iy = std::min(ky - 1, static_cast<int>(fy * ky));
        counts[static_cast<std::size_t>(ix) * ky + iy] += 1;
    }
    StationarityReport report;
    if (outside > 0) {
        report.p_values.push_back(0.0);
        report.min_p = 0.0;
        return report;
    }
    const ChiSquareResult res = chi_square_test(counts, probs);
    report.p_values.push_back(res.p_value);
    report.min_p = res.p_value;
    return report;
}

DecaySeries chi_sq_decay_curve(const StandardBody& interval, double warm_lo,
                               double warm_hi, double h, std::uint64_t tau,
                               int k_max, std::size_t n_chains, int bins,
                               Rng& rng, double rate_slack) {
    if (interval.kind() != StandardBody::Kind::Interval)
        throw std::invalid_argument("chi_sq_decay_curve: interval targets only");
    Vec lo, hi;
    interval.bounding_box(lo, hi);
    const double length = hi[0] - lo[0];
    const std::vector<double> ref_probs(bins, 1.0 / bins);

    SamplerConfig cfg;
    cfg.h = h;
    cfg.tau = tau;

    // Histogram counts per iteration, accumulated across independent chains.
    std::vector<std::vector<double>> counts(
        static_cast<std::size_t>(k_max) + 1, std::vector<double>(bins, 0.0));
    const double bin_w = length / bins;
    for (std::size_t chain = 0; chain < n_chains; ++chain) {
        ChainState state;
        state.x = Vec::Constant(1, rng.uniform(warm_lo, warm_hi));
        for (int k = 0; k <= k_max; ++k) {
            const int b = std::min(
                bins - 1,
                std::max(0, static_cast<int>((state.x[0] - lo[0]) / bin_w)));
            counts[k][b] += 1.0;
            if (k < k_max) ps_unif_iterate(state, interval, cfg, rng);
        }
    }

    DecaySeries series;
    series.h = h;
    series.c_pi = (length / M_PI) * (length / M_PI);
    series.plugin_bias = static_cast<double>(bins - 1) / n_chains;
    const double n = static_cast<double>(n_chains);
    for (int k = 0; k <= k_max; ++k) {
        double s = 0.0;
        for (int b = 0; b < bins; ++b) {
            const double p_hat = counts[k][b] / n;
            s += p_hat * p_hat / ref_probs[b];
        }
        series.chi2.push_back(s - 1.0);
    }

    const double noise = 5.0 * series.plugin_bias + 3e-3;
    series.non_increasing = true;
    for (int k = 0; k < k_max; ++k)
        if (series.chi2[k + 1] > series.chi2[k] + noise) series.non_increasing = false;

    const double eta = 1.0 / (1.0 + h / series.c_pi);
    series.rate_bound_ok = true;
    double rate = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        rate *= eta;
        const double bound = rate * series.chi2[0] * (1.0 + rate_slack) + noise;
        if (series.chi2[k] > bound) series.rate_bound_ok = false;
    }
    return series;
}

EarlyStopReport check_early_stopping(double q, double r, double lambda,
                                     const std::vector<double>& sigma2_grid) {
    EarlyStopReport report;
    report.sigma2_grid = sigma2_grid;
    const Grid1D uniform = truncated_gaussian_grid(1e12, -1.0, 1.0, kGrid1D);
    for (double s2 : sigma2_grid) {
        const Grid1D mu = truncated_gaussian_grid(s2, -1.0, 1.0, kGrid1D);
        report.renyi2.push_back(renyi_quadrature(mu, uniform, q).value);
    }
    report.monotone = true;
    for (std::size_t i = 1; i < report.renyi2.size(); ++i)
        if (report.renyi2[i] >= report.renyi2[i - 1]) report.monotone = false;

    report.threshold = q * r * std::sqrt(lambda);  // log^{1/2} d floored at 1
    const Grid1D at = truncated_gaussian_grid(report.threshold, -1.0, 1.0, kGrid1D);
    report.value_at_threshold = renyi_quadrature(at, uniform, q).value;
    return report;
}

CheckReport check_gauss_closeness(double q, const std::vector<double>& sigma2_list,
                                  const std::vector<double>& alpha_list,
                                  double slack) {
    CheckReport report;
    const double r2 = 1.0 / 3.0;  // second moment of Unif[-1,1]
    for (double s2 : sigma2_list) {
        const Grid1D mu = truncated_gaussian_grid(s2, -1.0, 1.0, kGrid1D);
        for (double alpha : alpha_list) {
            const Grid1D nu =
                truncated_gaussian_grid(s2 * (1.0 + alpha), -1.0, 1.0, kGrid1D);
            const DivergenceEstimate est = renyi_quadrature(mu, nu, q);
            CheckRow row;
            row.check_id = "gauss-anneal-closeness";
            row.claim = "consecutive-anneal-closeness";
            row.parameters = "q=" + fmt8(q) + ";sigma2=" + fmt8(s2) +
                             ";alpha=" + fmt8(alpha);
            row.measured = est.value;
            row.bound = closeness_bound(q, alpha, std::sqrt(r2), s2);
            row.pass = est.value <= row.bound + slack;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace proxsamp
