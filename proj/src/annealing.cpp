#include "proxsamp/annealing.hpp"

#include <cmath>
#include <stdexcept>

namespace proxsamp {

namespace {

constexpr double kRelayEps = 1.0;   // per-phase target: relay-order Renyi <= 1
constexpr int kInitTrialCap = 10000;

double sqrt_log_floor(int d) {
    return std::max(std::sqrt(std::log(static_cast<double>(d))), 1.0);
}

// Step ratio keeping the order-4 closeness certificate at or under c_close.
double step_alpha(double sigma, double scale_r, const Constants& c, int order) {
    const double cap = std::sqrt(2.0 * c.c_close) / order;
    return sigma / scale_r * std::min(1.0, cap);
}

void certify_gauss_step(ScheduleEntry& entry, double alpha, double r,
                        double sigma2_before, const AnnealSchedule& sched) {
    entry.step_alpha = alpha;
    entry.closeness_bound =
        closeness_bound(sched.closeness_order, alpha, r, sigma2_before);
    entry.closeness_certified = true;
    if (entry.closeness_bound > sched.constants.c_close * (1.0 + 1e-12))
        throw std::logic_error("anneal schedule: step closeness exceeds c_close");
}

}  // namespace

double closeness_bound(double q, double alpha, double r, double sigma2) {
    if (!(q > 1)) throw std::invalid_argument("closeness_bound: need q > 1");
    if (alpha < 0 || !(r > 0) || !(sigma2 > 0))
        throw std::invalid_argument("closeness_bound: need alpha >= 0, r, sigma2 > 0");
    return q * q * alpha * alpha * r * r / (2.0 * sigma2);
}

double logconcave_closeness_bound(double q, int d, double alpha, double delta) {
    if (!(q > 1) || d < 1)
        throw std::invalid_argument("logconcave_closeness_bound: need q > 1, d >= 1");
    if (alpha >= 0) return q * d * alpha * alpha / 2.0;
    if (!(1.0 - q * delta > 0) || alpha < -delta / 2.0)
        throw std::invalid_argument(
            "logconcave_closeness_bound: negative alpha outside admissible range");
    return q * d * alpha * alpha / (1.0 - q * delta);
}

AnnealSchedule build_uniform_schedule(double r, double lambda, int d, double q,
                                      const Constants& c) {
    if (!(r > 0) || !(lambda > 0) || d < 1 || !(q >= 2))
        throw std::invalid_argument("build_uniform_schedule: bad inputs");
    AnnealSchedule sched;
    sched.constants = c;
    sched.target_order = q;
    sched.stop_threshold = c.c_stop * q * r * std::sqrt(lambda) * sqrt_log_floor(d);

    double sigma2 = 1.0 / d;
    sched.entries.push_back({sigma2, -1.0, "gauss-anneal", 0.0, 0.0, true, ""});
    while (sched.entries.back().sigma2 <= sched.stop_threshold) {
        const double alpha = step_alpha(std::sqrt(sigma2), r, c, sched.closeness_order);
        ScheduleEntry entry;
        entry.phase = "gauss-anneal";
        entry.rho = -1.0;
        entry.sigma2 = sigma2 * (1.0 + alpha);
        certify_gauss_step(entry, alpha, r, sigma2, sched);
        sigma2 = entry.sigma2;
        sched.entries.push_back(std::move(entry));
    }
    sched.predicted_doublings = std::max(
        0, static_cast<int>(std::ceil(std::log2(
               std::max(sched.stop_threshold, 1.0 / d) / (1.0 / d)))));
    return sched;
}

LogConcaveAnnealPlan build_logconcave_plan(double r, double lambda, int d, double q,
                                           const Constants& c) {
    if (!(r > 0) || !(lambda > 0) || d < 1 || !(q >= 2))
        throw std::invalid_argument("build_logconcave_plan: bad inputs");
    LogConcaveAnnealPlan plan;
    plan.l = std::log(4.0 * M_E);
    plan.big_d = r * plan.l;
    plan.t_lo = -21.0;
    plan.t_hi = 13.0 * plan.l - 6.0;

    AnnealSchedule& sched = plan.schedule;
    sched.constants = c;
    sched.target_order = q;
    const int ambient = d + 1;
    const double a1 = 1.0 / std::sqrt(static_cast<double>(d));

    double sigma2 = 1.0 / d;
    sched.entries.push_back({sigma2, 0.0, "init", 0.0, 0.0, true, ""});

    // Phase I: sigma2 rises from 1/d to 1 by factor (1 + d^{-1/2}), no tilt.
    while (sigma2 < 1.0) {
        ScheduleEntry entry;
        entry.phase = "phase1";
        entry.rho = 0.0;
        entry.sigma2 = std::min(sigma2 * (1.0 + a1), 1.0);
        const double alpha = entry.sigma2 / sigma2 - 1.0;
        entry.step_alpha = alpha;
        entry.closeness_bound =
            logconcave_closeness_bound(sched.closeness_order, ambient, alpha);
        entry.closeness_certified = true;
        sigma2 = entry.sigma2;
        sched.entries.push_back(std::move(entry));
        ++plan.phase1_steps;
    }
    // Tilt introduction: one run toward exp(-|x|^2/2 - t).
    {
        ScheduleEntry entry;
        entry.phase = "phase1-tilt";
        entry.sigma2 = 1.0;
        entry.rho = 1.0;
        entry.closeness_certified = false;
        entry.note = "tilt introduction; no closeness lemma applies, relay bound is heuristic";
        sched.entries.push_back(std::move(entry));
    }

    // Phase II: rho climbs to d with a paired sigma2 decrease, each outer step
    // followed by inner restoration of sigma2 up to its pre-decrease level
    // (capped at 1).
    double rho = 1.0;
    while (rho < d) {
        const double level = std::min(sigma2, 1.0);
        ScheduleEntry outer;
        outer.phase = "phase2-outer";
        outer.sigma2 = sigma2 / (1.0 + a1);
        rho = std::min(static_cast<double>(d), rho * (1.0 + a1));
        outer.rho = rho;
        const double alpha_neg = -a1 / (1.0 + a1);
        const double delta = 2.0 * std::abs(alpha_neg);
        if (1.0 - sched.closeness_order * delta > 0) {
            outer.step_alpha = alpha_neg;
            outer.closeness_bound = logconcave_closeness_bound(
                sched.closeness_order, ambient, alpha_neg, delta);
            outer.closeness_certified = true;
        } else {
            outer.closeness_certified = false;
            outer.note = "simultaneous step: closeness lemma needs 1 - q*delta > 0, "
                         "unavailable at this dimension";
        }
        sigma2 = outer.sigma2;
        sched.entries.push_back(std::move(outer));
        ++plan.phase2_outer_steps;

        while (sigma2 < level) {
            const double alpha =
                step_alpha(std::sqrt(sigma2), plan.big_d, c, sched.closeness_order);
            ScheduleEntry inner;
            inner.phase = "phase2-inner";
            inner.rho = rho;
            inner.sigma2 = sigma2 * (1.0 + alpha);
            certify_gauss_step(inner, alpha, plan.big_d, sigma2, sched);
            sigma2 = inner.sigma2;
            sched.entries.push_back(std::move(inner));
        }
    }

    // Phase III: sigma2 annealing at full tilt, stopping past the threshold.
    sched.stop_threshold = c.c_stop * q * plan.big_d *
                           std::max(std::sqrt(lambda), 1.0) * sqrt_log_floor(d);
    while (sigma2 <= sched.stop_threshold) {
        const double alpha =
            step_alpha(std::sqrt(sigma2), plan.big_d, c, sched.closeness_order);
        ScheduleEntry entry;
        entry.phase = "phase3";
        entry.rho = static_cast<double>(d);
        entry.sigma2 = sigma2 * (1.0 + alpha);
        certify_gauss_step(entry, alpha, plan.big_d, sigma2, sched);
        sigma2 = entry.sigma2;
        sched.entries.push_back(std::move(entry));
        ++plan.phase3_steps;
    }
    sched.predicted_doublings = std::max(
        0, static_cast<int>(std::ceil(
               std::log2(std::max(sched.stop_threshold * d, 1.0)))));
    return plan;
}

Vec init_uniform(const BodyOracle& body, int d, Rng& rng, QueryLedger* ledger) {
    if (d != body.dim()) throw std::invalid_argument("init_uniform: dimension mismatch");
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int trial = 0; trial < kInitTrialCap; ++trial) {
        Vec x = scale * rng.gaussian_vector(d);
        if (ledger) ledger->proposals_drawn += 1;
        if (body.contains(x, ledger)) return x;
    }
    throw std::runtime_error(
        "init_uniform: no acceptance within 10^4 trials; does the body contain B_1(0)?");
}

Vec init_logconcave(const TruncatedLiftedBody& body, Rng& rng, QueryLedger* ledger) {
    const int d = body.dim() - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int trial = 0; trial < kInitTrialCap; ++trial) {
        Vec v(d + 1);
        v.head(d) = scale * rng.gaussian_vector(d);
        v[d] = rng.uniform(body.t_lo(), body.t_hi());
        if (ledger) ledger->proposals_drawn += 1;
        if (body.contains(v, ledger)) return v;
    }
    throw std::runtime_error(
        "init_logconcave: no acceptance within 10^4 trials; check the ground set");
}

namespace {

// Relay warmness bound fed to the per-phase parameter rules: the previous
// phase ends at relay-order divergence <= kRelayEps and consecutive targets
// are c_close-close at the closeness order, so the weak triangle inequality
// bounds the order-2 warmness of the next start by their sum.
double relay_warmness(const Constants& c) { return kRelayEps + c.c_close; }

void append_phase(WarmStartReport& report, const std::string& phase, double sigma2,
                  double rho, const SamplerConfig& cfg, std::uint64_t iters,
                  const QueryLedger& ledger) {
    PhaseRecord rec;
    rec.phase = phase;
    rec.sigma2 = sigma2;
    rec.rho = rho;
    rec.h = cfg.h;
    rec.tau = cfg.tau;
    rec.iterations = iters;
    rec.ledger = ledger;
    report.phases.push_back(std::move(rec));
    report.total.merge(ledger);
}

}  // namespace

WarmStartReport run_uniform_warmstart(const BodyOracle& body, double r,
                                      double lambda, int d, double q,
                                      const Constants& c, Rng& rng) {
    const AnnealSchedule sched = build_uniform_schedule(r, lambda, d, q, c);
    WarmStartReport report;
    report.constants_used = c;
    report.schedule_length = sched.entries.size();
    report.relay_order = sched.relay_order;
    report.predicted_queries =
        q * d * d * std::pow(r, 1.5) * std::pow(lambda, 0.25);

    ChainState state;
    {
        QueryLedger init_ledger;
        state.x = init_uniform(body, d, rng, &init_ledger);
        SamplerConfig none;
        none.h = 0.0;
        none.tau = 0;
        append_phase(report, "init", sched.entries.front().sigma2, -1.0, none, 0,
                     init_ledger);
    }

    const double m_relay = relay_warmness(c);
    for (std::size_t i = 1; i < sched.entries.size(); ++i) {
        const double sigma2 = sched.entries[i].sigma2;
        const DerivedParams params = derive_params_gauss(
            d, m_relay, sigma2, sched.relay_order, 2.0, kRelayEps, c);
        const SamplerConfig cfg = config_from_params(params, c);
        const GaussTarget target(body, sigma2);
        ChainState phase_state;
        phase_state.x = state.x;
        for (std::uint64_t k = 0; k < params.n_iters; ++k)
            ps_gauss_iterate(phase_state, target, cfg, rng);
        state.x = phase_state.x;
        append_phase(report, sched.entries[i].phase, sigma2, -1.0, cfg,
                     params.n_iters, phase_state.ledger);
    }

    // Final hypercontractive boost: the chain is O(1)-warm now, so the plain
    // warmness-1 step size applies and the relay order climbs to 2q.
    {
        const double sigma2_last = sched.entries.back().sigma2;
        DerivedParams boost;
        boost.h = std::min(1.0, c.c_h / (static_cast<double>(d) * d));
        boost.tau = derive_params_gauss(d, 1.0, sigma2_last, 2.0 * q, 2.0, 1.0, c).tau;
        boost.n_iters = boost_order_iterations(boost.h, sigma2_last,
                                               sched.relay_order, 2.0 * q, c.c_n);
        const SamplerConfig cfg = config_from_params(boost, c);
        const GaussTarget target(body, sigma2_last);
        ChainState phase_state;
        phase_state.x = state.x;
        for (std::uint64_t k = 0; k < boost.n_iters; ++k)
            ps_gauss_iterate(phase_state, target, cfg, rng);
        state.x = phase_state.x;
        append_phase(report, "order-boost", sigma2_last, -1.0, cfg, boost.n_iters,
                     phase_state.ledger);
    }

    report.final_sample = state.x;
    report.achieved_order = 2.0 * q;
    report.notes.push_back("relay warmness bound per phase: 1 + c_close");
    return report;
}

WarmStartReport run_logconcave_warmstart(const PotentialOracle& potential,
                                         double r, double lambda, int d, double q,
                                         const Constants& c, Rng& rng) {
    if (d != potential.dim())
        throw std::invalid_argument("run_logconcave_warmstart: dimension mismatch");
    const LogConcaveAnnealPlan plan = build_logconcave_plan(r, lambda, d, q, c);
    const TruncatedLiftedBody trunc(potential, plan.big_d, plan.t_lo, plan.t_hi);

    WarmStartReport report;
    report.constants_used = c;
    report.schedule_length = plan.schedule.entries.size();
    report.relay_order = plan.schedule.relay_order;
    report.predicted_queries =
        std::pow(d, 2.5) + q * d * d * std::max(std::pow(r, 1.5), 1.0) *
                               std::max(std::pow(lambda, 0.25), 1.0);

    ChainState state;
    {
        QueryLedger init_ledger;
        state.x = init_logconcave(trunc, rng, &init_ledger);
        SamplerConfig none;
        none.h = 0.0;
        none.tau = 0;
        append_phase(report, "init", 1.0 / d, 0.0, none, 0, init_ledger);
    }

    const double m_relay = relay_warmness(c);
    for (std::size_t i = 1; i < plan.schedule.entries.size(); ++i) {
        const ScheduleEntry& entry = plan.schedule.entries[i];
        const DerivedParams params = derive_params_ann(
            d, m_relay, entry.sigma2, plan.schedule.relay_order, 2.0, kRelayEps, c);
        const SamplerConfig cfg = config_from_params(params, c);
        const TiltedTarget target(trunc, entry.sigma2, entry.rho);
        ChainState phase_state;
        phase_state.x = state.x;
        for (std::uint64_t k = 0; k < params.n_iters; ++k)
            ps_ann_iterate(phase_state, target, cfg, rng);
        state.x = phase_state.x;
        append_phase(report, entry.phase, entry.sigma2, entry.rho, cfg,
                     params.n_iters, phase_state.ledger);
    }

    {
        const ScheduleEntry& last = plan.schedule.entries.back();
        DerivedParams boost;
        boost.h = std::min(1.0, c.c_h / (static_cast<double>(d) * d));
        boost.tau =
            derive_params_ann(d, 1.0, last.sigma2, 2.0 * q, 2.0, 1.0, c).tau;
        boost.n_iters = boost_order_iterations(
            boost.h, std::max(last.sigma2, 1.0), plan.schedule.relay_order,
            2.0 * q, c.c_n);
        const SamplerConfig cfg = config_from_params(boost, c);
        const TiltedTarget target(trunc, last.sigma2, last.rho);
        ChainState phase_state;
        phase_state.x = state.x;
        for (std::uint64_t k = 0; k < boost.n_iters; ++k)
            ps_ann_iterate(phase_state, target, cfg, rng);
        state.x = phase_state.x;
        append_phase(report, "order-boost", last.sigma2, last.rho, cfg,
                     boost.n_iters, phase_state.ledger);
    }

    report.final_sample = state.x;
    report.achieved_order = 2.0 * q;
    report.notes.push_back("phase2 reading: outer decrease first, then inner restoration "
                           "up to the pre-decrease level capped at 1");
    for (const auto& entry : plan.schedule.entries)
        if (!entry.closeness_certified)
            report.notes.push_back(entry.phase + ": " + entry.note);
    return report;
}

PilotEstimate estimate_moments_uniform(const BodyOracle& body, const Vec& start,
                                       std::size_t n, Rng& rng) {
    SamplerConfig cfg;
    cfg.h = 0.25;
    cfg.tau = 64;
    ChainState state;
    state.x = start;
    const int burn = 64;
    for (int k = 0; k < burn; ++k) ps_unif_iterate(state, body, cfg, rng);

    const int d = body.dim();
    Mat sum_outer = Mat::Zero(d, d);
    Vec sum = Vec::Zero(d);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < 4; ++k) ps_unif_iterate(state, body, cfg, rng);
        r2 += state.x.squaredNorm();
        sum += state.x;
        sum_outer += state.x * state.x.transpose();
    }
    const double nn = static_cast<double>(n);
    const Vec mean = sum / nn;
    const Mat cov = sum_outer / nn - mean * mean.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> eig(cov);
    return {r2 / nn, eig.eigenvalues().maxCoeff(), n};
}

}  // namespace proxsamp
