#include "proxsamp/samplers.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace proxsamp {

GaussTarget::GaussTarget(const BodyOracle& body_, double sigma2_)
    : body(body_), sigma2(sigma2_) {
    if (!(sigma2 > 0)) throw std::invalid_argument("GaussTarget: sigma2 must be positive");
}

TiltedTarget::TiltedTarget(const BodyOracle& trunc_body_, double sigma2_, double rho_)
    : trunc_body(trunc_body_), sigma2(sigma2_), rho(rho_),
      x_dim(trunc_body_.dim() - 1) {
    if (!(sigma2 > 0)) throw std::invalid_argument("TiltedTarget: sigma2 must be positive");
    if (x_dim < 1) throw std::invalid_argument("TiltedTarget: body must be lifted");
    if (rho < 0 || rho > x_dim)
        throw std::invalid_argument("TiltedTarget: rho must lie in [0, d]");
}

Vec forward_step(const Vec& x, double h, Rng& rng) {
    if (h < 0) throw std::invalid_argument("forward_step: h must be nonnegative");
    if (h == 0) return x;
    return x + std::sqrt(h) * rng.gaussian_vector(x.size());
}

namespace {

// Shared rejection loop; propose() draws one candidate.
template <typename ProposeFn>
StepOutcome rejection_loop(const BodyOracle& support, std::uint64_t tau, Rng& rng,
                           QueryLedger* ledger, ProposeFn&& propose) {
    StepOutcome out;
    for (std::uint64_t trial = 1; trial <= tau; ++trial) {
        Vec candidate = propose(rng);
        if (ledger) ledger->proposals_drawn += 1;
        if (support.contains(candidate, ledger)) {
            out.status = StepStatus::Accepted;
            out.point = std::move(candidate);
            out.trials_used = trial;
            return out;
        }
    }
    out.status = StepStatus::Exhausted;
    out.trials_used = tau;
    return out;
}

template <typename BackwardFn>
void iterate_with_restart(ChainState& state, const SamplerConfig& cfg, Rng& rng,
                          const char* name, BackwardFn&& backward) {
    for (std::uint64_t stage = 0; stage < cfg.max_stages; ++stage) {
        const Vec y = forward_step(state.x, cfg.h, rng);
        StepOutcome out = backward(y, rng);
        if (out.status == StepStatus::Accepted) {
            state.x = std::move(out.point);
            state.iteration += 1;
            state.ledger.iterations_completed += 1;
            return;
        }
        state.ledger.restarts += 1;
    }
    throw StuckChainError(std::string(name) +
                          ": no accepted stage within the stage cap; "
                          "h/tau are likely misconfigured for this target");
}

}  // namespace

StepOutcome backward_step_uniform(const BodyOracle& body, const Vec& y, double h,
                                  std::uint64_t tau, Rng& rng, QueryLedger* ledger) {
    if (!(h > 0)) throw std::invalid_argument("backward_step_uniform: h must be positive");
    if (tau < 1) throw std::invalid_argument("backward_step_uniform: tau must be >= 1");
    const double step = std::sqrt(h);
    return rejection_loop(body, tau, rng, ledger, [&](Rng& r) -> Vec {
        return y + step * r.gaussian_vector(y.size());
    });
}

GaussBackwardParams gauss_backward_params(double sigma2, double h) {
    if (!(sigma2 > 0) || !(h > 0))
        throw std::invalid_argument("gauss_backward_params: need sigma2, h > 0");
    const double s = sigma2 / (h + sigma2);
    return {s, s * h};
}

StepOutcome backward_step_gauss(const GaussTarget& target, const Vec& y, double h,
                                std::uint64_t tau, Rng& rng, QueryLedger* ledger) {
    if (tau < 1) throw std::invalid_argument("backward_step_gauss: tau must be >= 1");
    const auto p = gauss_backward_params(target.sigma2, h);
    const Vec center = p.shrink * y;
    const double step = std::sqrt(p.proposal_var);
    return rejection_loop(target.body, tau, rng, ledger, [&](Rng& r) -> Vec {
        return center + step * r.gaussian_vector(y.size());
    });
}

AnnBackwardParams ann_backward_params(double sigma2, double rho, double h) {
    if (!(sigma2 > 0) || !(h > 0))
        throw std::invalid_argument("ann_backward_params: need sigma2, h > 0");
    const double r = sigma2 / (h + sigma2);
    return {r, r * h, -rho * h, h};
}

StepOutcome backward_step_ann(const TiltedTarget& target, const Vec& w, double h,
                              std::uint64_t tau, Rng& rng, QueryLedger* ledger) {
    if (tau < 1) throw std::invalid_argument("backward_step_ann: tau must be >= 1");
    const auto p = ann_backward_params(target.sigma2, target.rho, h);
    const int d = target.x_dim;
    const Vec x_center = p.shrink * w.head(d);
    const double t_center = w[d] + p.t_mean_shift;
    const double x_step = std::sqrt(p.x_var);
    const double t_step = std::sqrt(p.t_var);
    return rejection_loop(target.trunc_body, tau, rng, ledger, [&](Rng& r) -> Vec {
        Vec v(d + 1);
        v.head(d) = x_center + x_step * r.gaussian_vector(d);
        v[d] = t_center + t_step * r.normal();
        return v;
    });
}

void ps_unif_iterate(ChainState& state, const BodyOracle& body,
                     const SamplerConfig& cfg, Rng& rng) {
    iterate_with_restart(state, cfg, rng, "ps_unif", [&](const Vec& y, Rng& r) {
        return backward_step_uniform(body, y, cfg.h, cfg.tau, r, &state.ledger);
    });
    assert(body.contains(state.x));
}

void ps_gauss_iterate(ChainState& state, const GaussTarget& target,
                      const SamplerConfig& cfg, Rng& rng) {
    iterate_with_restart(state, cfg, rng, "ps_gauss", [&](const Vec& y, Rng& r) {
        return backward_step_gauss(target, y, cfg.h, cfg.tau, r, &state.ledger);
    });
    assert(target.body.contains(state.x));
}

void ps_exp_iterate(ChainState& state, const LiftedBody& lifted,
                    const SamplerConfig& cfg, Rng& rng) {
    const double shift = cfg.h * lifted.base_dim();  // h alpha, t coordinate only
    const double step = std::sqrt(cfg.h);
    const int dim = lifted.dim();
    iterate_with_restart(state, cfg, rng, "ps_exp", [&](const Vec& y, Rng& r) {
        return rejection_loop(lifted, cfg.tau, r, &state.ledger, [&](Rng& rr) -> Vec {
            Vec v = y + step * rr.gaussian_vector(dim);
            v[dim - 1] -= shift;
            return v;
        });
    });
    assert(lifted.contains(state.x));
}

void ps_ann_iterate(ChainState& state, const TiltedTarget& target,
                    const SamplerConfig& cfg, Rng& rng) {
    iterate_with_restart(state, cfg, rng, "ps_ann", [&](const Vec& w, Rng& r) {
        return backward_step_ann(target, w, cfg.h, cfg.tau, r, &state.ledger);
    });
    assert(target.trunc_body.contains(state.x));
}

double sample_t_given_x(const PotentialOracle& potential, const Vec& x, Rng& rng,
                        QueryLedger* ledger) {
    const ExtReal v = potential.evaluate(x, ledger);
    if (!v.is_finite())
        throw std::domain_error("sample_t_given_x: start outside the domain of V");
    const double d = static_cast<double>(potential.dim());
    return v.value() / d + rng.exponential() / d;
}

Vec lift_start(const PotentialOracle& potential, const Vec& x, Rng& rng,
               QueryLedger* ledger) {
    Vec z(x.size() + 1);
    z.head(x.size()) = x;
    z[x.size()] = sample_t_given_x(potential, x, rng, ledger);
    return z;
}

// ---------------------------------------------------------------------------

namespace {

double floored(double warmness) { return std::max(warmness, 1.0); }

std::uint64_t ceil_to_u64(double x) {
    if (x <= 1.0) return 1;
    return static_cast<std::uint64_t>(std::ceil(x));
}

std::uint64_t tau_rule(double warmness, double c_tau, bool* capped) {
    const double mf = floored(warmness);
    const double raw = c_tau * mf * std::exp(mf);
    if (!(raw < static_cast<double>(kTauCap))) {
        if (capped) *capped = true;
        return kTauCap;
    }
    if (capped) *capped = false;
    return ceil_to_u64(raw);
}

double step_rule(int d, double warmness, double c_h) {
    return std::min(1.0, c_h / (static_cast<double>(d) * d * floored(warmness)));
}

void check_common(int d, double warmness, double eps) {
    if (d < 1) throw std::invalid_argument("derive_params: d must be >= 1");
    if (!(warmness > 0)) throw std::invalid_argument("derive_params: warmness must be positive");
    if (!(eps > 0) || eps > 1)
        throw std::invalid_argument("derive_params: eps must lie in (0, 1]");
}

}  // namespace

DerivedParams derive_params_unif(int d, double warmness, double q, double lambda,
                                 double eps, const Constants& c) {
    check_common(d, warmness, eps);
    if (!(q >= 2)) throw std::invalid_argument("derive_params_unif: q must be >= 2");
    if (!(lambda > 0)) throw std::invalid_argument("derive_params_unif: lambda must be positive");
    DerivedParams p;
    p.h = step_rule(d, warmness, c.c_h);
    p.tau = tau_rule(warmness, c.c_tau, &p.tau_capped);
    const double mf = floored(warmness);
    const double log_d = std::max(std::log(static_cast<double>(d)), 1.0);
    p.n_iters = ceil_to_u64(c.c_n * q * d * d * lambda * mf * log_d * std::log(1.0 / eps));
    return p;
}

DerivedParams derive_params_gauss(int d, double warmness, double sigma2, double q,
                                  double q0, double eps, const Constants& c) {
    check_common(d, warmness, eps);
    if (!(sigma2 > 0)) throw std::invalid_argument("derive_params_gauss: sigma2 must be positive");
    if (!(q > 1) || !(q0 > 1))
        throw std::invalid_argument("derive_params_gauss: q and q0 must exceed 1");
    DerivedParams p;
    p.h = step_rule(d, warmness, c.c_h);
    p.tau = tau_rule(warmness, c.c_tau, &p.tau_capped);
    const double mf = floored(warmness);
    const double order = std::min(2.0, q0) - 1.0;
    p.n_iters = ceil_to_u64(c.c_n * d * d * sigma2 * std::log(q * mf / (order * eps)));
    return p;
}

DerivedParams derive_params_exp(int d, double warmness, double q, double lambda,
                                double eps, const Constants& c) {
    if (!(lambda > 0)) throw std::invalid_argument("derive_params_exp: lambda must be positive");
    return derive_params_unif(d, warmness, q, std::max(lambda, 1.0), eps, c);
}

DerivedParams derive_params_ann(int d, double warmness, double sigma2, double q,
                                double q0, double eps, const Constants& c) {
    if (!(sigma2 > 0)) throw std::invalid_argument("derive_params_ann: sigma2 must be positive");
    return derive_params_gauss(d, warmness, std::max(sigma2, 1.0), q, q0, eps, c);
}

std::uint64_t boost_order_iterations(double h, double c_lsi_bound, double p,
                                     double q, double c_n) {
    if (!(h > 0) || !(c_lsi_bound > 0))
        throw std::invalid_argument("boost_order_iterations: need h, C > 0");
    if (!(p > 1) || p > q)
        throw std::invalid_argument("boost_order_iterations: need 1 < p <= q");
    if (p == q) return 0;
    const double raw = c_n * c_lsi_bound / h * std::log2((q - 1.0) / (p - 1.0));
    return ceil_to_u64(raw);
}

SamplerConfig config_from_params(const DerivedParams& params, const Constants& c,
                                 std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.h = params.h;
    cfg.tau = params.tau;
    cfg.constants = c;
    cfg.seed = seed;
    return cfg;
}

}  // namespace proxsamp
