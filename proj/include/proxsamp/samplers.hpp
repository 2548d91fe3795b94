#pragma once

#include <cstdint>

#include "proxsamp/ledger.hpp"
#include "proxsamp/oracles.hpp"
#include "proxsamp/rng.hpp"

namespace proxsamp {

/// Tuning knobs shared by the sampler family.  The c_* constants absorb the
/// hidden factors of the asymptotic parameter rules; defaults keep them at 1
/// except c_close (see annealing.hpp for how the schedules consume it).
struct Constants {
    double c_h = 1.0;
    double c_tau = 1.0;
    double c_n = 1.0;
    double c_stop = 1.0;
    double c_close = 8.0;
};

struct SamplerConfig {
    double h = 0.25;                         // step size (squared-length units)
    std::uint64_t tau = 8;                   // restart threshold
    std::uint64_t max_stages = 1'000'000;    // stuck-chain guard
    Constants constants;
    std::uint64_t seed = 0;
};

struct ChainState {
    Vec x;
    std::uint64_t iteration = 0;
    QueryLedger ledger;
};

enum class StepStatus { Accepted, Exhausted };

struct StepOutcome {
    StepStatus status = StepStatus::Exhausted;
    Vec point;                    // set when accepted
    std::uint64_t trials_used = 0;
};

/// Gaussian of variance sigma2 truncated to a convex body.
struct GaussTarget {
    GaussTarget(const BodyOracle& body, double sigma2);
    const BodyOracle& body;
    double sigma2;
};

/// exp(-|x|^2/(2 sigma2) - rho t) restricted to a truncated lifted body in
/// R^{x_dim+1}.  rho may be zero (no tilt) but never exceeds x_dim.
struct TiltedTarget {
    TiltedTarget(const BodyOracle& trunc_body, double sigma2, double rho);
    const BodyOracle& trunc_body;
    double sigma2;
    double rho;
    int x_dim;  // trunc_body.dim() - 1
};

// ---------------------------------------------------------------------------
// Steps

/// y = x + sqrt(h) z with z standard normal.
Vec forward_step(const Vec& x, double h, Rng& rng);

/// Rejection sampling for the uniform backward kernel: proposals from
/// N(y, h I), accepted on membership.  Every proposal books one proposal and
/// one membership call on the ledger.
StepOutcome backward_step_uniform(const BodyOracle& body, const Vec& y, double h,
                                  std::uint64_t tau, Rng& rng, QueryLedger* ledger);

struct GaussBackwardParams {
    double shrink;        // s = sigma2 / (h + sigma2)
    double proposal_var;  // s h
};
GaussBackwardParams gauss_backward_params(double sigma2, double h);

/// Backward kernel for the truncated Gaussian target: proposals from
/// N(s y, s h I).
StepOutcome backward_step_gauss(const GaussTarget& target, const Vec& y, double h,
                                std::uint64_t tau, Rng& rng, QueryLedger* ledger);

struct AnnBackwardParams {
    double shrink;        // r = sigma2 / (h + sigma2), applied to the x block
    double x_var;         // r h
    double t_mean_shift;  // -rho h, applied to the t coordinate
    double t_var;         // h
};
AnnBackwardParams ann_backward_params(double sigma2, double rho, double h);

/// Backward kernel for the tilted target: x block from N(r y, r h I), last
/// coordinate from N(s - rho h, h).
StepOutcome backward_step_ann(const TiltedTarget& target, const Vec& w, double h,
                              std::uint64_t tau, Rng& rng, QueryLedger* ledger);

// ---------------------------------------------------------------------------
// Full iterations (forward + backward stages repeated until acceptance; a
// restart keeps the current x and books one restart).  Each call advances the
// chain by exactly one iteration or throws StuckChainError after max_stages.

struct StuckChainError : std::runtime_error {
    explicit StuckChainError(const std::string& what) : std::runtime_error(what) {}
};

void ps_unif_iterate(ChainState& state, const BodyOracle& body,
                     const SamplerConfig& cfg, Rng& rng);

void ps_gauss_iterate(ChainState& state, const GaussTarget& target,
                      const SamplerConfig& cfg, Rng& rng);

/// Chain lives in R^{d+1} on the lifted body; the backward proposal center is
/// shifted by -h alpha for alpha = d e_{d+1}.
void ps_exp_iterate(ChainState& state, const LiftedBody& lifted,
                    const SamplerConfig& cfg, Rng& rng);

void ps_ann_iterate(ChainState& state, const TiltedTarget& target,
                    const SamplerConfig& cfg, Rng& rng);

/// T | X = x for the lifted exponential target: V(x)/d + Exp(rate d).
/// Error when x is outside the domain of the potential.
double sample_t_given_x(const PotentialOracle& potential, const Vec& x, Rng& rng,
                        QueryLedger* ledger = nullptr);

/// Joint lifted start (x, T | x).
Vec lift_start(const PotentialOracle& potential, const Vec& x, Rng& rng,
               QueryLedger* ledger = nullptr);

// ---------------------------------------------------------------------------
// Parameter rules.  M is a Renyi-warmness bound supplied by the caller,
// floored at 1 inside the formulas; tau is capped at 2^40 (the cap voids the
// complexity guarantee, never correctness).

struct DerivedParams {
    double h = 0.0;
    std::uint64_t tau = 0;
    std::uint64_t n_iters = 0;
    bool tau_capped = false;
};

inline constexpr std::uint64_t kTauCap = std::uint64_t(1) << 40;

DerivedParams derive_params_unif(int d, double warmness, double q, double lambda,
                                 double eps, const Constants& c = {});

DerivedParams derive_params_gauss(int d, double warmness, double sigma2, double q,
                                  double q0, double eps, const Constants& c = {});

DerivedParams derive_params_exp(int d, double warmness, double q, double lambda,
                                double eps, const Constants& c = {});

DerivedParams derive_params_ann(int d, double warmness, double sigma2, double q,
                                double q0, double eps, const Constants& c = {});

/// Extra iterations that upgrade an order-p Renyi guarantee to order q under
/// an LSI bound on the target (for truncated Gaussians pass sigma^2).
std::uint64_t boost_order_iterations(double h, double c_lsi_bound, double p,
                                     double q, double c_n = 1.0);

SamplerConfig config_from_params(const DerivedParams& params,
                                 const Constants& c = {},
                                 std::uint64_t seed = 0);

}  // namespace proxsamp
