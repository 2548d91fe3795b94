#pragma once

#include <string>
#include <vector>

#include "proxsamp/oracles.hpp"
#include "proxsamp/samplers.hpp"

namespace proxsamp {

/// One annealing target plus the certificate for its distance to the previous
/// entry.  closeness_bound is the order-4 bound used by the relay argument;
/// entries whose step has no applicable closeness lemma at this dimension are
/// marked uncertified and explained in `note`.
struct ScheduleEntry {
    double sigma2 = 0.0;
    double rho = -1.0;  // negative = no tilt component (uniform annealing)
    std::string phase;
    double step_alpha = 0.0;
    double closeness_bound = 0.0;
    bool closeness_certified = true;
    std::string note;
};

struct AnnealSchedule {
    std::vector<ScheduleEntry> entries;
    double stop_threshold = 0.0;
    double target_order = 2.0;     // q the caller ultimately wants
    int relay_order = 3;           // per-phase guarantee order
    int closeness_order = 4;       // order used in the weak-triangle relay
    int predicted_doublings = 0;
    Constants constants;
};

/// Renyi closeness bound between a log-concave measure multiplied by
/// Gaussians of variance sigma2 and sigma2(1+alpha): q^2 a^2 R^2 / (2 s^2).
double closeness_bound(double q, double alpha, double r, double sigma2);

/// Renyi closeness between e^{-V} and e^{-(1+alpha)V}: q d a^2 / 2 for
/// a >= 0, q d a^2 / (1 - q delta) for a in [-delta/2, 0] when 1 - q delta
/// is positive; other negative a are out of the lemma's range.
double logconcave_closeness_bound(double q, int d, double alpha, double delta = 0.0);

/// Gaussian-variance annealing schedule toward the uniform distribution:
/// sigma2 starts at 1/d, each step multiplies by (1 + alpha_i) with
/// alpha_i = (sigma_i / R) * min(1, sqrt(2 c_close) / 4), and the last entry
/// is the first one past c_stop * q * R * sqrt(Lambda) * max(sqrt(log d), 1).
AnnealSchedule build_uniform_schedule(double r, double lambda, int d, double q,
                                      const Constants& c = {});

/// Three-phase sigma2/rho plan for the truncated lifted target, plus the
/// truncation geometry it assumes.
struct LogConcaveAnnealPlan {
    AnnealSchedule schedule;
    double l = 0.0;        // log(4e)
    double big_d = 0.0;    // R * l, radius of the x-ball in the truncation
    double t_lo = 0.0;
    double t_hi = 0.0;
    int phase1_steps = 0;
    int phase2_outer_steps = 0;
    int phase3_steps = 0;
};

LogConcaveAnnealPlan build_logconcave_plan(double r, double lambda, int d, double q,
                                           const Constants& c = {});

/// Exact draw from the Gaussian of variance 1/d truncated to the body, by
/// rejection with the untruncated Gaussian as proposal.  Errors out after
/// 10^4 trials, which signals that the body likely misses the unit ball.
Vec init_uniform(const BodyOracle& body, int d, Rng& rng, QueryLedger* ledger = nullptr);

/// Exact draw from e^{-d|x|^2/2} restricted to the truncated lifted body,
/// proposal gamma_{1/d} x Unif(t-window).
Vec init_logconcave(const TruncatedLiftedBody& body, Rng& rng,
                    QueryLedger* ledger = nullptr);

struct PhaseRecord {
    std::string phase;
    double sigma2 = 0.0;
    double rho = -1.0;
    double h = 0.0;
    std::uint64_t tau = 0;
    std::uint64_t iterations = 0;
    QueryLedger ledger;
};

struct WarmStartReport {
    Vec final_sample;
    std::size_t schedule_length = 0;
    std::vector<PhaseRecord> phases;
    double achieved_order = 0.0;  // 2q after the final boost
    double relay_order = 3.0;
    Constants constants_used;
    QueryLedger total;
    double predicted_queries = 0.0;  // the asymptotic expression at constants
    std::vector<std::string> notes;
};

/// Annealed warm-start generation for the uniform distribution on a body:
/// exact gamma_{1/d} start, relayed truncated-Gaussian phases at the relay
/// order, and a final hypercontractive boost to order 2q.
WarmStartReport run_uniform_warmstart(const BodyOracle& body, double r,
                                      double lambda, int d, double q,
                                      const Constants& c, Rng& rng);

/// Three-phase warm start for a log-concave target given by a potential,
/// running on the truncated lifted body around x0 = 0 (translating the
/// potential so its minimizer sits at the origin is the caller's job).
WarmStartReport run_logconcave_warmstart(const PotentialOracle& potential,
                                         double r, double lambda, int d, double q,
                                         const Constants& c, Rng& rng);

/// Pilot-sample estimate of R^2 and Lambda for a body; heuristic, flagged as
/// such wherever it is reported.
struct PilotEstimate {
    double r2 = 0.0;
    double lambda = 0.0;
    std::size_t n = 0;
};
PilotEstimate estimate_moments_uniform(const BodyOracle& body, const Vec& start,
                                       std::size_t n, Rng& rng);

}  // namespace proxsamp
