// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerances in code; statistical tests are seeded
// and therefore reproducible.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "proxsamp/annealing.hpp"
#include "proxsamp/diagnostics.hpp"
#include "proxsamp/divergence.hpp"
#include "proxsamp/grid.hpp"
#include "proxsamp/oracles.hpp"
#include "proxsamp/runner.hpp"
#include "proxsamp/samplers.hpp"
#include "proxsamp/stats.hpp"

using namespace proxsamp;

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    if (workers == 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

Vec vec1(double a) { return Vec::Constant(1, a); }

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

std::vector<double> coord(const std::vector<Vec>& pool, int i) {
    std::vector<double> out(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) out[k] = pool[k][i];
    return out;
}

std::function<double(double)> grid_cdf_fn(const Grid1D& grid) {
    auto cdf_vals = grid.cdf();
    const double lo = grid.lo(), hi = grid.hi(), dx = grid.dx();
    const int n = grid.n();
    return [=](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        const int i = std::min(n - 1, static_cast<int>((x - lo) / dx));
        const double left = i == 0 ? 0.0 : cdf_vals[i - 1];
        const double frac = (x - (lo + i * dx)) / dx;
        return left + frac * (cdf_vals[i] - left);
    };
}

constexpr std::size_t kPool = 100000;
constexpr int kIters = 20;

// ---------------------------------------------------------------------------

bool criterion_stationarity(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    SamplerConfig cfg;
    cfg.h = 0.25;
    cfg.tau = 64;

    {  // uniform on [-1,1]: KS against the quadrature CDF
        const StandardBody interval = StandardBody::interval(-1.0, 1.0);
        Grid1D grid = Grid1D::from_density(-1.0, 1.0, 1 << 14, [](double) { return 1.0; });
        grid.normalize();
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1001, rep);
            ChainState st;
            st.x = sample_uniform(interval, rng);
            for (int k = 0; k < kIters; ++k) ps_unif_iterate(st, interval, cfg, rng);
            pool[rep] = st.x;
        });
        const double p = stationarity_ks(pool, {grid_cdf_fn(grid)}).min_p;
        os << "unif-1d p=" << p;
        ok = ok && p > 0.01;
    }
    {  // uniform on the square: 16-cell chi-square
        const StandardBody box = StandardBody::box(Vec::Constant(2, 1.0));
        Grid2D grid = Grid2D::from_density(-1, 1, -1, 1, 512, 512,
                                           [](double, double) { return 1.0; });
        grid.normalize();
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1002, rep);
            ChainState st;
            st.x = sample_uniform(box, rng);
            for (int k = 0; k < kIters; ++k) ps_unif_iterate(st, box, cfg, rng);
            pool[rep] = st.x;
        });
        const double p = stationarity_chi2(pool, grid).min_p;
        os << " unif-box p=" << p;
        ok = ok && p > 0.01;
    }
    {  // uniform on the unit disk: 16-cell chi-square with quadrature masses
        const StandardBody disk = StandardBody::ball(2, 1.0);
        Grid2D grid = Grid2D::from_density(-1, 1, -1, 1, 512, 512,
                                           [&](double x, double y) {
                                               return x * x + y * y <= 1.0 ? 1.0 : 0.0;
                                           });
        grid.normalize();
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1003, rep);
            ChainState st;
            st.x = sample_uniform(disk, rng);
            for (int k = 0; k < kIters; ++k) ps_unif_iterate(st, disk, cfg, rng);
            pool[rep] = st.x;
        });
        const double p = stationarity_chi2(pool, grid).min_p;
        os << " unif-disk p=" << p;
        ok = ok && p > 0.01;
    }
    {  // truncated gaussian on [-1,1]
        const StandardBody interval = StandardBody::interval(-1.0, 1.0);
        const GaussTarget target(interval, 1.0);
        const TruncatedNormal exact{0.0, 1.0, -1.0, 1.0};
        Grid1D grid = Grid1D::from_density(-1.0, 1.0, 1 << 14, [](double x) {
            return std::exp(-0.5 * x * x);
        });
        grid.normalize();
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1004, rep);
            ChainState st;
            st.x = vec1(exact.quantile(rng.uniform01()));
            for (int k = 0; k < kIters; ++k) ps_gauss_iterate(st, target, cfg, rng);
            pool[rep] = st.x;
        });
        const double p = stationarity_ks(pool, {grid_cdf_fn(grid)}).min_p;
        os << " gauss p=" << p;
        ok = ok && p > 0.01;
    }
    {  // tilted target on [-1,1] x [0,2], sigma2 = 1, rho = 1.  The short
       // t-window makes stage failure common at larger steps, so this chain
       // runs deeper into the small-h, deep-loop regime.
        const StandardBody band =
            StandardBody::box(vec2(1.0, 1.0), vec2(0.0, 1.0));
        const TiltedTarget target(band, 1.0, 1.0);
        const TruncatedNormal x_law{0.0, 1.0, -1.0, 1.0};
        const TruncatedExponential t_law{1.0, 0.0, 2.0};
        Grid2D grid = Grid2D::from_density(
            -1.0, 1.0, 0.0, 2.0, 512, 512,
            [](double x, double t) { return std::exp(-0.5 * x * x - t); });
        grid.normalize();
        SamplerConfig ann_cfg;
        ann_cfg.h = 0.05;
        ann_cfg.tau = 4096;
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1005, rep);
            ChainState st;
            st.x = vec2(x_law.quantile(rng.uniform01()), t_law.quantile(rng.uniform01()));
            for (int k = 0; k < kIters; ++k) ps_ann_iterate(st, target, ann_cfg, rng);
            pool[rep] = st.x;
        });
        const double p = stationarity_chi2(pool, grid).min_p;
        os << " ann p=" << p;
        ok = ok && p > 0.01;
    }
    {  // lifted chain for V(x) = |x|: X marginal vs the Laplace quadrature CDF
        const NormPotential abs1(1);
        const LiftedBody lifted(abs1);
        Grid1D grid = Grid1D::from_density(-14.0, 14.0, 1 << 14, [](double x) {
            return std::exp(-std::abs(x));
        });
        grid.normalize();
        std::vector<Vec> pool(kPool);
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(1006, rep);
            ChainState st;
            st.x = lift_start(abs1, vec1(laplace_quantile(rng.uniform01())), rng);
            for (int k = 0; k < kIters; ++k) ps_exp_iterate(st, lifted, cfg, rng);
            pool[rep] = st.x;
        });
        std::vector<Vec> xs(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) xs[i] = vec1(pool[i][0]);
        const double p = stationarity_ks(xs, {grid_cdf_fn(grid)}).min_p;
        os << " exp p=" << p;
        ok = ok && p > 0.01;
    }
    detail = os.str();
    return ok;
}

bool criterion_restart_invariance(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const std::size_t n = 100000;
    const double h = 0.01;  // the intended step-size regime of the restart rule

    auto compare = [&](const char* label, auto&& one_step, int dim) {
        std::vector<Vec> small_tau(n), big_tau(n);
        parallel_for(n, [&](std::size_t rep) {
            Rng rng(2001, rep);
            small_tau[rep] = one_step(2, rng);
        });
        parallel_for(n, [&](std::size_t rep) {
            Rng rng(2002, rep);
            big_tau[rep] = one_step(1000000, rng);
        });
        double min_p = 1.0;
        for (int i = 0; i < dim; ++i)
            min_p = std::min(
                min_p, ks_test_two_sample(coord(small_tau, i), coord(big_tau, i)).p_value);
        os << " " << label << " p=" << min_p;
        ok = ok && min_p > 0.01;
    };

    const StandardBody disk = StandardBody::ball(2, 1.0);
    compare("unif", [&](std::uint64_t tau, Rng& rng) {
        SamplerConfig cfg;
        cfg.h = h;
        cfg.tau = tau;
        ChainState st;
        st.x = vec2(0.0, 0.0);
        ps_unif_iterate(st, disk, cfg, rng);
        return st.x;
    }, 2);

    const StandardBody interval = StandardBody::interval(-1.0, 1.0);
    const GaussTarget gauss(interval, 1.0);
    compare("gauss", [&](std::uint64_t tau, Rng& rng) {
        SamplerConfig cfg;
        cfg.h = h;
        cfg.tau = tau;
        ChainState st;
        st.x = vec1(0.5);
        ps_gauss_iterate(st, gauss, cfg, rng);
        return st.x;
    }, 1);

    const NormPotential abs1(1);
    const LiftedBody lifted(abs1);
    compare("exp", [&](std::uint64_t tau, Rng& rng) {
        SamplerConfig cfg;
        cfg.h = h;
        cfg.tau = tau;
        ChainState st;
        st.x = vec2(0.5, 1.5);
        ps_exp_iterate(st, lifted, cfg, rng);
        return st.x;
    }, 2);

    const StandardBody band = StandardBody::box(vec2(1.0, 1.0), vec2(0.0, 1.0));
    const TiltedTarget ann(band, 1.0, 1.0);
    compare("ann", [&](std::uint64_t tau, Rng& rng) {
        SamplerConfig cfg;
        cfg.h = h;
        cfg.tau = tau;
        ChainState st;
        st.x = vec2(0.0, 0.7);
        ps_ann_iterate(st, ann, cfg, rng);
        return st.x;
    }, 2);

    detail = os.str();
    return ok;
}

bool criterion_backward_law(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const StandardBody interval = StandardBody::interval(-1.0, 1.0);
    const struct {
        double y, h;
    } settings[] = {{0.5, 0.25}, {0.0, 1.0}, {1.5, 0.09}};
    for (const auto& s : settings) {
        const TruncatedNormal law{s.y, s.h, -1.0, 1.0};
        std::vector<double> accepted(kPool);
        std::atomic<std::size_t> filled{0};
        parallel_for(kPool, [&](std::size_t rep) {
            Rng rng(3001 + static_cast<std::uint64_t>(s.y * 100), rep);
            for (;;) {
                const StepOutcome out =
                    backward_step_uniform(interval, vec1(s.y), s.h, 8, rng, nullptr);
                if (out.status == StepStatus::Accepted) {
                    accepted[rep] = out.point[0];
                    filled.fetch_add(1);
                    return;
                }
            }
        });
        const double p =
            ks_test(accepted, [&](double x) { return law.cdf(x); }).p_value;
        os << " (y=" << s.y << ",h=" << s.h << ") p=" << p;
        ok = ok && p > 0.01;
    }
    detail = os.str();
    return ok;
}

bool criterion_budget(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const std::size_t budget_iters = 30000;
    const double z99 = 2.3263478740408408;

    auto check = [&](const char* label, const DerivedParams& params,
                     auto&& make_state, auto&& iterate) {
        const SamplerConfig cfg = config_from_params(params);
        std::vector<double> trials;
        trials.reserve(budget_iters);
        std::size_t rep = 0;
        while (trials.size() < budget_iters) {
            Rng rng(4001, rep++);
            ChainState st = make_state(rng);
            for (std::uint64_t k = 0;
                 k < params.n_iters && trials.size() < budget_iters; ++k) {
                const auto before = st.ledger.proposals_drawn;
                iterate(st, cfg, rng);
                trials.push_back(static_cast<double>(st.ledger.proposals_drawn - before));
            }
        }
        const MeanVar mv = mean_var(trials);
        const double bound = 2.0 * static_cast<double>(params.tau) + z99 * mv.stderr_mean();
        os << " " << label << " mean=" << mv.mean << "<=2tau=" << 2 * params.tau;
        ok = ok && mv.mean <= bound;
    };

    const StandardBody box = StandardBody::box(Vec::Constant(2, 1.0));
    check("unif", derive_params_unif(2, 1.0, 2.0, 1.0 / 3.0, 0.5),
          [&](Rng& rng) {
              ChainState st;
              st.x = sample_uniform(box, rng);
              return st;
          },
          [&](ChainState& st, const SamplerConfig& cfg, Rng& rng) {
              ps_unif_iterate(st, box, cfg, rng);
          });

    const StandardBody interval = StandardBody::interval(-1.0, 1.0);
    const GaussTarget gauss(interval, 1.0);
    const TruncatedNormal trunc_norm{0.0, 1.0, -1.0, 1.0};
    check("gauss", derive_params_gauss(1, 1.0, 1.0, 2.0, 2.0, 0.5),
          [&](Rng& rng) {
              ChainState st;
              st.x = vec1(trunc_norm.quantile(rng.uniform01()));
              return st;
          },
          [&](ChainState& st, const SamplerConfig& cfg, Rng& rng) {
              ps_gauss_iterate(st, gauss, cfg, rng);
          });

    const NormPotential abs1(1);
    const LiftedBody lifted(abs1);
    check("exp", derive_params_exp(1, 1.0, 2.0, 2.0, 0.5),
          [&](Rng& rng) {
              ChainState st;
              st.x = lift_start(abs1, vec1(laplace_quantile(rng.uniform01())), rng);
              return st;
          },
          [&](ChainState& st, const SamplerConfig& cfg, Rng& rng) {
              ps_exp_iterate(st, lifted, cfg, rng);
          });

    const StandardBody band = StandardBody::box(vec2(1.0, 1.0), vec2(0.0, 1.0));
    const TiltedTarget ann(band, 1.0, 1.0);
    const TruncatedExponential t_law{1.0, 0.0, 2.0};
    check("ann", derive_params_ann(1, 1.0, 1.0, 2.0, 2.0, 0.5),
          [&](Rng& rng) {
              ChainState st;
              st.x = vec2(trunc_norm.quantile(rng.uniform01()),
                          t_law.quantile(rng.uniform01()));
              return st;
          },
          [&](ChainState& st, const SamplerConfig& cfg, Rng& rng) {
              ps_ann_iterate(st, ann, cfg, rng);
          });

    detail = os.str();
    return ok;
}

bool criterion_sdpi(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    Grid1D target = Grid1D::from_density(-1.0, 1.0, 1 << 14, [](double) { return 1.0; });
    Grid1D warm = Grid1D::from_density(-1.0, 1.0, 1 << 14,
                                       [](double x) { return x <= 0.0 ? 1.0 : 0.0; });
    target.normalize();
    warm.normalize();
    const double c_pi = 4.0 / (M_PI * M_PI);
    for (double q : {2.0, 3.0}) {
        const CheckReport grid_rep =
            check_sdpi_chiq(target, c_pi, warm, q, {0.1, 0.5, 1.0}, 1e-6);
        const CheckReport gauss_rep =
            check_sdpi_chiq_gaussian(0.5, 1.0, q, {0.1, 0.5, 1.0}, 1e-6);
        ok = ok && grid_rep.all_pass() && gauss_rep.all_pass();
        for (const auto& row : grid_rep.rows)
            os << " [" << row.parameters << " ratio=" << row.measured
               << " bound=" << row.bound << "]";
    }
    detail = os.str();
    return ok;
}

bool criterion_hypercontractivity(std::string& detail) {
    bool ok = true;
    double worst_gap = 0.0;
    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0})
        for (double m : {0.25, 0.5, 1.0}) {
            const CheckReport rep =
                check_hypercontractivity(p, 1.0, m, {0.0, 0.25, 0.5, 1.0, 2.0}, 1e-9);
            ok = ok && rep.all_pass();
            // t = 0 must be an equality to 1e-9.
            const double gap = std::abs(rep.rows[0].measured - rep.rows[0].bound);
            worst_gap = std::max(worst_gap, gap);
            ok = ok && gap <= 1e-9;
        }
    std::ostringstream os;
    os << " 75 cases, worst t=0 equality gap " << worst_gap;
    detail = os.str();
    return ok;
}

bool criterion_lifting_marginal(std::string& detail) {
    const NormPotential abs1(1);
    const LiftedBody lifted(abs1);
    SamplerConfig cfg;
    cfg.h = 0.25;
    cfg.tau = 64;
    std::vector<double> xs(kPool);
    parallel_for(kPool, [&](std::size_t rep) {
        Rng rng(7001, rep);
        ChainState st;
        st.x = lift_start(abs1, vec1(laplace_quantile(rng.uniform01())), rng);
        for (int k = 0; k < kIters; ++k) ps_exp_iterate(st, lifted, cfg, rng);
        xs[rep] = st.x[0];
    });
    const double p = ks_test(xs, laplace_cdf).p_value;
    std::ostringstream os;
    os << " X-marginal vs Laplace p=" << p;
    detail = os.str();
    return p > 0.01;
}

bool criterion_closeness(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (double q : {2.0, 3.0}) {
        const CheckReport rep =
            check_gauss_closeness(q, {0.1, 0.5, 1.0}, {0.05, 0.1, 0.2}, 1e-6);
        ok = ok && rep.all_pass();
        double worst = 0.0;
        for (const auto& row : rep.rows) worst = std::max(worst, row.measured / row.bound);
        os << " q=" << q << " worst measured/bound=" << worst;
    }
    detail = os.str();
    return ok;
}

bool criterion_early_stopping(std::string& detail) {
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(0.05 + 0.08 * i);
    const EarlyStopReport rep =
        check_early_stopping(2.0, std::sqrt(1.0 / 3.0), 1.0 / 3.0, grid);
    std::ostringstream os;
    os << " monotone=" << (rep.monotone ? "yes" : "no")
       << "; renyi2 at threshold sigma2=" << rep.threshold << " is "
       << rep.value_at_threshold << " (reported)";
    detail = os.str();
    return rep.monotone;
}

bool criterion_warmstart(std::string& detail) {
    const StandardBody box = StandardBody::box(Vec::Constant(2, 1.0));
    const BodyStats stats = body_stats(box);
    const double r = std::sqrt(stats.r2);
    const AnnealSchedule sched = build_uniform_schedule(r, stats.lambda, 2, 2.0);

    const std::size_t replicas = 10000;
    std::vector<Vec> finals(replicas);
    std::vector<std::size_t> lengths(replicas);
    parallel_for(replicas, [&](std::size_t rep) {
        Rng rng(9001, rep);
        const WarmStartReport report =
            run_uniform_warmstart(box, r, stats.lambda, 2, 2.0, Constants{}, rng);
        finals[rep] = report.final_sample;
        lengths[rep] = report.schedule_length;
    });

    bool lengths_ok = true;
    for (std::size_t rep = 0; rep < replicas; ++rep)
        lengths_ok = lengths_ok && lengths[rep] == sched.entries.size();

    std::vector<long long> quadrants(4, 0);
    for (const Vec& v : finals)
        quadrants[2 * (v[0] >= 0 ? 1 : 0) + (v[1] >= 0 ? 1 : 0)] += 1;
    const ChiSquareResult res = chi_square_test(quadrants, std::vector<double>(4, 0.25));

    std::ostringstream os;
    os << " quadrant chi2 p=" << res.p_value << "; schedule length "
       << sched.entries.size() << (lengths_ok ? " (exact match)" : " (MISMATCH)");
    detail = os.str();
    return res.p_value > 0.01 && lengths_ok;
}

bool criterion_decay(std::string& detail) {
    const StandardBody interval = StandardBody::interval(-1.0, 1.0);
    Rng rng(11001);
    const DecaySeries series =
        chi_sq_decay_curve(interval, 0.0, 1.0, 0.05, 64, 10, 1000000, 64, rng, 0.2);
    std::ostringstream os;
    os << " chi2 " << series.chi2.front() << " -> " << series.chi2.back()
       << " over 10 iterations; non-increasing=" << (series.non_increasing ? "yes" : "no")
       << " rate-bound=" << (series.rate_bound_ok ? "yes" : "no");
    detail = os.str();
    return series.non_increasing && series.rate_bound_ok;
}

bool criterion_determinism(std::string& detail) {
    const char* kConfig =
        "command = sample-uniform\n"
        "q = 2\n"
        "eps = 0.5\n"
        "seed = 7\n"
        "replicas = 64\n"
        "body.kind = box\n"
        "body.halfwidths = 1 1\n";
    RunConfig a = parse_run_config(kConfig);
    RunConfig b = parse_run_config(kConfig);
    const bool sample_ok = csv_determinism_payload(run(a).csv) ==
                           csv_determinism_payload(run(b).csv);

    const char* kWarm =
        "command = warm-start-uniform\n"
        "q = 2\n"
        "seed = 13\n"
        "replicas = 16\n"
        "body.kind = box\n"
        "body.halfwidths = 1 1\n";
    RunConfig c = parse_run_config(kWarm);
    RunConfig d = parse_run_config(kWarm);
    const bool warm_ok = csv_determinism_payload(run(c).csv) ==
                         csv_determinism_payload(run(d).csv);

    const char* kDiag =
        "command = diagnose\n"
        "seed = 5\n"
        "diagnose.suite = hyper,closeness,early-stop\n";
    RunConfig e = parse_run_config(kDiag);
    RunConfig f = parse_run_config(kDiag);
    const bool diag_ok = run(e).csv == run(f).csv;

    std::ostringstream os;
    os << " sample=" << (sample_ok ? "ok" : "DIFF") << " warm-start="
       << (warm_ok ? "ok" : "DIFF") << " diagnose=" << (diag_ok ? "ok" : "DIFF");
    detail = os.str();
    return sample_ok && warm_ok && diag_ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {1, "stationarity suite (KS/chi2 vs quadrature targets, p > 0.01)",
         &criterion_stationarity},
        {2, "restart invariance (tau = 2 vs 10^6, two-sample KS p > 0.01)",
         &criterion_restart_invariance},
        {3, "backward-step law (accepted draws vs truncated-normal oracle)",
         &criterion_backward_law},
        {4, "query budget (mean trials <= 2 tau at 99% one-sided)",
         &criterion_budget},
        {5, "sdpi contraction (flowed chi^q ratio <= (1+t/C_PI)^{-2/q} + 1e-6)",
         &criterion_sdpi},
        {6, "hypercontractive order growth (gaussian closed form, 5x5x3 grid)",
         &criterion_hypercontractivity},
        {7, "exponential-lifting marginal (V = |x|, KS vs Laplace, p > 0.01)",
         &criterion_lifting_marginal},
        {8, "annealing closeness (renyi <= q^2 a^2 R^2 / (2 s^2) + 1e-6)",
         &criterion_closeness},
        {9, "early stopping (renyi-2 monotone in sigma2; threshold value reported)",
         &criterion_early_stopping},
        {10, "end-to-end warm start (quadrant chi2 p > 0.01; schedule length exact)",
         &criterion_warmstart},
        {11, "chi2 decay (non-increasing; within (1+h/C_PI)^{-k} x 1.2)",
         &criterion_decay},
        {12, "determinism (CSV payloads reproduce bit-identically)",
         &criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = criterion.run(detail);
        } catch (const std::exception& err) {
            detail = std::string(" exception: ") + err.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] %2d. %s (%.1f s)%s\n", pass ? "PASS" : "FAIL", criterion.id,
                    criterion.name, secs, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
