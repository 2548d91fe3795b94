#include "proxsamp/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "proxsamp/diagnostics.hpp"
#include "proxsamp/stats.hpp"

namespace proxsamp {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_coord(double v) { return fmt(v, "%.8g"); }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

unsigned worker_count(std::uint64_t replicas) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("PROXSAMP_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) workers = static_cast<unsigned>(parsed);
    }
    if (workers == 0) workers = 1;
    return static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(replicas, 1)));
}

template <typename Fn>
void parallel_replicas(std::uint64_t replicas, Fn&& fn) {
    const unsigned workers = worker_count(replicas);
    if (workers <= 1) {
        for (std::uint64_t r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t r = next.fetch_add(1);
                if (r >= replicas) return;
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct Geometry {
    int dim = 0;
    double r = 0.0;
    double lambda = 0.0;
};

Geometry resolve_geometry(const RunConfig& cfg) {
    Geometry g;
    if (cfg.body) {
        g.dim = cfg.body->dim();
        if (cfg.r > 0 && cfg.lambda > 0) {
            g.r = cfg.r;
            g.lambda = cfg.lambda;
            return g;
        }
        try {
            const BodyStats stats = body_stats(*cfg.body);
            g.r = cfg.r > 0 ? cfg.r : std::sqrt(stats.r2);
            g.lambda = cfg.lambda > 0 ? cfg.lambda : stats.lambda;
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(
                "config: keys 'r' and 'lambda' are required for bodies without "
                "closed-form moments");
        }
        return g;
    }
    if (cfg.potential) {
        g.dim = cfg.potential->dim();
        if (!(cfg.lambda > 0))
            throw std::runtime_error(
                "config: key 'lambda' is required for log-concave commands");
        if (!(cfg.r > 0) && (cfg.command == "warm-start-logconcave"))
            throw std::runtime_error(
                "config: key 'r' is required for warm-start-logconcave");
        g.r = cfg.r;
        g.lambda = cfg.lambda;
        return g;
    }
    throw std::runtime_error("config: command needs a body or potential section");
}

Vec uniform_start(const StandardBody& body, Rng& rng, QueryLedger* ledger) {
    switch (body.kind()) {
        case StandardBody::Kind::Ball:
        case StandardBody::Kind::Box:
        case StandardBody::Kind::Interval:
            return sample_uniform(body, rng);
        default: {
            Vec x = body.translation();
            if (!body.contains(x, ledger))
                throw std::runtime_error("start point (translation) lies outside the body");
            return x;
        }
    }
}

std::string config_echo_comments(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# proxsamp csv v1\n";
    os << "# command=" << cfg.command << "\n";
    os << "# seed=" << cfg.seed << "\n";
    os << "# replicas=" << cfg.replicas << "\n";
    os << "# q=" << fmt(cfg.q, "%.8g") << " q0=" << fmt(cfg.q0, "%.8g")
       << " eps=" << fmt(cfg.eps, "%.8g")
       << " warmness=" << fmt(cfg.warmness, "%.8g") << "\n";
    os << "# constants c_h=" << fmt(cfg.constants.c_h, "%.8g")
       << " c_tau=" << fmt(cfg.constants.c_tau, "%.8g")
       << " c_n=" << fmt(cfg.constants.c_n, "%.8g")
       << " c_stop=" << fmt(cfg.constants.c_stop, "%.8g")
       << " c_close=" << fmt(cfg.constants.c_close, "%.8g") << "\n";
    return os.str();
}

struct ReplicaRow {
    std::string text;
    QueryLedger ledger;
};

std::string sample_header(int coords, bool with_t) {
    std::string h = "replica";
    for (int i = 0; i < coords; ++i) h += ",x" + std::to_string(i);
    if (with_t) h += ",t";
    h += ",iterations,membership_calls,evaluation_calls,proposals_drawn,restarts,wall_ms";
    return h;
}

std::string ledger_fields(const ChainState& state) {
    std::ostringstream os;
    os << state.iteration << "," << state.ledger.membership_calls << ","
       << state.ledger.evaluation_calls << "," << state.ledger.proposals_drawn
       << "," << state.ledger.restarts;
    return os.str();
}

void append_summary(std::ostringstream& csv, const std::vector<ReplicaRow>& rows) {
    QueryLedger total;
    for (const auto& row : rows) total.merge(row.ledger);
    csv << "summary,total_membership=" << total.membership_calls
        << ",total_evaluation=" << total.evaluation_calls
        << ",total_proposals=" << total.proposals_drawn
        << ",total_restarts=" << total.restarts
        << ",total_iterations=" << total.iterations_completed;
    if (total.iterations_completed > 0)
        csv << ",mean_trials_per_iter="
            << fmt(static_cast<double>(total.proposals_drawn) /
                   static_cast<double>(total.iterations_completed));
    csv << "\n";
}

// ---------------------------------------------------------------------------
// sample-uniform / sample-logconcave

RunResult run_sample(RunConfig& cfg) {
    const Geometry geom = resolve_geometry(cfg);
    const bool lifted_cmd = cfg.command == "sample-logconcave";

    DerivedParams params;
    if (lifted_cmd)
        params = derive_params_exp(geom.dim, cfg.warmness, cfg.q, geom.lambda,
                                   cfg.eps, cfg.constants);
    else
        params = derive_params_unif(geom.dim, cfg.warmness, cfg.q, geom.lambda,
                                    cfg.eps, cfg.constants);
    const std::uint64_t n_iters =
        cfg.iterations_override ? cfg.iterations_override : params.n_iters;

    std::ostringstream echo;
    echo_derived_params(cfg, echo);

    RunResult result;
    result.echo = echo.str();
    if (cfg.dry_run) {
        result.csv = config_echo_comments(cfg) + "# dry-run\n";
        return result;
    }

    SamplerConfig scfg = config_from_params(params, cfg.constants, cfg.seed);
    std::vector<ReplicaRow> rows(cfg.replicas);
    parallel_replicas(cfg.replicas, [&](std::uint64_t rep) {
        const auto start_time = std::chrono::steady_clock::now();
        Rng rng(cfg.seed, rep);
        ChainState state;
        if (lifted_cmd) {
            Vec x0 = Vec::Zero(geom.dim);
            state.x = lift_start(*cfg.potential, x0, rng, &state.ledger);
            const LiftedBody lifted(*cfg.potential);
            for (std::uint64_t k = 0; k < n_iters; ++k)
                ps_exp_iterate(state, lifted, scfg, rng);
        } else {
            state.x = uniform_start(*cfg.body, rng, &state.ledger);
            for (std::uint64_t k = 0; k < n_iters; ++k)
                ps_unif_iterate(state, *cfg.body, scfg, rng);
        }
        std::ostringstream line;
        line << rep;
        for (Eigen::Index i = 0; i < state.x.size(); ++i)
            line << "," << fmt_coord(state.x[i]);
        line << "," << ledger_fields(state) << "," << fmt(elapsed_ms(start_time), "%.3f");
        rows[rep] = {line.str(), state.ledger};
    });

    std::ostringstream csv;
    csv << config_echo_comments(cfg);
    csv << sample_header(geom.dim, lifted_cmd) << "\n";
    for (const auto& row : rows) {
        csv << row.text << "\n";
        result.total_ledger.merge(row.ledger);
    }
    append_summary(csv, rows);
    result.csv = csv.str();
    return result;
}

// ---------------------------------------------------------------------------
// warm-start commands

RunResult run_warmstart(RunConfig& cfg) {
    const Geometry geom = resolve_geometry(cfg);
    const bool lifted_cmd = cfg.command == "warm-start-logconcave";

    std::ostringstream echo;
    echo_derived_params(cfg, echo);

    RunResult result;
    result.echo = echo.str();
    if (cfg.dry_run) {
        result.csv = config_echo_comments(cfg) + "# dry-run\n";
        return result;
    }

    std::vector<ReplicaRow> rows(cfg.replicas);
    std::vector<std::size_t> schedule_lengths(cfg.replicas);
    parallel_replicas(cfg.replicas, [&](std::uint64_t rep) {
        const auto start_time = std::chrono::steady_clock::now();
        Rng rng(cfg.seed, rep);
        WarmStartReport report =
            lifted_cmd ? run_logconcave_warmstart(*cfg.potential, geom.r,
                                                  geom.lambda, geom.dim, cfg.q,
                                                  cfg.constants, rng)
                       : run_uniform_warmstart(*cfg.body, geom.r, geom.lambda,
                                               geom.dim, cfg.q, cfg.constants, rng);
        std::ostringstream line;
        line << rep;
        for (Eigen::Index i = 0; i < report.final_sample.size(); ++i)
            line << "," << fmt_coord(report.final_sample[i]);
        line << "," << report.schedule_length << ","
             << report.total.membership_calls << ","
             << report.total.evaluation_calls << "," << report.total.proposals_drawn
             << "," << report.total.restarts << ","
             << fmt(elapsed_ms(start_time), "%.3f");
        schedule_lengths[rep] = report.schedule_length;
        rows[rep] = {line.str(), report.total};
    });

    std::ostringstream csv;
    csv << config_echo_comments(cfg);
    csv << "replica";
    const int coords = lifted_cmd ? geom.dim + 1 : geom.dim;
    for (int i = 0; i < coords; ++i) csv << ",x" << i;
    csv << ",schedule_length,membership_calls,evaluation_calls,proposals_drawn,"
           "restarts,wall_ms\n";
    for (const auto& row : rows) {
        csv << row.text << "\n";
        result.total_ledger.merge(row.ledger);
    }
    append_summary(csv, rows);
    result.csv = csv.str();
    return result;
}

// ---------------------------------------------------------------------------
// diagnose

struct DiagnoseSizes {
    std::size_t n_stationarity = 20000;
    int iters_stationarity = 20;
    std::size_t n_concentration = 200000;
    std::size_t n_decay_chains = 200000;
    int k_decay = 10;
    std::size_t budget_replicas = 400;
};

bool suite_enabled(const std::string& suite, const std::string& name) {
    if (suite == "all") return true;
    return suite.find(name) != std::string::npos;
}

void run_budget_checks(std::vector<CheckRow>& rows, std::uint64_t seed,
                       const Constants& constants, std::size_t replicas) {
    // Warm starts throughout, so the floored warmness 1 drives all parameters.
    const StandardBody box2 = StandardBody::box(Vec::Constant(2, 1.0));
    const StandardBody interval = StandardBody::interval(-1.0, 1.0);
    const StandardBody band = StandardBody::box(
        (Vec(2) << 1.0, 1.0).finished(), (Vec(2) << 0.0, 1.0).finished());
    const NormPotential abs_potential(1);
    const LiftedBody lifted(abs_potential);

    auto collect = [&](auto&& make_state, auto&& iterate, std::uint64_t n_iters,
                       std::uint64_t tau, const std::string& label) {
        std::vector<double> trials;
        for (std::size_t rep = 0; rep < replicas; ++rep) {
            Rng rng(seed, 7000 + rep);
            ChainState state = make_state(rng);
            for (std::uint64_t k = 0; k < n_iters; ++k) {
                const std::uint64_t before = state.ledger.proposals_drawn;
                iterate(state, rng);
                trials.push_back(
                    static_cast<double>(state.ledger.proposals_drawn - before));
            }
        }
        rows.push_back(check_budget(tau, trials, label));
    };

    {
        const DerivedParams p = derive_params_unif(2, 1.0, 2.0, 1.0 / 3.0, 0.5, constants);
        const SamplerConfig cfg = config_from_params(p, constants);
        collect(
            [&](Rng& rng) {
                ChainState st;
                st.x = sample_uniform(box2, rng);
                return st;
            },
            [&](ChainState& st, Rng& rng) { ps_unif_iterate(st, box2, cfg, rng); },
            p.n_iters, p.tau, "ps_unif");
    }
    {
        const DerivedParams p = derive_params_gauss(1, 1.0, 1.0, 2.0, 2.0, 0.5, constants);
        const SamplerConfig cfg = config_from_params(p, constants);
        const GaussTarget target(interval, 1.0);
        const TruncatedNormal exact{0.0, 1.0, -1.0, 1.0};
        collect(
            [&](Rng& rng) {
                ChainState st;
                st.x = Vec::Constant(1, exact.quantile(rng.uniform01()));
                return st;
            },
            [&](ChainState& st, Rng& rng) { ps_gauss_iterate(st, target, cfg, rng); },
            p.n_iters, p.tau, "ps_gauss");
    }
    {
        const DerivedParams p = derive_params_exp(1, 1.0, 2.0, 2.0, 0.5, constants);
        const SamplerConfig cfg = config_from_params(p, constants);
        collect(
            [&](Rng& rng) {
                ChainState st;
                Vec x(1);
                x[0] = laplace_quantile(rng.uniform01());
                st.x = lift_start(abs_potential, x, rng, &st.ledger);
                return st;
            },
            [&](ChainState& st, Rng& rng) { ps_exp_iterate(st, lifted, cfg, rng); },
            p.n_iters, p.tau, "ps_exp");
    }
    {
        const DerivedParams p = derive_params_ann(1, 1.0, 1.0, 2.0, 2.0, 0.5, constants);
        const SamplerConfig cfg = config_from_params(p, constants);
        const TiltedTarget target(band, 1.0, 1.0);
        const TruncatedNormal x_law{0.0, 1.0, -1.0, 1.0};
        const TruncatedExponential t_law{1.0, 0.0, 2.0};
        collect(
            [&](Rng& rng) {
                ChainState st;
                Vec v(2);
                v[0] = x_law.quantile(rng.uniform01());
                v[1] = t_law.quantile(rng.uniform01());
                st.x = v;
                return st;
            },
            [&](ChainState& st, Rng& rng) { ps_ann_iterate(st, target, cfg, rng); },
            p.n_iters, p.tau, "ps_ann");
    }
}

void run_stationarity_checks(std::vector<CheckRow>& rows, std::uint64_t seed,
                             const DiagnoseSizes& sizes) {
    auto add_row = [&](const std::string& label, double p) {
        CheckRow row;
        row.check_id = "stationarity:" + label;
        row.claim = "stationary-target-preserved";
        row.parameters = "n=" + std::to_string(sizes.n_stationarity) +
                         ";iters=" + std::to_string(sizes.iters_stationarity);
        row.measured = p;
        row.bound = 0.01;
        row.pass = p > 0.01;
        rows.push_back(row);
    };

    SamplerConfig cfg;
    cfg.h = 0.25;
    cfg.tau = 64;

    {  // uniform chain on the interval, KS against the exact CDF
        const StandardBody interval = StandardBody::interval(-1.0, 1.0);
        std::vector<Vec> pool(sizes.n_stationarity);
        parallel_replicas(sizes.n_stationarity, [&](std::uint64_t rep) {
            Rng rng(seed, 100000 + rep);
            ChainState st;
            st.x = sample_uniform(interval, rng);
            for (int k = 0; k < sizes.iters_stationarity; ++k)
                ps_unif_iterate(st, interval, cfg, rng);
            pool[rep] = st.x;
        });
        const auto report = stationarity_ks(
            pool, {[](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); }});
        add_row("ps_unif-interval", report.min_p);
    }
    {  // truncated-Gaussian chain, KS against the quadrature CDF
        const StandardBody interval = StandardBody::interval(-1.0, 1.0);
        const GaussTarget target(interval, 1.0);
        const TruncatedNormal exact{0.0, 1.0, -1.0, 1.0};
        Grid1D grid = Grid1D::from_density(-1.0, 1.0, 1 << 14, [](double x) {
            return std::exp(-0.5 * x * x);
        });
        grid.normalize();
        const auto cdf_values = grid.cdf();
        auto grid_cdf = [grid, cdf_values](double x) {
            if (x <= grid.lo()) return 0.0;
            if (x >= grid.hi()) return 1.0;
            const int i = std::min(grid.n() - 1,
                                   static_cast<int>((x - grid.lo()) / grid.dx()));
            const double left = i == 0 ? 0.0 : cdf_values[i - 1];
            const double frac = (x - (grid.lo() + i * grid.dx())) / grid.dx();
            return left + frac * (cdf_values[i] - left);
        };
        std::vector<Vec> pool(sizes.n_stationarity);
        parallel_replicas(sizes.n_stationarity, [&](std::uint64_t rep) {
            Rng rng(seed, 200000 + rep);
            ChainState st;
            st.x = Vec::Constant(1, exact.quantile(rng.uniform01()));
            for (int k = 0; k < sizes.iters_stationarity; ++k)
                ps_gauss_iterate(st, target, cfg, rng);
            pool[rep] = st.x;
        });
        add_row("ps_gauss-trunc-normal", stationarity_ks(pool, {grid_cdf}).min_p);
    }
    {  // lifted exponential chain for V = |x|, KS of the X marginal vs Laplace
        const NormPotential potential(1);
        const LiftedBody lifted(potential);
        std::vector<Vec> pool(sizes.n_stationarity);
        parallel_replicas(sizes.n_stationarity, [&](std::uint64_t rep) {
            Rng rng(seed, 300000 + rep);
            ChainState st;
            Vec x(1);
            x[0] = laplace_quantile(rng.uniform01());
            st.x = lift_start(potential, x, rng, &st.ledger);
            for (int k = 0; k < sizes.iters_stationarity; ++k)
                ps_exp_iterate(st, lifted, cfg, rng);
            pool[rep] = st.x;
        });
        add_row("ps_exp-laplace-marginal",
                stationarity_ks(pool, {laplace_cdf}).min_p);
    }
    {  // tilted chain on [-1,1] x [0,2], chi-square against the 2-D quadrature
        const StandardBody band = StandardBody::box(
            (Vec(2) << 1.0, 1.0).finished(), (Vec(2) << 0.0, 1.0).finished());
        const TiltedTarget target(band, 1.0, 1.0);
        const TruncatedNormal x_law{0.0, 1.0, -1.0, 1.0};
        const TruncatedExponential t_law{1.0, 0.0, 2.0};
        Grid2D grid = Grid2D::from_density(
            -1.0, 1.0, 0.0, 2.0, 256, 256,
            [](double x, double t) { return std::exp(-0.5 * x * x - t); });
        grid.normalize();
        SamplerConfig ann_cfg;  // narrow t-window: stay in the rare-restart regime
        ann_cfg.h = 0.05;
        ann_cfg.tau = 4096;
        std::vector<Vec> pool(sizes.n_stationarity);
        parallel_replicas(sizes.n_stationarity, [&](std::uint64_t rep) {
            Rng rng(seed, 400000 + rep);
            ChainState st;
            Vec v(2);
            v[0] = x_law.quantile(rng.uniform01());
            v[1] = t_law.quantile(rng.uniform01());
            st.x = v;
            for (int k = 0; k < sizes.iters_stationarity; ++k)
                ps_ann_iterate(st, target, ann_cfg, rng);
            pool[rep] = st.x;
        });
        add_row("ps_ann-tilted-band", stationarity_chi2(pool, grid).min_p);
    }
}

RunResult run_diagnose(RunConfig& cfg, const DiagnoseSizes& sizes) {
    std::vector<CheckRow> rows;
    const std::string& suite = cfg.diagnose_suite;
    Rng rng(cfg.seed, 1);

    if (suite_enabled(suite, "sdpi")) {
        Grid1D target = Grid1D::from_density(-1.0, 1.0, 1 << 14,
                                             [](double) { return 0.5; });
        Grid1D warm = Grid1D::from_density(-1.0, 1.0, 1 << 14, [](double x) {
            return x <= 0.0 ? 1.0 : 0.0;
        });
        target.normalize();
        warm.normalize();
        const double c_pi = 4.0 / (M_PI * M_PI);
        for (double q : {2.0, 3.0}) {
            auto rep = check_sdpi_chiq(target, c_pi, warm, q, {0.1, 0.5, 1.0});
            rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
            auto gauss = check_sdpi_chiq_gaussian(0.5, 1.0, q, {0.1, 0.5, 1.0});
            rows.insert(rows.end(), gauss.rows.begin(), gauss.rows.end());
        }
    }
    if (suite_enabled(suite, "hyper")) {
        for (double p : {1.25, 1.5, 2.0, 3.0, 4.0})
            for (double m : {0.25, 0.5, 1.0}) {
                auto rep = check_hypercontractivity(p, 1.0, m, {0.0, 0.25, 0.5, 1.0, 2.0});
                rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
            }
    }
    if (suite_enabled(suite, "concentration")) {
        const StandardBody box2 = StandardBody::box(Vec::Constant(2, 1.0));
        rows.push_back(check_concentration_uniform(box2, 1e-4, 10.0, 10000, rng));
        rows.push_back(
            check_concentration_uniform(box2, 1.0 / 64.0, 0.5, sizes.n_concentration, rng));
    }
    if (suite_enabled(suite, "budget"))
        run_budget_checks(rows, cfg.seed, cfg.constants, sizes.budget_replicas);
    if (suite_enabled(suite, "stationarity"))
        run_stationarity_checks(rows, cfg.seed, sizes);
    if (suite_enabled(suite, "closeness")) {
        for (double q : {2.0, 3.0}) {
            auto rep = check_gauss_closeness(q, {0.1, 0.5, 1.0}, {0.05, 0.1, 0.2});
            rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
        }
    }
    if (suite_enabled(suite, "early-stop")) {
        std::vector<double> grid;
        for (int i = 0; i < 10; ++i) grid.push_back(0.05 + 0.08 * i);
        const auto rep = check_early_stopping(2.0, std::sqrt(1.0 / 3.0), 1.0 / 3.0, grid);
        CheckRow mono;
        mono.check_id = "early-stop-monotone";
        mono.claim = "renyi2-decreasing-in-sigma2";
        mono.parameters = "points=10";
        mono.measured = rep.renyi2.front();
        mono.bound = rep.renyi2.back();
        mono.pass = rep.monotone;
        rows.push_back(mono);
        CheckRow at;
        at.check_id = "early-stop-threshold-value";
        at.claim = "renyi2-at-threshold";
        at.parameters = "sigma2=" + fmt(rep.threshold, "%.8g") + ";informational=1";
        at.measured = rep.value_at_threshold;
        at.bound = rep.value_at_threshold;
        at.pass = true;
        rows.push_back(at);
    }
    if (suite_enabled(suite, "decay")) {
        const StandardBody interval = StandardBody::interval(-1.0, 1.0);
        Rng decay_rng(cfg.seed, 2);
        const DecaySeries series =
            chi_sq_decay_curve(interval, 0.0, 1.0, 0.05, 64, sizes.k_decay,
                               sizes.n_decay_chains, 64, decay_rng);
        CheckRow mono;
        mono.check_id = "chi2-decay-monotone";
        mono.claim = "per-step-chi2-contraction";
        mono.parameters = "h=0.05;k_max=" + std::to_string(sizes.k_decay) +
                          ";bias=" + fmt(series.plugin_bias, "%.8g");
        mono.measured = series.chi2.back();
        mono.bound = series.chi2.front();
        mono.pass = series.non_increasing;
        rows.push_back(mono);
        CheckRow rate;
        rate.check_id = "chi2-decay-rate";
        rate.claim = "chi2-rate-bound";
        rate.parameters = "eta=" + fmt(1.0 / (1.0 + series.h / series.c_pi), "%.8g");
        rate.measured = series.chi2.back();
        rate.bound = std::pow(1.0 / (1.0 + series.h / series.c_pi), sizes.k_decay) *
                     series.chi2.front() * 1.2;
        rate.pass = series.rate_bound_ok;
        rows.push_back(rate);
    }

    std::ostringstream csv;
    csv << config_echo_comments(cfg);
    csv << check_csv_header() << "\n";
    bool all_pass = true;
    for (const auto& row : rows) {
        csv << to_csv(row) << "\n";
        all_pass = all_pass && row.pass;
    }

    RunResult result;
    result.csv = csv.str();
    std::ostringstream echo;
    echo << "diagnose: " << rows.size() << " checks, "
         << (all_pass ? "all passed" : "FAILURES present") << "\n";
    result.echo = echo.str();
    result.exit_code = all_pass ? 0 : 2;
    return result;
}

}  // namespace

// ---------------------------------------------------------------------------

namespace {

RunConfig run_config_from_kv(KeyValueConfig kv) {
    RunConfig cfg;
    cfg.command = kv.get_string("command");
    const bool known_command =
        cfg.command == "sample-uniform" || cfg.command == "sample-logconcave" ||
        cfg.command == "warm-start-uniform" ||
        cfg.command == "warm-start-logconcave" || cfg.command == "diagnose";
    if (!known_command)
        throw std::runtime_error("config: unknown command '" + cfg.command + "'");

    if (kv.has("body.kind")) cfg.body = make_body(kv, "body.");
    if (kv.has("potential.kind")) cfg.potential = make_potential(kv, "potential.");

    const bool needs_body =
        cfg.command == "sample-uniform" || cfg.command == "warm-start-uniform";
    const bool needs_potential = cfg.command == "sample-logconcave" ||
                                 cfg.command == "warm-start-logconcave";
    if (needs_body && !cfg.body)
        throw std::runtime_error("config: missing required key 'body.kind'");
    if (needs_potential && !cfg.potential)
        throw std::runtime_error("config: missing required key 'potential.kind'");

    if (cfg.command != "diagnose") {
        cfg.q = kv.get_double("q");  // every sampling command needs the order
    }
    cfg.q0 = kv.get_double_or("q0", 2.0);
    cfg.eps = kv.get_double_or("eps", 0.5);
    cfg.warmness = kv.get_double_or("warmness", 1.0);
    cfg.r = kv.get_double_or("r", 0.0);
    cfg.lambda = kv.get_double_or("lambda", 0.0);
    cfg.constants.c_h = kv.get_double_or("constants.c_h", 1.0);
    cfg.constants.c_tau = kv.get_double_or("constants.c_tau", 1.0);
    cfg.constants.c_n = kv.get_double_or("constants.c_n", 1.0);
    cfg.constants.c_stop = kv.get_double_or("constants.c_stop", 1.0);
    cfg.constants.c_close = kv.get_double_or("constants.c_close", 8.0);
    cfg.seed = kv.get_u64_or("seed", 0);
    cfg.replicas = kv.get_u64_or("replicas", 1);
    cfg.iterations_override = kv.get_u64_or("iterations", 0);
    cfg.out = kv.get_string_or("out", "");
    cfg.dry_run = kv.get_bool_or("dry_run", false);
    cfg.diagnose_suite = kv.get_string_or("diagnose.suite", "all");

    const auto leftover = kv.unconsumed();
    if (!leftover.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& key : leftover) msg += " " + key;
        throw std::runtime_error(msg);
    }
    return cfg;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    return run_config_from_kv(KeyValueConfig::from_file(path));
}

RunConfig parse_run_config(const std::string& text) {
    return run_config_from_kv(KeyValueConfig::from_string(text));
}

void echo_derived_params(const RunConfig& cfg, std::ostream& os) {
    if (cfg.command == "diagnose") {
        os << "diagnose suite: " << cfg.diagnose_suite << "\n";
        return;
    }
    const Geometry geom = resolve_geometry(cfg);
    os << "command              = " << cfg.command << "\n";
    os << "d                    = " << geom.dim << "\n";

    if (cfg.command == "sample-uniform" || cfg.command == "sample-logconcave") {
        const DerivedParams p =
            cfg.command == "sample-uniform"
                ? derive_params_unif(geom.dim, cfg.warmness, cfg.q, geom.lambda,
                                     cfg.eps, cfg.constants)
                : derive_params_exp(geom.dim, cfg.warmness, cfg.q, geom.lambda,
                                    cfg.eps, cfg.constants);
        os << "h                    = " << fmt(p.h, "%.8g") << "\n";
        os << "tau                  = " << p.tau
           << (p.tau_capped ? "  (capped at 2^40; complexity guarantee void)" : "")
           << "\n";
        os << "N                    = " << p.n_iters << "\n";
        os << "expected queries 2tauN = "
           << fmt(2.0 * static_cast<double>(p.tau) * static_cast<double>(p.n_iters),
                  "%.8g")
           << "\n";
        return;
    }

    if (cfg.command == "warm-start-uniform") {
        const AnnealSchedule sched =
            build_uniform_schedule(geom.r, geom.lambda, geom.dim, cfg.q, cfg.constants);
        os << "stop threshold       = " << fmt(sched.stop_threshold, "%.8g") << "\n";
        os << "schedule length      = " << sched.entries.size() << "\n";
        os << "predicted doublings  = " << sched.predicted_doublings << "\n";
        os << "sigma2 schedule      =";
        for (const auto& entry : sched.entries) os << " " << fmt(entry.sigma2, "%.6g");
        os << "\n";
        const double m_relay = 1.0 + cfg.constants.c_close;
        for (std::size_t i = 1; i < sched.entries.size(); ++i) {
            const DerivedParams p =
                derive_params_gauss(geom.dim, m_relay, sched.entries[i].sigma2,
                                    sched.relay_order, 2.0, 1.0, cfg.constants);
            os << "  phase " << i << ": sigma2=" << fmt(sched.entries[i].sigma2, "%.6g")
               << " h=" << fmt(p.h, "%.6g") << " tau=" << p.tau << " N=" << p.n_iters
               << "\n";
        }
        const double h_boost =
            std::min(1.0, cfg.constants.c_h / (static_cast<double>(geom.dim) * geom.dim));
        os << "boost iterations     = "
           << boost_order_iterations(h_boost, sched.entries.back().sigma2,
                                     sched.relay_order, 2.0 * cfg.q, cfg.constants.c_n)
           << "  (order " << sched.relay_order << " -> " << 2.0 * cfg.q << ")\n";
        os << "predicted queries    = "
           << fmt(cfg.q * geom.dim * geom.dim * std::pow(geom.r, 1.5) *
                      std::pow(geom.lambda, 0.25),
                  "%.8g")
           << "  (q d^2 R^1.5 Lambda^0.25)\n";
        return;
    }

    if (cfg.command == "warm-start-logconcave") {
        const LogConcaveAnnealPlan plan =
            build_logconcave_plan(geom.r, geom.lambda, geom.dim, cfg.q, cfg.constants);
        os << "l                    = " << fmt(plan.l, "%.8g") << "\n";
        os << "D = R l              = " << fmt(plan.big_d, "%.8g") << "\n";
        os << "t window             = [" << fmt(plan.t_lo, "%.8g") << ", "
           << fmt(plan.t_hi, "%.8g") << "]\n";
        os << "phase1 steps         = " << plan.phase1_steps << "\n";
        os << "phase2 outer steps   = " << plan.phase2_outer_steps << "\n";
        os << "phase3 steps         = " << plan.phase3_steps << "\n";
        os << "schedule length      = " << plan.schedule.entries.size() << "\n";
        os << "stop threshold       = " << fmt(plan.schedule.stop_threshold, "%.8g")
           << "\n";
        os << "sigma2/rho schedule  =";
        for (const auto& entry : plan.schedule.entries)
            os << " (" << fmt(entry.sigma2, "%.4g") << "," << fmt(entry.rho, "%.4g")
               << ")";
        os << "\n";
        os << "predicted queries    = "
           << fmt(std::pow(geom.dim, 2.5) +
                      cfg.q * geom.dim * geom.dim *
                          std::max(std::pow(geom.r, 1.5), 1.0) *
                          std::max(std::pow(geom.lambda, 0.25), 1.0),
                  "%.8g")
           << "  (d^2.5 + q d^2 (R^1.5 v 1)(Lambda^0.25 v 1))\n";
        return;
    }
}

RunResult run(RunConfig& cfg) {
    if (cfg.command == "sample-uniform" || cfg.command == "sample-logconcave")
        return run_sample(cfg);
    if (cfg.command == "warm-start-uniform" || cfg.command == "warm-start-logconcave")
        return run_warmstart(cfg);
    if (cfg.command == "diagnose") {
        DiagnoseSizes sizes;
        return run_diagnose(cfg, sizes);
    }
    throw std::runtime_error("run: unknown command '" + cfg.command + "'");
}

std::string csv_determinism_payload(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    bool strip_wall = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            out << line << "\n";
            continue;
        }
        if (line.rfind("replica", 0) == 0) {
            strip_wall = line.size() >= 8 &&
                         line.compare(line.size() - 8, 8, ",wall_ms") == 0;
            out << line << "\n";
            continue;
        }
        if (strip_wall && line.rfind("summary", 0) != 0) {
            const auto pos = line.find_last_of(',');
            out << (pos == std::string::npos ? line : line.substr(0, pos)) << "\n";
            continue;
        }
        out << line << "\n";
    }
    return out.str();
}

}  // namespace proxsamp
