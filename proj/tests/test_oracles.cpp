#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "proxsamp/oracles.hpp"
#include "proxsamp/samplers.hpp"

using namespace proxsamp;

namespace {

Vec vec1(double a) { return Vec::Constant(1, a); }

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

}  // namespace

TEST_CASE("membership on standard bodies") {
    const StandardBody ball = StandardBody::ball(3, 1.0);
    CHECK(ball.contains(vec3(0, 0, 0)));
    CHECK_FALSE(ball.contains(vec3(2, 0, 0)));
    CHECK(ball.contains(vec3(1, 0, 0)));  // boundary counts as inside

    const StandardBody box = StandardBody::box(Vec::Constant(2, 1.0));
    CHECK(box.contains(vec2(1.0, 1.0)));
    CHECK_FALSE(box.contains(vec2(1.0 + 1e-12, 1.0)));

    QueryLedger ledger;
    CHECK(ball.contains(vec3(0.1, 0.2, 0.3), &ledger));
    CHECK(ledger.membership_calls == 1);

    CHECK_THROWS_AS(ball.contains(vec2(0, 0)), std::invalid_argument);
}

TEST_CASE("membership on polytope and ellipsoid") {
    Mat a(4, 2);
    a << 1, 0, -1, 0, 0, 1, 0, -1;
    Vec b = Vec::Constant(4, 1.0);
    const StandardBody poly = StandardBody::polytope(a, b);
    CHECK(poly.contains(vec2(0.5, -0.5)));
    CHECK(poly.contains(vec2(1.0, 1.0)));
    CHECK_FALSE(poly.contains(vec2(1.5, 0.0)));

    Mat q(2, 2);
    q << 4, 0, 0, 1;
    const StandardBody ell = StandardBody::ellipsoid(q, 2.0);
    CHECK(ell.contains(vec2(1.0, 0.0)));
    CHECK(ell.contains(vec2(0.0, 2.0)));
    CHECK_FALSE(ell.contains(vec2(1.5, 0.0)));
}

TEST_CASE("evaluation oracle") {
    const QuadraticPotential quad(2);
    QueryLedger ledger;
    CHECK(quad.evaluate(vec2(1, 1), &ledger).value() == doctest::Approx(1.0));
    CHECK(ledger.evaluation_calls == 1);

    const IndicatorIntervalPotential ind(-1.0, 1.0);
    CHECK_FALSE(ind.evaluate(vec1(2.0)).is_finite());
    CHECK(ind.evaluate(vec1(0.3)).value() == 0.0);

    const NormPotential abs1(1);
    CHECK(abs1.evaluate(vec1(-3.0)).value() == doctest::Approx(3.0));

    const FunctionPotential corrupt(1, [](const Vec&) { return NAN; });
    CHECK_THROWS_AS(corrupt.evaluate(vec1(0.0)), std::runtime_error);
}

TEST_CASE("lifting") {
    const NormPotential abs1(1);
    const LiftedBody lifted_abs = lift(abs1);
    CHECK(lifted_abs.dim() == 2);
    CHECK(lifted_abs.contains(vec2(0.5, 0.6)));
    CHECK_FALSE(lifted_abs.contains(vec2(0.5, 0.4)));

    const QuadraticPotential quad(2);
    const LiftedBody lifted_quad = lift(quad);
    CHECK_FALSE(lifted_quad.contains(vec3(1.0, 1.0, 0.4)));  // V=1 > 2*0.4

    const QuadraticPotential quad3(3);
    const LiftedBody lifted3 = lift(quad3);
    const Vec alpha = lifted3.alpha();
    CHECK(alpha.size() == 4);
    CHECK(alpha[0] == 0.0);
    CHECK(alpha[1] == 0.0);
    CHECK(alpha[2] == 0.0);
    CHECK(alpha[3] == 3.0);

    // One lifted membership test spends exactly one evaluation call.
    QueryLedger ledger;
    lifted_abs.contains(vec2(0.1, 0.2), &ledger);
    CHECK(ledger.membership_calls == 1);
    CHECK(ledger.evaluation_calls == 1);
}

TEST_CASE("body_stats closed forms") {
    const BodyStats interval = body_stats(StandardBody::interval(-1.0, 1.0));
    CHECK(interval.r2 == doctest::Approx(1.0 / 3.0));
    CHECK(interval.lambda == doctest::Approx(1.0 / 3.0));
    CHECK(interval.volume == doctest::Approx(2.0));

    const BodyStats box = body_stats(StandardBody::box(Vec::Constant(2, 1.0)));
    CHECK(box.r2 == doctest::Approx(2.0 / 3.0));
    CHECK(box.lambda == doctest::Approx(1.0 / 3.0));
    CHECK(box.volume == doctest::Approx(4.0));

    const BodyStats ball = body_stats(StandardBody::ball(2, 1.0));
    CHECK(ball.r2 == doctest::Approx(0.5));
    CHECK(ball.lambda == doctest::Approx(0.25));
    CHECK(ball.volume == doctest::Approx(M_PI));

    Mat a(1, 1);
    a << 1;
    CHECK_THROWS_AS(body_stats(StandardBody::polytope(a, Vec::Constant(1, 1.0))),
                    std::invalid_argument);
}

TEST_CASE("convexity spot check on random combinations") {
    Rng rng(17);
    const std::vector<StandardBody> bodies = {
        StandardBody::ball(2, 1.5),
        StandardBody::box(Vec::Constant(3, 1.0)),
        StandardBody::interval(-2.0, 0.5),
    };
    for (const auto& body : bodies) {
        for (int trial = 0; trial < 1000; ++trial) {
            const Vec a = sample_uniform(body, rng);
            const Vec b = sample_uniform(body, rng);
            const double lambda = rng.uniform01();
            CHECK(body.contains(lambda * a + (1.0 - lambda) * b));
        }
    }
}

TEST_CASE("ledger exactness against an independent wrapper") {
    // Decorator body counting its own calls; the two tallies must agree
    // bit-exactly after a sampler run.
    struct CountingBody final : BodyOracle {
        explicit CountingBody(const BodyOracle& inner)
            : BodyOracle(inner.dim()), inner_(inner) {}
        mutable std::uint64_t calls = 0;
        const BodyOracle& inner_;

      private:
        bool do_contains(const Vec& x, QueryLedger*) const override {
            ++calls;
            return inner_.contains(x);
        }
    };

    const StandardBody box = StandardBody::box(Vec::Constant(2, 1.0));
    const CountingBody counting(box);

    SamplerConfig cfg;
    cfg.h = 0.25;
    cfg.tau = 16;
    Rng rng(5);
    ChainState state;
    state.x = vec2(0.0, 0.0);
    for (int k = 0; k < 200; ++k) ps_unif_iterate(state, counting, cfg, rng);
    CHECK(state.ledger.membership_calls == counting.calls);
    CHECK(state.ledger.proposals_drawn == counting.calls);
    CHECK(state.ledger.iterations_completed == 200);
}

TEST_CASE("lifted marginal matches direct integration for V(x) = |x|") {
    // For the lifted density e^{-t} 1[|x| <= t], integrating out t gives a
    // marginal proportional to e^{-|x|}.  Gauss-Legendre in t against the
    // analytic marginal, pointwise relative error below 1e-10.
    const int nodes = 64;
    // Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration.
    std::vector<double> gl_x(nodes), gl_w(nodes);
    for (int i = 0; i < nodes; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (nodes + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < nodes; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            const double dp = nodes * (x * p0 - p1) / (x * x - 1.0);
            const double step = p0 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        const double dp = nodes * (x * p0 - p1) / (x * x - 1.0);
        gl_x[i] = x;
        gl_w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    const NormPotential abs1(1);
    const LiftedBody lifted_abs = lift(abs1);
    auto marginal = [&](double x) {
        // integrate e^{-t} over t in [|x|, |x| + 60] by Gauss-Legendre
        const double a = std::abs(x), b = std::abs(x) + 60.0;
        double sum = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double t = 0.5 * (b - a) * gl_x[i] + 0.5 * (a + b);
            Vec point(2);
            point << x, t;
            sum += gl_w[i] * (lifted_abs.contains(point) ? std::exp(-t) : 0.0);
        }
        return 0.5 * (b - a) * sum;
    };

    const double at0 = marginal(0.0);
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        const double expected = std::exp(-std::abs(x));
        CHECK(std::abs(marginal(x) / at0 - expected) <= 1e-10 * expected);
    }
}

TEST_CASE("probe_unit_ball") {
    const StandardBody big = StandardBody::box(Vec::Constant(2, 1.0));
    CHECK(probe_unit_ball(big).ok);

    const StandardBody small = StandardBody::ball(2, 0.5);
    const ProbeResult probe = probe_unit_ball(small);
    CHECK_FALSE(probe.ok);
    CHECK(probe.first_violation.size() == 2);
}

TEST_CASE("truncated lifted body short-circuits the window test") {
    const NormPotential abs1(1);
    const TruncatedLiftedBody trunc(abs1, 3.0, -21.0, 25.0);
    QueryLedger ledger;
    CHECK_FALSE(trunc.contains(vec2(0.0, 100.0), &ledger));  // t outside window
    CHECK(ledger.membership_calls == 1);
    CHECK(ledger.evaluation_calls == 0);  // no oracle query spent
    CHECK(trunc.contains(vec2(0.5, 1.0), &ledger));
    CHECK(ledger.evaluation_calls == 1);
}
