#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "proxsamp/rng.hpp"
#include "proxsamp/stats.hpp"

using namespace proxsamp;

TEST_CASE("splitmix64 reference values") {
    // Known outputs for seed 0 of the reference splitmix64.
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64(s) == 0x06C45D188009454FULL);
}

TEST_CASE("streams are deterministic and chain-separated") {
    Rng a(42, 0), b(42, 0), c(42, 1);
    bool all_equal = true, any_equal_cross = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t xa = a.next_u64(), xb = b.next_u64(), xc = c.next_u64();
        all_equal = all_equal && (xa == xb);
        any_equal_cross = any_equal_cross || (xa == xc);
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_cross);
}

TEST_CASE("uniform01 lies in (0,1]") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("normal moments") {
    Rng rng(11);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.normal();
    const MeanVar mv = mean_var(xs);
    CHECK(std::abs(mv.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(mv.variance - 1.0) < 0.02);
}

TEST_CASE("exponential moments") {
    Rng rng(13);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.exponential();
    const MeanVar mv = mean_var(xs);
    CHECK(std::abs(mv.mean - 1.0) < 0.02);
}

TEST_CASE("kolmogorov survival sanity") {
    CHECK(kolmogorov_sf(1e-6) == doctest::Approx(1.0));
    CHECK(kolmogorov_sf(0.8275) == doctest::Approx(0.5).epsilon(0.01));
    CHECK(kolmogorov_sf(5.0) < 1e-20);
}

TEST_CASE("ks test calibration on exact uniforms") {
    Rng rng(19);
    std::vector<double> sample(20000);
    for (auto& x : sample) x = 1.0 - rng.uniform01();
    const KsResult res = ks_test(sample, [](double x) {
        return std::clamp(x, 0.0, 1.0);
    });
    CHECK(res.p_value > 0.01);

    // Detects a wrong CDF decisively.
    const KsResult bad = ks_test(sample, [](double x) {
        return std::clamp(x * x, 0.0, 1.0);
    });
    CHECK(bad.p_value < 1e-12);
}

TEST_CASE("chi square test calibration") {
    Rng rng(23);
    std::vector<long long> counts(8, 0);
    const std::vector<double> probs(8, 0.125);
    for (int i = 0; i < 80000; ++i)
        counts[static_cast<int>(8.0 * (1.0 - rng.uniform01())) % 8] += 1;
    const ChiSquareResult res = chi_square_test(counts, probs);
    CHECK(res.dof == 7);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("truncated normal quantile inverts the cdf") {
    const TruncatedNormal law{0.5, 0.25, -1.0, 1.0};
    for (double p : {0.01, 0.2, 0.5, 0.9, 0.99})
        CHECK(law.cdf(law.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    CHECK(law.acceptance() == doctest::Approx(normal_cdf(1.0) - normal_cdf(-3.0)));
}

TEST_CASE("laplace quantile inverts the cdf") {
    for (double p : {0.05, 0.3, 0.5, 0.77, 0.99})
        CHECK(laplace_cdf(laplace_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("truncated exponential quantile inverts the cdf") {
    const TruncatedExponential law{1.0, 0.0, 2.0};
    for (double p : {0.05, 0.3, 0.5, 0.77, 0.99})
        CHECK(law.cdf(law.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}
