#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxsamp/extended_real.hpp"
#include "proxsamp/ledger.hpp"
#include "proxsamp/rng.hpp"

namespace proxsamp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Yes/no membership access to a convex body K.  This is the only access the
/// uniform samplers have to their target.  Every query goes through
/// contains(), which checks dimensions and books the call on the supplied
/// ledger, so counters stay bit-exact.
class BodyOracle {
  public:
    explicit BodyOracle(int dim);
    virtual ~BodyOracle() = default;

    int dim() const { return dim_; }

    bool contains(const Vec& x, QueryLedger* ledger = nullptr) const;

  private:
    virtual bool do_contains(const Vec& x, QueryLedger* ledger) const = 0;
    int dim_;
};

/// Zeroth-order access to a convex potential V: values in R plus +infinity
/// for points outside the domain.  NaN from an oracle is a hard error.
class PotentialOracle {
  public:
    explicit PotentialOracle(int dim);
    virtual ~PotentialOracle() = default;

    int dim() const { return dim_; }

    ExtReal evaluate(const Vec& x, QueryLedger* ledger = nullptr) const;

    /// Optional lower bound on min V.
    virtual std::optional<double> min_hint() const { return std::nullopt; }

  private:
    virtual ExtReal do_evaluate(const Vec& x) const = 0;
    int dim_;
};

struct BodyStats {
    double r2;      // E_pi |x|^2 under the uniform distribution on the body
    double lambda;  // operator norm of cov(pi)
    double volume;
};

/// Closed-form convex bodies used as test instances.  Membership is exact up
/// to floating point; boundary points count as inside.
class StandardBody final : public BodyOracle {
  public:
    enum class Kind { Ball, Box, Interval, Polytope, Ellipsoid };

    static StandardBody ball(int dim, double radius, Vec translation = Vec());
    static StandardBody box(Vec halfwidths, Vec translation = Vec());
    static StandardBody interval(double lo, double hi);
    /// { x : A (x - translation) <= b }, A given row-major.
    static StandardBody polytope(Mat a, Vec b, Vec translation = Vec());
    /// { x : (x-c)^T Q (x-c) <= r^2 } for symmetric positive definite Q.
    static StandardBody ellipsoid(Mat q, double radius, Vec translation = Vec());

    Kind kind() const { return kind_; }
    const Vec& translation() const { return translation_; }
    double radius() const { return radius_; }
    const Vec& halfwidths() const { return halfwidths_; }
    double interval_lo() const { return interval_lo_; }
    double interval_hi() const { return interval_hi_; }

    /// Euclidean distance from x to the body; exact for ball, box, interval.
    double distance(const Vec& x) const;

    /// A finite box [lo, hi]^d covering the body (used by grid oracles).
    void bounding_box(Vec& lo, Vec& hi) const;

  private:
    StandardBody(Kind kind, int dim);
    bool do_contains(const Vec& x, QueryLedger* ledger) const override;

    Kind kind_;
    Vec translation_;
    double radius_ = 0.0;
    Vec halfwidths_;
    double interval_lo_ = 0.0, interval_hi_ = 0.0;
    Mat mat_a_;
    Vec vec_b_;
    Mat quad_;
};

/// Analytic R^2, Lambda and volume; only ball, box and interval have closed
/// forms, anything else is an error.
BodyStats body_stats(const StandardBody& body);

/// Exact uniform draw from a ball, box or interval (error otherwise).
Vec sample_uniform(const StandardBody& body, Rng& rng);

/// Convex epigraph-style lifting of a potential: the (d+1)-dimensional body
/// { (x, t) : V(x) <= d t } together with the tilt direction alpha = d e_{d+1}.
/// One membership test spends exactly one evaluation query.
class LiftedBody final : public BodyOracle {
  public:
    explicit LiftedBody(const PotentialOracle& potential);

    const PotentialOracle& potential() const { return potential_; }
    /// d * e_{d+1} in R^{d+1}.
    Vec alpha() const;
    int base_dim() const { return potential_.dim(); }

  private:
    bool do_contains(const Vec& xt, QueryLedger* ledger) const override;
    const PotentialOracle& potential_;
};

LiftedBody lift(const PotentialOracle& potential);

/// Lifted body intersected with { |x| <= radius } x [t_lo, t_hi].  The
/// geometric part is tested first, so a proposal outside the window costs no
/// evaluation query.
class TruncatedLiftedBody final : public BodyOracle {
  public:
    TruncatedLiftedBody(const PotentialOracle& potential, double radius,
                        double t_lo, double t_hi);

    double radius() const { return radius_; }
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    const PotentialOracle& potential() const { return potential_; }

  private:
    bool do_contains(const Vec& xt, QueryLedger* ledger) const override;
    const PotentialOracle& potential_;
    double radius_, t_lo_, t_hi_;
};

// ---------------------------------------------------------------------------
// Library potentials

/// V(x) = |x - c|^2 / 2.
class QuadraticPotential final : public PotentialOracle {
  public:
    explicit QuadraticPotential(int dim, Vec center = Vec());
    std::optional<double> min_hint() const override { return 0.0; }

  private:
    ExtReal do_evaluate(const Vec& x) const override;
    Vec center_;
};

/// V(x) = |x - c|.
class NormPotential final : public PotentialOracle {
  public:
    explicit NormPotential(int dim, Vec center = Vec());
    std::optional<double> min_hint() const override { return 0.0; }

  private:
    ExtReal do_evaluate(const Vec& x) const override;
    Vec center_;
};

/// 0 on [lo, hi], +infinity outside (d = 1).
class IndicatorIntervalPotential final : public PotentialOracle {
  public:
    IndicatorIntervalPotential(double lo, double hi);

  private:
    ExtReal do_evaluate(const Vec& x) const override;
    double lo_, hi_;
};

/// Wraps an arbitrary callable; +infinity is encoded as INFINITY, NaN is a
/// corrupt oracle and throws.
class FunctionPotential final : public PotentialOracle {
  public:
    FunctionPotential(int dim, std::function<double(const Vec&)> fn);

  private:
    ExtReal do_evaluate(const Vec& x) const override;
    std::function<double(const Vec&)> fn_;
};

// ---------------------------------------------------------------------------

struct ProbeResult {
    bool ok = true;
    Vec first_violation;  // empty when ok
};

/// Spot check of the standing requirement B_1(0) subset K with 64 sample
/// points of the unit ball (deterministic stream).  The check warns, it never
/// rescales: rescaling would change the target.
ProbeResult probe_unit_ball(const BodyOracle& body);

}  // namespace proxsamp
