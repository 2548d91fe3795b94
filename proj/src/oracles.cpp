#include "proxsamp/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace proxsamp {

namespace {

Vec default_translation(Vec translation, int dim) {
    if (translation.size() == 0) return Vec::Zero(dim);
    if (translation.size() != dim)
        throw std::invalid_argument("translation dimension mismatch");
    return translation;
}

}  // namespace

BodyOracle::BodyOracle(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("body dimension must be positive");
}

bool BodyOracle::contains(const Vec& x, QueryLedger* ledger) const {
    if (x.size() != dim_)
        throw std::invalid_argument("membership: point dimension mismatch");
    if (ledger) ledger->membership_calls += 1;
    return do_contains(x, ledger);
}

PotentialOracle::PotentialOracle(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("potential dimension must be positive");
}

ExtReal PotentialOracle::evaluate(const Vec& x, QueryLedger* ledger) const {
    if (x.size() != dim_)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    if (ledger) ledger->evaluation_calls += 1;
    return do_evaluate(x);
}

// ---------------------------------------------------------------------------
// StandardBody

StandardBody::StandardBody(Kind kind, int dim) : BodyOracle(dim), kind_(kind) {}

StandardBody StandardBody::ball(int dim, double radius, Vec translation) {
    if (radius <= 0) throw std::invalid_argument("ball: radius must be positive");
    StandardBody b(Kind::Ball, dim);
    b.radius_ = radius;
    b.translation_ = default_translation(std::move(translation), dim);
    return b;
}

StandardBody StandardBody::box(Vec halfwidths, Vec translation) {
    const int dim = static_cast<int>(halfwidths.size());
    if (dim < 1 || (halfwidths.array() <= 0).any())
        throw std::invalid_argument("box: halfwidths must be positive");
    StandardBody b(Kind::Box, dim);
    b.halfwidths_ = std::move(halfwidths);
    b.translation_ = default_translation(std::move(translation), dim);
    return b;
}

StandardBody StandardBody::interval(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("interval: need lo < hi");
    StandardBody b(Kind::Interval, 1);
    b.interval_lo_ = lo;
    b.interval_hi_ = hi;
    b.translation_ = Vec::Zero(1);
    return b;
}

StandardBody StandardBody::polytope(Mat a, Vec b, Vec translation) {
    if (a.rows() != b.size() || a.cols() < 1)
        throw std::invalid_argument("polytope: A/b shape mismatch");
    StandardBody body(Kind::Polytope, static_cast<int>(a.cols()));
    body.mat_a_ = std::move(a);
    body.vec_b_ = std::move(b);
    body.translation_ = default_translation(std::move(translation), body.dim());
    return body;
}

StandardBody StandardBody::ellipsoid(Mat q, double radius, Vec translation) {
    if (q.rows() != q.cols() || q.rows() < 1)
        throw std::invalid_argument("ellipsoid: Q must be square");
    if (radius <= 0) throw std::invalid_argument("ellipsoid: radius must be positive");
    StandardBody body(Kind::Ellipsoid, static_cast<int>(q.rows()));
    body.quad_ = std::move(q);
    body.radius_ = radius;
    body.translation_ = default_translation(std::move(translation), body.dim());
    return body;
}

bool StandardBody::do_contains(const Vec& x, QueryLedger*) const {
    switch (kind_) {
        case Kind::Ball:
            return (x - translation_).squaredNorm() <= radius_ * radius_;
        case Kind::Box:
            return ((x - translation_).cwiseAbs().array() <= halfwidths_.array()).all();
        case Kind::Interval: {
            const double v = x[0] - translation_[0];
            return interval_lo_ <= v && v <= interval_hi_;
        }
        case Kind::Polytope:
            return ((mat_a_ * (x - translation_)).array() <= vec_b_.array()).all();
        case Kind::Ellipsoid: {
            const Vec c = x - translation_;
            return c.dot(quad_ * c) <= radius_ * radius_;
        }
    }
    return false;
}

double StandardBody::distance(const Vec& x) const {
    const Vec c = x - translation_;
    switch (kind_) {
        case Kind::Ball:
            return std::max(0.0, c.norm() - radius_);
        case Kind::Box: {
            double sq = 0.0;
            for (Eigen::Index i = 0; i < c.size(); ++i) {
                const double excess = std::abs(c[i]) - halfwidths_[i];
                if (excess > 0) sq += excess * excess;
            }
            return std::sqrt(sq);
        }
        case Kind::Interval: {
            if (c[0] < interval_lo_) return interval_lo_ - c[0];
            if (c[0] > interval_hi_) return c[0] - interval_hi_;
            return 0.0;
        }
        default:
            throw std::invalid_argument("distance: no closed form for this kind");
    }
}

void StandardBody::bounding_box(Vec& lo, Vec& hi) const {
    const int d = dim();
    lo.resize(d);
    hi.resize(d);
    switch (kind_) {
        case Kind::Ball:
            lo = translation_.array() - radius_;
            hi = translation_.array() + radius_;
            return;
        case Kind::Box:
            lo = translation_ - halfwidths_;
            hi = translation_ + halfwidths_;
            return;
        case Kind::Interval:
            lo[0] = translation_[0] + interval_lo_;
            hi[0] = translation_[0] + interval_hi_;
            return;
        default:
            throw std::invalid_argument("bounding_box: unsupported kind");
    }
}

BodyStats body_stats(const StandardBody& body) {
    const int d = body.dim();
    const double shift2 = body.translation().squaredNorm();
    switch (body.kind()) {
        case StandardBody::Kind::Ball: {
            const double r = body.radius();
            const double r2_centered = r * r * d / (d + 2.0);
            const double vol =
                std::pow(M_PI, d / 2.0) * std::pow(r, d) / std::tgamma(d / 2.0 + 1.0);
            return {shift2 + r2_centered, r * r / (d + 2.0), vol};
        }
        case StandardBody::Kind::Box: {
            const Vec& w = body.halfwidths();
            const double r2 = shift2 + w.squaredNorm() / 3.0;
            const double lambda = w.cwiseAbs().maxCoeff();
            return {r2, lambda * lambda / 3.0, std::pow(2.0, d) * w.prod()};
        }
        case StandardBody::Kind::Interval: {
            const double len = body.interval_hi() - body.interval_lo();
            const double mid =
                body.translation()[0] + 0.5 * (body.interval_lo() + body.interval_hi());
            return {mid * mid + len * len / 12.0, len * len / 12.0, len};
        }
        default:
            throw std::invalid_argument("body_stats: no closed form for this kind");
    }
}

Vec sample_uniform(const StandardBody& body, Rng& rng) {
    const int d = body.dim();
    switch (body.kind()) {
        case StandardBody::Kind::Ball: {
            Vec z = rng.gaussian_vector(d);
            const double norm = z.norm();
            const double r = body.radius() * std::pow(rng.uniform01(), 1.0 / d);
            return body.translation() + z * (r / norm);
        }
        case StandardBody::Kind::Box: {
            Vec x(d);
            for (int i = 0; i < d; ++i)
                x[i] = rng.uniform(-body.halfwidths()[i], body.halfwidths()[i]);
            return body.translation() + x;
        }
        case StandardBody::Kind::Interval: {
            Vec x(1);
            x[0] = body.translation()[0] +
                   rng.uniform(body.interval_lo(), body.interval_hi());
            return x;
        }
        default:
            throw std::invalid_argument("sample_uniform: unsupported kind");
    }
}

// ---------------------------------------------------------------------------
// Lifted bodies

LiftedBody::LiftedBody(const PotentialOracle& potential)
    : BodyOracle(potential.dim() + 1), potential_(potential) {}

Vec LiftedBody::alpha() const {
    Vec a = Vec::Zero(dim());
    a[dim() - 1] = static_cast<double>(base_dim());
    return a;
}

bool LiftedBody::do_contains(const Vec& xt, QueryLedger* ledger) const {
    const int d = base_dim();
    const ExtReal v = potential_.evaluate(xt.head(d), ledger);
    return v.leq(d * xt[d]);
}

LiftedBody lift(const PotentialOracle& potential) { return LiftedBody(potential); }

TruncatedLiftedBody::TruncatedLiftedBody(const PotentialOracle& potential,
                                         double radius, double t_lo, double t_hi)
    : BodyOracle(potential.dim() + 1),
      potential_(potential),
      radius_(radius),
      t_lo_(t_lo),
      t_hi_(t_hi) {
    if (radius <= 0 || !(t_lo < t_hi))
        throw std::invalid_argument("TruncatedLiftedBody: bad truncation window");
}

bool TruncatedLiftedBody::do_contains(const Vec& xt, QueryLedger* ledger) const {
    const int d = potential_.dim();
    const double t = xt[d];
    if (t < t_lo_ || t > t_hi_) return false;
    if (xt.head(d).squaredNorm() > radius_ * radius_) return false;
    const ExtReal v = potential_.evaluate(xt.head(d), ledger);
    return v.leq(d * t);
}

// ---------------------------------------------------------------------------
// Potentials

QuadraticPotential::QuadraticPotential(int dim, Vec center)
    : PotentialOracle(dim), center_(default_translation(std::move(center), dim)) {}

ExtReal QuadraticPotential::do_evaluate(const Vec& x) const {
    return ExtReal::finite(0.5 * (x - center_).squaredNorm());
}

NormPotential::NormPotential(int dim, Vec center)
    : PotentialOracle(dim), center_(default_translation(std::move(center), dim)) {}

ExtReal NormPotential::do_evaluate(const Vec& x) const {
    return ExtReal::finite((x - center_).norm());
}

IndicatorIntervalPotential::IndicatorIntervalPotential(double lo, double hi)
    : PotentialOracle(1), lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw std::invalid_argument("indicator interval: need lo < hi");
}

ExtReal IndicatorIntervalPotential::do_evaluate(const Vec& x) const {
    if (x[0] < lo_ || x[0] > hi_) return ExtReal::infinity();
    return ExtReal::finite(0.0);
}

FunctionPotential::FunctionPotential(int dim, std::function<double(const Vec&)> fn)
    : PotentialOracle(dim), fn_(std::move(fn)) {}

ExtReal FunctionPotential::do_evaluate(const Vec& x) const {
    const double v = fn_(x);
    if (std::isnan(v)) throw std::runtime_error("corrupt oracle: NaN potential value");
    if (std::isinf(v)) return ExtReal::infinity();
    return ExtReal::finite(v);
}

// ---------------------------------------------------------------------------

ProbeResult probe_unit_ball(const BodyOracle& body) {
    Rng rng(0xB1);  // fixed stream: the probe is deterministic
    const int d = body.dim();
    for (int i = 0; i < 64; ++i) {
        Vec z = rng.gaussian_vector(d);
        Vec p = z * (std::pow(rng.uniform01(), 1.0 / d) / z.norm());
        if (!body.contains(p)) return {false, p};
    }
    return {true, Vec()};
}

}  // namespace proxsamp
