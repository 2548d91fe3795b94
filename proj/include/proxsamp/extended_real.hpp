#pragma once

#include <cmath>
#include <stdexcept>

namespace proxsamp {

/// Value of a convex potential: a finite real or +infinity ("outside the
/// domain").  Deliberately not an alias for double so that +infinity cannot
/// leak into arithmetic unchecked; callers must branch on is_finite().
class ExtReal {
  public:
    static ExtReal finite(double v) {
        if (std::isnan(v)) throw std::runtime_error("ExtReal: NaN from oracle");
        if (std::isinf(v)) throw std::runtime_error("ExtReal: use ExtReal::infinity()");
        return ExtReal(v, true);
    }
    static ExtReal infinity() { return ExtReal(0.0, false); }

    bool is_finite() const { return finite_; }

    /// Finite value; throws when called on +infinity.
    double value() const {
        if (!finite_) throw std::runtime_error("ExtReal: value() on +infinity");
        return value_;
    }

    /// Comparison against a finite threshold; +infinity compares greater.
    bool leq(double threshold) const { return finite_ && value_ <= threshold; }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }

  private:
    ExtReal(double v, bool finite) : value_(v), finite_(finite) {}
    double value_;
    bool finite_;
};

}  // namespace proxsamp
