#pragma once

#include <functional>
#include <vector>

#include "proxsamp/rng.hpp"

namespace proxsamp {

/// Piecewise-constant density on a uniform 1-D grid; values live at cell
/// midpoints.  The workhorse of the desk-scale quadrature oracles.
class Grid1D {
  public:
    Grid1D(double lo, double hi, int n);

    static Grid1D from_density(double lo, double hi, int n,
                               const std::function<double(double)>& density);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int n() const { return n_; }
    double dx() const { return dx_; }
    double x(int i) const { return lo_ + (i + 0.5) * dx_; }

    double& operator[](int i) { return v_[i]; }
    double operator[](int i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    double mass() const;
    /// Scales so that mass() == 1; error when the grid carries no mass.
    void normalize();

    double moment2() const;

    /// CDF at cell right edges; cdf.back() == mass().
    std::vector<double> cdf() const;
    /// Inverse CDF with linear interpolation inside cells (grid must be
    /// normalized).
    double quantile(double p) const;
    double sample(Rng& rng) const;

    /// Same-span grid at half resolution (n must be even); used for
    /// Richardson-style error bars.
    Grid1D coarsened() const;

  private:
    double lo_, hi_, dx_;
    int n_;
    std::vector<double> v_;
};

/// Convolution with the centered Gaussian of variance t, evaluated on an
/// extended grid (the flow spreads mass).  The kernel uses per-cell Gaussian
/// CDF differences, so the result is exact for the piecewise-constant input
/// up to the stated tail cutoff; the heavy lifting is an FFT.
Grid1D heat_flow(const Grid1D& g, double t, double pad_sigmas = 8.0);

/// Piecewise-constant density on a uniform 2-D grid, row-major in x.
class Grid2D {
  public:
    Grid2D(double xlo, double xhi, double ylo, double yhi, int nx, int ny);

    static Grid2D from_density(
        double xlo, double xhi, double ylo, double yhi, int nx, int ny,
        const std::function<double(double, double)>& density);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double xlo() const { return xlo_; }
    double xhi() const { return xhi_; }
    double ylo() const { return ylo_; }
    double yhi() const { return yhi_; }
    double x(int i) const { return xlo_ + (i + 0.5) * dx_; }
    double y(int j) const { return ylo_ + (j + 0.5) * dy_; }
    double cell_area() const { return dx_ * dy_; }

    double& at(int i, int j) { return v_[static_cast<std::size_t>(i) * ny_ + j]; }
    double at(int i, int j) const { return v_[static_cast<std::size_t>(i) * ny_ + j]; }

    double mass() const;
    void normalize();

    /// Probabilities of a kx-by-ky partition of the domain; requires the
    /// resolution to be divisible by the partition.
    std::vector<double> partition_probs(int kx, int ky) const;

  private:
    double xlo_, xhi_, ylo_, yhi_, dx_, dy_;
    int nx_, ny_;
    std::vector<double> v_;
};

}  // namespace proxsamp
