#include "proxsamp/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "proxsamp/stats.hpp"

namespace proxsamp {

Grid1D::Grid1D(double lo, double hi, int n) : lo_(lo), hi_(hi), n_(n) {
    if (!(lo < hi) || n < 2) throw std::invalid_argument("Grid1D: bad domain");
    dx_ = (hi - lo) / n;
    v_.assign(n, 0.0);
}

Grid1D Grid1D::from_density(double lo, double hi, int n,
                            const std::function<double(double)>& density) {
    Grid1D g(lo, hi, n);
    for (int i = 0; i < n; ++i) g.v_[i] = density(g.x(i));
    return g;
}

double Grid1D::mass() const {
    double s = 0.0;
    for (double v : v_) s += v;
    return s * dx_;
}

void Grid1D::normalize() {
    const double m = mass();
    if (!(m > 0)) throw std::runtime_error("Grid1D: normalizing zero mass");
    for (double& v : v_) v /= m;
}

double Grid1D::moment2() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += v_[i] * x(i) * x(i);
    return s * dx_;
}

std::vector<double> Grid1D::cdf() const {
    std::vector<double> c(n_);
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) {
        acc += v_[i] * dx_;
        c[i] = acc;
    }
    return c;
}

double Grid1D::quantile(double p) const {
    const auto c = cdf();
    const double target = std::clamp(p, 0.0, c.back());
    const auto it = std::lower_bound(c.begin(), c.end(), target);
    const int i = static_cast<int>(it - c.begin());
    if (i >= n_) return hi_;
    const double prev = i == 0 ? 0.0 : c[i - 1];
    const double cell_mass = c[i] - prev;
    const double frac = cell_mass > 0 ? (target - prev) / cell_mass : 0.0;
    return lo_ + (i + frac) * dx_;
}

double Grid1D::sample(Rng& rng) const { return quantile(rng.uniform01()); }

Grid1D Grid1D::coarsened() const {
    if (n_ % 2 != 0) throw std::invalid_argument("coarsened: n must be even");
    Grid1D g(lo_, hi_, n_ / 2);
    for (int i = 0; i < n_ / 2; ++i) g.v_[i] = 0.5 * (v_[2 * i] + v_[2 * i + 1]);
    return g;
}

namespace {

// Real circular convolution via FFTW, both inputs length m.
std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b) {
    const int m = static_cast<int>(a.size());
    const int mc = m / 2 + 1;
    std::vector<double> in(m), out(m);
    std::vector<fftw_complex> fa(mc), fb(mc);

    fftw_plan fwd = fftw_plan_dft_r2c_1d(m, in.data(), fa.data(), FFTW_ESTIMATE);
    std::copy(a.begin(), a.end(), in.begin());
    fftw_execute(fwd);
    std::copy(b.begin(), b.end(), in.begin());
    fftw_execute_dft_r2c(fwd, in.data(), fb.data());
    fftw_destroy_plan(fwd);

    for (int k = 0; k < mc; ++k) {
        const double re = fa[k][0] * fb[k][0] - fa[k][1] * fb[k][1];
        const double im = fa[k][0] * fb[k][1] + fa[k][1] * fb[k][0];
        fa[k][0] = re / m;
        fa[k][1] = im / m;
    }
    fftw_plan bwd = fftw_plan_dft_c2r_1d(m, fa.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    return out;
}

}  // namespace

Grid1D heat_flow(const Grid1D& g, double t, double pad_sigmas) {
    if (!(t > 0)) throw std::invalid_argument("heat_flow: t must be positive");
    const double sigma = std::sqrt(t);
    const double dx = g.dx();
    const int pad = static_cast<int>(std::ceil(pad_sigmas * sigma / dx)) + 1;

    // Kernel weight k is the Gaussian mass of the cell at offset k; this makes
    // the discrete convolution the exact flow of the piecewise-constant input.
    std::vector<double> kernel(2 * pad + 1);
    for (int k = -pad; k <= pad; ++k) {
        const double a = (k - 0.5) * dx / sigma;
        const double b = (k + 0.5) * dx / sigma;
        kernel[k + pad] = normal_cdf(b) - normal_cdf(a);
    }

    const int n_out = g.n() + 2 * pad;
    int m = 1;
    while (m < n_out + 2 * pad + 1) m *= 2;

    std::vector<double> a(m, 0.0), b(m, 0.0);
    for (int i = 0; i < g.n(); ++i) a[i] = g[i];
    for (int k = 0; k < 2 * pad + 1; ++k) b[k] = kernel[k];

    const auto conv = fft_convolve(a, b);

    // a sits at offset 0, the kernel's center at offset pad; output cell i
    // (living at lo - pad*dx) reads conv[i].
    Grid1D out(g.lo() - pad * dx, g.hi() + pad * dx, n_out);
    double peak = 0.0;
    for (int i = 0; i < n_out; ++i) peak = std::max(peak, conv[i]);
    // FFT round-off sits near 1e-13 of the peak; flush it to an exact zero so
    // downstream support tests see clean tails.
    const double floor = 1e-10 * peak;
    for (int i = 0; i < n_out; ++i) out[i] = conv[i] > floor ? conv[i] : 0.0;
    return out;
}

// ---------------------------------------------------------------------------

Grid2D::Grid2D(double xlo, double xhi, double ylo, double yhi, int nx, int ny)
    : xlo_(xlo), xhi_(xhi), ylo_(ylo), yhi_(yhi), nx_(nx), ny_(ny) {
    if (!(xlo < xhi) || !(ylo < yhi) || nx < 2 || ny < 2)
        throw std::invalid_argument("Grid2D: bad domain");
    dx_ = (xhi - xlo) / nx;
    dy_ = (yhi - ylo) / ny;
    v_.assign(static_cast<std::size_t>(nx) * ny, 0.0);
}

Grid2D Grid2D::from_density(double xlo, double xhi, double ylo, double yhi,
                            int nx, int ny,
                            const std::function<double(double, double)>& density) {
    Grid2D g(xlo, xhi, ylo, yhi, nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) g.at(i, j) = density(g.x(i), g.y(j));
    return g;
}

double Grid2D::mass() const {
    double s = 0.0;
    for (double v : v_) s += v;
    return s * cell_area();
}

void Grid2D::normalize() {
    const double m = mass();
    if (!(m > 0)) throw std::runtime_error("Grid2D: normalizing zero mass");
    for (double& v : v_) v /= m;
}

std::vector<double> Grid2D::partition_probs(int kx, int ky) const {
    if (kx < 1 || ky < 1 || nx_ % kx != 0 || ny_ % ky != 0)
        throw std::invalid_argument("partition_probs: resolution not divisible");
    const int bx = nx_ / kx, by = ny_ / ky;
    std::vector<double> probs(static_cast<std::size_t>(kx) * ky, 0.0);
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j)
            probs[static_cast<std::size_t>(i / bx) * ky + j / by] += at(i, j);
    for (double& p : probs) p *= cell_area();
    return probs;
}

}  // namespace proxsamp
