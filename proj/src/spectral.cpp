#include "sympcalc/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <random>
#include <vector>

namespace sympcalc {

// FFTW plan creation/destruction is not thread-safe; executions on private
// buffers are. One mutex keeps all plan traffic serialized.
static std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

namespace {

/** Scratch pair holding an N x N real array and its r2c transform. */
struct FftBuffers {
    int n;
    std::vector<double> real;
    std::vector<std::complex<double>> spec;
    fftw_plan fwd;
    fftw_plan bwd;

    explicit FftBuffers(int n_) : n(n_), real(static_cast<std::size_t>(n) * n),
                                  spec(static_cast<std::size_t>(n) * (n / 2 + 1)) {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fwd = fftw_plan_dft_r2c_2d(n, n, real.data(),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(spec.data()),
                                   real.data(), FFTW_ESTIMATE);
    }
    ~FftBuffers() {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    FftBuffers(const FftBuffers&) = delete;
    FftBuffers& operator=(const FftBuffers&) = delete;

    void forward(const ScalarField& f) {
        real = f.values;
        fftw_execute(fwd);
    }
    ScalarField backward(GridSpec g) {
        fftw_execute(bwd);
        ScalarField out(g);
        double scale = 1.0 / (static_cast<double>(n) * n);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = real[i] * scale;
        return out;
    }
    std::complex<double>& coef(int j, int kc) {
        return spec[static_cast<std::size_t>(j) * (n / 2 + 1) + kc];
    }
};

// Signed wavenumber for row index j of an N-point DFT.
inline int signed_freq(int j, int n) { return j <= n / 2 ? j : j - n; }

} // namespace

OneFormField spectral_gradient(const ScalarField& f) {
    const int n = f.grid.n;
    const int nc = n / 2 + 1;
    FftBuffers buf(n);
    buf.forward(f);
    std::vector<std::complex<double>> hat(buf.spec);

    ScalarField d1, d2;
    {
        // d/dtheta1: multiply by i*k1, Nyquist row zeroed.
        for (int j = 0; j < n; ++j) {
            int k1 = signed_freq(j, n);
            double m = (j == n / 2) ? 0.0 : static_cast<double>(k1);
            for (int kc = 0; kc < nc; ++kc)
                buf.coef(j, kc) = hat[static_cast<std::size_t>(j) * nc + kc]
                                  * std::complex<double>(0.0, m);
        }
        d1 = buf.backward(f.grid);
    }
    {
        // d/dtheta2: multiply by i*k2, Nyquist column zeroed.
        for (int j = 0; j < n; ++j)
            for (int kc = 0; kc < nc; ++kc) {
                double m = (kc == n / 2) ? 0.0 : static_cast<double>(kc);
                buf.coef(j, kc) = hat[static_cast<std::size_t>(j) * nc + kc]
                                  * std::complex<double>(0.0, m);
            }
        d2 = buf.backward(f.grid);
    }
    return {std::move(d1), std::move(d2)};
}

ScalarField exterior_derivative(const OneFormField& alpha) {
    OneFormField g1 = spectral_gradient(alpha.a1);
    OneFormField g2 = spectral_gradient(alpha.a2);
    return g2.a1 - g1.a2;
}

ScalarField poisson_solve(const ScalarField& g) {
    const int n = g.grid.n;
    const int nc = n / 2 + 1;
    FftBuffers buf(n);
    buf.forward(g);
    for (int j = 0; j < n; ++j) {
        int k1 = signed_freq(j, n);
        for (int kc = 0; kc < nc; ++kc) {
            double k2 = static_cast<double>(kc);
            double ksq = static_cast<double>(k1) * k1 + k2 * k2;
            std::complex<double>& c = buf.coef(j, kc);
            if (ksq == 0.0)
                c = 0.0;
            else
                c /= -ksq;
        }
    }
    return buf.backward(g.grid);
}

ScalarField random_band_limited(GridSpec g, std::uint64_t seed, int max_mode,
                                double amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    // Draw (cos, sin) coefficients in a fixed mode order so the field is a
    // pure function of the seed.
    struct Mode { int m, k; double a, b; };
    std::vector<Mode> modes;
    for (int m = -max_mode; m <= max_mode; ++m)
        for (int k = -max_mode; k <= max_mode; ++k) {
            if (m == 0 && k == 0) continue;
            modes.push_back({m, k, unif(rng), unif(rng)});
        }
    ScalarField f(g);
    for (int j = 0; j < g.n; ++j) {
        double t1 = g.node1(j);
        for (int kk = 0; kk < g.n; ++kk) {
            double t2 = g.node2(kk);
            double v = 0.0;
            for (const Mode& md : modes) {
                double phase = md.m * t1 + md.k * t2;
                v += md.a * std::cos(phase) + md.b * std::sin(phase);
            }
            f.at(j, kk) = v;
        }
    }
    recenter(f);
    double sup = field_sup_abs(f);
    if (sup > 0.0)
        for (double& v : f.values) v *= amplitude / sup;
    return f;
}

} // namespace sympcalc
