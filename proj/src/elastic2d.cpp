#include "microforge/elastic2d.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "microforge/errors.hpp"

namespace mf::pf {

namespace {
// FFTW planning is not thread safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SpectralElasticity::SpectralElasticity(int n, double domain_size_m, double c11, double c12,
                                       double c44, std::array<double, 2> eig1,
                                       std::array<double, 2> eig2)
    : n_(n), length_(domain_size_m), c11_(c11), c12_(c12), c44_(c44), eig1_(eig1), eig2_(eig2) {
  if (!(c11 > std::abs(c12)) || !(c44 > 0.0) || !(c11 + 2.0 * c12 > 0.0)) {
    throw ConfigError("cubic elasticity is not positive definite (need C11 > |C12|, C44 > 0, C11 + 2*C12 > 0)");
  }
  const std::size_t total = static_cast<std::size_t>(n) * n;
  buf_a_.resize(total);
  buf_b_.resize(total);
  buf_c_.resize(total);
  buf_d_.resize(total);
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto* a = reinterpret_cast<fftw_complex*>(buf_a_.data());
  // UNALIGNED: the plans are executed against several scratch buffers.
  plan_fwd_ = fftw_plan_dft_2d(n, n, a, a, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inv_ = fftw_plan_dft_2d(n, n, a, a, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SpectralElasticity::~SpectralElasticity() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void SpectralElasticity::fft(std::vector<std::complex<double>>& inout, bool forward) {
  auto* p = reinterpret_cast<fftw_complex*>(inout.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward ? plan_fwd_ : plan_inv_), p, p);
  if (!forward) {
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (auto& z : inout) z *= scale;
  }
}

ElasticSolution SpectralElasticity::solve(const Field& phi1, const Field& phi2) {
  if (phi1.width != n_ || phi1.height != n_ || phi2.width != n_ || phi2.height != n_) {
    throw DimensionError("elastic solve: field shape does not match solver grid");
  }
  const std::size_t total = static_cast<std::size_t>(n_) * n_;
  std::vector<std::complex<double>> e0xx_hat(total), e0yy_hat(total);

  // Eigenstrain field (diagonal per variant).
  for (std::size_t i = 0; i < total; ++i) {
    e0xx_hat[i] = phi1.data[i] * eig1_[0] + phi2.data[i] * eig2_[0];
    e0yy_hat[i] = phi1.data[i] * eig1_[1] + phi2.data[i] * eig2_[1];
  }
  fft(e0xx_hat, true);
  fft(e0yy_hat, true);

  // The ik derivative operator has no consistent sign at the Nyquist index,
  // so the equilibrium problem is solved in the band-limited subspace: the
  // Nyquist content of the eigenstrain is projected out. The projection is
  // self-adjoint and the resulting stress stays band-limited, which keeps
  // the variational derivative exact.
  if (n_ % 2 == 0) {
    const int nyq = n_ / 2;
    for (int iy = 0; iy < n_; ++iy) {
      for (int ix = 0; ix < n_; ++ix) {
        if (ix == nyq || iy == nyq) {
          const std::size_t idx = static_cast<std::size_t>(iy) * n_ + ix;
          e0xx_hat[idx] = 0.0;
          e0yy_hat[idx] = 0.0;
        }
      }
    }
  }

  // Per-wavevector equilibrium: K(k) u = -i T k, zero mean strain at k = 0.
  const double two_pi_over_l = 2.0 * M_PI / length_;
  const std::complex<double> I(0.0, 1.0);
  for (int iy = 0; iy < n_; ++iy) {
    const int my = (iy <= n_ / 2) ? iy : iy - n_;
    const double ky = two_pi_over_l * my;
    for (int ix = 0; ix < n_; ++ix) {
      const int mx = (ix <= n_ / 2) ? ix : ix - n_;
      const double kx = two_pi_over_l * mx;
      const std::size_t idx = static_cast<std::size_t>(iy) * n_ + ix;
      if (mx == 0 && my == 0) {
        buf_a_[idx] = 0.0;  // exy
        buf_c_[idx] = 0.0;  // exx
        buf_d_[idx] = 0.0;  // eyy
        continue;
      }
      const std::complex<double> txx = c11_ * e0xx_hat[idx] + c12_ * e0yy_hat[idx];
      const std::complex<double> tyy = c12_ * e0xx_hat[idx] + c11_ * e0yy_hat[idx];
      const double kxx = c11_ * kx * kx + c44_ * ky * ky;
      const double kyy = c44_ * kx * kx + c11_ * ky * ky;
      const double kxy = (c12_ + c44_) * kx * ky;
      const double det = kxx * kyy - kxy * kxy;
      const std::complex<double> bx = -I * (txx * kx);
      const std::complex<double> by = -I * (tyy * ky);
      const std::complex<double> ux = (kyy * bx - kxy * by) / det;
      const std::complex<double> uy = (kxx * by - kxy * bx) / det;
      buf_c_[idx] = I * kx * ux;
      buf_d_[idx] = I * ky * uy;
      buf_a_[idx] = 0.5 * (I * ky * ux + I * kx * uy);
    }
  }
  fft(buf_c_, false);
  fft(buf_d_, false);
  fft(buf_a_, false);
  fft(e0xx_hat, false);  // projected eigenstrain back to real space
  fft(e0yy_hat, false);

  ElasticSolution sol;
  sol.exx = Field(n_, n_);
  sol.eyy = Field(n_, n_);
  sol.exy = Field(n_, n_);
  sol.sxx = Field(n_, n_);
  sol.syy = Field(n_, n_);
  sol.sxy = Field(n_, n_);
  sol.energy = Field(n_, n_);
  for (std::size_t i = 0; i < total; ++i) {
    const double exx = buf_c_[i].real() - e0xx_hat[i].real();
    const double eyy = buf_d_[i].real() - e0yy_hat[i].real();
    const double exy = buf_a_[i].real();
    const double sxx = c11_ * exx + c12_ * eyy;
    const double syy = c12_ * exx + c11_ * eyy;
    const double sxy = 2.0 * c44_ * exy;
    sol.exx.data[i] = exx;
    sol.eyy.data[i] = eyy;
    sol.exy.data[i] = exy;
    sol.sxx.data[i] = sxx;
    sol.syy.data[i] = syy;
    sol.sxy.data[i] = sxy;
    sol.energy.data[i] = 0.5 * (sxx * exx + syy * eyy + 2.0 * sxy * exy);
  }
  return sol;
}

void SpectralElasticity::driving_force(const ElasticSolution& sol, Field& f1, Field& f2) const {
  f1 = Field(n_, n_);
  f2 = Field(n_, n_);
  for (std::size_t i = 0; i < sol.sxx.size(); ++i) {
    // Envelope theorem at mechanical equilibrium: dE/dphi = -sigma : eps0_i.
    f1.data[i] = -(sol.sxx.data[i] * eig1_[0] + sol.syy.data[i] * eig1_[1]);
    f2.data[i] = -(sol.sxx.data[i] * eig2_[0] + sol.syy.data[i] * eig2_[1]);
  }
}

}  // namespace mf::pf
