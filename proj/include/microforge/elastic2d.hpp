#pragma once

#include <array>
#include <complex>
#include <vector>

#include "microforge/core.hpp"

namespace mf::pf {

/// Solution of periodic mechanical equilibrium for a spatially varying
/// transformation eigenstrain, zero applied average strain.
struct ElasticSolution {
  Field exx, eyy, exy;  // elastic strain (tensor shear component)
  Field sxx, syy, sxy;  // stress, Pa
  Field energy;         // 0.5 * sigma : eps_el, J/m^3
};

/// Fourier-space microelasticity on a periodic n x n grid with homogeneous
/// cubic elasticity and per-variant diagonal eigenstrains. One instance owns
/// its FFT plans and scratch; it is reentrant but not shareable across
/// threads (the concurrency model gives each solver a single owner).
class SpectralElasticity {
 public:
  /// c11/c12/c44 in Pa; eig1/eig2 are the diagonal eigenstrain tensors of
  /// variant1 / variant2 as (xx, yy) pairs. Throws ConfigError when the
  /// cubic stiffness is not positive definite.
  SpectralElasticity(int n, double domain_size_m, double c11, double c12, double c44,
                     std::array<double, 2> eig1, std::array<double, 2> eig2);
  ~SpectralElasticity();

  SpectralElasticity(const SpectralElasticity&) = delete;
  SpectralElasticity& operator=(const SpectralElasticity&) = delete;

  ElasticSolution solve(const Field& phi1, const Field& phi2);

  /// Variational derivative of the elastic energy w.r.t. each order
  /// parameter at mechanical equilibrium: -sigma : d(eps0)/d(phi_i), J/m^3.
  void driving_force(const ElasticSolution& sol, Field& f1, Field& f2) const;

  std::array<double, 2> eig1() const { return eig1_; }
  std::array<double, 2> eig2() const { return eig2_; }

 private:
  int n_;
  double length_;
  double c11_, c12_, c44_;
  std::array<double, 2> eig1_, eig2_;
  void* plan_fwd_ = nullptr;   // fftw_plan
  void* plan_inv_ = nullptr;
  std::vector<std::complex<double>> buf_a_, buf_b_, buf_c_, buf_d_;

  void fft(std::vector<std::complex<double>>& inout, bool forward);
};

}  // namespace mf::pf
