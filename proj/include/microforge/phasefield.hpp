#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "microforge/core.hpp"
#include "microforge/elastic2d.hpp"

namespace mf::pf {

/// Material and discretization constants of the transformation solver.
/// Energies are carried volumetrically (J/m^3); molar inputs are converted
/// through the molar volume. The tabulated mobility lacks a volume
/// normalization, so the update uses M * V_m as the effective mobility and
/// the simulation clock is interpreted on that scale.
struct PhaseFieldParams {
  double delta_f_kj_mol = 1.0;  // chemical driving force, kJ/mol
  double landau_a = 0.15;       // A + B + C = 0, A/2 + B/3 + C/4 < 0
  double landau_b = -2.3;
  double landau_c = 2.15;
  double grad_coeff_sq = 5.0e-15;  // a^2, J m^2 / mol
  double mobility = 1.0;           // M_phi, 1/(J s)
  double c11_gpa = 397.0;
  double c44_gpa = 123.5;
  double c12_gpa = 150.0;
  // Per-variant transformation strain: variant1 compresses along x,
  // variant2 along y. Magnitude is a calibration knob; the default keeps the
  // elastic energy scale a small multiple of the chemical well depth so the
  // transformation is able to grow on a 32x32 grid.
  double eps_a = 0.015;
  double eps_b = 0.015;
  double molar_volume = 7.09e-6;  // m^3/mol (iron)
  int grid = 32;
  double domain_size_m = 31.0e-6;
  double dt = 0.0;  // <= 0 picks 0.2 x stability_dt()

  void validate() const;
  double cell_size() const { return domain_size_m / grid; }
  double delta_f_volumetric() const { return delta_f_kj_mol * 1.0e3 / molar_volume; }
  double grad_coeff_volumetric() const { return grad_coeff_sq / molar_volume; }
  /// Explicit-Euler stability bound from the stiffest local rate
  /// (gradient stencil + chemical curvature + elastic self-interaction).
  double stability_dt() const;
  double effective_dt() const { return dt > 0.0 ? dt : 0.2 * stability_dt(); }
};

struct PhaseFieldState {
  Field phi1, phi2;
  double time_s = 0.0;
};

/// Seed geometry: a noise band parallel to the x axis standing in for the
/// initial grain boundary. Varying seed, width and placement produces the
/// microstructure diversity of the training corpus.
struct InitialCondition {
  int boundary_half_width = 2;        // cells
  double seed_noise_amplitude = 0.08; // < 0.1
  std::uint64_t seed = 0;
  int band_center_row = -1;  // -1 -> grid/2
};

/// Landau polynomial, J/m^3 (third variant is absent in 2-D).
double chem_energy_density(double p1, double p2, const PhaseFieldParams& params);
/// Pointwise d(g_chem)/d(phi_i) over the whole grid.
void chem_driving_force(const PhaseFieldState& s, const PhaseFieldParams& params, Field& f1, Field& f2);
/// -a^2/V_m * laplacian(phi_i), 5-point periodic stencil.
void grad_driving_force(const PhaseFieldState& s, const PhaseFieldParams& params, Field& f1, Field& f2);

std::unique_ptr<SpectralElasticity> make_elasticity(const PhaseFieldParams& params);

/// One explicit Euler step of the gradient flow. step_index only labels
/// divergence errors. A solver instance is required so FFT plans are reused.
void step(PhaseFieldState& s, const PhaseFieldParams& params, SpectralElasticity& elastic,
          long step_index = -1);

/// Cell sum of (g_chem + g_grad + g_elast) * cell volume, unit thickness. J.
double total_free_energy(const PhaseFieldState& s, const PhaseFieldParams& params,
                         SpectralElasticity& elastic);

PhaseFieldState make_initial_state(const InitialCondition& ic, const PhaseFieldParams& params);

struct TrajectoryPoint {
  long step = 0;
  double time_s = 0.0;
  double total_energy_j = 0.0;
  double martensite_fraction = 0.0;
};

/// Evolve from the initial condition, labeling the state every `interval`
/// steps (snapshot k is taken after k*interval steps, so interval 0 returns
/// labelings of the initial condition). Deterministic given ic.seed.
std::vector<MicrostructureImage> run_snapshots(const InitialCondition& ic,
                                               const PhaseFieldParams& params, int n_snapshots,
                                               int interval,
                                               std::vector<TrajectoryPoint>* trace = nullptr);

}  // namespace mf::pf
