#include "microforge/phasefield.hpp"

#include <cmath>
#include <string>

#include "microforge/errors.hpp"
#include "microforge/rng.hpp"

namespace mf::pf {

void PhaseFieldParams::validate() const {
  const double sum = landau_a + landau_b + landau_c;
  if (std::abs(sum) > 1e-12) {
    throw ConfigError("Landau constants must satisfy A + B + C = 0, got sum = " + std::to_string(sum));
  }
  if (!(landau_a / 2.0 + landau_b / 3.0 + landau_c / 4.0 < 0.0)) {
    throw ConfigError("Landau constants must make phi = 1 stable (A/2 + B/3 + C/4 < 0)");
  }
  if (!(c11_gpa > std::abs(c12_gpa)) || !(c44_gpa > 0.0) || !(c11_gpa + 2.0 * c12_gpa > 0.0)) {
    throw ConfigError("cubic elastic constants are not positive definite");
  }
  if (grid < 2 || domain_size_m <= 0.0 || molar_volume <= 0.0 || mobility <= 0.0) {
    throw ConfigError("invalid phase-field discretization parameters");
  }
  if (dt > 0.0 && dt > stability_dt()) {
    throw ConfigError("phase-field dt exceeds the stability bound");
  }
}

double PhaseFieldParams::stability_dt() const {
  const double h = cell_size();
  const double kappa = grad_coeff_volumetric();
  const double dfv = delta_f_volumetric();
  const double l_grad = kappa * 8.0 / (h * h);
  // Curvature bound of the Landau polynomial on the working box.
  const double l_chem = dfv * (std::abs(landau_a) + 2.0 * std::abs(landau_b) + 5.0 * std::abs(landau_c));
  const double c11 = c11_gpa * 1e9, c12 = c12_gpa * 1e9;
  const double self1 = c11 * (eps_a * eps_a + eps_b * eps_b) - 2.0 * c12 * eps_a * eps_b;
  const double l_elast = 2.0 * std::abs(self1);
  const double rate = mobility * molar_volume * (l_grad + l_chem + l_elast);
  return 1.0 / rate;
}

double chem_energy_density(double p1, double p2, const PhaseFieldParams& params) {
  const double s2 = p1 * p1 + p2 * p2;
  const double s3 = p1 * p1 * p1 + p2 * p2 * p2;
  return params.delta_f_volumetric() *
         (params.landau_a / 2.0 * s2 + params.landau_b / 3.0 * s3 + params.landau_c / 4.0 * s2 * s2);
}

void chem_driving_force(const PhaseFieldState& s, const PhaseFieldParams& params, Field& f1, Field& f2) {
  const double dfv = params.delta_f_volumetric();
  const double a = params.landau_a, b = params.landau_b, c = params.landau_c;
  f1 = Field(s.phi1.width, s.phi1.height);
  f2 = Field(s.phi2.width, s.phi2.height);
  for (std::size_t i = 0; i < s.phi1.size(); ++i) {
    const double p1 = s.phi1.data[i];
    const double p2 = s.phi2.data[i];
    const double s2 = p1 * p1 + p2 * p2;
    f1.data[i] = dfv * (a * p1 + b * p1 * p1 + c * p1 * s2);
    f2.data[i] = dfv * (a * p2 + b * p2 * p2 + c * p2 * s2);
  }
}

namespace {

// 5-point periodic Laplacian driving force for one field. The (l+r)+(u+d)
// grouping keeps the result bitwise invariant under grid transposition.
void laplace_force(const Field& phi, double kappa_over_h2, Field& out) {
  const int n = phi.width;
  out = Field(n, n);
  for (int y = 0; y < n; ++y) {
    const int yu = (y + 1) % n, yd = (y + n - 1) % n;
    for (int x = 0; x < n; ++x) {
      const int xr = (x + 1) % n, xl = (x + n - 1) % n;
      const double lap = (phi.at(xl, y) + phi.at(xr, y)) + (phi.at(x, yd) + phi.at(x, yu)) - 4.0 * phi.at(x, y);
      out.at(x, y) = -kappa_over_h2 * lap;
    }
  }
}

bool any_non_finite(const Field& f) {
  for (double v : f.data) {
    if (!std::isfinite(v)) return true;
  }
  return false;
}

}  // namespace

void grad_driving_force(const PhaseFieldState& s, const PhaseFieldParams& params, Field& f1, Field& f2) {
  const double h = params.cell_size();
  const double k = params.grad_coeff_volumetric() / (h * h);
  laplace_force(s.phi1, k, f1);
  laplace_force(s.phi2, k, f2);
}

std::unique_ptr<SpectralElasticity> make_elasticity(const PhaseFieldParams& params) {
  return std::make_unique<SpectralElasticity>(
      params.grid, params.domain_size_m, params.c11_gpa * 1e9, params.c12_gpa * 1e9,
      params.c44_gpa * 1e9, std::array<double, 2>{-params.eps_b, +params.eps_a},
      std::array<double, 2>{+params.eps_a, -params.eps_b});
}

void step(PhaseFieldState& s, const PhaseFieldParams& params, SpectralElasticity& elastic, long step_index) {
  Field c1, c2, g1, g2, e1, e2;
  chem_driving_force(s, params, c1, c2);
  grad_driving_force(s, params, g1, g2);
  ElasticSolution sol = elastic.solve(s.phi1, s.phi2);
  elastic.driving_force(sol, e1, e2);

  if (any_non_finite(c1) || any_non_finite(c2)) {
    throw DivergenceError("non-finite chemical driving force", step_index);
  }
  if (any_non_finite(g1) || any_non_finite(g2)) {
    throw DivergenceError("non-finite gradient driving force", step_index);
  }
  if (any_non_finite(e1) || any_non_finite(e2)) {
    throw DivergenceError("non-finite elastic driving force", step_index);
  }

  const double dt = params.effective_dt();
  const double m_eff = params.mobility * params.molar_volume;
  for (std::size_t i = 0; i < s.phi1.size(); ++i) {
    s.phi1.data[i] -= dt * m_eff * (c1.data[i] + g1.data[i] + e1.data[i]);
    s.phi2.data[i] -= dt * m_eff * (c2.data[i] + g2.data[i] + e2.data[i]);
  }
  s.time_s += dt;
}

double total_free_energy(const PhaseFieldState& s, const PhaseFieldParams& params,
                         SpectralElasticity& elastic) {
  const int n = params.grid;
  const double h = params.cell_size();
  const double cell_volume = h * h;  // unit thickness
  const double kappa = params.grad_coeff_volumetric();

  double density_sum = 0.0;
  ElasticSolution sol = elastic.solve(s.phi1, s.phi2);
  for (int y = 0; y < n; ++y) {
    const int yu = (y + 1) % n;
    for (int x = 0; x < n; ++x) {
      const int xr = (x + 1) % n;
      const double p1 = s.phi1.at(x, y), p2 = s.phi2.at(x, y);
      // Forward-difference gradient energy is the discrete functional whose
      // variation is exactly the 5-point Laplacian used in the dynamics.
      const double d1x = (s.phi1.at(xr, y) - p1) / h;
      const double d1y = (s.phi1.at(x, yu) - p1) / h;
      const double d2x = (s.phi2.at(xr, y) - p2) / h;
      const double d2y = (s.phi2.at(x, yu) - p2) / h;
      const double g_grad = 0.5 * kappa * ((d1x * d1x + d1y * d1y) + (d2x * d2x + d2y * d2y));
      density_sum += chem_energy_density(p1, p2, params) + g_grad + sol.energy.at(x, y);
    }
  }
  return density_sum * cell_volume;
}

PhaseFieldState make_initial_state(const InitialCondition& ic, const PhaseFieldParams& params) {
  if (ic.seed_noise_amplitude >= 0.1) {
    throw ConfigError("initial-condition noise amplitude must stay below 0.1");
  }
  const int n = params.grid;
  PhaseFieldState s;
  s.phi1 = Field(n, n);
  s.phi2 = Field(n, n);
  const int center = ic.band_center_row >= 0 ? ic.band_center_row : n / 2;
  Rng rng(ic.seed);
  for (int y = 0; y < n; ++y) {
    if (std::abs(y - center) > ic.boundary_half_width) continue;
    for (int x = 0; x < n; ++x) {
      s.phi1.at(x, y) = rng.uniform(0.0, ic.seed_noise_amplitude);
      s.phi2.at(x, y) = rng.uniform(0.0, ic.seed_noise_amplitude);
    }
  }
  return s;
}

std::vector<MicrostructureImage> run_snapshots(const InitialCondition& ic,
                                               const PhaseFieldParams& params, int n_snapshots,
                                               int interval,
                                               std::vector<TrajectoryPoint>* trace) {
  if (n_snapshots < 1) throw ConfigError("run_snapshots needs n_snapshots >= 1");
  params.validate();
  auto elastic = make_elasticity(params);
  PhaseFieldState s = make_initial_state(ic, params);

  std::vector<MicrostructureImage> out;
  out.reserve(n_snapshots);
  long step_count = 0;
  for (int k = 1; k <= n_snapshots; ++k) {
    const long target = static_cast<long>(k) * interval;
    while (step_count < target) {
      step(s, params, *elastic, step_count);
      ++step_count;
    }
    out.push_back(label_pixels(s.phi1, s.phi2));
    if (trace) {
      trace->push_back({step_count, s.time_s, total_free_energy(s, params, *elastic),
                        martensite_fraction(out.back())});
    }
  }
  return out;
}

}  // namespace mf::pf
