#pragma once

// Norms and estimate bookkeeping.  Spatial integrals use cell volumes with
// midpoint values; time integrals use the left endpoint, matching the
// implicit stepper.  Gradient magnitudes entering norms are collocated at
// cell centers; face quadrature is reserved for the adjoint operator pair.

#include <Eigen/Dense>
#include <vector>

#include "splb/field.hpp"
#include "splb/operators.hpp"

namespace splb {

// s in (0, inf]; s = inf gives the sup norm
double lebesgue_norm(const Eigen::ArrayXd& values, const Eigen::ArrayXd& weights, double s);
double lebesgue_norm(const Field& u, double s);

// L^r(0,T; L^m) with left-endpoint time quadrature; r or m may be inf
double bochner_norm(const Trajectory& traj, double r, double m);

// ||f||_{M^gamma} = sup_k ( k^gamma meas{|f| > k} )^{1/gamma}; the sup over
// k > 0 is attained approaching achieved values from below, so it equals
// max over achieved values a of a * meas{|f| >= a}^{1/gamma}.
double marcinkiewicz_norm(const Eigen::ArrayXd& values, const Eigen::ArrayXd& weights,
                          double gamma);

// pointwise transforms used by the energy ledger
Eigen::ArrayXd beta_transform(const Eigen::ArrayXd& u, double beta);       // (1+|u|)^beta - 1
Eigen::ArrayXd principal_transform(const Eigen::ArrayXd& u, double beta);  // (1+|u|)^{beta-1} u

struct MarcinkiewiczEntry {
  double power;  // exponent s in |grad u|^s
  double gamma;  // Marcinkiewicz index
  double value;
};

struct GnRecord {
  double h = 0, eta = 0, w = 0, y = 0;
  double lhs = 0;    // integral of ||v||_w^y dt
  double rhs = 0;    // sup-norm and gradient factor, constant c = 1
  double ratio = 0;  // lhs / rhs (0 when both vanish)
};

struct EstimateLedger {
  double sup_t_lsigma = 0;         // sup_t ||u(t)||_sigma^sigma
  double grad_beta_energy = 0;     // || grad((1+|u|)^beta - 1) ||_{L^p(Q)}^p
  double grad_beta_principal = 0;  // || grad((1+|u|)^{beta-1} u) ||_{L^p(Q)}^p
  double sigma = 0, p = 0, beta = 0;
  std::vector<MarcinkiewiczEntry> marcinkiewicz;
  std::vector<GnRecord> gn_residuals;
  bool blowup = false;
  // sup-norm part plus the gradient energy in the form the regime controls
  double total() const {
    return sup_t_lsigma + (beta < 1.0 ? grad_beta_principal : grad_beta_energy);
  }
};

// Measures the quantities bounded by the a-priori estimates along a
// trajectory.  Both gradient-transform variants are always computed; the
// Marcinkiewicz slots hold the two gradient-power norms driven by L^1 data.
EstimateLedger ledger(const Trajectory& traj, double sigma, double p, double beta);

// Parabolic interpolation check on a trajectory of fields v(t):
//   integral ||v||_w^y dt  vs  sup_t ||v||_h^{y-eta} * integral ||grad v||_eta^eta dt
// subject to N h / w + (N(eta-h) + eta h) / y = N with N the formal dimension.
// Throws when the relation fails by more than 1e-9 (the residual is reported).
GnRecord gn_check(const Trajectory& traj, double h, double eta, double w, double y);

}  // namespace splb
