#include "splb/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace splb {

double lebesgue_norm(const Eigen::ArrayXd& values, const Eigen::ArrayXd& weights, double s) {
  if (values.size() != weights.size())
    throw std::domain_error("lebesgue_norm: values and weights differ in size");
  if (values.size() == 0) throw std::domain_error("lebesgue_norm: empty sample");
  if (std::isinf(s)) return values.abs().maxCoeff();
  if (!(s > 0)) throw std::domain_error("lebesgue_norm: requires s > 0");
  return std::pow((values.abs().pow(s) * weights).sum(), 1.0 / s);
}

double lebesgue_norm(const Field& u, double s) {
  return lebesgue_norm(u.v, u.grid->cell_volume, s);
}

double bochner_norm(const Trajectory& traj, double r, double m) {
  if (traj.times.empty()) throw std::domain_error("bochner_norm: empty trajectory");
  if (!std::isinf(r) && !(r >= 1)) throw std::domain_error("bochner_norm: requires r >= 1");
  auto wt = traj.time_weights();
  double acc = 0.0, sup = 0.0;
  for (std::size_t k = 0; k < traj.slices(); ++k) {
    double nm = lebesgue_norm(traj.states[k], traj.grid->cell_volume, m);
    if (std::isinf(r))
      sup = std::max(sup, nm);
    else if (wt[k] > 0)
      acc += wt[k] * std::pow(nm, r);
  }
  return std::isinf(r) ? sup : std::pow(acc, 1.0 / r);
}

double marcinkiewicz_norm(const Eigen::ArrayXd& values, const Eigen::ArrayXd& weights,
                          double gamma) {
  if (!(gamma > 0)) throw std::domain_error("marcinkiewicz_norm: requires gamma > 0");
  if (values.size() != weights.size())
    throw std::domain_error("marcinkiewicz_norm: values and weights differ in size");
  const long n = values.size();
  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0L);
  Eigen::ArrayXd av = values.abs();
  std::sort(order.begin(), order.end(), [&](long a, long b) { return av[a] > av[b]; });
  double best = 0.0;
  double cum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    double a = av[order[i]];
    std::size_t j = i;
    while (j < order.size() && av[order[j]] == a) {
      cum += weights[order[j]];
      ++j;
    }
    if (a > 0) best = std::max(best, a * std::pow(cum, 1.0 / gamma));
    i = j;
  }
  return best;
}

Eigen::ArrayXd beta_transform(const Eigen::ArrayXd& u, double beta) {
  return (1.0 + u.abs()).pow(beta) - 1.0;
}

Eigen::ArrayXd principal_transform(const Eigen::ArrayXd& u, double beta) {
  return (1.0 + u.abs()).pow(beta - 1.0) * u;
}

EstimateLedger ledger(const Trajectory& traj, double sigma, double p, double beta) {
  if (traj.times.empty()) throw std::domain_error("ledger: empty trajectory");
  if (!(sigma > 0) || !(p > 1) || !(beta > 0))
    throw std::domain_error("ledger: requires sigma > 0, p > 1, beta > 0");
  EstimateLedger led;
  led.sigma = sigma;
  led.p = p;
  led.beta = beta;
  led.blowup = (traj.status == Termination::blowup);

  const Grid& g = *traj.grid;
  const int N = g.formal_dim;
  auto wt = traj.time_weights();
  double sup_sigma = 0.0, acc_energy = 0.0, acc_principal = 0.0;

  const double s1 = (p * (N + 1) - N) / double(N + 2);  // gradient power of the L^1 theory
  const double g1 = double(N + 2) / (N + 1);
  const double s2 = 0.5 * p;
  std::vector<double> mz_vals1, mz_vals2, mz_w;

  for (std::size_t k = 0; k < traj.slices(); ++k) {
    Field u(traj.grid, traj.states[k]);
    sup_sigma = std::max(sup_sigma, std::pow(lebesgue_norm(u, sigma), sigma));
    if (wt[k] > 0) {
      Field vb(traj.grid, beta_transform(u.v, beta));
      Field vp(traj.grid, principal_transform(u.v, beta));
      acc_energy += wt[k] * (cell_gradient_magnitude(vb).pow(p) * g.cell_volume).sum();
      acc_principal += wt[k] * (cell_gradient_magnitude(vp).pow(p) * g.cell_volume).sum();
      Eigen::ArrayXd gm = cell_gradient_magnitude(u);
      for (long c = 0; c < g.cells(); ++c) {
        mz_vals1.push_back(std::pow(gm[c], s1));
        mz_vals2.push_back(std::pow(gm[c], s2));
        mz_w.push_back(wt[k] * g.cell_volume[c]);
      }
    }
  }
  led.sup_t_lsigma = sup_sigma;
  led.grad_beta_energy = acc_energy;
  led.grad_beta_principal = acc_principal;
  Eigen::Map<Eigen::ArrayXd> w(mz_w.data(), long(mz_w.size()));
  Eigen::Map<Eigen::ArrayXd> v1(mz_vals1.data(), long(mz_vals1.size()));
  Eigen::Map<Eigen::ArrayXd> v2(mz_vals2.data(), long(mz_vals2.size()));
  if (w.size() > 0) {
    led.marcinkiewicz.push_back({s1, g1, marcinkiewicz_norm(v1, w, g1)});
    led.marcinkiewicz.push_back({s2, 1.0, marcinkiewicz_norm(v2, w, 1.0)});
  }
  return led;
}

GnRecord gn_check(const Trajectory& traj, double h, double eta, double w, double y) {
  if (traj.times.empty()) throw std::domain_error("gn_check: empty trajectory");
  const Grid& g = *traj.grid;
  const double N = g.formal_dim;
  if (!(eta >= 1) || !(eta < N))
    throw std::domain_error("gn_check: requires 1 <= eta < N (formal dimension)");
  const double eta_star = N * eta / (N - eta);
  if (!(h >= 1) || !(h > 0) || h > eta_star + 1e-12)
    throw std::domain_error("gn_check: requires 1 <= h <= N eta/(N - eta)");
  if (!(w > 0) || !(y > 0)) throw std::domain_error("gn_check: requires w, y > 0");
  const double resid = N * h / w + (N * (eta - h) + eta * h) / y - N;
  if (std::abs(resid) > 1e-9)
    throw std::domain_error("gn_check: exponent relation violated, residual " +
                            std::to_string(resid));

  GnRecord rec;
  rec.h = h;
  rec.eta = eta;
  rec.w = w;
  rec.y = y;
  auto wt = traj.time_weights();
  double lhs = 0.0, sup_h = 0.0, grad_acc = 0.0;
  for (std::size_t k = 0; k < traj.slices(); ++k) {
    Field v(traj.grid, traj.states[k]);
    sup_h = std::max(sup_h, lebesgue_norm(v, h));
    if (wt[k] > 0) {
      lhs += wt[k] * std::pow(lebesgue_norm(v, w), y);
      grad_acc += wt[k] * (cell_gradient_magnitude(v).pow(eta) * g.cell_volume).sum();
    }
  }
  rec.lhs = lhs;
  rec.rhs = std::pow(sup_h, y - eta) * grad_acc;
  rec.ratio = (rec.lhs > 0 && rec.rhs > 0) ? rec.lhs / rec.rhs : 0.0;
  return rec;
}

}  // namespace splb
