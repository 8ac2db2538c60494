#include "splb/grid.hpp"

#include <cmath>

namespace splb {

namespace {
double unit_sphere_area(int N) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}
}  // namespace

std::shared_ptr<const Grid> Grid::cartesian(const std::vector<int>& cells,
                                            const std::vector<double>& extent,
                                            double t_horizon) {
  if (cells.empty() || cells.size() > 3)
    throw std::domain_error("Grid::cartesian: dimension must be 1, 2 or 3");
  if (extent.size() != cells.size())
    throw std::domain_error("Grid::cartesian: extent and cells must have equal length");
  auto g = std::make_shared<Grid>();
  g->mode = GridMode::Cartesian;
  g->dim = int(cells.size());
  g->formal_dim = g->dim;
  g->t_horizon = t_horizon;
  if (!(t_horizon > 0)) throw std::domain_error("Grid::cartesian: t_horizon must be positive");
  for (int d = 0; d < g->dim; ++d) {
    if (cells[d] < 2) throw std::domain_error("Grid::cartesian: need at least 2 cells per axis");
    if (!(extent[d] > 0)) throw std::domain_error("Grid::cartesian: extent must be positive");
    g->n[d] = cells[d];
    g->extent[d] = extent[d];
    g->h[d] = extent[d] / cells[d];
  }
  const double vol = g->h[0] * g->h[1] * g->h[2];
  g->cell_volume = Eigen::ArrayXd::Constant(g->cells(), vol);
  for (int d = 0; d < g->dim; ++d) {
    const long fc = g->face_count(d);
    const double area = vol / g->h[d];
    g->face_area[d] = Eigen::ArrayXd::Constant(fc, area);
    g->face_delta[d] = Eigen::ArrayXd::Constant(fc, g->h[d]);
    // boundary faces difference a cell value against the ghost at distance h/2
    std::array<long, 3> m = {g->n[0], g->n[1], g->n[2]};
    m[d] += 1;
    for (long f = 0; f < fc; ++f) {
      // recover the coordinate along axis d
      long rest = f;
      long kk = rest % m[2];
      rest /= m[2];
      long jj = rest % m[1];
      long ii = rest / m[1];
      long pos = (d == 0) ? ii : (d == 1) ? jj : kk;
      if (pos == 0 || pos == g->n[d]) g->face_delta[d][f] = 0.5 * g->h[d];
    }
    g->face_weight[d] = g->face_area[d] * g->face_delta[d];
  }
  return g;
}

std::shared_ptr<const Grid> Grid::radial(int formal_dim, int cells, double radius,
                                         double t_horizon) {
  if (formal_dim < 2) throw std::domain_error("Grid::radial: formal dimension must be >= 2");
  if (cells < 2) throw std::domain_error("Grid::radial: need at least 2 cells");
  if (!(radius > 0)) throw std::domain_error("Grid::radial: radius must be positive");
  if (!(t_horizon > 0)) throw std::domain_error("Grid::radial: t_horizon must be positive");
  auto g = std::make_shared<Grid>();
  g->mode = GridMode::Radial;
  g->dim = 1;
  g->formal_dim = formal_dim;
  g->t_horizon = t_horizon;
  g->n[0] = cells;
  g->extent[0] = radius;
  g->h[0] = radius / cells;
  const int N = formal_dim;
  const double omega = unit_sphere_area(N);
  g->cell_volume.resize(cells);
  g->face_area[0].resize(cells + 1);
  g->face_delta[0].resize(cells + 1);
  for (int f = 0; f <= cells; ++f) {
    const double r = f * g->h[0];
    g->face_area[0][f] = omega * std::pow(r, N - 1);
    g->face_delta[0][f] = (f == 0 || f == cells) ? 0.5 * g->h[0] : g->h[0];
  }
  for (int i = 0; i < cells; ++i) {
    const double r0 = i * g->h[0];
    const double r1 = (i + 1) * g->h[0];
    g->cell_volume[i] = omega * (std::pow(r1, N) - std::pow(r0, N)) / N;
  }
  g->face_weight[0] = g->face_area[0] * g->face_delta[0];
  return g;
}

}  // namespace splb
