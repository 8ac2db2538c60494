#pragma once

// Cell-centered meshes for the solver: tensor boxes [0,L1]x...x[0,Ld] in one
// to three dimensions, plus a radial mode on a ball of radius R where the
// formal dimension N >= 2 enters only through the metric weights r^{N-1}.
// Homogeneous Dirichlet data live on ghost values outside the boundary faces
// (mirrored at r = 0 in radial mode, where the face area vanishes anyway).

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <stdexcept>
#include <vector>

namespace splb {

enum class GridMode { Cartesian, Radial };

class Grid {
 public:
  static std::shared_ptr<const Grid> cartesian(const std::vector<int>& cells,
                                               const std::vector<double>& extent,
                                               double t_horizon);
  static std::shared_ptr<const Grid> radial(int formal_dim, int cells, double radius,
                                            double t_horizon);

  GridMode mode = GridMode::Cartesian;
  int dim = 1;         // index dimension (radial: 1)
  int formal_dim = 1;  // N entering the norms (radial: the chosen N)
  std::array<int, 3> n = {1, 1, 1};
  std::array<double, 3> h = {1.0, 1.0, 1.0};
  std::array<double, 3> extent = {1.0, 1.0, 1.0};
  double t_horizon = 1.0;

  long cells() const { return long(n[0]) * n[1] * n[2]; }
  long cell_index(int i, int j, int k) const { return (long(i) * n[1] + j) * n[2] + k; }

  // face grid along axis d has n[d]+1 entries in that axis
  long face_count(int d) const {
    std::array<long, 3> m = {n[0], n[1], n[2]};
    m[d] += 1;
    return m[0] * m[1] * m[2];
  }
  long face_index(int d, int i, int j, int k) const {
    std::array<long, 3> m = {n[0], n[1], n[2]};
    m[d] += 1;
    return (long(i) * m[1] + j) * m[2] + k;
  }

  // quadrature weights
  Eigen::ArrayXd cell_volume;                  // per cell
  std::array<Eigen::ArrayXd, 3> face_area;     // transverse measure per face
  std::array<Eigen::ArrayXd, 3> face_delta;    // distance between the values differenced
  std::array<Eigen::ArrayXd, 3> face_weight;   // area * delta

  std::array<double, 3> cell_center(long c) const {
    int k = int(c % n[2]);
    int j = int((c / n[2]) % n[1]);
    int i = int(c / (long(n[1]) * n[2]));
    return {(i + 0.5) * h[0], (j + 0.5) * h[1], (k + 0.5) * h[2]};
  }

  double domain_volume() const { return cell_volume.sum(); }
};

}  // namespace splb
