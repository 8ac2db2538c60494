#pragma once

// Discrete spatial operators.  The gradient differences cell values across
// faces (ghost zero outside Dirichlet boundaries, mirrored ghost at r = 0);
// the divergence is its exact negative adjoint under the cell/face
// quadratures, so summation by parts holds to rounding.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "splb/field.hpp"

namespace splb {

FaceField discrete_gradient(const Field& u);
Field discrete_divergence(const FaceField& F);

double cell_inner(const Field& a, const Field& b);
double face_inner(const FaceField& a, const FaceField& b);

// per-cell gradient vector (average of the adjacent face differences)
std::array<Eigen::ArrayXd, 3> cell_gradient(const Field& u);
// pointwise Euclidean magnitude of the cell gradient
Eigen::ArrayXd cell_gradient_magnitude(const Field& u);

Field truncate_T(const Field& u, double k);
Field truncate_G(const Field& u, double k);
Eigen::ArrayXd truncate_T(const Eigen::ArrayXd& v, double k);
Eigen::ArrayXd truncate_G(const Eigen::ArrayXd& v, double k);

// Per-cell symmetric coefficient matrix A(x) with quadratic-form bounds
//   alpha |xi|^2 <= xi . A xi <= Lambda |xi|^2.
class CoefficientField {
 public:
  static CoefficientField identity(const std::shared_ptr<const Grid>& g);
  static CoefficientField isotropic(const std::shared_ptr<const Grid>& g, double value);
  // seeded random symmetric field with eigenvalues in [alpha, Lambda]
  static CoefficientField random_spd(const std::shared_ptr<const Grid>& g, double alpha,
                                     double Lambda, std::uint64_t seed);

  std::shared_ptr<const Grid> grid;
  double alpha = 1.0;
  double Lambda = 1.0;
  bool is_identity = true;
  // symmetric entries per cell: xx, yy, zz, xy, xz, yz
  Eigen::ArrayXXd sym;

  Eigen::Matrix3d cell_matrix(long c) const;
  bool verify_bounds(double tol = 1e-9) const;
};

// Regularized p-flux  F = (|g|^2 + eps^2)^{(p-2)/2} A g  evaluated at faces,
// with the full gradient vector reconstructed at each face (normal component
// by the two-point difference, transverse components by averaging the two
// adjacent cell gradients).  Also assembles the exact Jacobian of
// div F with respect to the cell values.
class PFluxOperator {
 public:
  PFluxOperator(std::shared_ptr<const Grid> grid, double p, double eps,
                std::shared_ptr<const CoefficientField> A = nullptr);

  FaceField flux(const Field& u) const;
  Field divergence_of_flux(const Field& u) const;  // div a(x, grad u)
  // accumulate scale * d(div flux)_i/du_c into the triplet list
  void add_jacobian(const Field& u, double scale,
                    std::vector<Eigen::Triplet<double>>& out) const;

  double p() const { return p_; }
  double eps() const { return eps_; }
  void set_eps(double e) { eps_ = e; }

 private:
  struct Entry {
    int cell;   // flattened cell index
    int comp;   // gradient component the weight feeds
    double w;
  };
  // CSR-style stencil per axis: gradient vector at each face as a linear map
  struct AxisStencil {
    std::vector<int> offsets;  // face -> [offsets[f], offsets[f+1]) into entries
    std::vector<Entry> entries;
    std::vector<int> left;     // adjacent cell on the minus side (-1: ghost)
    std::vector<int> right;    // adjacent cell on the plus side  (-1: ghost)
  };

  void build_stencils();
  void face_matrix(int d, long f, double M[3][3]) const;  // A averaged to the face

  std::shared_ptr<const Grid> grid_;
  double p_;
  double eps_;
  std::shared_ptr<const CoefficientField> A_;
  std::array<AxisStencil, 3> stencil_;
};

}  // namespace splb
