#include "splb/operators.hpp"

#include <cmath>
#include <map>

#include "splb/rng.hpp"

namespace splb {

namespace {

struct FaceWalk {
  std::array<long, 3> m;  // face-grid shape for the axis
  long count;
};

FaceWalk face_walk(const Grid& g, int d) {
  FaceWalk w;
  w.m = {g.n[0], g.n[1], g.n[2]};
  w.m[d] += 1;
  w.count = w.m[0] * w.m[1] * w.m[2];
  return w;
}

// decompose flattened face index into (i, j, k) on the face grid
inline void face_coords(const FaceWalk& w, long f, long& i, long& j, long& k) {
  k = f % w.m[2];
  j = (f / w.m[2]) % w.m[1];
  i = f / (w.m[1] * w.m[2]);
}

}  // namespace

FaceField discrete_gradient(const Field& u) {
  const Grid& g = *u.grid;
  FaceField out(u.grid);
  for (int d = 0; d < g.dim; ++d) {
    auto w = face_walk(g, d);
    for (long f = 0; f < w.count; ++f) {
      long i, j, k;
      face_coords(w, f, i, j, k);
      long pos = (d == 0) ? i : (d == 1) ? j : k;
      if (g.mode == GridMode::Radial && pos == 0) {
        out.axis[d][f] = 0.0;  // mirrored ghost at the origin
        continue;
      }
      double ul = 0.0, ur = 0.0;
      if (pos > 0) {
        long ci = i, cj = j, ck = k;
        if (d == 0) ci = pos - 1; else if (d == 1) cj = pos - 1; else ck = pos - 1;
        ul = u.v[g.cell_index(int(ci), int(cj), int(ck))];
      }
      if (pos < g.n[d]) {
        ur = u.v[g.cell_index(int(i), int(j), int(k))];
      }
      out.axis[d][f] = (ur - ul) / g.face_delta[d][f];
    }
  }
  return out;
}

Field discrete_divergence(const FaceField& F) {
  const Grid& g = *F.grid;
  Field out(F.grid);
  for (int d = 0; d < g.dim; ++d) {
    auto w = face_walk(g, d);
    for (long f = 0; f < w.count; ++f) {
      long i, j, k;
      face_coords(w, f, i, j, k);
      long pos = (d == 0) ? i : (d == 1) ? j : k;
      const double af = g.face_area[d][f] * F.axis[d][f];
      if (pos > 0) {  // this is the plus-side face of the cell below
        long ci = i, cj = j, ck = k;
        if (d == 0) ci = pos - 1; else if (d == 1) cj = pos - 1; else ck = pos - 1;
        long c = g.cell_index(int(ci), int(cj), int(ck));
        out.v[c] += af / g.cell_volume[c];
      }
      if (pos < g.n[d]) {
        long c = g.cell_index(int(i), int(j), int(k));
        out.v[c] -= af / g.cell_volume[c];
      }
    }
  }
  return out;
}

double cell_inner(const Field& a, const Field& b) {
  return (a.v * b.v * a.grid->cell_volume).sum();
}

double face_inner(const FaceField& a, const FaceField& b) {
  double s = 0.0;
  for (int d = 0; d < a.grid->dim; ++d)
    s += (a.axis[d] * b.axis[d] * a.grid->face_weight[d]).sum();
  return s;
}

std::array<Eigen::ArrayXd, 3> cell_gradient(const Field& u) {
  const Grid& g = *u.grid;
  FaceField grad = discrete_gradient(u);
  std::array<Eigen::ArrayXd, 3> out;
  for (int d = 0; d < g.dim; ++d) out[d] = Eigen::ArrayXd::Zero(g.cells());
  for (int d = 0; d < g.dim; ++d) {
    auto w = face_walk(g, d);
    for (long f = 0; f < w.count; ++f) {
      long i, j, k;
      face_coords(w, f, i, j, k);
      long pos = (d == 0) ? i : (d == 1) ? j : k;
      const double gf = grad.axis[d][f];
      if (pos > 0) {
        long ci = i, cj = j, ck = k;
        if (d == 0) ci = pos - 1; else if (d == 1) cj = pos - 1; else ck = pos - 1;
        out[d][g.cell_index(int(ci), int(cj), int(ck))] += 0.5 * gf;
      }
      if (pos < g.n[d]) out[d][g.cell_index(int(i), int(j), int(k))] += 0.5 * gf;
    }
  }
  return out;
}

Eigen::ArrayXd cell_gradient_magnitude(const Field& u) {
  auto comp = cell_gradient(u);
  Eigen::ArrayXd m = Eigen::ArrayXd::Zero(u.grid->cells());
  for (int d = 0; d < u.grid->dim; ++d) m += comp[d].square();
  return m.sqrt();
}

Eigen::ArrayXd truncate_T(const Eigen::ArrayXd& v, double k) {
  return v.cwiseMin(k).cwiseMax(-k);
}
Eigen::ArrayXd truncate_G(const Eigen::ArrayXd& v, double k) {
  return v - truncate_T(v, k);
}
Field truncate_T(const Field& u, double k) { return Field(u.grid, truncate_T(u.v, k)); }
Field truncate_G(const Field& u, double k) { return Field(u.grid, truncate_G(u.v, k)); }

// ---------------------------------------------------------------------------
// CoefficientField
// ---------------------------------------------------------------------------

CoefficientField CoefficientField::identity(const std::shared_ptr<const Grid>& g) {
  CoefficientField A;
  A.grid = g;
  A.alpha = A.Lambda = 1.0;
  A.is_identity = true;
  A.sym = Eigen::ArrayXXd::Zero(g->cells(), 6);
  A.sym.col(0) = A.sym.col(1) = A.sym.col(2) = Eigen::ArrayXd::Ones(g->cells());
  return A;
}

CoefficientField CoefficientField::isotropic(const std::shared_ptr<const Grid>& g, double value) {
  if (!(value > 0)) throw std::domain_error("CoefficientField::isotropic: value must be positive");
  CoefficientField A = identity(g);
  A.sym.col(0) *= value;
  A.sym.col(1) *= value;
  A.sym.col(2) *= value;
  A.alpha = A.Lambda = value;
  A.is_identity = (value == 1.0);
  return A;
}

CoefficientField CoefficientField::random_spd(const std::shared_ptr<const Grid>& g, double alpha,
                                              double Lambda, std::uint64_t seed) {
  if (!(alpha > 0) || !(Lambda >= alpha))
    throw std::domain_error("CoefficientField::random_spd: need 0 < alpha <= Lambda");
  CoefficientField A = identity(g);
  A.alpha = alpha;
  A.Lambda = Lambda;
  A.is_identity = false;
  Rng rng(seed);
  const int D = g->dim;
  for (long c = 0; c < g->cells(); ++c) {
    if (D == 1) {
      A.sym(c, 0) = rng.uniform(alpha, Lambda);
      continue;
    }
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    if (D == 2) {
      double t = rng.uniform(0, 2 * M_PI);
      R(0, 0) = std::cos(t); R(0, 1) = -std::sin(t);
      R(1, 0) = std::sin(t); R(1, 1) = std::cos(t);
    } else {
      Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
      if (axis.norm() < 1e-12) axis = Eigen::Vector3d::UnitX();
      R = Eigen::AngleAxisd(rng.uniform(0, 2 * M_PI), axis.normalized()).toRotationMatrix();
    }
    Eigen::Vector3d lam = Eigen::Vector3d::Ones();
    for (int d = 0; d < D; ++d) lam[d] = rng.uniform(alpha, Lambda);
    Eigen::Matrix3d M = R * lam.asDiagonal() * R.transpose();
    A.sym(c, 0) = M(0, 0);
    A.sym(c, 1) = M(1, 1);
    A.sym(c, 2) = M(2, 2);
    A.sym(c, 3) = M(0, 1);
    A.sym(c, 4) = M(0, 2);
    A.sym(c, 5) = M(1, 2);
  }
  return A;
}

Eigen::Matrix3d CoefficientField::cell_matrix(long c) const {
  Eigen::Matrix3d M;
  M << sym(c, 0), sym(c, 3), sym(c, 4),
       sym(c, 3), sym(c, 1), sym(c, 5),
       sym(c, 4), sym(c, 5), sym(c, 2);
  return M;
}

bool CoefficientField::verify_bounds(double tol) const {
  const int D = grid->dim;
  for (long c = 0; c < grid->cells(); ++c) {
    Eigen::Matrix3d M = cell_matrix(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.topLeftCorner(D, D));
    if (es.eigenvalues().minCoeff() < alpha - tol) return false;
    if (es.eigenvalues().maxCoeff() > Lambda + tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PFluxOperator
// ---------------------------------------------------------------------------

PFluxOperator::PFluxOperator(std::shared_ptr<const Grid> grid, double p, double eps,
                             std::shared_ptr<const CoefficientField> A)
    : grid_(std::move(grid)), p_(p), eps_(eps), A_(std::move(A)) {
  if (!(p_ > 1.0)) throw std::domain_error("PFluxOperator: requires p > 1");
  if (eps_ < 0) throw std::domain_error("PFluxOperator: eps must be nonnegative");
  if (A_ && A_->grid.get() != grid_.get())
    throw std::domain_error("PFluxOperator: coefficient field lives on a different grid");
  build_stencils();
}

void PFluxOperator::build_stencils() {
  const Grid& g = *grid_;
  for (int d = 0; d < g.dim; ++d) {
    auto w = face_walk(g, d);
    AxisStencil& st = stencil_[d];
    st.offsets.assign(std::size_t(w.count) + 1, 0);
    st.left.assign(std::size_t(w.count), -1);
    st.right.assign(std::size_t(w.count), -1);
    st.entries.clear();
    for (long f = 0; f < w.count; ++f) {
      long i, j, k;
      face_coords(w, f, i, j, k);
      long pos = (d == 0) ? i : (d == 1) ? j : k;
      std::map<std::pair<int, int>, double> acc;  // (cell, comp) -> weight
      long L = -1, R = -1;
      if (pos > 0) {
        long ci = i, cj = j, ck = k;
        if (d == 0) ci = pos - 1; else if (d == 1) cj = pos - 1; else ck = pos - 1;
        L = g.cell_index(int(ci), int(cj), int(ck));
      }
      if (pos < g.n[d]) R = g.cell_index(int(i), int(j), int(k));
      st.left[f] = int(L);
      st.right[f] = int(R);

      const bool origin_face = (g.mode == GridMode::Radial && pos == 0);
      if (!origin_face) {
        const double inv = 1.0 / g.face_delta[d][f];
        if (L >= 0) acc[{int(L), d}] -= inv;
        if (R >= 0) acc[{int(R), d}] += inv;
      }

      // transverse components: average the adjacent cells' centered gradients
      if (!origin_face && g.dim > 1) {
        long adj[2] = {L, R};
        int nadj = (L >= 0) + (R >= 0);
        double share = 1.0 / nadj;
        for (long cc : adj) {
          if (cc < 0) continue;
          // coordinates of cell cc
          int ck2 = int(cc % g.n[2]);
          int cj2 = int((cc / g.n[2]) % g.n[1]);
          int ci2 = int(cc / (long(g.n[1]) * g.n[2]));
          int coord[3] = {ci2, cj2, ck2};
          for (int e = 0; e < g.dim; ++e) {
            if (e == d) continue;
            const double he = g.h[e];
            // minus-side face difference
            if (coord[e] > 0) {
              int nb[3] = {coord[0], coord[1], coord[2]};
              nb[e] -= 1;
              long c_nb = g.cell_index(nb[0], nb[1], nb[2]);
              acc[{int(cc), e}] += share * 0.5 / he;
              acc[{int(c_nb), e}] -= share * 0.5 / he;
            } else {
              acc[{int(cc), e}] += share * 0.5 * 2.0 / he;
            }
            // plus-side face difference
            if (coord[e] + 1 < g.n[e]) {
              int nb[3] = {coord[0], coord[1], coord[2]};
              nb[e] += 1;
              long c_nb = g.cell_index(nb[0], nb[1], nb[2]);
              acc[{int(c_nb), e}] += share * 0.5 / he;
              acc[{int(cc), e}] -= share * 0.5 / he;
            } else {
              acc[{int(cc), e}] -= share * 0.5 * 2.0 / he;
            }
          }
        }
      }

      for (const auto& [key, wgt] : acc)
        if (wgt != 0.0) st.entries.push_back({key.first, key.second, wgt});
      st.offsets[std::size_t(f) + 1] = int(st.entries.size());
    }
  }
}

void PFluxOperator::face_matrix(int d, long f, double M[3][3]) const {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) M[a][b] = (a == b) ? 1.0 : 0.0;
  if (!A_ || A_->is_identity) return;
  const AxisStencil& st = stencil_[d];
  long L = st.left[f], R = st.right[f];
  double cnt = 0;
  double acc[6] = {0, 0, 0, 0, 0, 0};
  for (long cc : {L, R}) {
    if (cc < 0) continue;
    for (int s = 0; s < 6; ++s) acc[s] += A_->sym(cc, s);
    cnt += 1;
  }
  if (cnt == 0) return;
  for (int s = 0; s < 6; ++s) acc[s] /= cnt;
  M[0][0] = acc[0]; M[1][1] = acc[1]; M[2][2] = acc[2];
  M[0][1] = M[1][0] = acc[3];
  M[0][2] = M[2][0] = acc[4];
  M[1][2] = M[2][1] = acc[5];
}

FaceField PFluxOperator::flux(const Field& u) const {
  const Grid& g = *grid_;
  FaceField out(grid_);
  const double ex = 0.5 * (p_ - 2.0);
  for (int d = 0; d < g.dim; ++d) {
    const AxisStencil& st = stencil_[d];
    const long fc = g.face_count(d);
    for (long f = 0; f < fc; ++f) {
      double gv[3] = {0, 0, 0};
      for (int e = st.offsets[f]; e < st.offsets[f + 1]; ++e)
        gv[st.entries[e].comp] += st.entries[e].w * u.v[st.entries[e].cell];
      double m = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2] + eps_ * eps_;
      double s;
      if (m == 0.0)
        s = (p_ == 2.0) ? 1.0 : 0.0;  // p > 2 limit; p < 2 requires eps > 0
      else
        s = std::pow(m, ex);
      double M[3][3];
      face_matrix(d, f, M);
      double Agd = M[d][0] * gv[0] + M[d][1] * gv[1] + M[d][2] * gv[2];
      out.axis[d][f] = s * Agd;
    }
  }
  return out;
}

Field PFluxOperator::divergence_of_flux(const Field& u) const {
  return discrete_divergence(flux(u));
}

void PFluxOperator::add_jacobian(const Field& u, double scale,
                                 std::vector<Eigen::Triplet<double>>& out) const {
  const Grid& g = *grid_;
  const double ex = 0.5 * (p_ - 2.0);
  for (int d = 0; d < g.dim; ++d) {
    const AxisStencil& st = stencil_[d];
    const long fc = g.face_count(d);
    for (long f = 0; f < fc; ++f) {
      const int e0 = st.offsets[f], e1 = st.offsets[f + 1];
      if (e0 == e1) continue;
      double gv[3] = {0, 0, 0};
      for (int e = e0; e < e1; ++e)
        gv[st.entries[e].comp] += st.entries[e].w * u.v[st.entries[e].cell];
      double m = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2] + eps_ * eps_;
      double M[3][3];
      face_matrix(d, f, M);
      double Agd = M[d][0] * gv[0] + M[d][1] * gv[1] + M[d][2] * gv[2];
      double s, c1;
      if (m == 0.0) {
        s = (p_ == 2.0) ? 1.0 : 0.0;
        c1 = 0.0;
      } else {
        s = std::pow(m, ex);
        c1 = (p_ == 2.0) ? 0.0 : (p_ - 2.0) * std::pow(m, ex - 1.0) * Agd;
      }
      const long L = st.left[f], R = st.right[f];
      const double area = g.face_area[d][f];
      for (int e = e0; e < e1; ++e) {
        const auto& en = st.entries[e];
        double dF = c1 * gv[en.comp] * en.w + s * M[d][en.comp] * en.w;
        if (L >= 0)
          out.emplace_back(int(L), en.cell, scale * area / g.cell_volume[L] * dF);
        if (R >= 0)
          out.emplace_back(int(R), en.cell, scale * (-area) / g.cell_volume[R] * dF);
      }
    }
  }
}

}  // namespace splb
