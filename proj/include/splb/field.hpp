#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "splb/grid.hpp"

namespace splb {

struct Field {
  std::shared_ptr<const Grid> grid;
  Eigen::ArrayXd v;

  Field() = default;
  explicit Field(std::shared_ptr<const Grid> g)
      : grid(std::move(g)), v(Eigen::ArrayXd::Zero(grid->cells())) {}
  Field(std::shared_ptr<const Grid> g, Eigen::ArrayXd values)
      : grid(std::move(g)), v(std::move(values)) {}

  static Field sample(std::shared_ptr<const Grid> g,
                      const std::function<double(const std::array<double, 3>&)>& f) {
    Field out(g);
    for (long c = 0; c < out.v.size(); ++c) out.v[c] = f(out.grid->cell_center(c));
    return out;
  }
};

// Face-normal components of a vector field, one array per active axis.
struct FaceField {
  std::shared_ptr<const Grid> grid;
  std::array<Eigen::ArrayXd, 3> axis;

  FaceField() = default;
  explicit FaceField(std::shared_ptr<const Grid> g) : grid(std::move(g)) {
    for (int d = 0; d < grid->dim; ++d)
      axis[d] = Eigen::ArrayXd::Zero(grid->face_count(d));
  }
};

enum class Termination { completed, blowup, newton_failure };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup: return "blowup";
    case Termination::newton_failure: return "newton_failure";
  }
  return "?";
}

struct StepRecord {
  double t = 0;          // time reached after the step
  double dt = 0;
  double sup_norm = 0;   // ||u||_inf after the step
  double lsigma = 0;     // ||u||_{L^sigma}^sigma after the step (sigma from the run)
  double grad_energy_partial = 0;  // running gradient-energy integral
  int newton_iters = 0;
};

struct Trajectory {
  std::shared_ptr<const Grid> grid;
  std::vector<double> times;           // times[0] = 0
  std::vector<Eigen::ArrayXd> states;  // one per entry of times
  std::vector<StepRecord> steps;       // one per accepted step
  Termination status = Termination::completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();

  std::size_t slices() const { return times.size(); }
  // left-endpoint quadrature weights for integrals over (0, T)
  std::vector<double> time_weights() const {
    std::vector<double> w(times.size(), 0.0);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) w[k] = times[k + 1] - times[k];
    return w;
  }
};

}  // namespace splb
