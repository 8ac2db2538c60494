#pragma once

// Exponent calculus for the superlinear-gradient parabolic problem
//
//   u_t - div( A(t,x) grad u |grad u|^{p-2} ) = gamma |grad u|^q + f
//
// with 1 < p < N and q below the natural growth q = p.  Every formula is a
// free function templated on the scalar so it can run either in double
// precision or in exact rational arithmetic (splb::ExactQ); regime boundaries
// are decided exactly whenever the inputs are rational.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splb/rational.hpp"

namespace splb {

inline constexpr double kBoundaryTol = 1e-12;

inline bool boundary_eq(double a, double b) {
  return std::abs(a - b) <= kBoundaryTol * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool boundary_eq(const ExactQ& a, const ExactQ& b) { return a == b; }

namespace detail {
template <class S>
void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}
template <class S>
void check_p_range(int N, const S& p, const char* who) {
  if (N < 2) throw std::domain_error(std::string(who) + ": requires N >= 2");
  if (!(p > S(1)) || !(p < S(N)))
    throw std::domain_error(std::string(who) + ": requires 1 < p < N");
}
}  // namespace detail

// Growth threshold separating the superlinear regimes from the sublinear
// ones: max{ p/2, (p(N+1)-N)/(N+2) }.  The second branch binds iff p >= 2.
template <class S>
S superlinear_threshold(int N, S p) {
  detail::check_p_range(N, p, "superlinear_threshold");
  S half = p / S(2);
  S lin = (p * S(N + 1) - S(N)) / S(N + 2);
  return std::max(half, lin);
}

// Initial-datum integrability forced by the gradient growth:
//   sigma = N (q - (p-1)) / (p - q).
template <class S>
S critical_sigma(int N, S p, S q) {
  detail::check_p_range(N, p, "critical_sigma");
  if (!(q < p)) throw std::domain_error("critical_sigma: requires q < p");
  S floor_q = std::max(p - S(1), superlinear_threshold(N, p));
  if (!(q > floor_q))
    throw std::domain_error(
        "critical_sigma: requires q > max{p-1, superlinear threshold}");
  return S(N) * (q - (p - S(1))) / (p - q);
}

// Gradient-energy exponent: |u|^beta has a p-integrable gradient, with
//   beta = (sigma - 2 + p) / p.  beta >= 1 iff sigma >= 2.
template <class S>
S beta_exponent(S sigma, S p) {
  if (!(p > S(1))) throw std::domain_error("beta_exponent: requires p > 1");
  if (!(sigma > S(0))) throw std::domain_error("beta_exponent: requires sigma > 0");
  return (sigma - S(2) + p) / p;
}

// Gradient integrability in the infinite-energy band:
//   eta = N(q-(p-1)) + 2q - p, equivalently p(N beta + sigma)/(N + sigma).
template <class S>
S eta_gradient(int N, S p, S q) {
  detail::check_p_range(N, p, "eta_gradient");
  return S(N) * (q - (p - S(1))) + S(2) * q - p;
}

// Regularity ladder nu(a) for data u0 in L^a:
//   nu = N (a(p-1) - (p-2)) / (N - p(a-1)),  1 <= a <= (p(N+2)/N)'.
template <class S>
S conjugate_exponent(S x) {
  if (!(x > S(1))) throw std::domain_error("conjugate_exponent: requires x > 1");
  return x / (x - S(1));
}

template <class S>
S nu_datum_cap(int N, S p) {
  return conjugate_exponent(p * S(N + 2) / S(N));
}

template <class S>
S nu_of_a(int N, S p, S a) {
  detail::check_p_range(N, p, "nu_of_a");
  if (!(a >= S(1)))
    throw std::domain_error("nu_of_a: requires a >= 1");
  if (!(a <= nu_datum_cap(N, p)))
    throw std::domain_error("nu_of_a: requires a <= (p(N+2)/N)'");
  S den = S(N) - p * (a - S(1));
  return S(N) * (a * (p - S(1)) - (p - S(2))) / den;
}

// Gradient power integrability from the nu ladder:
//   b = (N(nu+p-2) + nu p) / (N + nu);  b(2) = p.
template <class S>
S b_of_nu(int N, S p, S nu) {
  detail::check_p_range(N, p, "b_of_nu");
  if (!(nu > S(0))) throw std::domain_error("b_of_nu: requires nu > 0");
  return (S(N) * (nu + p - S(2)) + nu * p) / (S(N) + nu);
}

// Same quantity written directly in terms of the datum exponent a:
//   b = a (p(N+1) - N) / (N - a + 2).  Composes with nu_of_a exactly.
template <class S>
S b_of_a(int N, S p, S a) {
  detail::check_p_range(N, p, "b_of_a");
  if (!(a >= S(1)) || !(a < S(N + 2)))
    throw std::domain_error("b_of_a: requires 1 <= a < N + 2");
  return a * (p * S(N + 1) - S(N)) / (S(N) - a + S(2));
}

// Mixed-norm ladder for forcing f in L^r(0,T; L^m):
//   nu = N m (r(p-1) - (p-2)) / (N r - p m (r-1)).
template <class S>
S nu_mixed(int N, S p, S m, S r) {
  detail::check_p_range(N, p, "nu_mixed");
  if (!(m >= S(1)) || !(r >= S(1)))
    throw std::domain_error("nu_mixed: requires m, r >= 1");
  S den = S(N) * r - p * m * (r - S(1));
  if (!(den > S(0)))
    throw std::domain_error("nu_mixed: N r - p m (r-1) must be positive");
  return S(N) * m * (r * (p - S(1)) - (p - S(2))) / den;
}

// Expansion-of-positivity exponent used by the intrinsic Harnack bound.
template <class S>
S lambda_harnack(int N, S p) {
  return p * S(N + 1) - S(2) * S(N);
}

// Sublinear case q <= p/2: datum u0 in L^m gives |u|^mu energy with
//   mu = (m+p-2)/p and gradient power b (branch switch at p = 2N/(N+m)).
template <class S>
struct SublinearExponents {
  S mu;
  S b;
};

template <class S>
SublinearExponents<S> sublinear_exponents(int N, S p, S m) {
  detail::check_p_range(N, p, "sublinear_exponents");
  if (!(m >= S(1)))
    throw std::domain_error("sublinear_exponents: requires m >= 1");
  S mu = (m + p - S(2)) / p;
  S pivot = S(2 * N) / (S(N) + m);
  S b;
  if (p <= pivot)
    b = p * m / S(2);
  else
    b = (S(N) * (m - S(2) + p) + p * m) / (S(N) + m);
  return {mu, b};
}

// ---------------------------------------------------------------------------
// Regime taxonomy
// ---------------------------------------------------------------------------

enum class Regime {
  FiniteEnergyRed,       // sigma >= 2: weak finite-energy solutions
  InfiniteEnergyOrange,  // 1 < sigma < 2: renormalized, no (RS.2) needed
  RenormalizedYellow,    // L^1 data: renormalized with full decay condition
  BoundaryLLogL,         // q = p - N/(N+1): L^{1+omega} datum borderline
  LinearBorderline,      // q = (p(N+1)-N)/(N+2), p >= 2: linear-growth edge
  Sublinear,             // q <= p/2 (binding branch p/2)
  NaturalGrowth,         // q = p: classification only
};

enum class SolutionNotion {
  WeakFiniteEnergy,
  TruncationRenormalized,  // renormalized without the energy-decay condition
  FullyRenormalized,       // renormalized with vanishing truncation energy
};

enum class SublinearSubcase { mGE2, mIn12, mEQ1 };

struct RegimeReport {
  Regime regime = Regime::FiniteEnergyRed;
  double required_sigma = 1.0;  // datum integrability demanded by the regime
  SolutionNotion notion = SolutionNotion::WeakFiniteEnergy;
  std::optional<SublinearSubcase> m_subcase;
  std::string notes;
};

struct ProblemExponents {
  int N = 3;
  double p = 2.0;
  double q = 1.5;
  double gamma = 1.0;
};

struct DerivedExponents {
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double eta_grad = std::numeric_limits<double>::quiet_NaN();
  double q_superlinear = 0;  // growth threshold
  double q_sigma1 = 0;       // q with sigma = 1:  p - N/(N+1)
  double q_sigma2 = 0;       // q with sigma = 2:  p - N/(N+2)
  double lambda = 0;         // Harnack expansion exponent
};

// Forcing/datum integrability request; use infinity() for L^inf slots.
struct DataSpaceSpec {
  double m = std::numeric_limits<double>::infinity();
  double r = std::numeric_limits<double>::infinity();
  double sigma_datum = 0;  // 0: take the regime's critical sigma
};

const char* regime_name(Regime r);          // short token used in CSV output
const char* notion_name(SolutionNotion n);  // human-readable notion label

template <class S>
RegimeReport classify(int N, S p, S q);

RegimeReport classify(const ProblemExponents& pe);
// Resolves the sublinear m-subcase when a datum space is known.
RegimeReport classify(const ProblemExponents& pe, const DataSpaceSpec& data);

DerivedExponents derived_exponents(const ProblemExponents& pe);

// Admissibility of (m, r) for the finite/infinite energy regimes:
//   N sigma / m + (N(p-2) + p sigma) / r <= N(p-1) + p sigma.
bool admissible_data(const ProblemExponents& pe, const DataSpaceSpec& data);

struct AtlasRow {
  double q_break = 0;
  std::string q_exact;  // exact rational rendering, e.g. "7/5"
  std::string regime_left;
  std::string regime_right;
};

// Breakpoint table of the q-axis for fixed (N, p): the sorted distinct values
// of { p/2, (p(N+1)-N)/(N+2), p-1, p-N/(N+1), p-N/(N+2), p } with the regime
// on either side of each.
std::vector<AtlasRow> atlas(int N, const ExactQ& p);
std::vector<AtlasRow> atlas(int N, double p);

// ---------------------------------------------------------------------------
// classify implementation (templated on the scalar)
// ---------------------------------------------------------------------------

template <class S>
RegimeReport classify(int N, S p, S q) {
  detail::check_p_range(N, p, "classify");
  if (!(q > S(0))) throw std::domain_error("classify: requires q > 0");
  if (q > p && !boundary_eq(q, p))
    throw std::domain_error("classify: supernatural growth (q > p) is outside the taxonomy");

  RegimeReport rep;
  const double pd = to_dbl(p);
  const double qd = to_dbl(q);

  if (boundary_eq(q, p)) {
    rep.regime = Regime::NaturalGrowth;
    rep.required_sigma = 1.0;
    rep.notion = SolutionNotion::FullyRenormalized;
    rep.notes = "natural growth q = p: classification only, outside solver scope";
    return rep;
  }

  const S half = p / S(2);
  const S lin = (p * S(N + 1) - S(N)) / S(N + 2);
  const S thr = std::max(half, lin);
  const bool linear_branch = !(lin < half);  // p >= 2

  if (boundary_eq(q, thr)) {
    if (linear_branch) {
      rep.regime = Regime::LinearBorderline;
      rep.required_sigma = 1.0;
      rep.notion = SolutionNotion::FullyRenormalized;
      rep.notes = "q = (p(N+1)-N)/(N+2) with p >= 2: linear-growth edge, excluded from solver claims";
    } else {
      rep.regime = Regime::Sublinear;
      rep.required_sigma = 1.0;
      rep.notion = SolutionNotion::TruncationRenormalized;
      rep.notes = "q = p/2: sublinear case (inclusive); notion depends on the datum space L^m";
    }
    return rep;
  }
  if (q < thr) {
    rep.regime = Regime::Sublinear;
    rep.required_sigma = 1.0;
    rep.notion = SolutionNotion::TruncationRenormalized;
    rep.notes = linear_branch
                    ? "below the linear-growth threshold; sublinear theory here covers 1 < p < 2"
                    : "sublinear case q < p/2; notion depends on the datum space L^m";
    return rep;
  }

  const S q1 = p - S(N) / S(N + 1);  // sigma = 1
  const S q2 = p - S(N) / S(N + 2);  // sigma = 2

  if (q > q2 || boundary_eq(q, q2)) {
    rep.regime = Regime::FiniteEnergyRed;
    rep.required_sigma = N * (qd - (pd - 1.0)) / (pd - qd);
    rep.notion = SolutionNotion::WeakFiniteEnergy;
    rep.notes = "finite-energy zone: u0 in L^sigma with sigma >= 2";
    return rep;
  }
  if (boundary_eq(q, q1)) {
    rep.regime = Regime::BoundaryLLogL;
    rep.required_sigma = 1.0;
    rep.notion = SolutionNotion::TruncationRenormalized;
    rep.notes = "q = p - N/(N+1): datum slightly better than L^1 (L^{1+omega}, any omega > 0)";
    return rep;
  }
  if (q > q1) {
    rep.regime = Regime::InfiniteEnergyOrange;
    rep.required_sigma = N * (qd - (pd - 1.0)) / (pd - qd);
    rep.notion = SolutionNotion::TruncationRenormalized;
    rep.notes = "infinite-energy zone: u0 in L^sigma with 1 < sigma < 2";
    return rep;
  }
  rep.regime = Regime::RenormalizedYellow;
  rep.required_sigma = 1.0;
  rep.notion = SolutionNotion::FullyRenormalized;
  rep.notes = "L^1 zone: renormalized solutions with vanishing truncation energy";
  return rep;
}

}  // namespace splb
