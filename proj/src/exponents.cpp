#include "splb/exponents.hpp"

#include <cmath>

namespace splb {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::FiniteEnergyRed: return "red";
    case Regime::InfiniteEnergyOrange: return "orange";
    case Regime::RenormalizedYellow: return "yellow";
    case Regime::BoundaryLLogL: return "boundary_llogl";
    case Regime::LinearBorderline: return "linear_borderline";
    case Regime::Sublinear: return "sublinear";
    case Regime::NaturalGrowth: return "natural_growth";
  }
  return "?";
}

const char* notion_name(SolutionNotion n) {
  switch (n) {
    case SolutionNotion::WeakFiniteEnergy: return "weak finite-energy";
    case SolutionNotion::TruncationRenormalized: return "renormalized (truncation estimates)";
    case SolutionNotion::FullyRenormalized: return "renormalized (vanishing truncation energy)";
  }
  return "?";
}

RegimeReport classify(const ProblemExponents& pe) {
  auto pr = approx_rational(pe.p);
  auto qr = approx_rational(pe.q);
  if (pr && qr) return classify(pe.N, *pr, *qr);
  return classify(pe.N, pe.p, pe.q);
}

RegimeReport classify(const ProblemExponents& pe, const DataSpaceSpec& data) {
  RegimeReport rep = classify(pe);
  if (rep.regime == Regime::Sublinear && std::isfinite(data.m)) {
    const double m = data.m;
    if (m >= 2.0) {
      rep.m_subcase = SublinearSubcase::mGE2;
      rep.notion = SolutionNotion::WeakFiniteEnergy;
    } else if (m > 1.0) {
      rep.m_subcase = SublinearSubcase::mIn12;
      rep.notion = SolutionNotion::TruncationRenormalized;
    } else {
      rep.m_subcase = SublinearSubcase::mEQ1;
      rep.notion = SolutionNotion::FullyRenormalized;
      if (boundary_eq(pe.q, pe.p / 2))
        rep.notes += "; m = 1 needs strict q < p/2";
    }
  }
  return rep;
}

DerivedExponents derived_exponents(const ProblemExponents& pe) {
  detail::check_p_range(pe.N, pe.p, "derived_exponents");
  DerivedExponents d;
  const int N = pe.N;
  const double p = pe.p;
  const double q = pe.q;
  d.q_superlinear = superlinear_threshold(N, p);
  d.q_sigma1 = p - double(N) / (N + 1);
  d.q_sigma2 = p - double(N) / (N + 2);
  d.lambda = lambda_harnack(N, p);
  if (q > p - 1.0 && q < p) {
    d.sigma = N * (q - (p - 1.0)) / (p - q);
    d.beta = beta_exponent(d.sigma, p);
  }
  if (q > 0 && q <= p) d.eta_grad = eta_gradient(N, p, q);
  return d;
}

bool admissible_data(const ProblemExponents& pe, const DataSpaceSpec& data) {
  detail::check_p_range(pe.N, pe.p, "admissible_data");
  double sigma = data.sigma_datum;
  if (!(sigma > 0)) {
    DerivedExponents d = derived_exponents(pe);
    if (!std::isfinite(d.sigma))
      throw std::domain_error(
          "admissible_data: critical sigma undefined for these exponents; supply sigma_datum");
    sigma = d.sigma;
  }
  if (!(data.m >= 1.0) || !(data.r >= 1.0))
    throw std::domain_error("admissible_data: requires m, r >= 1");
  const int N = pe.N;
  const double p = pe.p;
  double lhs = 0.0;
  if (std::isfinite(data.m)) lhs += N * sigma / data.m;
  if (std::isfinite(data.r)) lhs += (N * (p - 2.0) + p * sigma) / data.r;
  const double rhs = N * (p - 1.0) + p * sigma;
  return lhs <= rhs + kBoundaryTol * std::max(1.0, std::abs(rhs));
}

namespace {

std::string exact_str(const ExactQ& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

template <class S>
std::vector<AtlasRow> atlas_impl(int N, const S& p, bool exact) {
  detail::check_p_range(N, p, "atlas");
  std::vector<S> bp = {
      p / S(2),
      (p * S(N + 1) - S(N)) / S(N + 2),
      p - S(1),
      p - S(N) / S(N + 1),
      p - S(N) / S(N + 2),
      p,
  };
  std::sort(bp.begin(), bp.end());
  std::vector<S> uniq;
  for (const S& b : bp)
    if (uniq.empty() || !boundary_eq(uniq.back(), b)) uniq.push_back(b);

  std::vector<AtlasRow> rows;
  S prev = S(0);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    AtlasRow row;
    row.q_break = to_dbl(uniq[i]);
    if constexpr (std::is_same_v<S, ExactQ>) {
      if (exact) row.q_exact = exact_str(uniq[i]);
    }
    const S mid_left = (prev + uniq[i]) / S(2);
    row.regime_left = regime_name(classify(N, p, mid_left).regime);
    if (i + 1 < uniq.size()) {
      const S mid_right = (uniq[i] + uniq[i + 1]) / S(2);
      row.regime_right = regime_name(classify(N, p, mid_right).regime);
    } else {
      row.regime_right = "supernatural";
    }
    prev = uniq[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<AtlasRow> atlas(int N, const ExactQ& p) { return atlas_impl(N, p, true); }

std::vector<AtlasRow> atlas(int N, double p) {
  if (auto pr = approx_rational(p)) return atlas_impl(N, *pr, true);
  return atlas_impl(N, p, false);
}

}  // namespace splb
