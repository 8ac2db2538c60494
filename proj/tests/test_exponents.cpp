#include "doctest.h"

#include <cmath>
#include <random>

#include "splb/exponents.hpp"

using namespace splb;

namespace {
// deterministic uniforms independent of libstdc++ distribution internals
struct Uniform {
  std::mt19937_64 eng;
  explicit Uniform(unsigned long long seed) : eng(seed) {}
  double operator()(double a, double b) {
    double u = std::ldexp(double(eng() >> 11), -53);
    return a + (b - a) * u;
  }
  // rational in (a, b) with denominator up to 10^4
  ExactQ rat(const ExactQ& a, const ExactQ& b) {
    long long den = 1 + static_cast<long long>(eng() % 10000);
    long long lo = a.numerator() * den / a.denominator() + 1;
    long long hi = b.numerator() * den / b.denominator() - 1;
    if (hi < lo) return (a + b) / 2;
    long long num = lo + static_cast<long long>(eng() % static_cast<unsigned long long>(hi - lo + 1));
    return ExactQ(num, den);
  }
};
}  // namespace

TEST_CASE("critical sigma closed form and frozen values") {
  CHECK(critical_sigma(3, 2.0, 1.5) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(critical_sigma<ExactQ>(3, ExactQ(2), ExactQ(3, 2)) == ExactQ(3));
  // sigma is increasing in q toward natural growth
  Uniform rng(101);
  int tested = 0;
  while (tested < 1000) {
    int N = 2 + int(rng(0, 3.999));
    double p = rng(1.01, N - 0.01);
    double lo = std::max(p - 1.0, superlinear_threshold(N, p));
    double q1 = rng(lo + 1e-6, p - 1e-6);
    double q2 = rng(lo + 1e-6, p - 1e-6);
    if (q1 > q2) std::swap(q1, q2);
    if (q2 - q1 < 1e-9) continue;
    CHECK(critical_sigma(N, p, q1) < critical_sigma(N, p, q2));
    ++tested;
  }
  CHECK_THROWS_AS(critical_sigma(3, 2.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(critical_sigma(3, 2.0, 2.1), std::domain_error);
  CHECK_THROWS_AS(critical_sigma(3, 3.5, 3.0), std::domain_error);  // p >= N
}

TEST_CASE("sigma hits 2 and 1 exactly on the regime boundaries") {
  Uniform rng(202);
  for (int i = 0; i < 1000; ++i) {
    int N = 2 + int(rng(0, 8.999));
    // need p > 2N/(N+2) so that q = p - N/(N+2) clears the growth threshold
    ExactQ pmin = std::max(ExactQ(2 * N, N + 2), ExactQ(1));
    ExactQ p = rng.rat(pmin + ExactQ(1, 100), ExactQ(N) - ExactQ(1, 100));
    ExactQ q2 = p - ExactQ(N, N + 2);
    if (q2 > superlinear_threshold(N, p))
      CHECK(critical_sigma(N, p, q2) == ExactQ(2));
    ExactQ q1 = p - ExactQ(N, N + 1);
    if (q1 > superlinear_threshold(N, p))
      CHECK(critical_sigma(N, p, q1) == ExactQ(1));
  }
}

TEST_CASE("superlinear threshold branches") {
  CHECK(superlinear_threshold(4, 2.0) == doctest::Approx(1.0));
  CHECK(superlinear_threshold(3, 1.5) == doctest::Approx(0.75));
  CHECK(superlinear_threshold<ExactQ>(5, ExactQ(3)) == ExactQ(13, 7));
  // both branches agree at p = 2 for every N
  for (int N = 3; N <= 12; ++N) {
    ExactQ half = ExactQ(2) / 2;
    ExactQ lin = (ExactQ(2) * (N + 1) - N) / (N + 2);
    CHECK(half == lin);
    CHECK(superlinear_threshold<ExactQ>(N, ExactQ(2)) == ExactQ(1));
  }
}

TEST_CASE("beta exponent") {
  CHECK(beta_exponent(2.0, 1.3) == doctest::Approx(1.0));
  CHECK(beta_exponent(2.0, 3.7) == doctest::Approx(1.0));
  CHECK(beta_exponent(3.0, 2.0) == doctest::Approx(1.5));
  Uniform rng(303);
  for (int i = 0; i < 500; ++i) {
    double p = rng(1.01, 6.0);
    double sigma = rng(0.2, 8.0);
    double beta = beta_exponent(sigma, p);
    CHECK((beta >= 1.0) == (sigma >= 2.0));
  }
}

TEST_CASE("gradient integrability eta in the infinite-energy band") {
  CHECK(eta_gradient(3, 2.0, 1.35) == doctest::Approx(1.75).epsilon(1e-14));
  // two closed forms agree: eta = N(q-(p-1)) + 2q - p = p(N beta + sigma)/(N + sigma)
  Uniform rng(404);
  int tested = 0;
  while (tested < 1000) {
    int N = 2 + int(rng(0, 5.999));
    double p = rng(1.01, N - 0.01);
    double lo = std::max(p - 1.0, superlinear_threshold(N, p));
    double q = rng(lo + 1e-6, p - 1e-6);
    double sigma = critical_sigma(N, p, q);
    double beta = beta_exponent(sigma, p);
    double eta1 = eta_gradient(N, p, q);
    double eta2 = p * (N * beta + sigma) / (N + sigma);
    CHECK(eta1 == doctest::Approx(eta2).epsilon(1e-11));
    if (sigma > 1.0 && sigma < 2.0) {  // orange band: q < eta < p
      CHECK(eta1 > q);
      CHECK(eta1 < p);
    }
    ++tested;
  }
  // at the finite-energy boundary q = p - N/(N+2) the ladder reaches eta = p
  CHECK(eta_gradient<ExactQ>(3, ExactQ(2), ExactQ(7, 5)) == ExactQ(2));
  for (int N = 2; N <= 8; ++N) {
    ExactQ p(17, 9);
    ExactQ q2 = p - ExactQ(N, N + 2);
    CHECK(eta_gradient(N, p, q2) == p);
  }
}

TEST_CASE("datum regularity ladder nu(a)") {
  // a = 1 keeps nu = 1 for every admissible (N, p)
  Uniform rng(505);
  for (int i = 0; i < 400; ++i) {
    int N = 2 + int(rng(0, 6.999));
    ExactQ p = rng.rat(ExactQ(101, 100), ExactQ(N) - ExactQ(1, 100));
    CHECK(nu_of_a(N, p, ExactQ(1)) == ExactQ(1));
    // at the cap a = (p(N+2)/N)' the ladder tops out at nu = 2
    ExactQ cap = nu_datum_cap(N, p);
    CHECK(nu_of_a(N, p, cap) == ExactQ(2));
  }
  CHECK(nu_of_a(3, 2.0, 1.2) == doctest::Approx(3.6 / 2.6).epsilon(1e-14));
  CHECK_THROWS_AS(nu_of_a(3, 2.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(nu_of_a(3, 2.0, 1.6), std::domain_error);  // above cap 10/7
}

TEST_CASE("gradient power b along the ladder") {
  CHECK(b_of_nu(3, 2.0, 1.0) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(b_of_a(3, 2.0, 1.0) == doctest::Approx(1.25).epsilon(1e-14));
  Uniform rng(606);
  for (int i = 0; i < 400; ++i) {
    int N = 2 + int(rng(0, 6.999));
    ExactQ p = rng.rat(ExactQ(101, 100), ExactQ(N) - ExactQ(1, 100));
    // nu = 2 recovers the full p-integrability of the gradient
    CHECK(b_of_nu(N, p, ExactQ(2)) == p);
    // the two parameterizations compose exactly
    ExactQ cap = nu_datum_cap(N, p);
    ExactQ a = rng.rat(ExactQ(1), cap);
    CHECK(b_of_a(N, p, a) == b_of_nu(N, p, nu_of_a(N, p, a)));
    // L^1 datum: b(1) = (p(N+1)-N)/(N+1), better than p/2 iff p > 2N/(N+1)
    ExactQ b1 = b_of_a(N, p, ExactQ(1));
    CHECK(b1 == (p * (N + 1) - N) / (N + 1));
    CHECK((b1 > p / 2) == (p > ExactQ(2 * N, N + 1)));
  }
}

TEST_CASE("mixed-norm ladder for forcing") {
  CHECK(nu_mixed(3, 2.0, 2.0, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
  Uniform rng(707);
  for (int i = 0; i < 400; ++i) {
    int N = 2 + int(rng(0, 6.999));
    ExactQ p = rng.rat(ExactQ(101, 100), ExactQ(N) - ExactQ(1, 100));
    ExactQ m = rng.rat(ExactQ(1), ExactQ(3));
    // r = 1 collapses the mixed ladder to nu = m for any p
    CHECK(nu_mixed(N, p, m, ExactQ(1)) == m);
    // m = r = a collapses to the datum ladder
    ExactQ cap = nu_datum_cap(N, p);
    ExactQ a = rng.rat(ExactQ(1), cap);
    ExactQ den = ExactQ(N) * a - p * a * (a - 1);
    if (den > 0) CHECK(nu_mixed(N, p, a, a) == nu_of_a(N, p, a));
  }
  CHECK_THROWS_AS(nu_mixed(3, 2.0, 6.0, 4.0), std::domain_error);  // denominator <= 0
}

TEST_CASE("harnack expansion exponent") {
  CHECK(lambda_harnack(3, 2.0) == doctest::Approx(2.0));
  CHECK(lambda_harnack<ExactQ>(4, ExactQ(5, 2)) == ExactQ(9, 2));  // 2.5*5 - 8
}

TEST_CASE("sublinear exponents") {
  auto s1 = sublinear_exponents(3, 1.5, 2.0);
  CHECK(s1.mu == doctest::Approx(1.0));
  CHECK(s1.b == doctest::Approx(1.5));
  auto s2 = sublinear_exponents(3, 1.1, 1.0);
  CHECK(s2.b == doctest::Approx(0.55));
  CHECK(s2.mu == doctest::Approx(0.1 / 1.1));
  // the two b-branches agree at the pivot p = 2N/(N+m)
  for (int N = 2; N <= 6; ++N) {
    for (long long mnum = 1; mnum <= 8; ++mnum) {
      ExactQ m(mnum, 3);
      if (m < 1) continue;
      ExactQ pivot = ExactQ(2 * N) / (ExactQ(N) + m);
      if (!(pivot > 1) || !(pivot < N)) continue;
      ExactQ b_low = pivot * m / 2;
      ExactQ b_high = (ExactQ(N) * (m - 2 + pivot) + pivot * m) / (ExactQ(N) + m);
      CHECK(b_low == b_high);
      CHECK(sublinear_exponents(N, pivot, m).b == b_low);
    }
  }
}

TEST_CASE("classification: frozen regime table at N=3, p=2") {
  auto reg = [](double q) { return classify(ProblemExponents{3, 2.0, q, 1.0}).regime; };
  CHECK(reg(1.50) == Regime::FiniteEnergyRed);
  CHECK(reg(1.40) == Regime::FiniteEnergyRed);  // closed left end
  CHECK(reg(1.35) == Regime::InfiniteEnergyOrange);
  CHECK(reg(1.25) == Regime::BoundaryLLogL);
  CHECK(reg(1.10) == Regime::RenormalizedYellow);
  CHECK(reg(1.00) == Regime::LinearBorderline);  // p >= 2 branch binds
  CHECK(reg(0.90) == Regime::Sublinear);
  CHECK(reg(2.00) == Regime::NaturalGrowth);
  CHECK_THROWS_AS(classify(ProblemExponents{3, 2.0, 2.1, 1.0}), std::domain_error);

  auto rep = classify(ProblemExponents{3, 2.0, 1.5, 1.0});
  CHECK(rep.required_sigma == doctest::Approx(3.0));
  CHECK(rep.notion == SolutionNotion::WeakFiniteEnergy);
  auto rep_o = classify(ProblemExponents{3, 2.0, 1.35, 1.0});
  CHECK(rep_o.required_sigma == doctest::Approx(3 * 0.35 / 0.65));
  CHECK(rep_o.notion == SolutionNotion::TruncationRenormalized);
  auto rep_y = classify(ProblemExponents{3, 2.0, 1.1, 1.0});
  CHECK(rep_y.required_sigma == doctest::Approx(1.0));
  CHECK(rep_y.notion == SolutionNotion::FullyRenormalized);
}

TEST_CASE("classification: p/2 threshold is sublinear-inclusive for p < 2") {
  CHECK(classify(ProblemExponents{3, 1.5, 0.75, 1.0}).regime == Regime::Sublinear);
  CHECK(classify(ProblemExponents{3, 1.5, 0.76, 1.0}).regime == Regime::InfiniteEnergyOrange);
  CHECK(classify(ProblemExponents{3, 1.5, 0.9, 1.0}).regime == Regime::FiniteEnergyRed);
  // p = 2N/(N+2): the red zone opens up at p/2 but the endpoint stays sublinear
  CHECK(classify(ProblemExponents{3, 1.2, 0.6, 1.0}).regime == Regime::Sublinear);
  CHECK(classify(ProblemExponents{3, 1.2, 0.61, 1.0}).regime == Regime::FiniteEnergyRed);
  // yellow needs p > 2N/(N+1): marcinkiewicz scenario lives there
  CHECK(classify(ProblemExponents{2, 1.8, 1.05, 1.0}).regime == Regime::RenormalizedYellow);
  CHECK(classify(2, ExactQ(9, 5), ExactQ(17, 15)).regime == Regime::BoundaryLLogL);
  CHECK(classify(ProblemExponents{2, 1.8, 1.8 - 2.0 / 3.0, 1.0}).regime == Regime::BoundaryLLogL);
}

TEST_CASE("classification: sublinear subcase from the datum space") {
  ProblemExponents pe{3, 1.5, 0.7, 1.0};
  auto r2 = classify(pe, DataSpaceSpec{2.0, 1.0, 0});
  CHECK(r2.m_subcase == SublinearSubcase::mGE2);
  CHECK(r2.notion == SolutionNotion::WeakFiniteEnergy);
  auto r15 = classify(pe, DataSpaceSpec{1.5, 1.0, 0});
  CHECK(r15.m_subcase == SublinearSubcase::mIn12);
  CHECK(r15.notion == SolutionNotion::TruncationRenormalized);
  auto r1 = classify(pe, DataSpaceSpec{1.0, 1.0, 0});
  CHECK(r1.m_subcase == SublinearSubcase::mEQ1);
  CHECK(r1.notion == SolutionNotion::FullyRenormalized);
}

TEST_CASE("classification: exact and double paths agree off the boundaries") {
  Uniform rng(808);
  int tested = 0;
  while (tested < 500) {
    int N = 2 + int(rng(0, 4.999));
    ExactQ p = rng.rat(ExactQ(105, 100), ExactQ(N) - ExactQ(5, 100));
    ExactQ q = rng.rat(ExactQ(1, 100), p);
    double pd = to_dbl(p), qd = to_dbl(q);
    // skip samples that sit within double-tolerance of a breakpoint
    double bps[] = {pd / 2, (pd * (N + 1) - N) / (N + 2), pd - double(N) / (N + 1),
                    pd - double(N) / (N + 2), pd};
    bool near = false;
    for (double b : bps) near = near || std::abs(qd - b) < 1e-9;
    if (near) continue;
    CHECK(classify(N, p, q).regime == classify(N, pd, qd).regime);
    ++tested;
  }
}

TEST_CASE("data admissibility inequality") {
  ProblemExponents pe{3, 2.0, 1.5, 1.0};
  // time-integrable slot absent: N sigma / m <= N(p-1) + p sigma, boundary included
  CHECK(admissible_data(pe, DataSpaceSpec{1.0, INFINITY, 0}));
  CHECK(admissible_data(pe, DataSpaceSpec{2.0, INFINITY, 0}));
  CHECK_FALSE(admissible_data(pe, DataSpaceSpec{1.0, 20.0, 0}));
  CHECK(admissible_data(pe, DataSpaceSpec{INFINITY, INFINITY, 0}));
  CHECK(admissible_data(pe, DataSpaceSpec{INFINITY, 1.0, 0}));  // 6 <= 9

  // r = infinity reduces to m >= N(q-(p-1))/q
  Uniform rng(909);
  int tested = 0;
  while (tested < 500) {
    int N = 2 + int(rng(0, 4.999));
    double p = rng(1.05, N - 0.05);
    double lo = std::max(p - 1.0, superlinear_threshold(N, p));
    double q = rng(lo + 1e-4, p - 1e-4);
    double sigma = critical_sigma(N, p, q);
    double m = rng(1.0, 4.0);
    bool direct = m >= N * (q - (p - 1.0)) / q - 1e-9;
    CHECK(admissible_data(ProblemExponents{N, p, q, 1.0}, DataSpaceSpec{m, INFINITY, sigma}) ==
          direct);
    ++tested;
  }
}

TEST_CASE("atlas breakpoints: N=3, p=2 with triple coincidence at q=1") {
  auto rows = atlas(3, ExactQ(2));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].q_exact == "1");
  CHECK(rows[0].regime_left == "sublinear");
  CHECK(rows[0].regime_right == "yellow");
  CHECK(rows[1].q_exact == "5/4");
  CHECK(rows[1].regime_left == "yellow");
  CHECK(rows[1].regime_right == "orange");
  CHECK(rows[2].q_exact == "7/5");
  CHECK(rows[2].regime_left == "orange");
  CHECK(rows[2].regime_right == "red");
  CHECK(rows[3].q_exact == "2");
  CHECK(rows[3].regime_left == "red");
  CHECK(rows[3].regime_right == "supernatural");
}

TEST_CASE("atlas breakpoints: N=3, p=1.8 full ladder") {
  auto rows = atlas(3, ExactQ(9, 5));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].q_break == doctest::Approx(0.8));   // p-1, inside sublinear
  CHECK(rows[0].regime_left == "sublinear");
  CHECK(rows[0].regime_right == "sublinear");
  CHECK(rows[1].q_break == doctest::Approx(0.84));  // linear-growth mark, still sublinear
  CHECK(rows[1].regime_right == "sublinear");
  CHECK(rows[2].q_break == doctest::Approx(0.9));   // p/2
  CHECK(rows[2].regime_left == "sublinear");
  CHECK(rows[2].regime_right == "yellow");
  CHECK(rows[3].q_break == doctest::Approx(1.05));  // sigma = 1
  CHECK(rows[3].regime_left == "yellow");
  CHECK(rows[3].regime_right == "orange");
  CHECK(rows[4].q_break == doctest::Approx(1.2));   // sigma = 2
  CHECK(rows[4].regime_left == "orange");
  CHECK(rows[4].regime_right == "red");
  CHECK(rows[5].q_break == doctest::Approx(1.8));
  CHECK(rows[5].regime_right == "supernatural");
}

TEST_CASE("atlas: low-p cases lose the intermediate zones") {
  // 2N/(N+2) < p <= 2N/(N+1): no yellow zone, orange starts at p/2
  auto rows = atlas(3, ExactQ(13, 10));
  bool has_yellow = false, has_orange = false;
  for (auto& r : rows) {
    if (r.regime_left == "yellow" || r.regime_right == "yellow") has_yellow = true;
    if (r.regime_left == "orange" || r.regime_right == "orange") has_orange = true;
  }
  CHECK_FALSE(has_yellow);
  CHECK(has_orange);
  // p <= 2N/(N+2): everything superlinear is red
  auto rows2 = atlas(3, ExactQ(11, 10));
  for (auto& r : rows2) {
    CHECK(r.regime_left != "yellow");
    CHECK(r.regime_left != "orange");
    CHECK(r.regime_right != "yellow");
    CHECK(r.regime_right != "orange");
  }
}

TEST_CASE("derived exponents bundle") {
  auto d = derived_exponents(ProblemExponents{3, 2.0, 1.35, 1.0});
  CHECK(d.sigma == doctest::Approx(3 * 0.35 / 0.65).epsilon(1e-12));
  CHECK(d.beta == doctest::Approx((3 * 0.35 / 0.65 + 0.0) / 2.0).epsilon(1e-12));
  CHECK(d.beta == doctest::Approx(0.8077).epsilon(1e-4));
  CHECK(d.eta_grad == doctest::Approx(1.75));
  CHECK(d.q_superlinear == doctest::Approx(1.0));
  CHECK(d.q_sigma1 == doctest::Approx(1.25));
  CHECK(d.q_sigma2 == doctest::Approx(1.4));
  CHECK(d.lambda == doctest::Approx(2.0));
  Uniform rng(111);
  for (int i = 0; i < 300; ++i) {
    int N = 2 + int(rng(0, 4.999));
    double p = rng(1.05, N - 0.05);
    double q = rng(0.05, p);
    auto dd = derived_exponents(ProblemExponents{N, p, q, 1.0});
    if (std::isfinite(dd.sigma)) CHECK((dd.beta >= 1.0) == (dd.sigma >= 2.0));
  }
}
