#include "doctest.h"

#include "gsob/hermite.hpp"
#include "gsob/moments.hpp"
#include "gsob/quadrature.hpp"
#include "gsob/rng.hpp"

using namespace gsob;

namespace {

RatPoly random_poly(Rng& rng, int dim, int deg_max) {
  RatPoly p(dim);
  for (int t = 0; t < 10; ++t) {
    MultiIndex a(dim);
    int budget = rng.uniform_int(0, deg_max);
    for (int v = 0; v < dim && budget > 0; ++v) {
      int e = rng.uniform_int(0, budget);
      a[v] = e;
      budget -= e;
    }
    int c = rng.uniform_int(-5, 5);
    if (c != 0) p.add_term(a, Rational(c));
  }
  return p;
}

}  // namespace

TEST_CASE("hermite base cases and recurrence values") {
  HermitePoly h0 = hermite(0);
  CHECK(h0.degree == 0);
  CHECK(h0.coefficients[0] == Rational(1));

  HermitePoly h1 = hermite(1);
  CHECK(h1.coefficients[0] == Rational(0));
  CHECK(h1.coefficients[1] == Rational(1));

  HermitePoly h2 = hermite(2);  // t^2 - 1
  CHECK(h2.coefficients[0] == Rational(-1));
  CHECK(h2.coefficients[1] == Rational(0));
  CHECK(h2.coefficients[2] == Rational(1));

  HermitePoly h3 = hermite(3);  // t^3 - 3t
  CHECK(h3.coefficients[1] == Rational(-3));
  CHECK(h3.coefficients[3] == Rational(1));

  CHECK(hermite(4).eval(0.0) == doctest::Approx(3.0));  // H4(0) = 3

  // monic leading coefficient
  for (int k = 0; k <= 12; ++k) CHECK(hermite(k).coefficients[k] == Rational(1));
}

TEST_CASE("derivative rule H_k' = k H_{k-1} exactly, k <= 12") {
  for (int k = 1; k <= 12; ++k) {
    HermitePoly d = hermite(k).derivative();
    HermitePoly hk1 = hermite(k - 1);
    REQUIRE(d.degree == hk1.degree);
    for (int i = 0; i <= d.degree; ++i) CHECK(d.coefficients[i] == Rational(k) * hk1.coefficients[i]);
  }
}

TEST_CASE("three-term recurrence as coefficient identity") {
  for (int k = 1; k <= 11; ++k) {
    HermitePoly hk = hermite(k), hk1 = hermite(k - 1), hnext = hermite(k + 1);
    // H_{k+1}(t) = t H_k(t) - k H_{k-1}(t)
    for (int d = 0; d <= k + 1; ++d) {
      Rational lhs = hnext.coefficients[d];
      Rational rhs = (d >= 1 ? hk.coefficients[d - 1] : Rational(0));
      if (d <= hk1.degree) rhs -= Rational(k) * hk1.coefficients[d];
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("to_hermite on the worked expansions") {
  // x^2 = H0 + H2
  PolyFunctional f(1, 1);
  f.components[0].add_term(MultiIndex({2}), Rational(1));
  auto e = to_hermite(f);
  CHECK(e.coeffs.at(MultiIndex({0}))[0] == Rational(1));
  CHECK(e.coeffs.at(MultiIndex({2}))[0] == Rational(1));
  CHECK(e.coeffs.size() == 2);

  // x^3 = 3 H1 + H3
  PolyFunctional g(1, 1);
  g.components[0].add_term(MultiIndex({3}), Rational(1));
  auto e3 = to_hermite(g);
  CHECK(e3.coeffs.at(MultiIndex({1}))[0] == Rational(3));
  CHECK(e3.coeffs.at(MultiIndex({3}))[0] == Rational(1));

  // constants sit in chaos 0
  PolyFunctional c(2, 1);
  c.components[0].add_term(MultiIndex({0, 0}), make_rational(7, 2));
  auto ec = to_hermite(c);
  CHECK(ec.coeffs.at(MultiIndex({0, 0}))[0] == make_rational(7, 2));
  CHECK(ec.coeffs.size() == 1);
}

TEST_CASE("projections") {
  PolyFunctional f(1, 1);  // x^2
  f.components[0].add_term(MultiIndex({2}), Rational(1));
  auto p2 = project(f, 2);
  CHECK(p2.components[0].coeff(MultiIndex({2})) == Rational(1));
  CHECK(p2.components[0].coeff(MultiIndex({0})) == Rational(-1));  // H2 = x^2 - 1
  auto p0 = project(f, 0);
  CHECK(p0.components[0].coeff(MultiIndex({0})) == Rational(1));
  CHECK(project(f, 1).components[0].is_zero());

  // H3(x1) H2(x2) lies in the single chaos C5
  PolyFunctional h(2, 1);
  h.components[0] =
      hermite_as_poly<Rational>(3, 2, 0) * hermite_as_poly<Rational>(2, 2, 1);
  CHECK(to_hermite(h).pure_chaos(5));
  CHECK(project(h, 5).components[0] == h.components[0]);
  for (int k = 0; k <= 4; ++k) CHECK(project(h, k).components[0].is_zero());

  // x^3, k=1 -> 3x
  PolyFunctional g(1, 1);
  g.components[0].add_term(MultiIndex({3}), Rational(1));
  auto p1 = project(g, 1);
  CHECK(p1.components[0].coeff(MultiIndex({1})) == Rational(3));
  CHECK(p1.components[0].term_count() == 1);

  // projections over all k sum back to f
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    PolyFunctional r(3, 1);
    r.components[0] = random_poly(rng, 3, 5);
    RatPoly sum(3);
    for (int k = 0; k <= r.components[0].degree(); ++k) sum += project(r, k).components[0];
    CHECK(sum == r.components[0]);
  }
}

TEST_CASE("chaos L2 norms") {
  PolyFunctional f(1, 1);  // x^2
  f.components[0].add_term(MultiIndex({2}), Rational(1));
  CHECK(l2_norm_chaos(f, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  PolyFunctional c(1, 1);
  c.components[0].add_term(MultiIndex({0}), Rational(-4));
  CHECK(l2_norm_chaos(c, 0) == doctest::Approx(4.0));

  PolyFunctional g(1, 1);  // x^3
  g.components[0].add_term(MultiIndex({3}), Rational(1));
  CHECK(l2_norm_chaos(g, 3) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(l2_norm_chaos(g, 1) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("round trip from_hermite(to_hermite(f)) == f, n <= 4, deg <= 6") {
  Rng rng(20240901);
  for (int rep = 0; rep < 25; ++rep) {
    int dim = rng.uniform_int(1, 4);
    PolyFunctional f(dim, 1);
    f.components[0] = random_poly(rng, dim, 6);
    PolyFunctional back = from_hermite(to_hermite(f));
    CHECK(back.components[0] == f.components[0]);
  }
}

TEST_CASE("Parseval holds exactly (symbolic)") {
  Rng rng(77);
  for (int rep = 0; rep < 15; ++rep) {
    int dim = rng.uniform_int(1, 3);
    PolyFunctional f(dim, 1);
    f.components[0] = random_poly(rng, dim, 6);
    Rational direct = gaussian_moment(f.components[0] * f.components[0]);
    auto e = to_hermite(f);
    CHECK(e.total_l2_sq() == direct);
    // and chaos-wise decomposition sums to the total
    Rational sum = 0;
    for (int k = 0; k <= e.max_order(); ++k) sum += e.chaos_l2_sq(k);
    CHECK(sum == direct);
  }
}

TEST_CASE("orthogonality: quadrature E[H_j H_k] for j,k <= 8") {
  QuadratureGrid g = QuadratureGrid::make(1, 32);
  for (int j = 0; j <= 8; ++j) {
    for (int k = 0; k <= 8; ++k) {
      HermitePoly hj = hermite(j), hk = hermite(k);
      double v = g.integrate_1d([&](double t) { return hj.eval(t) * hk.eval(t); });
      if (j != k) {
        double scale = std::sqrt(factorial(j).get_d() * factorial(k).get_d());
        CHECK(std::abs(v) < 1e-12 * scale + 1e-10);
      } else {
        // E[H_k^2] = k!, exact by symbolic moment evaluation
        RatPoly p(1);
        for (int d = 0; d <= hk.degree; ++d)
          if (sgn(hk.coefficients[d]) != 0) p.add_term(MultiIndex({d}), hk.coefficients[d]);
        CHECK(gaussian_moment(p * p) == Rational(factorial(k)));
        CHECK(v == doctest::Approx(factorial(k).get_d()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("chaos purity is exact") {
  PolyFunctional f(2, 1);
  f.components[0] = hermite_as_poly<Rational>(3, 2, 0);
  CHECK(to_hermite(f).pure_chaos(3));
  f.components[0] += RatPoly::constant(2, make_rational(1, 1000000));
  CHECK(!to_hermite(f).pure_chaos(3));
}
