#include "doctest.h"

#include <cmath>

#include "gsob/ou.hpp"
#include "gsob/rng.hpp"

using namespace gsob;

namespace {

PolyFunctional scalar(RatPoly p) { return PolyFunctional(std::move(p)); }

RatPoly random_poly(Rng& rng, int dim, int deg_max) {
  RatPoly p(dim);
  for (int t = 0; t < 8; ++t) {
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
  if (p.is_zero()) p.add_term(MultiIndex(dim).raised(0), Rational(1));
  return p;
}

double max_coeff_dev(const DblPoly& a, const DblPoly& b) {
  double dev = 0, scale = 0;
  for (const auto& [al, c] : a.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [al, c] : b.terms()) scale = std::max(scale, std::abs(c));
  DblPoly d = a - b;
  for (const auto& [al, c] : d.terms()) dev = std::max(dev, std::abs(c));
  return scale > 0 ? dev / scale : dev;
}

}  // namespace

TEST_CASE("eigenrelation P_t H_k = e^{-kt} H_k, worked cases") {
  PolyFunctional h2 = scalar(hermite_as_poly<Rational>(2, 1, 0));
  double t = std::log(2.0);
  auto img = ou_apply(h2, t);
  DblPoly expect = hermite_as_poly<double>(2, 1, 0) * 0.25;
  CHECK(max_coeff_dev(img.components[0], expect) < 1e-14);

  // constants are fixed
  PolyFunctional c = scalar(RatPoly::constant(1, make_rational(7, 3)));
  auto imgc = ou_apply(c, 1.0);
  CHECK(imgc.components[0].coeff(MultiIndex({0})) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));

  // x^2 -> e^{-2t} x^2 + (1 - e^{-2t}), and at large t the image approaches E[f] = 1
  PolyFunctional sq(1, 1);
  sq.components[0].add_term(MultiIndex({2}), Rational(1));
  auto imgsq = ou_apply(sq, 0.8);
  double e2 = std::exp(-1.6);
  CHECK(imgsq.components[0].coeff(MultiIndex({2})) == doctest::Approx(e2).epsilon(1e-14));
  CHECK(imgsq.components[0].coeff(MultiIndex({0})) == doctest::Approx(1 - e2).epsilon(1e-14));
  auto far = ou_apply(sq, 40.0);
  CHECK(far.components[0].coeff(MultiIndex({0})) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(far.components[0].coeff(MultiIndex({2}))) < 1e-14);

  // t = 0 is the identity
  auto id = ou_apply(sq, 0.0);
  CHECK(max_coeff_dev(id.components[0], sq.components[0].to_double()) < 1e-15);
}

TEST_CASE("Mehler substitution and diagonal Hermite action agree") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    int dim = rng.uniform_int(1, 3);
    PolyFunctional f = scalar(random_poly(rng, dim, 6));
    for (double t : {0.1, 0.7, 2.0}) {
      auto a = ou_apply(f, t);
      auto b = ou_apply_diagonal(f, t);
      CHECK(max_coeff_dev(a.components[0], b.components[0]) < 1e-12);
    }
  }
}

TEST_CASE("eigen-coefficients: to_hermite(P_t f) = e^{-|alpha| t} c_alpha to 1e-12") {
  Rng rng(12);
  PolyFunctional f = scalar(random_poly(rng, 2, 5));
  double t = 0.45;
  auto img = ou_apply(f, t);
  auto ef = to_hermite(f);
  auto eimg = to_hermite(img);
  for (const auto& [alpha, cs] : ef.coeffs) {
    double expect = cs[0].get_d() * std::exp(-alpha.degree() * t);
    auto it = eimg.coeffs.find(alpha);
    double got = it == eimg.coeffs.end() ? 0.0 : it->second[0];
    CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("semigroup law P_s P_t = P_{s+t} exactly on the polynomial path") {
  Rng rng(13);
  PolyFunctional f = scalar(random_poly(rng, 2, 5));
  for (double s : {0.3, 0.7}) {
    for (double t : {0.3, 0.7}) {
      auto two_step = ou_apply(ou_apply(f, s), t);
      auto one_step = ou_apply(f, s + t);
      CHECK(max_coeff_dev(two_step.components[0], one_step.components[0]) < 1e-12);
    }
  }
}

TEST_CASE("mean preservation E[P_t G] = E[G]") {
  PolyFunctional sq(1, 1);
  sq.components[0].add_term(MultiIndex({2}), Rational(1));
  CHECK(ou_mean_preservation_residual(sq, 0.9) < 1e-13);

  PolyFunctional h3p2 = scalar(hermite_as_poly<Rational>(3, 1, 0) +
                               RatPoly::constant(1, Rational(2)));
  CHECK(ou_mean_preservation_residual(h3p2, 1.0) < 1e-13);

  Rng rng(14);
  for (int rep = 0; rep < 6; ++rep) {
    PolyFunctional f = scalar(random_poly(rng, 2, 5));
    for (double t : {0.1, 1.0, 10.0}) CHECK(ou_mean_preservation_residual(f, t) < 1e-12);
  }
}

TEST_CASE("contraction of L^q norms under P_t") {
  Rng rng(15);
  for (int rep = 0; rep < 4; ++rep) {
    int dim = rng.uniform_int(1, 2);
    PolyFunctional f = scalar(random_poly(rng, dim, 4));
    auto img = ou_apply(f, 0.6);
    for (double q : {1.0, 2.0, 3.0}) {
      auto n0 = lq_norm(f, q, {.tol = 1e-9});
      auto n1 = lq_norm(img, q, {.tol = 1e-9});
      CHECK(n1.value <= n0.value + 1e-7 + 4 * (n0.error_estimate + n1.error_estimate));
    }
  }
}

TEST_CASE("vector action is componentwise") {
  Rng rng(16);
  PolyFunctional f(2, 3);
  for (int j = 0; j < 3; ++j) f.components[j] = random_poly(rng, 2, 4);
  auto img = ou_apply(f, 0.5);
  for (int j = 0; j < 3; ++j) {
    PolyFunctional fj = scalar(f.components[j]);
    auto imgj = ou_apply(fj, 0.5);
    CHECK(max_coeff_dev(img.components[j], imgj.components[0]) < 1e-14);
  }
}

TEST_CASE("gradient commutation bound (pointwise)") {
  // linear case saturates: D(P_t x) = e^{-t}, P_t(|Dx|^q) = 1
  PolyFunctional fx = scalar(RatPoly::variable(1, 0));
  auto sat = ou_gradient_commutation(fx, 0.5, 2.0, 10);
  CHECK(std::abs(sat.min_margin) < 1e-12);

  PolyFunctional h2 = scalar(hermite_as_poly<Rational>(2, 1, 0));
  auto r = ou_gradient_commutation(h2, 0.5, 2.0, 12);
  CHECK(r.min_margin >= -1e-9);
  CHECK(r.nodes_checked == 12);

  // 2-D functional, q = 2 and q = 3
  Rng rng(17);
  PolyFunctional g = scalar(random_poly(rng, 2, 4));
  for (double q : {2.0, 3.0}) {
    auto b = ou_gradient_commutation(g, 0.5, q, 8, {.tol = 1e-9});
    CHECK(b.min_margin >= -1e-6 * std::max(1.0, std::abs(b.worst_rhs)));
  }
}

TEST_CASE("smoothing bound (pointwise)") {
  // f = x, q = 2: both sides in closed form, bound holds with slack
  PolyFunctional fx = scalar(RatPoly::variable(1, 0));
  for (double t : {0.25, 1.0}) {
    auto r = ou_smoothing_bound(fx, t, 2.0, 10);
    CHECK(r.min_margin >= -1e-10);
    // lhs is e^{-2t} pointwise; rhs at the worst node must be at least that
    CHECK(r.worst_lhs == doctest::Approx(std::exp(-2 * t)).epsilon(1e-10));
  }

  PolyFunctional h2 = scalar(hermite_as_poly<Rational>(2, 1, 0));
  auto r = ou_smoothing_bound(h2, 1.0, 2.0, 12);
  CHECK(r.min_margin >= -1e-9);

  // large t: lhs decays like e^{-2t}, rhs stays bounded away from zero
  auto far = ou_smoothing_bound(h2, 5.0, 2.0, 8);
  CHECK(far.worst_lhs < 1e-3);
  CHECK(far.min_margin > 0);

  CHECK_THROWS_AS((void)ou_smoothing_bound(fx, 1.0, 1.0, 8), std::invalid_argument);
}

TEST_CASE("long-time limit residuals") {
  PolyFunctional fx = scalar(RatPoly::variable(1, 0));
  std::vector<double> grid{0.5, 1.0, 2.0, 4.0};
  auto res = ou_long_time_residuals(fx, grid);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(res[i] == doctest::Approx(std::exp(-grid[i])).epsilon(1e-9));

  PolyFunctional c = scalar(RatPoly::constant(1, Rational(3)));
  for (double r : ou_long_time_residuals(c, grid)) CHECK(r == 0.0);

  // f = H2 + H1: residual^2 = e^{-2t} + 2 e^{-4t}
  PolyFunctional mix = scalar(hermite_as_poly<Rational>(2, 1, 0) +
                              hermite_as_poly<Rational>(1, 1, 0));
  auto rm = ou_long_time_residuals(mix, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    CHECK(rm[i] == doctest::Approx(std::sqrt(std::exp(-2 * t) + 2 * std::exp(-4 * t)))
                       .epsilon(1e-12));
  }

  // non-increasing along the grid
  Rng rng(18);
  PolyFunctional f = scalar(random_poly(rng, 2, 5));
  auto rr = ou_long_time_residuals(f, grid);
  for (size_t i = 1; i < rr.size(); ++i) CHECK(rr[i] <= rr[i - 1] + 1e-15);
}
