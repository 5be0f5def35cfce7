#include "doctest.h"

#include <cmath>

#include "gsob/functional.hpp"
#include "gsob/hermite.hpp"
#include "gsob/rng.hpp"
#include "gsob/serialize.hpp"

using namespace gsob;

TEST_CASE("vector-valued evaluation") {
  // f = (x1, x1 x2) at (3,2) -> (3,6)
  PolyFunctional f(2, 2);
  f.components[0] = RatPoly::variable(2, 0);
  f.components[1].add_term(MultiIndex({1, 1}), Rational(1));
  double x[2] = {3.0, 2.0};
  auto v = f.eval(std::span<const double>(x, 2));
  CHECK(v[0] == doctest::Approx(3.0));
  CHECK(v[1] == doctest::Approx(6.0));
}

TEST_CASE("partial on Hermite polynomials matches H_k' = k H_{k-1}") {
  PolyFunctional f(1, 1);
  f.components[0] = hermite_as_poly<Rational>(4, 1, 0);
  RatPoly d = f.partial(0).components[0];
  RatPoly expect = hermite_as_poly<Rational>(3, 1, 0) * Rational(4);
  CHECK(d == expect);
}

TEST_CASE("corpus determinism and witnesses") {
  CorpusSpec spec;
  spec.dim = 2;
  spec.codim = 1;
  spec.degree_max = 3;
  spec.count = 8;
  spec.seed = 77;
  auto a = generate_corpus(spec);
  auto b = generate_corpus(spec);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(functional_to_json(a[i].f).dump() == functional_to_json(b[i].f).dump());
  }

  // witnesses: x1 first, then H_k up to the degree cap
  CHECK(a[0].id == "w_x1");
  CHECK(a[0].f.components[0].coeff(MultiIndex({1, 0})) == Rational(1));
  CHECK(a[1].id == "w_H1");
  CHECK(a[3].id == "w_H3");

  // every member has exact unit L^2 norm
  for (const auto& m : a) CHECK(l2_norm_sq(m.f) == Rational(1));
}

TEST_CASE("corpus respects count and rejects empty ranges") {
  CorpusSpec spec;
  spec.dim = 1;
  spec.count = 50;
  spec.degree_max = 3;
  spec.seed = 1;
  auto c = generate_corpus(spec);
  CHECK(c.size() == 50u);  // witnesses first, random draws fill the rest
  CHECK(c[0].id == "w_x1");
  spec.count = 2;  // tiny corpora keep the leading witnesses
  auto tiny = generate_corpus(spec);
  CHECK(tiny.size() == 2u);
  CHECK(tiny[1].id == "w_H1");
  spec.count = 0;
  CHECK_THROWS_AS((void)generate_corpus(spec), std::invalid_argument);
}

TEST_CASE("rotation: identity, planar rotation of x1, radial invariance") {
  PolyFunctional fx(2, 1);
  fx.components[0] = RatPoly::variable(2, 0);

  std::vector<std::vector<double>> I{{1, 0}, {0, 1}};
  auto same = rotate(fx, I);
  CHECK(same.components[0].coeff(MultiIndex({1, 0})) == doctest::Approx(1.0));
  CHECK(same.components[0].term_count() == 1);

  double th = 0.7;
  std::vector<std::vector<double>> R{{std::cos(th), -std::sin(th)},
                                     {std::sin(th), std::cos(th)}};
  auto fr = rotate(fx, R);
  CHECK(fr.components[0].coeff(MultiIndex({1, 0})) == doctest::Approx(std::cos(th)));
  CHECK(fr.components[0].coeff(MultiIndex({0, 1})) == doctest::Approx(std::sin(th)));
  CHECK(l2_norm_sq(fr) == doctest::Approx(1.0).epsilon(1e-14));

  PolyFunctional radial(2, 1);
  radial.components[0].add_term(MultiIndex({2, 0}), Rational(1));
  radial.components[0].add_term(MultiIndex({0, 2}), Rational(1));
  auto rr = rotate(radial, R);
  CHECK(rr.components[0].coeff(MultiIndex({2, 0})) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rr.components[0].coeff(MultiIndex({0, 2})) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(rr.components[0].coeff(MultiIndex({1, 1}))) < 1e-13);

  std::vector<std::vector<double>> bad{{1, 0}, {0.5, 1}};
  CHECK_THROWS_AS((void)rotate(fx, bad), std::invalid_argument);
}

TEST_CASE("random orthogonal matrices satisfy R^T R = I") {
  for (int n : {2, 3, 4}) {
    auto R = random_orthogonal(n, 99 + n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double dot = 0;
        for (int k = 0; k < n; ++k) dot += R[k][i] * R[k][j];
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("numeric functional: declared oracles agree with central differences") {
  // smooth non-polynomial functional of polynomial growth
  NumericFunctional nf;
  nf.dim = 2;
  nf.codim = 1;
  nf.oracle_order = 1;
  nf.growth_exponent = 3;
  nf.evaluator = [](std::span<const double> x, std::span<double> out) {
    out[0] = std::tanh(x[0]) * x[1] * x[1] + 0.5 * x[0];
  };
  nf.derivative_oracle = [](int order, const std::vector<int>& idx, int j,
                            std::span<const double> x) -> double {
    (void)j;
    if (order != 1) throw std::invalid_argument("only first derivatives declared");
    double s = 1.0 / std::cosh(x[0]);
    if (idx[0] == 0) return s * s * x[1] * x[1] + 0.5;
    return 2.0 * std::tanh(x[0]) * x[1];
  };

  Rng rng(2024);
  const double h = 1e-4;
  for (int rep = 0; rep < 100; ++rep) {
    double x[2] = {rng.gaussian(), rng.gaussian()};
    for (int v = 0; v < 2; ++v) {
      double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
      xp[v] += h;
      xm[v] -= h;
      double fp, fm;
      nf.evaluator(std::span<const double>(xp, 2), std::span<double>(&fp, 1));
      nf.evaluator(std::span<const double>(xm, 2), std::span<double>(&fm, 1));
      double fd = (fp - fm) / (2 * h);
      double oracle = nf.derivative_oracle(1, {v}, 0, std::span<const double>(x, 2));
      CHECK(std::abs(fd - oracle) <= 1e-5 * std::max(1.0, std::abs(oracle)));
    }
  }
}

TEST_CASE("functional JSON round trip") {
  CorpusSpec spec;
  spec.dim = 3;
  spec.codim = 2;
  spec.degree_max = 4;
  spec.count = 4;
  spec.seed = 3;
  for (const auto& m : generate_corpus(spec)) {
    auto j = functional_to_json(m.f);
    PolyFunctional back = functional_from_json(j);
    CHECK(back.dim == m.f.dim);
    CHECK(back.codim == m.f.codim);
    CHECK(back.scale2 == m.f.scale2);
    for (int c = 0; c < back.codim; ++c) CHECK(back.components[c] == m.f.components[c]);
  }
}

TEST_CASE("hermite expansion JSON round trip") {
  PolyFunctional f(2, 1);
  f.components[0] = hermite_as_poly<Rational>(3, 2, 0) * make_rational(2, 3);
  f.components[0] += RatPoly::variable(2, 1);
  auto e = to_hermite(f);
  auto j = expansion_to_json(e);
  auto back = expansion_from_json(j);
  CHECK(back.dim == e.dim);
  CHECK(back.coeffs.size() == e.coeffs.size());
  for (const auto& [a, cs] : e.coeffs) CHECK(back.coeffs.at(a) == cs);
}

TEST_CASE("matrices parse from row-major JSON") {
  auto m = matrix_from_json(nlohmann::json::parse("[[0,1],[1,0]]"));
  REQUIRE(m.size() == 2);
  CHECK(m[0][1] == 1.0);
  PolyFunctional fx(2, 1);
  fx.components[0] = RatPoly::variable(2, 0);
  auto fr = rotate(fx, m);  // swap of coordinates is orthogonal
  CHECK(fr.components[0].coeff(MultiIndex({0, 1})) == doctest::Approx(1.0));
}
