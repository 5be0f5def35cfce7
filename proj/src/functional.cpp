#include "gsob/functional.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <memory>

#include "gsob/hermite.hpp"
#include "gsob/rng.hpp"

namespace gsob {

namespace {

void require_orthogonal(const std::vector<std::vector<double>>& R, int n, double tol) {
  if (static_cast<int>(R.size()) != n) throw std::invalid_argument("rotation matrix is not n x n");
  for (const auto& row : R)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("rotation matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double dot = 0;
      for (int k = 0; k < n; ++k) dot += R[k][i] * R[k][j];
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot - expect) > tol)
        throw std::invalid_argument("matrix fails R^T R = I within tolerance");
    }
}

template <class C>
NumericPolyFunctional rotate_impl(const BasicFunctional<C>& f,
                                  const std::vector<std::vector<double>>& R, double tol) {
  require_orthogonal(R, f.dim, tol);
  NumericPolyFunctional r(f.dim, f.codim);
  for (int j = 0; j < f.codim; ++j) r.components[j] = f.components[j].compose_linear_transpose(R);
  r.scale2 = detail::coeff_to_double(f.scale2);
  return r;
}

}  // namespace

NumericPolyFunctional rotate(const PolyFunctional& f, const std::vector<std::vector<double>>& R,
                             double orth_tol) {
  return rotate_impl(f, R, orth_tol);
}

NumericPolyFunctional rotate(const NumericPolyFunctional& f,
                             const std::vector<std::vector<double>>& R, double orth_tol) {
  return rotate_impl(f, R, orth_tol);
}

std::vector<std::vector<double>> random_orthogonal(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix signs so the factorization is unique (and Q is Haar distributed)
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = q(i, j);
  return out;
}

NumericFunctional as_numeric_functional(const PolyFunctional& f, int oracle_order) {
  NumericFunctional nf;
  nf.dim = f.dim;
  nf.codim = f.codim;
  nf.growth_exponent = f.degree();
  nf.oracle_order = oracle_order;
  auto fc = std::make_shared<PolyFunctional>(f);
  nf.evaluator = [fc](std::span<const double> x, std::span<double> out) {
    auto v = fc->eval(x);
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  };
  nf.derivative_oracle = [fc](int order, const std::vector<int>& idx, int j,
                              std::span<const double> x) {
    Poly<Rational> p = fc->components[j];
    for (int k = 0; k < order; ++k) p = p.partial(idx[k]);
    return fc->scale() * p.eval(x);
  };
  return nf;
}

std::vector<CorpusMember> generate_corpus(const CorpusSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("corpus count must be >= 1");
  if (spec.dim < 1 || spec.codim < 1 || spec.degree_max < 1)
    throw std::invalid_argument("corpus ranges must be nonempty");
  if (spec.coeff_lo > spec.coeff_hi) throw std::invalid_argument("empty coefficient range");

  std::vector<CorpusMember> out;

  // Mandatory witnesses first: the identity x_1 (the counterexample
  // functional f(x)=x in dimension one) and each Hermite polynomial up to the
  // degree cap. Seeded random draws fill the remaining slots, so the corpus
  // size is exactly `count`.
  {
    PolyFunctional id(spec.dim, spec.codim);
    for (int j = 0; j < spec.codim; ++j)
      id.components[j] = RatPoly::variable(spec.dim, 0);
    out.push_back({"w_x1", normalized(std::move(id))});
  }
  for (int k = 1; k <= spec.degree_max && static_cast<int>(out.size()) < spec.count; ++k) {
    PolyFunctional h(spec.dim, spec.codim);
    for (int j = 0; j < spec.codim; ++j)
      h.components[j] = hermite_as_poly<Rational>(k, spec.dim, 0);
    out.push_back({"w_H" + std::to_string(k), normalized(std::move(h))});
  }

  Rng rng(split_seed(spec.seed, "corpus"));
  int randoms = spec.count - static_cast<int>(out.size());
  for (int r = 0; r < randoms; ++r) {
    PolyFunctional f(spec.dim, spec.codim);
    bool nonzero = false;
    for (int attempt = 0; attempt < 64 && !nonzero; ++attempt) {
      for (int j = 0; j < spec.codim; ++j) {
        RatPoly p(spec.dim);
        int deg = rng.uniform_int(1, spec.degree_max);
        // sparse draw over all monomials of total degree <= deg
        std::vector<MultiIndex> all;
        MultiIndex a(spec.dim);
        std::function<void(int, int, MultiIndex&)> walk = [&](int var, int remaining,
                                                              MultiIndex& cur) {
          if (var == spec.dim) {
            all.push_back(cur);
            return;
          }
          for (int e = 0; e <= remaining; ++e) {
            cur[var] = e;
            walk(var + 1, remaining - e, cur);
          }
          cur[var] = 0;
        };
        walk(0, deg, a);
        for (const auto& alpha : all) {
          // keep roughly a third of the candidate monomials
          if (rng.uniform_int(0, 2) != 0) continue;
          int c = rng.uniform_int(spec.coeff_lo, spec.coeff_hi);
          if (c == 0) continue;
          p.add_term(alpha, Rational(c));
        }
        f.components[j] = p;
      }
      nonzero = !f.is_zero();
    }
    if (!nonzero) throw std::runtime_error("corpus generation kept drawing zero polynomials");
    out.push_back({"r" + std::to_string(r), normalized(std::move(f))});
  }
  return out;
}

}  // namespace gsob
