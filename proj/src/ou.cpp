#include "gsob/ou.hpp"

#include <cmath>
#include <stdexcept>

namespace gsob {

namespace {

/// Substitutes x_i -> a x_i + b y_i and integrates out y against gamma_n,
/// term by term via the binomial expansion and E[y^m] = (m-1)!!.
DblPoly mehler_image(const DblPoly& p, double a, double b) {
  DblPoly out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    // expand prod_i (a x_i + b y_i)^{d_i}; each y-power integrates on its own
    std::vector<std::pair<MultiIndex, double>> acc{{MultiIndex(p.dim()), c}};
    for (int v = 0; v < p.dim(); ++v) {
      int d = alpha[v];
      if (d == 0) continue;
      std::vector<std::pair<MultiIndex, double>> next;
      for (const auto& [mi, co] : acc) {
        for (int j = 0; j <= d; ++j) {
          // x_v^j term: C(d,j) a^j b^{d-j} E[y^{d-j}]
          int yd = d - j;
          if (yd % 2 != 0) continue;
          double w = binomial(d, j).get_d() * std::pow(a, j) * std::pow(b, yd) *
                     gaussian_monomial_moment(yd).get_d();
          next.emplace_back(mi.raised(v, j), co * w);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [mi, co] : acc) out.add_term(mi, co);
  }
  return out;
}

/// Substitutes y -> a x0 + b z (x0 a fixed point), returning a polynomial in z.
DblPoly mehler_shift(const DblPoly& p, double a, double b, const double* x0) {
  DblPoly out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    std::vector<std::pair<MultiIndex, double>> acc{{MultiIndex(p.dim()), c}};
    for (int v = 0; v < p.dim(); ++v) {
      int d = alpha[v];
      if (d == 0) continue;
      std::vector<std::pair<MultiIndex, double>> next;
      double ax = a * x0[v];
      std::vector<double> axpow(d + 1);
      axpow[0] = 1.0;
      for (int k = 1; k <= d; ++k) axpow[k] = axpow[k - 1] * ax;
      for (const auto& [mi, co] : acc) {
        // z_v^j coefficient: C(d,j) b^j (a x0_v)^{d-j}
        for (int j = 0; j <= d; ++j) {
          double w = binomial(d, j).get_d() * std::pow(b, j) * axpow[d - j];
          if (w != 0.0) next.emplace_back(mi.raised(v, j), co * w);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [mi, co] : acc) out.add_term(mi, co);
  }
  return out;
}

template <class C>
NumericPolyFunctional apply_mehler_impl(const BasicFunctional<C>& f, double t) {
  if (t < 0) throw std::invalid_argument("OU time must be >= 0");
  double a = std::exp(-t);
  double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  NumericPolyFunctional out(f.dim, f.codim);
  out.scale2 = detail::coeff_to_double(f.scale2);
  for (int j = 0; j < f.codim; ++j) {
    DblPoly pj = [&] {
      if constexpr (std::is_same_v<C, double>)
        return f.components[j];
      else
        return f.components[j].to_double();
    }();
    out.components[j] = mehler_image(pj, a, b);
  }
  return out;
}

template <class C>
NumericPolyFunctional apply_diagonal_impl(const BasicFunctional<C>& f, double t) {
  if (t < 0) throw std::invalid_argument("OU time must be >= 0");
  ChaosExpansion<C> e = to_hermite(f);
  ChaosExpansion<double> scaled;
  scaled.dim = e.dim;
  scaled.codim = e.codim;
  scaled.scale2 = detail::coeff_to_double(e.scale2);
  for (const auto& [alpha, cs] : e.coeffs) {
    double damp = std::exp(-static_cast<double>(alpha.degree()) * t);
    std::vector<double> v(cs.size());
    for (size_t j = 0; j < cs.size(); ++j) v[j] = detail::coeff_to_double(cs[j]) * damp;
    scaled.coeffs.emplace(alpha, std::move(v));
  }
  return from_hermite(scaled);
}

struct MehlerCoeffs {
  double a, b, prefactor;  // prefactor = e^{-t}/sqrt(1-e^{-2t})
};

MehlerCoeffs mehler_coeffs(double t) {
  if (t <= 0) throw std::invalid_argument("pointwise OU bounds need t > 0");
  double a = std::exp(-t);
  double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  return {a, b, a / b};
}

/// (P_t g)(x) for g = ||(p_1,...,p_m)||^q, by shifting each component to a
/// polynomial in the fresh Gaussian variable and reusing the L^q engine.
double pt_of_norm_power(const std::vector<const DblPoly*>& comps, double scale2, double q,
                        double a, double b, const double* x, const LqOptions& inner) {
  std::vector<DblPoly> shifted;
  std::vector<const DblPoly*> ptrs;
  shifted.reserve(comps.size());
  for (const auto* p : comps) shifted.push_back(mehler_shift(*p, a, b, x));
  for (const auto& p : shifted) ptrs.push_back(&p);
  IntegralResult r = lq_norm_components(ptrs, scale2, q, inner);
  return std::pow(r.value, q);
}

double gauss_abs_moment_local(double p) {
  return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI);
}

template <class Rhs>
PointwiseBound pointwise_scan(const NumericPolyFunctional& ptf, double q, int m_outer,
                              const Rhs& rhs_at) {
  // lhs(x) = ||D(P_t F)(x)||^q from the exact gradient of the image
  DerivativeTensor<double> grad = derivative(ptf, 1);
  PointwiseBound out;
  out.min_margin = std::numeric_limits<double>::infinity();
  QuadratureGrid g = QuadratureGrid::make(ptf.dim, m_outer);
  g.for_each([&](const double* x, double) {
    double lhs = std::pow(grad.hs_norm_pointwise(std::span<const double>(x, ptf.dim)), q);
    double rhs = rhs_at(x);
    double margin = rhs - lhs;
    ++out.nodes_checked;
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.worst_lhs = lhs;
      out.worst_rhs = rhs;
      out.worst_x.assign(x, x + ptf.dim);
    }
  });
  return out;
}

}  // namespace

NumericPolyFunctional ou_apply(const PolyFunctional& f, double t) { return apply_mehler_impl(f, t); }
NumericPolyFunctional ou_apply(const NumericPolyFunctional& f, double t) {
  return apply_mehler_impl(f, t);
}
NumericPolyFunctional ou_apply_diagonal(const PolyFunctional& f, double t) {
  return apply_diagonal_impl(f, t);
}
NumericPolyFunctional ou_apply_diagonal(const NumericPolyFunctional& f, double t) {
  return apply_diagonal_impl(f, t);
}

double ou_mean_preservation_residual(const PolyFunctional& f, double t) {
  NumericPolyFunctional ptf = ou_apply(f, t);
  double acc = 0.0;
  for (int j = 0; j < f.codim; ++j) {
    double m_t = gaussian_moment(ptf.components[j]) * ptf.scale();
    double m_0 = gaussian_moment(f.components[j]).get_d() * f.scale();
    acc += (m_t - m_0) * (m_t - m_0);
  }
  return std::sqrt(acc);
}

PointwiseBound ou_gradient_commutation(const PolyFunctional& f, double t, double q, int m_outer,
                                       const LqOptions& inner) {
  if (q < 1.0) throw std::invalid_argument("gradient commutation needs q >= 1");
  if (f.codim != 1)
    throw std::invalid_argument("pointwise OU bounds are stated for scalar functionals");
  auto mc = mehler_coeffs(t);
  NumericPolyFunctional ptf = ou_apply(f, t);
  NumericPolyFunctional fd = f.to_numeric();
  DerivativeTensor<double> df = derivative(fd, 1);
  std::vector<const DblPoly*> grad_comps;
  for (const auto& p : df.entries) grad_comps.push_back(&p);
  double damp = std::exp(-q * t);
  return pointwise_scan(ptf, q, m_outer, [&](const double* x) {
    return damp * pt_of_norm_power(grad_comps, fd.scale2, q, mc.a, mc.b, x, inner);
  });
}

PointwiseBound ou_smoothing_bound(const PolyFunctional& f, double t, double q, int m_outer,
                                  const LqOptions& inner) {
  if (q <= 1.0) throw std::invalid_argument("smoothing bound needs q > 1");
  if (f.codim != 1)
    throw std::invalid_argument("pointwise OU bounds are stated for scalar functionals");
  auto mc = mehler_coeffs(t);
  NumericPolyFunctional ptf = ou_apply(f, t);
  NumericPolyFunctional fd = f.to_numeric();
  std::vector<const DblPoly*> comps;
  for (const auto& p : fd.components) comps.push_back(&p);
  double qbar = q / (q - 1.0);
  double moment_factor = std::pow(gauss_abs_moment_local(qbar), q / qbar);
  double pref = std::pow(mc.prefactor, q) * moment_factor;
  return pointwise_scan(ptf, q, m_outer, [&](const double* x) {
    return pref * pt_of_norm_power(comps, fd.scale2, q, mc.a, mc.b, x, inner);
  });
}

std::vector<double> ou_long_time_residuals(const PolyFunctional& f,
                                           const std::vector<double>& t_grid) {
  ChaosExpansion<Rational> e = to_hermite(f);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < 0) throw std::invalid_argument("OU time must be >= 0");
    double acc = 0.0;
    for (const auto& [alpha, cs] : e.coeffs) {
      int k = alpha.degree();
      if (k == 0) continue;
      double damp = std::exp(-2.0 * k * t);
      double fac = alpha.factorial().get_d();
      for (const auto& c : cs) {
        double cd = c.get_d();
        acc += fac * cd * cd * damp;
      }
    }
    out.push_back(std::sqrt(acc * f.scale2.get_d()));
  }
  return out;
}

}  // namespace gsob
