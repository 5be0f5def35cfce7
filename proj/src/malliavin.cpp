#include "gsob/malliavin.hpp"

#include <cmath>

namespace gsob {

MeanTensor mean_derivative(const PolyFunctional& f, int order) {
  DerivativeTensor<Rational> t = derivative(f, order);
  MeanTensor m;
  m.order = order;
  m.dim = f.dim;
  m.codim = f.codim;
  m.scale2 = f.scale2;
  m.entries.reserve(t.entries.size());
  for (const auto& p : t.entries) m.entries.push_back(gaussian_moment(p));
  return m;
}

double chaos_identity_check(const PolyFunctional& f, int k, const MeanTensor& mean) {
  if (mean.order != k) throw std::invalid_argument("mean tensor order does not match chaos order");
  if (mean.dim != f.dim || mean.codim != f.codim)
    throw std::invalid_argument("mean tensor shape does not match functional");
  return chaos_identity_residual(to_hermite(f), k, mean.norm_sq());
}

namespace {

template <class C, class S>
IntegralResult derivative_lq_impl(const BasicFunctional<C>& f, int order, double q,
                                  const LqOptions& opt, const S& scale2) {
  if (order == 0) return lq_norm(f, q, opt);
  DerivativeTensor<C> t = derivative(f, order);
  std::vector<const Poly<C>*> comps;
  std::vector<double> mults;
  t.distinct_components(comps, mults);
  return lq_norm_components(comps, scale2, q, opt, mults);
}

}  // namespace

IntegralResult derivative_lq_norm(const PolyFunctional& f, int order, double q,
                                  const LqOptions& opt) {
  return derivative_lq_impl(f, order, q, opt, f.scale2);
}

IntegralResult derivative_lq_norm(const NumericPolyFunctional& f, int order, double q,
                                  const LqOptions& opt) {
  return derivative_lq_impl(f, order, q, opt, f.scale2);
}

NormValue sobolev_norm(const PolyFunctional& f, const SobolevNormRequest& req) {
  if (req.q < 1.0) throw std::invalid_argument("sobolev_norm: q must be >= 1");
  NormValue out;
  switch (req.kind) {
    case SobolevNormRequest::Kind::single: {
      IntegralResult r = derivative_lq_norm(f, req.single_order, req.q, req.integration);
      out.value = r.value;
      out.error_estimate = r.error_estimate;
      out.converged = r.converged;
      return out;
    }
    case SobolevNormRequest::Kind::graph: {
      if (req.k < 1) throw std::invalid_argument("graph norm needs k >= 1");
      IntegralResult a = derivative_lq_norm(f, 0, req.q, req.integration);
      IntegralResult b = derivative_lq_norm(f, req.k, req.q, req.integration);
      out.value = a.value + b.value;
      out.error_estimate = a.error_estimate + b.error_estimate;
      out.converged = a.converged && b.converged;
      return out;
    }
    case SobolevNormRequest::Kind::full: {
      if (req.k < 1) throw std::invalid_argument("full norm needs k >= 1");
      // q-th powers summed inside, q-th root outside
      double acc = 0.0, err = 0.0;
      bool conv = true;
      std::vector<IntegralResult> parts;
      for (int l = 0; l <= req.k; ++l) {
        IntegralResult r = derivative_lq_norm(f, l, req.q, req.integration);
        acc += std::pow(r.value, req.q);
        err += r.error_estimate;
        conv = conv && r.converged;
        parts.push_back(std::move(r));
      }
      out.value = std::pow(acc, 1.0 / req.q);
      // |d value / d part_l| <= 1 for every l, so the plain sum bounds it
      out.error_estimate = err;
      out.converged = conv;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace gsob
