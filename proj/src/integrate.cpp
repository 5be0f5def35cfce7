#include "gsob/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsob/rng.hpp"

namespace gsob {

namespace {

constexpr double kLineRange = 14.0;  // gamma_1 mass beyond is far below any tolerance here

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

bool is_even_integer(double q) {
  double r = std::round(q);
  return std::abs(q - r) < 1e-12 && static_cast<long>(r) % 2 == 0;
}
bool is_odd_integer(double q) {
  double r = std::round(q);
  return std::abs(q - r) < 1e-12 && static_cast<long>(r) % 2 == 1;
}

// I_d(a,b) = int_a^b x^d phi(x) dx via
// I_d = (d-1) I_{d-2} + a^{d-1} phi(a) - b^{d-1} phi(b).
void gaussian_piece_moments(double a, double b, int dmax, std::vector<double>& I) {
  I.assign(dmax + 1, 0.0);
  double pa = std_normal_pdf(a), pb = std_normal_pdf(b);
  I[0] = std_normal_cdf(b) - std_normal_cdf(a);
  if (dmax >= 1) I[1] = pa - pb;
  double apow = a, bpow = b;
  for (int d = 2; d <= dmax; ++d) {
    I[d] = (d - 1) * I[d - 2] + apow * pa - bpow * pb;
    apow *= a;
    bpow *= b;
  }
}

double eval_univariate(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) acc = acc * x + c[d];
  return acc;
}

std::vector<double> univariate_pow(const std::vector<double>& c, int p) {
  std::vector<double> r{1.0};
  for (int k = 0; k < p; ++k) {
    std::vector<double> nxt(r.size() + c.size() - 1, 0.0);
    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j) nxt[i + j] += r[i] * c[j];
    r = std::move(nxt);
  }
  return r;
}

// Kronrod-15 panel rule; panels are chosen by the caller.
const double kP15X[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
const double kP15W[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

template <class F>
double panel15(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += kP15W[i] * f(c + h * kP15X[i]);
  return acc * h;
}

// ---------------------------------------------------------------------------
// 1-D integral of (sum_j p_j(x)^2)^{q/2} dgamma_1. A single component is
// split at its real roots: odd q then reduces to exact piecewise Gaussian
// moments, fractional q gets geometrically graded panels into each root.
// Multi-component sums stay positive away from common zeros, so they use
// plain panels and leave residual error to the caller's refinement loop.
// ---------------------------------------------------------------------------
struct LineIntegrator {
  double q = 1.0;
  int level = 2;

  double integrate(const std::vector<std::vector<double>>& slices) const {
    if (slices.size() == 1) {
      std::vector<double> brk{-kLineRange, kLineRange};
      auto roots = real_roots_in(slices[0], -kLineRange, kLineRange);
      brk.insert(brk.end(), roots.begin(), roots.end());
      std::sort(brk.begin(), brk.end());
      brk.erase(std::unique(brk.begin(), brk.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                brk.end());
      if (is_odd_integer(q)) return piecewise_exact(slices[0], brk);
      return panels(slices, brk, /*grade=*/!is_even_integer(q));
    }
    return panels(slices, {-kLineRange, kLineRange}, /*grade=*/false);
  }

 private:
  double piecewise_exact(const std::vector<double>& slice, const std::vector<double>& brk) const {
    int p = static_cast<int>(std::round(q));
    std::vector<double> pq = univariate_pow(slice, p);
    int dmax = static_cast<int>(pq.size()) - 1;
    std::vector<double> I;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
      double a = brk[i], b = brk[i + 1];
      double sign = eval_univariate(slice, 0.5 * (a + b)) >= 0 ? 1.0 : -1.0;
      gaussian_piece_moments(a, b, dmax, I);
      double piece = 0.0;
      for (int d = 0; d <= dmax; ++d) piece += pq[d] * I[d];
      acc += sign * piece;
    }
    return acc;
  }

  double panels(const std::vector<std::vector<double>>& slices, const std::vector<double>& brk,
                bool grade) const {
    auto f = [&](double x) {
      double s = 0.0;
      for (const auto& c : slices) {
        double v = eval_univariate(c, x);
        s += v * v;
      }
      return std::pow(s, 0.5 * q) * std_normal_pdf(x);
    };
    double hmax = 1.25 / (1 << (level - 1));
    int depth = 3 + level;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
      double a = brk[i], b = brk[i + 1];
      bool root_a = grade && i > 0;
      bool root_b = grade && i + 2 < brk.size();
      std::vector<double> edges{a};
      double glen = 0.25 * (b - a);
      if (root_a)
        for (int j = depth - 1; j >= 0; --j) edges.push_back(a + glen * std::pow(0.125, j));
      double mid_end = root_b ? b - glen : b;
      double mid_start = edges.back();
      if (mid_end > mid_start) {
        int np = std::max(1, static_cast<int>(std::ceil((mid_end - mid_start) / hmax)));
        for (int k = 1; k <= np; ++k)
          edges.push_back(mid_start + (mid_end - mid_start) * k / np);
      }
      if (root_b) {
        for (int j = 1; j < depth; ++j) edges.push_back(b - glen * std::pow(0.125, j));
        edges.push_back(b);
      }
      for (size_t k = 0; k + 1 < edges.size(); ++k)
        if (edges[k + 1] > edges[k]) acc += panel15(f, edges[k], edges[k + 1]);
    }
    return acc;
  }
};

// ---------------------------------------------------------------------------
// shared quadrature core over flattened double components (multiplicities,
// e.g. from symmetric tensor deduplication, are folded in as sqrt factors)
// ---------------------------------------------------------------------------
struct Engine {
  std::vector<DblPoly> comps;  // reduced to effective variables
  int dim = 0;
  double scale = 1.0;

  template <class C>
  static Engine make(const std::vector<const Poly<C>*>& comps_in, double scale,
                     const std::vector<double>& mults) {
    std::vector<int> used;
    int full_dim = comps_in.empty() ? 1 : comps_in[0]->dim();
    std::vector<bool> mask(full_dim, false);
    for (const auto* p : comps_in)
      for (int v : p->used_vars()) mask[v] = true;
    for (int v = 0; v < full_dim; ++v)
      if (mask[v]) used.push_back(v);
    Engine e;
    e.scale = scale;
    e.dim = static_cast<int>(used.size());
    std::vector<int> remap(full_dim, -1);
    for (size_t i = 0; i < used.size(); ++i) remap[used[i]] = static_cast<int>(i);
    int edim = std::max(1, e.dim);
    for (size_t j = 0; j < comps_in.size(); ++j) {
      double w = mults.empty() ? 1.0 : std::sqrt(mults[j]);
      Poly<double> r(edim);
      for (const auto& [a, c] : comps_in[j]->terms()) {
        MultiIndex m(edim);
        for (int v = 0; v < full_dim; ++v)
          if (a[v] > 0) m[remap[v]] = a[v];
        r.add_term(m, detail::coeff_to_double(c) * w);
      }
      e.comps.push_back(std::move(r));
    }
    return e;
  }

  double constant_norm() const {
    double sos = 0.0;
    for (const auto& p : comps) {
      double c = p.terms().empty() ? 0.0 : detail::coeff_to_double(p.terms().begin()->second);
      sos += c * c;
    }
    return scale * std::sqrt(sos);
  }

  std::vector<std::vector<double>> slices_1d() const {
    std::vector<std::vector<double>> slices;
    for (const auto& p : comps) {
      std::vector<double> c(p.degree_in(0) + 1, 0.0);
      for (const auto& [a, co] : p.terms()) c[a[0]] += co;
      slices.push_back(std::move(c));
    }
    return slices;
  }

  IntegralResult line_1d(double q, const LqOptions& opt) const {
    auto slices = slices_1d();
    IntegralResult res;
    res.method = IntegralResult::Method::quadrature;
    bool exact_piecewise = slices.size() == 1 && is_odd_integer(q);
    double prev = 0.0;
    int levels = exact_piecewise ? 1 : 2;
    for (int L = 0; L < levels; ++L) {
      LineIntegrator li{q, 2 + L};
      double integral = li.integrate(slices);
      double v = std::pow(std::max(integral, 0.0), 1.0 / q) * scale;
      res.refinement_history.emplace_back(L + 1, v);
      if (L > 0) res.error_estimate = std::abs(v - prev);
      prev = v;
    }
    res.value = prev;
    if (exact_piecewise)
      res.error_estimate = 8 * std::numeric_limits<double>::epsilon() * std::abs(prev);
    res.converged = res.error_estimate <= std::max(opt.tol * std::abs(res.value), 1e-13);
    return res;
  }

  IntegralResult hybrid(double q, const LqOptions& opt) const {
    // Inner-axis choice: an axis where every component has degree exactly 1
    // is ideal (the line integral's root moves smoothly with the outer
    // variables, leaving an analytic outer integrand); otherwise absorb the
    // highest degree into the inner integral.
    int inner = -1;
    for (int v = 0; v < dim && inner < 0; ++v) {
      int d = 0;
      for (const auto& p : comps) d = std::max(d, p.degree_in(v));
      if (d == 1) inner = v;
    }
    if (inner < 0) {
      int best = -1;
      for (int v = 0; v < dim; ++v) {
        int d = 0;
        for (const auto& p : comps) d = std::max(d, p.degree_in(v));
        if (d > best) {
          best = d;
          inner = v;
        }
      }
    }
    std::vector<int> outer;
    for (int v = 0; v < dim; ++v)
      if (v != inner) outer.push_back(v);
    int odim = static_cast<int>(outer.size());

    std::vector<FlatPoly> flat;
    flat.reserve(comps.size());
    int inner_deg = 0, maxdeg = 0;
    for (const auto& p : comps) {
      flat.push_back(p.flatten());
      inner_deg = std::max(inner_deg, p.degree_in(inner));
      maxdeg = std::max(maxdeg, flat.back().max_deg);
    }

    IntegralResult res;
    res.method = IntegralResult::Method::quadrature;
    LineIntegrator li{q, 2};
    double prev = 0.0;
    bool have_prev = false;
    for (int m = opt.m_start; m <= opt.m_max; m *= 2) {
      QuadratureGrid g = QuadratureGrid::make(1, m);
      int stride = maxdeg + 1;
      std::vector<double> pows(static_cast<size_t>(m) * stride);
      for (int i = 0; i < m; ++i) {
        pows[i * stride] = 1.0;
        for (int d = 1; d <= maxdeg; ++d)
          pows[i * stride + d] = pows[i * stride + d - 1] * g.nodes[i];
      }
      std::vector<int> idx(odim, 0);
      std::vector<std::vector<double>> slices(flat.size());
      double integral = 0.0;
      while (true) {
        double w = 1.0;
        for (int v = 0; v < odim; ++v) w *= g.weights[idx[v]];
        for (size_t j = 0; j < flat.size(); ++j) {
          auto& s = slices[j];
          s.assign(inner_deg + 1, 0.0);
          const auto& f = flat[j];
          for (size_t t = 0; t < f.coeffs.size(); ++t) {
            double c = f.coeffs[t];
            const auto& e = f.exps[t];
            for (int v = 0; v < odim; ++v) c *= pows[idx[v] * stride + e[outer[v]]];
            s[e[inner]] += c;
          }
        }
        integral += w * li.integrate(slices);
        int v = 0;
        for (; v < odim; ++v) {
          if (++idx[v] < m) break;
          idx[v] = 0;
        }
        if (v == odim) break;
      }
      double norm = std::pow(std::max(integral, 0.0), 1.0 / q) * scale;
      res.refinement_history.emplace_back(m, norm);
      res.value = norm;
      if (have_prev) {
        double diff = std::abs(norm - prev);
        res.error_estimate = diff;
        if (diff <= std::max(opt.tol * std::abs(norm), 1e-13)) {
          res.converged = true;
          return res;
        }
      }
      prev = norm;
      have_prev = true;
    }
    res.converged = false;
    // successive differences underestimate the residual when convergence is
    // slow; widen the reported band accordingly
    res.error_estimate *= 4.0;
    return res;
  }

  IntegralResult monte_carlo(double q, long samples, std::uint64_t seed) const {
    if (samples < 1000) throw std::invalid_argument("monte carlo needs at least 10^3 samples");
    std::vector<FlatPoly> flat;
    for (const auto& p : comps) flat.push_back(p.flatten());
    Rng rng(seed);
    std::vector<double> x(std::max(dim, 1), 0.0);
    double s1 = 0.0, s2 = 0.0;
    for (long i = 0; i < samples; ++i) {
      for (int v = 0; v < dim; ++v) x[v] = rng.gaussian();
      double sos = 0.0;
      for (const auto& f : flat) {
        double val = f.eval(x.data());
        sos += val * val;
      }
      double y = std::pow(sos, 0.5 * q);
      s1 += y;
      s2 += y * y;
    }
    double mean = s1 / samples;
    double var = std::max(0.0, (s2 - s1 * s1 / samples) / (samples - 1.0));
    double se = std::sqrt(var / samples);
    IntegralResult res;
    res.method = IntegralResult::Method::monte_carlo;
    res.value = std::pow(mean, 1.0 / q) * scale;
    res.error_estimate = mean > 0 ? res.value * se / (q * mean) : se;
    res.refinement_history.emplace_back(static_cast<int>(std::min<long>(samples, 1 << 30)),
                                        res.value);
    res.converged = true;
    return res;
  }
};

IntegralResult lq_even_exact(const std::vector<const RatPoly*>& comps, const Rational& scale2,
                             long q, const std::vector<double>& mults) {
  RatPoly sos(comps.empty() ? 1 : comps[0]->dim());
  for (size_t j = 0; j < comps.size(); ++j) {
    RatPoly sq = (*comps[j]) * (*comps[j]);
    if (!mults.empty() && mults[j] != 1.0)
      sq = sq * Rational(static_cast<long>(std::llround(mults[j])));
    sos += sq;
  }
  RatPoly powp = RatPoly::constant(sos.dim(), Rational(1));
  for (long k = 0; k < q / 2; ++k) powp = powp * sos;
  Rational integral = gaussian_moment(powp) * rational_pow(scale2, static_cast<unsigned long>(q / 2));
  IntegralResult res;
  res.method = IntegralResult::Method::symbolic;
  res.value = std::pow(integral.get_d(), 1.0 / static_cast<double>(q));
  res.error_estimate = 0.0;
  res.converged = true;
  res.refinement_history.emplace_back(0, res.value);
  return res;
}

IntegralResult lq_even_float(const std::vector<const DblPoly*>& comps, double scale2, long q,
                             const std::vector<double>& mults) {
  DblPoly sos(comps.empty() ? 1 : comps[0]->dim());
  for (size_t j = 0; j < comps.size(); ++j) {
    DblPoly sq = (*comps[j]) * (*comps[j]);
    if (!mults.empty() && mults[j] != 1.0) sq = sq * mults[j];
    sos += sq;
  }
  DblPoly powp = DblPoly::constant(sos.dim(), 1.0);
  for (long k = 0; k < q / 2; ++k) powp = powp * sos;
  double integral = gaussian_moment(powp) * std::pow(scale2, q / 2.0);
  IntegralResult res;
  res.method = IntegralResult::Method::symbolic;
  res.value = std::pow(std::max(integral, 0.0), 1.0 / static_cast<double>(q));
  res.error_estimate = 0.0;
  res.converged = true;
  res.refinement_history.emplace_back(0, res.value);
  return res;
}

size_t total_terms(const std::vector<const RatPoly*>& comps) {
  size_t n = 0;
  for (const auto* p : comps) n += p->term_count();
  return n;
}

template <class C>
IntegralResult lq_dispatch(const std::vector<const Poly<C>*>& comps, double scale, double q,
                           const LqOptions& opt, const std::vector<double>& mults) {
  Engine e = Engine::make(comps, scale, mults);
  if (e.dim == 0) {
    IntegralResult res;
    res.method = IntegralResult::Method::symbolic;
    res.value = e.constant_norm();
    res.converged = true;
    res.refinement_history.emplace_back(0, res.value);
    return res;
  }
  if (e.dim > opt.mc_dim_threshold) return e.monte_carlo(q, opt.mc_samples, opt.mc_seed);
  if (e.dim == 1) return e.line_1d(q, opt);
  return e.hybrid(q, opt);
}

}  // namespace

IntegralResult lq_norm_components(const std::vector<const RatPoly*>& comps, const Rational& scale2,
                                  double q, const LqOptions& opt,
                                  const std::vector<double>& mults) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (is_even_integer(q) && !opt.force_quadrature) {
    long ql = static_cast<long>(std::round(q));
    size_t terms = total_terms(comps);
    // exact rationals when cheap; float-symbolic (same exact rule evaluated in
    // doubles) once expansions get large
    if ((ql == 2 && terms <= 600) || (ql >= 4 && terms <= 60))
      return lq_even_exact(comps, scale2, ql, mults);
    std::vector<DblPoly> dbl;
    std::vector<const DblPoly*> ptrs;
    dbl.reserve(comps.size());
    for (const auto* p : comps) dbl.push_back(p->to_double());
    for (const auto& p : dbl) ptrs.push_back(&p);
    return lq_even_float(ptrs, scale2.get_d(), ql, mults);
  }
  return lq_dispatch(comps, std::sqrt(scale2.get_d()), q, opt, mults);
}

IntegralResult lq_norm_components(const std::vector<const DblPoly*>& comps, double scale2, double q,
                                  const LqOptions& opt, const std::vector<double>& mults) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (is_even_integer(q) && !opt.force_quadrature)
    return lq_even_float(comps, scale2, static_cast<long>(std::round(q)), mults);
  return lq_dispatch(comps, std::sqrt(scale2), q, opt, mults);
}

IntegralResult lq_norm(const PolyFunctional& f, double q, const LqOptions& opt) {
  std::vector<const RatPoly*> ptrs;
  for (const auto& p : f.components) ptrs.push_back(&p);
  return lq_norm_components(ptrs, f.scale2, q, opt);
}

IntegralResult lq_norm(const NumericPolyFunctional& f, double q, const LqOptions& opt) {
  std::vector<const DblPoly*> ptrs;
  for (const auto& p : f.components) ptrs.push_back(&p);
  return lq_norm_components(ptrs, f.scale2, q, opt);
}

IntegralResult lq_norm(const NumericFunctional& f, double q, const LqOptions& opt) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (f.dim > opt.mc_dim_threshold) return lq_norm_mc(f, q, opt.mc_samples, opt.mc_seed);
  IntegralResult res;
  res.method = IntegralResult::Method::quadrature;
  double prev = 0.0;
  bool have_prev = false;
  std::vector<double> vals(f.codim);
  for (int m = opt.m_start; m <= opt.m_max; m *= 2) {
    QuadratureGrid g = QuadratureGrid::make(f.dim, m);
    double integral = 0.0;
    bool bad = false;
    g.for_each([&](const double* x, double w) {
      f.evaluator(std::span<const double>(x, f.dim), vals);
      double sos = 0.0;
      for (double v : vals) sos += v * v;
      double y = std::pow(sos, 0.5 * q);
      if (std::isnan(y)) bad = true;
      integral += w * y;
    });
    if (bad) throw std::runtime_error("lq_norm: evaluator returned NaN");
    double norm = std::pow(std::max(integral, 0.0), 1.0 / q);
    res.refinement_history.emplace_back(m, norm);
    res.value = norm;
    if (have_prev) {
      double diff = std::abs(norm - prev);
      res.error_estimate = diff;
      if (diff <= std::max(opt.tol * std::abs(norm), 1e-13)) {
        res.converged = true;
        return res;
      }
    }
    prev = norm;
    have_prev = true;
  }
  res.converged = false;
  res.error_estimate *= 4.0;
  return res;
}

IntegralResult lq_norm_mc(const PolyFunctional& f, double q, long samples, std::uint64_t seed) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  std::vector<const RatPoly*> ptrs;
  for (const auto& p : f.components) ptrs.push_back(&p);
  Engine e = Engine::make(ptrs, f.scale(), {});
  if (e.dim == 0) {
    IntegralResult res;
    res.method = IntegralResult::Method::monte_carlo;
    res.value = e.constant_norm();
    res.converged = true;
    return res;
  }
  return e.monte_carlo(q, samples, seed);
}

IntegralResult lq_norm_mc(const NumericFunctional& f, double q, long samples, std::uint64_t seed) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (samples < 1000) throw std::invalid_argument("monte carlo needs at least 10^3 samples");
  Rng rng(seed);
  std::vector<double> x(f.dim), vals(f.codim);
  double s1 = 0.0, s2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    for (int v = 0; v < f.dim; ++v) x[v] = rng.gaussian();
    f.evaluator(x, vals);
    double sos = 0.0;
    for (double v : vals) sos += v * v;
    double y = std::pow(sos, 0.5 * q);
    if (std::isnan(y)) throw std::runtime_error("lq_norm_mc: evaluator returned NaN");
    s1 += y;
    s2 += y * y;
  }
  double mean = s1 / samples;
  double var = std::max(0.0, (s2 - s1 * s1 / samples) / (samples - 1.0));
  double se = std::sqrt(var / samples);
  IntegralResult res;
  res.method = IntegralResult::Method::monte_carlo;
  res.value = std::pow(mean, 1.0 / q);
  res.error_estimate = mean > 0 ? res.value * se / (q * mean) : se;
  res.converged = true;
  res.refinement_history.emplace_back(static_cast<int>(std::min<long>(samples, 1 << 30)),
                                      res.value);
  return res;
}

double halfline_interval_integral(const std::function<double(double)>& g, double a, double b,
                                  IntervalWeight weight, double tol,
                                  const std::vector<double>& splits, double* err_out) {
  bool inf = std::isinf(b);
  if (weight == IntervalWeight::lebesgue && inf)
    throw std::invalid_argument("lebesgue weight needs a finite interval");
  double hi = inf ? kLineRange : b;
  if (!(a < hi)) {
    if (err_out) *err_out = 0.0;
    return 0.0;
  }
  auto f = [&](double x) {
    double w = weight == IntervalWeight::gaussian ? std_normal_pdf(x) : 1.0;
    return g(x) * w;
  };
  std::vector<double> pts{a, hi};
  for (double s : splits)
    if (s > a && s < hi) pts.push_back(s);
  std::sort(pts.begin(), pts.end());
  double acc = 0.0, err = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double e = 0.0;
    acc += adaptive_gk(f, pts[i], pts[i + 1], tol / static_cast<double>(pts.size()), &e);
    err += e;
  }
  if (err_out) *err_out = err;
  return acc;
}

}  // namespace gsob
