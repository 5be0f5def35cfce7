#ifndef GSOB_POLYNOMIAL_HPP
#define GSOB_POLYNOMIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsob/multi_index.hpp"
#include "gsob/rational.hpp"

namespace gsob {

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline double coeff_to_double(const Rational& c) { return c.get_d(); }
inline double coeff_to_double(double c) { return c; }
}  // namespace detail

/// Dense-enough evaluation form for hot integration loops: parallel arrays of
/// packed exponents and double coefficients.
struct FlatPoly {
  static constexpr int kMaxVars = 8;
  int dim = 0;
  int max_deg = 0;
  std::vector<std::array<std::uint8_t, kMaxVars>> exps;
  std::vector<double> coeffs;

  /// Evaluate with a caller-provided power table pow[v*(max_deg+1)+d] = x_v^d.
  double eval_with_powers(const double* pow, int stride) const {
    double acc = 0.0;
    for (size_t t = 0; t < coeffs.size(); ++t) {
      double m = coeffs[t];
      const auto& e = exps[t];
      for (int v = 0; v < dim; ++v) m *= pow[v * stride + e[v]];
      acc += m;
    }
    return acc;
  }

  double eval(const double* x) const {
    int stride = max_deg + 1;
    double stack[kMaxVars * 24];
    std::vector<double> heap;
    double* pow = stack;
    if (dim * stride > kMaxVars * 24) {
      heap.resize(static_cast<size_t>(dim) * stride);
      pow = heap.data();
    }
    for (int v = 0; v < dim; ++v) {
      pow[v * stride] = 1.0;
      for (int d = 1; d <= max_deg; ++d) pow[v * stride + d] = pow[v * stride + d - 1] * x[v];
    }
    return eval_with_powers(pow, stride);
  }
};

/// Sparse multivariate polynomial over coefficient type C (exact Rational or
/// double). Terms are kept in graded-lex order so iteration and serialization
/// are deterministic.
template <class C>
class Poly {
 public:
  using TermMap = std::map<MultiIndex, C, GradedLexLess>;

  Poly() = default;
  explicit Poly(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  }

  static Poly constant(int dim, const C& c) {
    Poly p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
  }
  static Poly variable(int dim, int var) {
    Poly p(dim);
    p.add_term(MultiIndex(dim).raised(var), C(1));
    return p;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  int degree() const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
    return d;
  }
  int degree_in(int var) const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, a[var]);
    return d;
  }
  std::vector<int> used_vars() const {
    std::vector<bool> used(dim_, false);
    for (const auto& [a, c] : terms_)
      for (int v = 0; v < dim_; ++v)
        if (a[v] > 0) used[v] = true;
    std::vector<int> out;
    for (int v = 0; v < dim_; ++v)
      if (used[v]) out.push_back(v);
    return out;
  }

  void add_term(const MultiIndex& alpha, const C& c) {
    if (alpha.dim() != dim_) throw std::invalid_argument("multi-index/polynomial dim mismatch");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      if (!detail::coeff_is_zero(c)) terms_.emplace(alpha, c);
    } else {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  C coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? C(0) : it->second;
  }

  Poly& operator+=(const Poly& o) {
    check_same_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, C(-1) * c);
    return *this;
  }
  Poly operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
  }
  Poly operator*(const C& s) const {
    Poly r(dim_);
    if (detail::coeff_is_zero(s)) return r;
    for (const auto& [a, c] : terms_) r.add_term(a, c * s);
    return r;
  }
  Poly operator*(const Poly& o) const {
    check_same_dim(o);
    Poly r(dim_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) {
        MultiIndex m = a;
        for (int v = 0; v < dim_; ++v) m[v] += b[v];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  /// Exact formal partial derivative d/dx_var.
  Poly partial(int var) const {
    if (var < 0 || var >= dim_) throw std::out_of_range("partial: variable index out of range");
    Poly r(dim_);
    for (const auto& [a, c] : terms_) {
      int e = a[var];
      if (e == 0) continue;
      r.add_term(a.raised(var, -1), c * C(e));
    }
    return r;
  }

  /// Horner evaluation, variable by variable from the highest index down.
  double eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("eval: point dimension mismatch");
    std::vector<const std::pair<const MultiIndex, C>*> all;
    all.reserve(terms_.size());
    for (const auto& t : terms_) all.push_back(&t);
    return eval_rec(all, dim_ - 1, x.data());
  }

  Poly<double> to_double() const {
    Poly<double> r(dim_);
    for (const auto& [a, c] : terms_) r.add_term(a, detail::coeff_to_double(c));
    return r;
  }

  FlatPoly flatten(double scale = 1.0) const {
    FlatPoly f;
    f.dim = dim_;
    if (dim_ > FlatPoly::kMaxVars) throw std::invalid_argument("flatten: dimension too large");
    for (const auto& [a, c] : terms_) {
      std::array<std::uint8_t, FlatPoly::kMaxVars> e{};
      for (int v = 0; v < dim_; ++v) {
        if (a[v] > 255) throw std::invalid_argument("flatten: exponent too large");
        e[v] = static_cast<std::uint8_t>(a[v]);
        f.max_deg = std::max(f.max_deg, a[v]);
      }
      f.exps.push_back(e);
      f.coeffs.push_back(detail::coeff_to_double(c) * scale);
    }
    return f;
  }

  /// f(R^T y): substitutes x_i = sum_j R[j][i] y_j. Result has double
  /// coefficients since rotation entries are floating point.
  Poly<double> compose_linear_transpose(const std::vector<std::vector<double>>& R) const {
    Poly<double> result(dim_);
    std::vector<Poly<double>> lin(dim_, Poly<double>(dim_));
    for (int i = 0; i < dim_; ++i) {
      Poly<double> li(dim_);
      for (int j = 0; j < dim_; ++j)
        if (R[j][i] != 0.0) li.add_term(MultiIndex(dim_).raised(j), R[j][i]);
      lin[i] = li;
    }
    for (const auto& [a, c] : terms_) {
      Poly<double> term = Poly<double>::constant(dim_, detail::coeff_to_double(c));
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < a[i]; ++k) term = term * lin[i];
      result += term;
    }
    return result;
  }

  bool operator==(const Poly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

 private:
  void check_same_dim(const Poly& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  static double eval_rec(const std::vector<const std::pair<const MultiIndex, C>*>& terms, int var,
                         const double* x) {
    if (terms.empty()) return 0.0;
    if (var < 0) {
      // all exponents exhausted: constants only
      double acc = 0.0;
      for (auto* t : terms) acc += detail::coeff_to_double(t->second);
      return acc;
    }
    int maxe = 0;
    for (auto* t : terms) maxe = std::max(maxe, t->first[var]);
    std::vector<std::vector<const std::pair<const MultiIndex, C>*>> bucket(maxe + 1);
    for (auto* t : terms) bucket[t->first[var]].push_back(t);
    double acc = 0.0;
    for (int e = maxe; e >= 0; --e) {
      acc = acc * x[var] + eval_rec(bucket[e], var - 1, x);
    }
    return acc;
  }

  int dim_ = 1;
  TermMap terms_;
};

using RatPoly = Poly<Rational>;
using DblPoly = Poly<double>;

}  // namespace gsob

#endif  // GSOB_POLYNOMIAL_HPP
