#ifndef GSOB_MULTI_INDEX_HPP
#define GSOB_MULTI_INDEX_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gsob/rational.hpp"

namespace gsob {

/// Exponent vector alpha = (a_1,...,a_n) indexing the monomial x^alpha and the
/// Hermite product H_alpha = prod_i H_{a_i}(x_i).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : e_(dim, 0) {
    if (dim < 1) throw std::invalid_argument("multi-index dimension must be >= 1");
  }
  explicit MultiIndex(std::vector<int> exps) : e_(std::move(exps)) {
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("negative exponent in multi-index");
  }
  MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

  int dim() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[i]; }
  int& operator[](int i) { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  /// alpha! = prod a_i!
  Integer factorial() const {
    Integer r = 1;
    for (int v : e_) r *= gsob::factorial(static_cast<unsigned long>(v));
    return r;
  }

  MultiIndex raised(int var, int by = 1) const {
    MultiIndex m = *this;
    m.e_[var] += by;
    if (m.e_[var] < 0) throw std::invalid_argument("multi-index exponent underflow");
    return m;
  }

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
  bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

 private:
  std::vector<int> e_;
};

/// Graded lexicographic order: total degree first, then lexicographic.
/// Chosen for deterministic serialization; any total order would do.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                        b.exponents().begin(), b.exponents().end());
  }
};

}  // namespace gsob

#endif  // GSOB_MULTI_INDEX_HPP
