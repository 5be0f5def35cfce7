#include "gsob/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gsob {

namespace {

struct Rule1D {
  std::vector<double> nodes, weights;
};

// Orthonormal probabilists' Hermite values h_0..h_m at x
// (h_{k+1} = (x h_k - sqrt(k) h_{k-1}) / sqrt(k+1)), used to Newton-polish the
// nodes and to form Christoffel weights.
void orthonormal_hermite(int m, double x, std::vector<double>& h) {
  h.resize(m + 1);
  h[0] = 1.0;
  if (m >= 1) h[1] = x;
  for (int k = 1; k < m; ++k)
    h[k + 1] = (x * h[k] - std::sqrt(static_cast<double>(k)) * h[k - 1]) / std::sqrt(k + 1.0);
}

Rule1D golub_welsch_probabilists(int m) {
  if (m < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Rule1D r;
  r.nodes.resize(m);
  r.weights.resize(m);
  if (m == 1) {
    r.nodes[0] = 0.0;
    r.weights[0] = 1.0;
    return r;
  }
  // Golub-Welsch on the Jacobi matrix for the physicists' weight e^{-x^2}
  // (off-diagonal sqrt(k/2)); eigenvalues rescaled by sqrt(2) give starting
  // nodes for gamma_1.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) sub(k - 1) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> h;
  double wsum = 0.0;
  for (int i = 0; i < m; ++i) {
    double x = es.eigenvalues()(i) * std::sqrt(2.0);
    // Newton on h_m(x) = 0 with h_m' = sqrt(m) h_{m-1}
    for (int it = 0; it < 4; ++it) {
      orthonormal_hermite(m, x, h);
      double deriv = std::sqrt(static_cast<double>(m)) * h[m - 1];
      if (deriv == 0.0) break;
      double step = h[m] / deriv;
      x -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    orthonormal_hermite(m, x, h);
    double christoffel = 0.0;
    for (int k = 0; k < m; ++k) christoffel += h[k] * h[k];
    r.nodes[i] = x;
    r.weights[i] = 1.0 / christoffel;
    wsum += r.weights[i];
  }
  for (auto& w : r.weights) w /= wsum;
  return r;
}

const Rule1D& cached_rule(int m) {
  static std::map<int, Rule1D> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, golub_welsch_probabilists(m)).first;
  return it->second;
}

// Gauss-Kronrod 15-point nodes/weights on [-1,1] with the embedded 7-point
// Gauss weights (standard tabulated values).
const double kGK15X[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
const double kGK15W[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
const double kG7W[7] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                        0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
                        0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
                        0.129484966168869693270611432679082};

void gk15(const std::function<double(double)>& f, double a, double b, double* value,
          double* err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double vk = 0.0, vg = 0.0;
  for (int i = 0; i < 15; ++i) {
    double fx = f(c + h * kGK15X[i]);
    vk += kGK15W[i] * fx;
    if (i % 2 == 1) vg += kG7W[i / 2] * fx;
  }
  *value = vk * h;
  double diff = std::abs(vk - vg) * h;
  *err = std::pow(200.0 * diff, 1.5);
  if (*err > diff) *err = diff;
}

double adaptive_gk_rec(const std::function<double(double)>& f, double a, double b, double tol,
                       double& err_acc, int depth, int max_depth) {
  double v, e;
  gk15(f, a, b, &v, &e);
  if (e <= tol || depth >= max_depth) {
    err_acc += e;
    return v;
  }
  double m = 0.5 * (a + b);
  return adaptive_gk_rec(f, a, m, tol / 2, err_acc, depth + 1, max_depth) +
         adaptive_gk_rec(f, m, b, tol / 2, err_acc, depth + 1, max_depth);
}

}  // namespace

QuadratureGrid QuadratureGrid::make(int dim, int m) {
  if (dim < 1) throw std::invalid_argument("grid dimension must be >= 1");
  const Rule1D& r = cached_rule(m);
  QuadratureGrid g;
  g.dim = dim;
  g.nodes_per_axis = m;
  g.nodes = r.nodes;
  g.weights = r.weights;
  return g;
}

void QuadratureGrid::for_each(const std::function<void(const double*, double)>& visit) const {
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  while (true) {
    double w = 1.0;
    for (int v = 0; v < dim; ++v) {
      x[v] = nodes[idx[v]];
      w *= weights[idx[v]];
    }
    visit(x.data(), w);
    int v = 0;
    for (; v < dim; ++v) {
      if (++idx[v] < nodes_per_axis) break;
      idx[v] = 0;
    }
    if (v == dim) break;
  }
}

double QuadratureGrid::integrate_1d(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (int i = 0; i < nodes_per_axis; ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b, double tol,
                   double* err_out, int max_depth) {
  if (!(a < b)) throw std::invalid_argument("adaptive_gk: need a < b");
  double err = 0.0;
  double v = adaptive_gk_rec(f, a, b, tol, err, 0, max_depth);
  if (err_out) *err_out = err;
  return v;
}

std::vector<double> real_roots_in(const std::vector<double>& coeffs, double lo, double hi) {
  // trim leading zeros
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && coeffs[deg] == 0.0) --deg;
  std::vector<double> out;
  if (deg <= 0) return out;
  auto eval = [&](double t) {
    double acc = 0.0;
    for (int d = deg; d >= 0; --d) acc = acc * t + coeffs[d];
    return acc;
  };
  const int samples = 64 * deg;
  double prev_t = lo, prev_v = eval(lo);
  for (int s = 1; s <= samples; ++s) {
    double t = lo + (hi - lo) * s / samples;
    double v = eval(t);
    if (prev_v == 0.0) out.push_back(prev_t);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      double a = prev_t, b = t;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b), vm = eval(m);
        if ((vm < 0) == (prev_v < 0))
          a = m;
        else
          b = m;
      }
      out.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_v = v;
  }
  if (prev_v == 0.0) out.push_back(prev_t);
  return out;
}

}  // namespace gsob
