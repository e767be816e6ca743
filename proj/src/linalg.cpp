#include "qcut/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcut/error.hpp"

namespace qcut {

namespace {

void require_same(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw Error(ErrorCode::DimMismatch, where);
}

}  // namespace

Vec Vec::unit(std::size_t n, std::size_t k) {
  Vec e(n);
  e[k] = 1.0;
  return e;
}

Vec& Vec::operator+=(const Vec& o) {
  require_same(size(), o.size(), "vector add");
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  require_same(size(), o.size(), "vector subtract");
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator/(Vec a, double s) { return a *= 1.0 / s; }

double dot(const Vec& a, const Vec& b) {
  require_same(a.size(), b.size(), "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm_sq(const Vec& a) { return dot(a, a); }

double norm2(const Vec& a) {
  // hypot-style scaling so huge or tiny entries do not overflow
  const double s = max_abs(a);
  if (s == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : a) acc += (x / s) * (x / s);
  return s * std::sqrt(acc);
}

double norm_p(std::span<const double> a, double p) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  if (p <= 0.0 || s == 0.0) return s;
  if (p == 1.0) {
    double acc = 0.0;
    for (double x : a) acc += std::abs(x);
    return acc;
  }
  double acc = 0.0;
  for (double x : a) acc += std::pow(std::abs(x) / s, p);
  return s * std::pow(acc, 1.0 / p);
}

double max_abs(const Vec& a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimMismatch, "ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::outer(const Vec& a, const Vec& b) {
  Mat m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row_vec(std::size_t i) const {
  auto r = row(i);
  return Vec(std::vector<double>(r.begin(), r.end()));
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimMismatch, "matrix add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimMismatch, "matrix subtract");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  require_same(a.cols(), b.rows(), "matrix product");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Mat& a, const Vec& x) {
  require_same(a.cols(), x.size(), "matrix-vector product");
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double frobenius(const Mat& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (double x : a.row(i)) acc += x * x;
  return std::sqrt(acc);
}

double quad_form(const Mat& a, const Vec& x) { return dot(x, a * x); }

Vec project_par(const Vec& v, const Vec& x) {
  require_same(v.size(), x.size(), "projection");
  const double vv = norm_sq(v);
  if (vv == 0.0) throw Error(ErrorCode::ZeroVector, "projection onto the zero vector");
  return (dot(v, x) / vv) * v;
}

Vec project_perp(const Vec& v, const Vec& x) { return x - project_par(v, x); }

Mat par_matrix(const Vec& v) {
  const double vv = norm_sq(v);
  if (vv == 0.0) throw Error(ErrorCode::ZeroVector, "projection onto the zero vector");
  return (1.0 / vv) * Mat::outer(v, v);
}

Mat perp_matrix(const Vec& v) { return Mat::identity(v.size()) - par_matrix(v); }

std::vector<Vec> orthonormal_complement(const Vec& v) {
  const double nv = norm2(v);
  if (nv == 0.0) throw Error(ErrorCode::ZeroVector, "complement of the zero vector");
  const std::size_t n = v.size();
  std::vector<Vec> basis{v / nv};
  for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
    Vec w = Vec::unit(n, k);
    // two passes of Gram-Schmidt keep the basis orthogonal to working precision
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) w -= dot(b, w) * b;
    const double nw = norm2(w);
    if (nw > 1e-8) basis.push_back(w / nw);
  }
  basis.erase(basis.begin());
  return basis;
}

EigenDecomposition eig_sym(const Mat& m) {
  if (!m.square()) throw Error(ErrorCode::DimMismatch, "eigen decomposition of a non-square matrix");
  const std::size_t n = m.rows();
  const double fro = frobenius(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * std::max(1.0, fro))
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");

  Mat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  Mat v = Mat::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double threshold = 1e-12 * fro;
  bool converged = off_norm() <= threshold;
  for (int sweep = 0; sweep < 30 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    converged = off_norm() <= threshold;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{Vec(n), Mat(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const Mat& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  return eig_sym(m).values[0];
}

Mat inverse(const Mat& b) {
  if (!b.square()) throw Error(ErrorCode::DimMismatch, "inverse of a non-square matrix");
  const std::size_t n = b.rows();
  const double scale = frobenius(b);
  Mat a = b;
  Mat inv = Mat::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (!(std::abs(a(piv, col)) >= 1e-12 * scale) || scale == 0.0)
      throw Error(ErrorCode::Singular, "matrix is numerically singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace qcut
