#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcut {

inline constexpr std::size_t kMaxDim = 64;

// Dense real vector.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : v_(n, fill) {}
  Vec(std::initializer_list<double> xs) : v_(xs) {}
  explicit Vec(std::vector<double> xs) : v_(std::move(xs)) {}

  static Vec unit(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  double back() const { return v_.back(); }
  double* data() noexcept { return v_.data(); }
  const double* data() const noexcept { return v_.data(); }
  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const double> span() const noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  bool operator==(const Vec&) const = default;

 private:
  std::vector<double> v_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);
Vec operator/(Vec a, double s);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_sq(const Vec& a);
// p-norm for p >= 1; p <= 0 selects the max norm.
double norm_p(std::span<const double> a, double p);
double max_abs(const Vec& a);

// Row-major dense matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);
  static Mat diag(const Vec& d);
  static Mat outer(const Vec& a, const Vec& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  Vec col(std::size_t j) const;
  Vec row_vec(std::size_t i) const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

  bool operator==(const Mat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);

Mat transpose(const Mat& a);
double frobenius(const Mat& a);
double quad_form(const Mat& a, const Vec& x);  // x^T A x

Vec project_par(const Vec& v, const Vec& x);
Vec project_perp(const Vec& v, const Vec& x);
Mat par_matrix(const Vec& v);   // v v^T / |v|^2
Mat perp_matrix(const Vec& v);  // I - v v^T / |v|^2

// Orthonormal basis of the complement of span{v}.
std::vector<Vec> orthonormal_complement(const Vec& v);

struct EigenDecomposition {
  Vec values;   // ascending
  Mat vectors;  // column j belongs to values[j]
};

EigenDecomposition eig_sym(const Mat& m);
double min_eigenvalue(const Mat& m);
Mat inverse(const Mat& b);

}  // namespace qcut
