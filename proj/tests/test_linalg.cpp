#include <cmath>

#include "doctest.h"
#include "qcut/error.hpp"
#include "qcut/linalg.hpp"
#include "support.hpp"

using namespace qcut;
using qcut::testing::max_abs_diff;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("projections split a vector into parallel and orthogonal parts") {
    const Vec v{1, 1}, x{1, 0};
    CHECK(max_abs_diff(project_par(v, x), Vec{0.5, 0.5}) < 1e-15);
    CHECK(max_abs_diff(project_perp(v, x), Vec{0.5, -0.5}) < 1e-15);
    CHECK(max_abs_diff(project_par(Vec{0, 3}, Vec{2, 5}), Vec{0, 5}) < 1e-15);

    qcut::testing::Rng rng(3);
    for (int k = 0; k < 20; ++k) {
      const Vec a = rng.normal_vec(5), b = rng.normal_vec(5);
      CHECK(max_abs_diff(project_par(a, b) + project_perp(a, b), b) < 1e-12);
      CHECK(std::abs(dot(project_perp(a, b), a)) < 1e-12);
      CHECK(max_abs_diff(perp_matrix(a) * b, project_perp(a, b)) < 1e-12);
    }
  }

  TEST_CASE("projection errors") {
    CHECK(code_of([] { project_par(Vec{0, 0}, Vec{1, 2}); }) == ErrorCode::ZeroVector);
    CHECK(code_of([] { project_par(Vec{1, 0}, Vec{1, 2, 3}); }) == ErrorCode::DimMismatch);
  }

  TEST_CASE("symmetric eigen decomposition of a 2x2") {
    const auto eig = eig_sym(Mat{{2, 1}, {1, 2}});
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    const double s = 1.0 / std::sqrt(2.0);
    const Vec v0 = eig.vectors.col(0), v1 = eig.vectors.col(1);
    CHECK(std::abs(std::abs(dot(v0, Vec{s, -s})) - 1.0) < 1e-13);
    CHECK(std::abs(std::abs(dot(v1, Vec{s, s})) - 1.0) < 1e-13);
  }

  TEST_CASE("eigen decomposition reconstructs random symmetric matrices") {
    qcut::testing::Rng rng(11);
    for (std::size_t n : {1u, 2u, 3u, 6u, 12u}) {
      Mat g(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
      const Mat m = g + transpose(g);
      const auto eig = eig_sym(m);
      for (std::size_t k = 0; k + 1 < n; ++k) CHECK(eig.values[k] <= eig.values[k + 1]);
      const Mat rebuilt = eig.vectors * Mat::diag(eig.values) * transpose(eig.vectors);
      CHECK(max_abs_diff(rebuilt, m) < 1e-10);
      CHECK(max_abs_diff(transpose(eig.vectors) * eig.vectors, Mat::identity(n)) < 1e-12);
      double trace = 0, sum = 0;
      for (std::size_t i = 0; i < n; ++i) trace += m(i, i), sum += eig.values[i];
      CHECK(std::abs(trace - sum) < 1e-10);
    }
  }

  TEST_CASE("eigen decomposition rejects asymmetric input") {
    CHECK(code_of([] { eig_sym(Mat{{1, 2}, {0, 1}}); }) == ErrorCode::NotSymmetric);
    const auto z = eig_sym(Mat(3, 3));
    CHECK(max_abs(z.values) == 0.0);
  }

  TEST_CASE("inverse") {
    CHECK(max_abs_diff(inverse(Mat{{1, 1}, {0, 1}}), Mat{{1, -1}, {0, 1}}) < 1e-15);
    qcut::testing::Rng rng(5);
    for (std::size_t n : {1u, 3u, 8u}) {
      const Mat b = rng.matrix(n);
      CHECK(max_abs_diff(b * inverse(b), Mat::identity(n)) < 1e-12);
    }
    CHECK(code_of([] { inverse(Mat{{1, 2}, {2, 4}}); }) == ErrorCode::Singular);
    CHECK(code_of([] { inverse(Mat(2, 2)); }) == ErrorCode::Singular);
  }

  TEST_CASE("p norms") {
    const Vec v{3, -4};
    CHECK(norm_p(v.span(), 2.0) == doctest::Approx(5.0));
    CHECK(norm_p(v.span(), 1.0) == doctest::Approx(7.0));
    CHECK(norm_p(v.span(), 0.0) == doctest::Approx(4.0));
    CHECK(norm_p(v.span(), 3.0) == doctest::Approx(std::cbrt(27.0 + 64.0)));
    CHECK(norm2(Vec{1e200, 1e200}) == doctest::Approx(std::sqrt(2.0) * 1e200));
  }

  TEST_CASE("orthonormal complement") {
    qcut::testing::Rng rng(8);
    for (std::size_t n : {1u, 2u, 5u}) {
      const Vec v = rng.normal_vec(n);
      const auto basis = orthonormal_complement(v);
      CHECK(basis.size() == n - 1);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(std::abs(dot(basis[i], v)) < 1e-12);
        for (std::size_t j = 0; j < basis.size(); ++j)
          CHECK(std::abs(dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}
