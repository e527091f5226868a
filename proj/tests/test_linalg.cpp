#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mlnf/linalg.hpp"

using namespace mlnf;

namespace {

std::mt19937_64 rng(20240811);

cdouble rand_c() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

Mat3c rand_mat() {
  Mat3c m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rand_c();
  return m;
}

Vec3 rand_unit() {
  std::normal_distribution<double> g;
  Vec3 v{g(rng), g(rng), g(rng)};
  return v.normalized();
}

}  // namespace

TEST_CASE("dyadic algebra on random instances") {
  for (int trial = 0; trial < 50; ++trial) {
    Mat3c A = rand_mat(), B = rand_mat(), C = rand_mat();
    CHECK(rel_dev(A.dot(B).dot(C), A.dot(B.dot(C))) < 1e-14);
    CHECK(rel_dev(A.transpose().transpose(), A) == 0.0);
    CHECK(rel_dev(A.conj().conj(), A) == 0.0);
    CHECK(rel_dev(A.dot(B).transpose(), B.transpose().dot(A.transpose())) < 1e-14);
  }
}

TEST_CASE("rotation conjugation preserves products") {
  for (int trial = 0; trial < 20; ++trial) {
    Rot3 Q = Rot3::z_to(rand_unit());
    Mat3c A = rand_mat(), B = rand_mat();
    // Q (A B) Q^T == (Q A Q^T)(Q B Q^T)
    CHECK(rel_dev(Q.conjugate(A.dot(B)), Q.conjugate(A).dot(Q.conjugate(B))) < 1e-13);
    // orthonormality: conjugating the identity is the identity
    CHECK(rel_dev(Q.conjugate(Mat3c::identity()), Mat3c::identity()) < 1e-14);
  }
}

TEST_CASE("z_to maps +z to the axis") {
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 ax = rand_unit();
    Rot3 Q = Rot3::z_to(ax);
    Vec3 img = Q.apply(Vec3{0, 0, 1});
    CHECK((img - ax).norm() < 1e-14);
    // transpose is the inverse
    Vec3 back = Q.apply_transposed(img);
    CHECK((back - Vec3{0, 0, 1}).norm() < 1e-14);
  }
}

TEST_CASE("levi_civita") {
  CHECK(levi_civita(0, 1, 2) == 1);
  CHECK(levi_civita(1, 0, 2) == -1);
  CHECK(levi_civita(2, 0, 1) == 1);
  CHECK(levi_civita(0, 0, 2) == 0);
  // a x b via the symbol matches Vec3::cross
  Vec3 a = rand_unit(), b = rand_unit();
  Vec3 c = a.cross(b);
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += levi_civita(i, j, k) * a[i] * b[j];
    CHECK(s == doctest::Approx(c[k]).epsilon(1e-14));
  }
}
