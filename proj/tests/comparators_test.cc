#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "proxregret/comparators.h"
#include "proxregret/error.h"
#include "proxregret/families.h"

using namespace proxregret;

namespace {

Vector V(std::initializer_list<double> values) {
  Vector v(values.size());
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Matrix Diag(std::initializer_list<double> values) {
  return V(values).asDiagonal();
}

double MinEigen(const Matrix& a) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("evaluate") {
  const Comparator point = Comparator::IndicatorPoint(V({1, 0}));
  CHECK(point.Evaluate(V({1, 0})) == 0.0);
  CHECK(std::isinf(point.Evaluate(V({0, 1}))));
  const Comparator quad = Comparator::Quadratic(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(quad.Evaluate(V({1, 1})) == doctest::Approx(1.0));
  CHECK(quad.strong_convexity() == doctest::Approx(1.0));
  CHECK(quad.rho() == 0.0);
}

TEST_CASE("comparator validation") {
  CHECK_THROWS_AS(Comparator::Quadratic(-1.2 * Matrix::Identity(2, 2), Vector::Zero(2)),
                  Error);
  CHECK_THROWS_AS(Comparator::Quadratic(-0.5 * Matrix::Identity(2, 2), Vector::Zero(2), 0.2),
                  Error);
  Matrix asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(Comparator::Quadratic(asym, Vector::Zero(2)), Error);
  const Comparator weak =
      Comparator::Quadratic(-0.5 * Matrix::Identity(1, 1), Vector::Zero(1));
  CHECK(weak.rho() == doctest::Approx(0.5));
  CHECK(weak.strong_convexity() == 0.0);
}

TEST_CASE("prox closed forms") {
  const auto simplex = ConvexSet::Simplex(2);
  const auto plane = ConvexSet::WholeSpace(2);

  ProxResult r = Prox(Comparator::IndicatorPoint(V({0.2, 0.8})), simplex, V({0.9, 0.1}));
  CHECK((r.point - V({0.2, 0.8})).norm() == 0.0);

  r = Prox(Comparator::Linear(V({1, 0})), plane, V({2, 3}));
  CHECK((r.point - V({1, 3})).norm() < 1e-15);

  r = Prox(Comparator::Quadratic(0.25 * Matrix::Identity(2, 2), Vector::Zero(2)), plane,
           V({1, 2}));
  CHECK((r.point - V({0.8, 1.6})).norm() < 1e-12);

  r = Prox(Comparator::Quadratic(-0.5 * Matrix::Identity(1, 1), Vector::Zero(1), 0.5),
           ConvexSet::WholeSpace(1), V({1}));
  CHECK(r.point[0] == doctest::Approx(2.0));
}

TEST_CASE("prox iterative") {
  const Comparator quad =
      Comparator::Quadratic(0.25 * Matrix::Identity(2, 2), Vector::Zero(2));
  ProxResult r = ProxIterative(quad, ConvexSet::WholeSpace(2), V({1, 2}), 1e-10);
  CHECK((r.point - V({0.8, 1.6})).norm() <= 1e-9);
  CHECK(r.iterations > 0);

  r = ProxIterative(Comparator::Linear(V({1, 0})), ConvexSet::Box(2, 0, 1), V({0.5, 0.5}));
  CHECK((r.point - V({0, 0.5})).norm() <= 1e-9);

  r = ProxIterative(Comparator::Constant(2), ConvexSet::Box(2, 0, 1), V({0.3, 0.9}));
  CHECK((r.point - V({0.3, 0.9})).norm() <= 1e-12);

  // Exhausted budget reports the residual.
  Matrix q = Diag({0.9, -0.9});
  bool caught = false;
  try {
    ProxIterative(Comparator::Quadratic(q, V({1, -1})), ConvexSet::Box(2, -1, 1),
                  V({0, 0}), 1e-14, 2);
  } catch (const ProxNonconvergence& e) {
    caught = true;
    CHECK(e.code() == ErrorCode::kProxNonconvergence);
    CHECK(e.residual() > 0.0);
  }
  CHECK(caught);
}

TEST_CASE("closed form and iterative agree") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const auto quads = RandomStronglyConvexQuadratics(4, 40, 0.1, 2.0, 1.0, rng);
  for (const Comparator& f : quads) {
    Vector x(4);
    for (int i = 0; i < 4; ++i) x[i] = 2.0 * normal(rng);
    const auto plane = ConvexSet::WholeSpace(4);
    CHECK((Prox(f, plane, x).point - ProxIterative(f, plane, x).point).norm() <= 1e-6);
  }
  for (int k = 0; k < 40; ++k) {
    Vector v(3), x(3);
    for (int i = 0; i < 3; ++i) {
      v[i] = normal(rng);
      x[i] = normal(rng);
    }
    const auto box = ConvexSet::Box(3, -0.5, 0.5);
    const Comparator f = Comparator::Linear(v);
    CHECK((Prox(f, box, x).point - ProxIterative(f, box, x).point).norm() <= 1e-6);
  }
}

TEST_CASE("prox optimality residual") {
  const auto plane = ConvexSet::WholeSpace(2);
  const Comparator lin = Comparator::Linear(V({1, -2}));
  const Vector x = V({0.4, 0.1});
  const Vector p = Prox(lin, plane, x).point;
  CHECK(CheckProxOptimality(lin, plane, x, p) <= 1e-15);
  CHECK(CheckProxOptimality(Comparator::Constant(2), plane, x, x) == 0.0);
  CHECK(CheckProxOptimality(lin, plane, x, p + V({0.1, 0})) > 0.05);

  const auto box = ConvexSet::Box(2, 0, 1);
  const Comparator quad = Comparator::Quadratic(Diag({2, 1}), V({0.5, -0.5}));
  const Vector px = Prox(quad, box, V({0.9, 0.2})).point;
  CHECK(CheckProxOptimality(quad, box, V({0.9, 0.2}), px) <= 1e-7);
  CHECK(CheckProxOptimality(quad, box, V({0.9, 0.2}), ConvexSet::Box(2, 0, 1).Project(px + V({0.1, 0.1}))) > 0.0);
}

TEST_CASE("prox optimality fuzz over closed-form kinds") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> pick(0, 4);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 3;
    Vector x(d), v(d);
    for (int i = 0; i < d; ++i) {
      x[i] = 2.0 * normal(rng);
      v[i] = normal(rng);
    }
    const ConvexSet sets[] = {ConvexSet::Box(d, -1, 1), ConvexSet::Ball(Vector::Zero(d), 1),
                              ConvexSet::Simplex(d)};
    const ConvexSet& set = sets[k % 3];
    Comparator f = Comparator::Constant(d);
    switch (pick(rng)) {
      case 0: f = Comparator::IndicatorPoint(set.Sample(rng)); break;
      case 1: f = Comparator::Linear(v); break;
      case 2: f = Comparator::Constant(d, 1.5); break;
      case 3:
        f = Comparator::IndicatorSet(set.kind() == SetKind::kSimplex
                                         ? ConvexSet::Simplex(d)
                                         : ConvexSet::Box(d, -0.5, 0.3));
        break;
      default: {
        const auto plane = ConvexSet::WholeSpace(d);
        const Comparator q = RandomStronglyConvexQuadratics(d, 1, 0.2, 1.0, 1.0, rng)[0];
        worst = std::max(worst, CheckProxOptimality(q, plane, x, Prox(q, plane, x).point));
        continue;
      }
    }
    const Vector p = Prox(f, set, x).point;
    worst = std::max(worst, CheckProxOptimality(f, set, x, p));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("key inequality examples") {
  std::mt19937_64 rng(2);
  const auto ball = ConvexSet::Ball(Vector::Zero(3), 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vector x = 2.0 * ball.Sample(rng);
    const Vector p = ball.Sample(rng);
    CHECK(std::abs(KeyInequalityGap(Comparator::Constant(3), ConvexSet::WholeSpace(3), x, p)) <
          1e-12);
    CHECK(std::abs(KeyInequalityGap(Comparator::Linear(V({0.3, -1, 2})),
                                    ConvexSet::WholeSpace(3), x, p)) < 1e-12);
    CHECK(KeyInequalityGap(Comparator::Quadratic(0.5 * Matrix::Identity(3, 3), Vector::Zero(3)),
                           ConvexSet::WholeSpace(3), x, p) >= 0.0);
  }
  CHECK_THROWS_AS(KeyInequalityGap(Comparator::IndicatorPoint(V({1, 0})),
                                   ConvexSet::Simplex(2), V({0.5, 0.5}), V({0, 1})),
                  Error);
}

TEST_CASE("affine maps as prox") {
  const auto plane = ConvexSet::WholeSpace(2);
  const Comparator f = AffineToComparator(0.8 * Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK((Prox(f, plane, V({1, 0})).point - V({0.8, 0})).norm() < 1e-12);
  CHECK(f.Evaluate(V({1, 0})) == doctest::Approx(0.125));

  const Comparator id = AffineToComparator(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(id.kind() == ComparatorKind::kConstant);
  CHECK((Prox(id, plane, V({0.3, -4})).point - V({0.3, -4})).norm() == 0.0);

  const Matrix a = Diag({0.6, 0.9});
  const Vector b = V({0.01, 0});
  const Comparator g = AffineToComparator(a, b);
  const auto ball = ConvexSet::Ball(Vector::Zero(2), 1.0);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Vector x = 0.9 * ball.Sample(rng);
    const Vector image = a * x + b;
    REQUIRE(ball.Contains(image));
    CHECK((Prox(g, ball, x).point - image).norm() <= 1e-7);
  }

  Matrix asym(2, 2);
  asym << 0.5, 0.1, 0, 0.5;
  CHECK_THROWS_AS(AffineToComparator(asym, Vector::Zero(2)), Error);
  try {
    AffineToComparator(Diag({0.3, 1.5}), Vector::Zero(2));
    FAIL("expected not prox-representable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotProxRepresentable);
  }
}

TEST_CASE("affine representation on random maps") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  const auto plane = ConvexSet::WholeSpace(3);
  for (int k = 0; k < 100; ++k) {
    // Random symmetric A with ||A||_2 <= 1, interpolated into the
    // representable range.
    Vector eig(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 3; ++i) eig[i] = unit(rng);
    const Matrix a = RandomSymmetricWithSpectrum(eig, rng);
    Vector b(3);
    for (int i = 0; i < 3; ++i) b[i] = 0.1 * normal(rng);
    const AffineMap m = InterpolateEndomorphism(a, b, InterpolationWeight(a));
    const Comparator f = AffineToComparator(m.a, m.b);
    CHECK(f.rho() < 1.0);
    Vector x(3);
    for (int i = 0; i < 3; ++i) x[i] = normal(rng);
    CHECK((Prox(f, plane, x).point - m.Apply(x)).norm() <= 1e-7);
  }
}

TEST_CASE("interpolation") {
  const Matrix minus = -Matrix::Identity(3, 3);
  const AffineMap m = InterpolateEndomorphism(minus, Vector::Zero(3), 1.0 / 6.0);
  CHECK((m.a - (2.0 / 3.0) * Matrix::Identity(3, 3)).norm() < 1e-15);
  CHECK(InterpolationWeight(minus) == doctest::Approx(1.0 / 6.0));

  const Matrix a = Diag({0.2, -0.7});
  const Vector b = V({0.1, 0.3});
  const AffineMap same = InterpolateEndomorphism(a, b, 1.0);
  CHECK((same.a - a).norm() == 0.0);
  CHECK((same.b - b).norm() == 0.0);
  CHECK_THROWS_AS(InterpolateEndomorphism(a, b, 0.0), Error);
  CHECK_THROWS_AS(InterpolateEndomorphism(a, b, 1.5), Error);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    Vector eig(4);
    for (int i = 0; i < 4; ++i) eig[i] = unit(rng);
    eig[0] = -1.0;  // ||A||_2 = 1
    const Matrix s = RandomSymmetricWithSpectrum(eig, rng);
    const AffineMap mk = InterpolateEndomorphism(s, Vector::Zero(4), 1.0 / 6.0);
    CHECK(MinEigen(mk.a) >= 2.0 / 3.0 - 1e-12);
  }
}

TEST_CASE("bf bound for affine comparators") {
  CHECK(BfBoundAffine(Vector::Zero(2), 1.0) == 3.0);
  CHECK(BfBoundAffine(V({0.3, 0.4}), 0.0) == 0.0);
  CHECK(BfBoundAffine(V({0.6, 0.8}), 2.0) == doctest::Approx(14.0));

  // Value spread over prox points of iterates inside B(0, D).
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  const double radius = 2.0;
  const auto ball = ConvexSet::Ball(Vector::Zero(3), radius);
  for (int k = 0; k < 30; ++k) {
    Vector eig(3);
    for (int i = 0; i < 3; ++i) eig[i] = unit(rng);
    const Matrix a = RandomSymmetricWithSpectrum(eig, rng);
    Vector b(3);
    for (int i = 0; i < 3; ++i) b[i] = unit(rng);
    b *= 0.5 * radius / std::max(b.norm(), 1e-12) * 0.99;
    const AffineMap m = InterpolateEndomorphism(a, b, InterpolationWeight(a));
    const Comparator f = AffineToComparator(m.a, m.b);
    double lo = 1e300, hi = -1e300;
    for (int s = 0; s < 300; ++s) {
      const Vector p = Prox(f, ball, ball.Sample(rng)).point;
      lo = std::min(lo, f.Evaluate(p));
      hi = std::max(hi, f.Evaluate(p));
    }
    CHECK(hi - lo <= BfBoundAffine(b, radius));
  }
}
