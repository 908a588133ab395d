#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "proxregret/error.h"
#include "proxregret/geometry.h"

using namespace proxregret;

namespace {

Vector V(std::initializer_list<double> values) {
  Vector v(values.size());
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Independent simplex projection: scan the threshold tau on a uniform grid
// until sum max(x_i - tau, 0) drops to 1, then bisect inside that cell.
Vector GridThresholdSimplex(const Vector& x) {
  auto mass = [&](double tau) { return (x.array() - tau).max(0.0).sum(); };
  const double lo = x.minCoeff() - 1.0;
  const double hi = x.maxCoeff();
  const int cells = 4096;
  const double h = (hi - lo) / cells;
  double a = lo, b = hi;
  for (int k = 1; k <= cells; ++k) {
    const double tau = lo + k * h;
    if (mass(tau) <= 1.0) {
      a = tau - h;
      b = tau;
      break;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    (mass(mid) > 1.0 ? a : b) = mid;
  }
  const double tau = 0.5 * (a + b);
  return (x.array() - tau).max(0.0).matrix();
}

std::vector<ConvexSet> SampleSets(int d) {
  Vector lo = Vector::Constant(d, -1.0);
  Vector hi = Vector::Constant(d, 2.0);
  Vector c = Vector::Constant(d, 0.3);
  return {ConvexSet::Box(lo, hi), ConvexSet::Ball(c, 1.5), ConvexSet::Simplex(d),
          ConvexSet::WholeSpace(d), ConvexSet::Simplex(d).Translated(c)};
}

}  // namespace

TEST_CASE("projection examples") {
  const Vector p = ConvexSet::Simplex(2).Project(V({0.5, 0.8}));
  CHECK(p[0] == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.65).epsilon(1e-12));

  const Vector q = ConvexSet::Ball(Vector::Zero(2), 1.0).Project(V({3, 4}));
  CHECK((q - V({0.6, 0.8})).norm() < 1e-12);

  const Vector r = ConvexSet::Box(2, 0.0, 1.0).Project(V({0.3, 0.7}));
  CHECK((r - V({0.3, 0.7})).norm() == 0.0);
}

TEST_CASE("diameters") {
  // Brute force over vertex pairs.
  for (int d = 2; d <= 6; ++d) {
    const auto vertices = ConvexSet::Simplex(d).ExtremePoints();
    double best = 0.0;
    for (const auto& a : vertices)
      for (const auto& b : vertices) best = std::max(best, (a - b).norm());
    CHECK(ConvexSet::Simplex(d).Diameter() == doctest::Approx(best));
    CHECK(ConvexSet::Box(d, 0.0, 1.0).Diameter() == doctest::Approx(std::sqrt(d)));
  }
  CHECK(ConvexSet::Ball(Vector::Zero(3), 2.5).Diameter() == doctest::Approx(5.0));
  CHECK_THROWS_AS(ConvexSet::WholeSpace(2).Diameter(), Error);
  try {
    ConvexSet::WholeSpace(2).Diameter();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnbounded);
  }
}

TEST_CASE("norms") {
  CHECK(Norm(V({3, 4})) == 5.0);
  CHECK(Norm(V({-2, 1}), NormKind::kMax) == 2.0);
  CHECK(Norm(V({-2, 1}), NormKind::kOne) == 3.0);
  CHECK(Norm(Vector::Zero(3)) == 0.0);
  CHECK(DualNorm(NormKind::kOne) == NormKind::kMax);
  CHECK(DualNorm(NormKind::kEuclidean) == NormKind::kEuclidean);
  Vector bad = V({1, std::numeric_limits<double>::quiet_NaN()});
  CHECK_THROWS_AS(Norm(bad), Error);
}

TEST_CASE("projection errors") {
  CHECK_THROWS_AS(ConvexSet::Simplex(3).Project(V({1, 2})), Error);
  CHECK_THROWS_AS(
      ConvexSet::Box(2, 0, 1).Project(V({1, std::numeric_limits<double>::infinity()})),
      Error);
}

TEST_CASE("projection idempotence and variational inequality") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int d : {1, 2, 5}) {
    for (const ConvexSet& set : SampleSets(d)) {
      double worst_vi = -1.0;
      for (int k = 0; k < 1000; ++k) {
        Vector x(d);
        for (int i = 0; i < d; ++i) x[i] = normal(rng);
        const Vector p = set.Project(x);
        CHECK(set.Contains(p));
        CHECK((set.Project(p) - p).norm() <= 1e-10);
        const Vector y = set.Sample(rng);
        worst_vi = std::max(worst_vi, (x - p).dot(y - p));
      }
      CHECK(worst_vi <= 1e-9);
    }
  }
}

TEST_CASE("simplex projection matches grid oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 8);
  std::normal_distribution<double> normal(0.0, 1.5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int d = dim(rng);
    Vector x(d);
    for (int i = 0; i < d; ++i) x[i] = normal(rng);
    worst = std::max(worst, (ProjectOntoSimplex(x) - GridThresholdSimplex(x))
                                .lpNorm<Eigen::Infinity>());
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("linear minimization and support gap") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (const ConvexSet& set : SampleSets(3)) {
    if (!set.bounded()) continue;
    for (int k = 0; k < 50; ++k) {
      Vector c(3);
      for (int i = 0; i < 3; ++i) c[i] = normal(rng);
      const Vector best = set.ArgminLinear(c);
      CHECK(set.Contains(best));
      for (int s = 0; s < 20; ++s) CHECK(c.dot(set.Sample(rng)) >= c.dot(best) - 1e-12);
      const Vector p = set.Sample(rng);
      const Vector top = set.ArgminLinear(-c);
      CHECK(set.SupportGap(c, p) == doctest::Approx(c.dot(top - p)));
    }
  }
  CHECK(std::isinf(ConvexSet::WholeSpace(2).SupportGap(V({1, 0}), V({0, 0}))));
  CHECK(ConvexSet::WholeSpace(2).SupportGap(V({0, 0}), V({0, 0})) == 0.0);
}

TEST_CASE("translated sets") {
  const ConvexSet s = ConvexSet::Simplex(2).Translated(V({1, -1}));
  CHECK(s.translated());
  CHECK(s.Contains(V({1.5, -0.5})));
  CHECK(!s.Contains(V({0.5, 0.5})));
  CHECK((s.Project(V({1.5, -0.2})) - V({1.35, -0.35})).norm() < 1e-12);
  CHECK(s.Diameter() == doctest::Approx(std::sqrt(2.0)));
}
