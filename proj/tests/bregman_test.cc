#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "proxregret/bregman.h"
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

// Strictly positive point on the simplex.
Vector InteriorPoint(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Vector x(d);
  for (int i = 0; i < d; ++i) x[i] = e(rng) + 1e-3;
  return x / x.sum();
}

// Direct KL sum, written out term by term.
double Kl(const Vector& x, const Vector& y) {
  double total = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) total += x[i] * std::log(x[i] / y[i]);
    total += y[i] - x[i];
  }
  return total;
}

}  // namespace

TEST_CASE("divergence examples") {
  const MirrorMap entropy = MirrorMap::NegativeEntropy(2);
  CHECK(BregmanDivergence(entropy, V({0.5, 0.5}), V({0.5, 0.5})) == doctest::Approx(0.0));
  CHECK(BregmanDivergence(entropy, V({1, 0}), V({0.5, 0.5})) ==
        doctest::Approx(0.693147).epsilon(1e-6));
  const MirrorMap euclid = MirrorMap::SquaredEuclidean(ConvexSet::WholeSpace(2));
  CHECK(BregmanDivergence(euclid, V({1, 0}), V({0, 0})) == doctest::Approx(0.5));
  try {
    BregmanDivergence(entropy, V({0.5, 0.5}), V({1, 0}));
    FAIL("expected boundary divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBoundaryDivergence);
  }
  CHECK(entropy.primal_norm() == NormKind::kOne);
  CHECK(entropy.dual_norm() == NormKind::kMax);
}

TEST_CASE("divergence matches definition and KL") {
  std::mt19937_64 rng(1);
  const MirrorMap entropy = MirrorMap::NegativeEntropy(5);
  for (int k = 0; k < 200; ++k) {
    const Vector x = InteriorPoint(5, rng);
    const Vector y = InteriorPoint(5, rng);
    const double def = entropy.Potential(x) - entropy.Potential(y) -
                       entropy.PotentialGradient(y).dot(x - y);
    CHECK(BregmanDivergence(entropy, x, y) == doctest::Approx(def).epsilon(1e-9));
    CHECK(BregmanDivergence(entropy, x, y) == doctest::Approx(Kl(x, y)).epsilon(1e-9));
  }
}

TEST_CASE("three-point identity") {
  std::mt19937_64 rng(2);
  const MirrorMap maps[] = {MirrorMap::NegativeEntropy(4),
                            MirrorMap::SquaredEuclidean(ConvexSet::Box(4, -1, 1))};
  for (const MirrorMap& map : maps) {
    for (int k = 0; k < 300; ++k) {
      Vector p = InteriorPoint(4, rng), x = InteriorPoint(4, rng), y = InteriorPoint(4, rng);
      const double lhs = BregmanDivergence(map, p, x) - BregmanDivergence(map, p, y) -
                         BregmanDivergence(map, y, x);
      const double rhs =
          (map.PotentialGradient(x) - map.PotentialGradient(y)).dot(y - p);
      CHECK(std::abs(lhs - rhs) <= 1e-8);
    }
  }
}

TEST_CASE("strong convexity in the declared norm") {
  std::mt19937_64 rng(3);
  const MirrorMap entropy = MirrorMap::NegativeEntropy(6);
  const MirrorMap euclid = MirrorMap::SquaredEuclidean(ConvexSet::Simplex(6));
  for (int k = 0; k < 1000; ++k) {
    const Vector x = InteriorPoint(6, rng), y = InteriorPoint(6, rng);
    const double l1 = Norm(x - y, NormKind::kOne);
    CHECK(BregmanDivergence(entropy, x, y) >= 0.5 * l1 * l1 - 1e-15);
    CHECK(BregmanDivergence(euclid, x, y) >= 0.5 * (x - y).squaredNorm() - 1e-15);
  }
}

TEST_CASE("bregman prox") {
  const MirrorMap entropy = MirrorMap::NegativeEntropy(2);
  const ProxResult r = BregmanProx(Comparator::Linear(V({1, 0})), entropy, V({0.5, 0.5}));
  const double e = std::exp(1.0);
  CHECK(r.point[0] == doctest::Approx(1.0 / (1.0 + e)));
  CHECK(r.point[1] == doctest::Approx(e / (1.0 + e)));
  CHECK(r.point[0] == doctest::Approx(0.2689).epsilon(1e-4));

  const ProxResult same = BregmanProx(Comparator::Constant(2), entropy, V({0.3, 0.7}));
  CHECK((same.point - V({0.3, 0.7})).norm() == 0.0);

  std::mt19937_64 rng(4);
  const ConvexSet simplex = ConvexSet::Simplex(3);
  const MirrorMap euclid = MirrorMap::SquaredEuclidean(simplex);
  const auto quads = RandomStronglyConvexQuadratics(3, 20, 0.1, 1.0, 1.0, rng);
  for (const Comparator& f : quads) {
    const Vector x = InteriorPoint(3, rng);
    CHECK((BregmanProx(f, euclid, x).point - Prox(f, simplex, x).point).norm() <= 1e-9);
  }
}

TEST_CASE("entropy prox of a quadratic is optimal") {
  // Ternary search on the 2-simplex for the minimizer of f(y) + KL(y|x).
  std::mt19937_64 rng(5);
  const MirrorMap entropy = MirrorMap::NegativeEntropy(2);
  const auto quads = RandomStronglyConvexQuadratics(2, 10, 0.2, 1.0, 1.0, rng);
  for (const Comparator& f : quads) {
    const Vector x = InteriorPoint(2, rng);
    const ProxResult r = BregmanProx(f, entropy, x);
    auto objective = [&](double s) {
      const Vector y = V({s, 1.0 - s});
      return f.Evaluate(y) + Kl(y, x);
    };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (objective(m1) < objective(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    CHECK(r.point[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));
    CHECK(r.residual <= 1e-8);
  }
}

TEST_CASE("mirror step") {
  const MirrorMap entropy = MirrorMap::NegativeEntropy(2);
  Vector y = MirrorStep(entropy, V({0.5, 0.5}), V({1, 0}), std::log(2.0));
  CHECK(y[0] == doctest::Approx(1.0 / 3.0));
  CHECK(y[1] == doctest::Approx(2.0 / 3.0));
  y = MirrorStep(entropy, V({0.2, 0.8}), V({0, 0}), 0.7);
  CHECK((y - V({0.2, 0.8})).norm() < 1e-15);
  const MirrorMap box = MirrorMap::SquaredEuclidean(ConvexSet::Box(1, 0, 1));
  CHECK(MirrorStep(box, V({0.05}), V({1}), 0.1)[0] == 0.0);
  // Large exponents stay finite.
  y = MirrorStep(entropy, V({0.5, 0.5}), V({-2000, 3000}), 1.0);
  CHECK(y.allFinite());
  CHECK(y[0] == doctest::Approx(1.0));
  CHECK(y[1] > 0.0);
}
