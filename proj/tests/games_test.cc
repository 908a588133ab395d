#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "proxregret/bounds.h"
#include "proxregret/error.h"
#include "proxregret/games.h"
#include "proxregret/regret.h"

using namespace proxregret;

namespace {

Vector V(std::initializer_list<double> values) {
  Vector v(values.size());
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Matrix Pennies() {
  Matrix m(2, 2);
  m << 1, -1, -1, 1;
  return m;
}

LearnerSpec Spec(LearnerKind kind, StepSchedule schedule,
                 std::optional<Vector> initial = std::nullopt) {
  LearnerSpec spec;
  spec.kind = kind;
  spec.schedule = schedule;
  spec.initial = std::move(initial);
  return spec;
}

Matrix RandomMatrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

}  // namespace

TEST_CASE("bilinear constants and zero-sum identity") {
  const SmoothConvexGame game = SmoothConvexGame::BilinearZeroSum(Pennies());
  CHECK(game.lipschitz() == doctest::Approx(std::sqrt(2.0)));
  CHECK(game.smoothness() == doctest::Approx(2.0));
  CHECK(SpotCheckConstants(game, 500, 1).ok);

  std::mt19937_64 rng(2);
  const SmoothConvexGame rand = SmoothConvexGame::BilinearZeroSum(RandomMatrix(3, 4, rng));
  const ConstantsCheck check = SpotCheckConstants(rand, 2000, 3);
  CHECK(check.ok);
  CHECK(check.max_gradient_norm > 0.5 * rand.lipschitz());

  const PlayRecord record =
      SelfPlay(rand, {Spec(LearnerKind::kGradientDescent, StepSchedule::InverseSqrt()),
                      Spec(LearnerKind::kOptimisticGradient, StepSchedule::Constant(0.1))},
               300, 4);
  for (int t = 0; t < record.length(); ++t) {
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Round& r = record.traces[i].rounds[t];
      total += r.g.dot(r.x);
    }
    CHECK(std::abs(total) <= 1e-12);
  }
}

TEST_CASE("normal form matches bilinear") {
  std::mt19937_64 rng(5);
  const Matrix m = RandomMatrix(3, 2, rng);
  std::vector<double> u1, u2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b) {
      u1.push_back(m(a, b));
      u2.push_back(-m(a, b));
    }
  const SmoothConvexGame normal = SmoothConvexGame::NormalForm({3, 2}, {u1, u2});
  const SmoothConvexGame bilinear = SmoothConvexGame::BilinearZeroSum(m);
  for (int k = 0; k < 50; ++k) {
    const Profile x{normal.set(0).Sample(rng), normal.set(1).Sample(rng)};
    for (int i = 0; i < 2; ++i) {
      CHECK((normal.Gradient(i, x) - bilinear.Gradient(i, x)).norm() < 1e-12);
      CHECK(*normal.Utility(i, x) == doctest::Approx(*bilinear.Utility(i, x)));
    }
  }
  CHECK(SpotCheckConstants(normal, 1000, 6).ok);
}

TEST_CASE("multilinear quadratic and auction constants") {
  std::mt19937_64 rng(7);
  std::vector<ConvexSet> sets{ConvexSet::Box(2, -1, 1), ConvexSet::Ball(Vector::Zero(3), 1.0),
                              ConvexSet::Simplex(2)};
  std::vector<std::vector<Matrix>> coupling(3, std::vector<Matrix>(3));
  const int dims[] = {2, 3, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) coupling[i][j] = RandomMatrix(dims[i], dims[j], rng);
  const SmoothConvexGame game = SmoothConvexGame::MultilinearQuadratic(
      sets, coupling, {V({0.1, 0.2}), V({0, 0, 1}), V({-1, 1})}, {0.5, 0.0, 1.0});
  CHECK(SpotCheckConstants(game, 2000, 8).ok);

  const SmoothConvexGame auction = FirstPriceAuction({1.0, 0.8, 0.6}, {0.0, 0.2, 0.4, 0.6});
  CHECK(auction.num_players() == 3);
  CHECK(SpotCheckConstants(auction, 2000, 9).ok);
  // Bidder 0 alone at the top bid wins and pays it.
  Profile pure(3);
  pure[0] = V({0, 0, 0, 1});
  pure[1] = V({1, 0, 0, 0});
  pure[2] = V({0, 1, 0, 0});
  CHECK(*auction.Utility(0, pure) == doctest::Approx(0.4));
  CHECK(*auction.Utility(1, pure) == 0.0);
  pure[1] = V({0, 0, 0, 1});
  CHECK(*auction.Utility(0, pure) == doctest::Approx(0.2));
  CHECK(*auction.Utility(1, pure) == doctest::Approx(0.1));
}

TEST_CASE("frozen and degenerate play") {
  const SmoothConvexGame zero = SmoothConvexGame::BilinearZeroSum(Matrix::Zero(2, 3));
  const PlayRecord record = SelfPlay(
      zero, {Spec(LearnerKind::kGradientDescent, StepSchedule::Constant(0.5), V({0.9, 0.1})),
             Spec(LearnerKind::kOptimisticGradient, StepSchedule::Constant(0.5))},
      20, 1);
  for (int t = 1; t <= 20; ++t) {
    CHECK((record.ProfileAt(t)[0] - V({0.9, 0.1})).norm() == 0.0);
    CHECK((record.ProfileAt(t)[1] - Vector::Constant(3, 1.0 / 3.0)).norm() < 1e-15);
  }

  // One player against a fixed gradient is a plain run.
  const Vector g = V({0.2, -0.4});
  const SmoothConvexGame solo = SmoothConvexGame::Custom(
      {ConvexSet::Box(2, -1, 1)}, [g](int, const Profile&) { return Vector(-g); }, g.norm(), 0);
  const PlayRecord played =
      SelfPlay(solo, {Spec(LearnerKind::kGradientDescent, StepSchedule::InverseSqrt())}, 40, 2);
  GradientDescent gd(ConvexSet::Box(2, -1, 1), StepSchedule::InverseSqrt());
  const Trace direct = Run(gd, [&](int, const Vector&) { return g; }, 40);
  for (int t = 0; t < 40; ++t) {
    CHECK((played.traces[0].rounds[t].x - direct.rounds[t].x).norm() == 0.0);
  }
  CHECK(GradientVariation(played, 0) == doctest::Approx(g.squaredNorm()));
  CHECK(SocialRegret(played, {Comparator::Constant(2)}) == 0.0);
  const Comparator lin = Comparator::Linear(V({0.5, 0.5}));
  CHECK(SocialRegret(played, {lin}) == doctest::Approx(ProximalRegret(direct, lin).regret));
  CHECK(ComputePceGap(played, {ComparatorFamily::Of({Comparator::Constant(2)})}).epsilon == 0.0);

  const SmoothConvexGame liar = SmoothConvexGame::Custom(
      {ConvexSet::Box(2, -1, 1)}, [g](int, const Profile&) { return Vector(-g); }, 0.1, 0);
  try {
    SelfPlay(liar, {Spec(LearnerKind::kGradientDescent, StepSchedule::InverseSqrt())}, 5, 0);
    FAIL("expected constants violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConstantsViolated);
  }
}

TEST_CASE("simultaneity under player permutation") {
  std::mt19937_64 rng(11);
  const int dims[] = {2, 3, 2};
  std::vector<std::vector<Matrix>> c(3, std::vector<Matrix>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) c[i][j] = 0.5 * RandomMatrix(dims[i], dims[j], rng);
  std::vector<ConvexSet> sets{ConvexSet::Simplex(2), ConvexSet::Box(3, 0, 1),
                              ConvexSet::Simplex(2)};
  std::vector<Vector> b{V({0.1, 0}), V({0, 0.3, 0}), V({0, -0.2})};
  const std::vector<double> k{0.2, 0.4, 0.0};
  const int perm[] = {2, 0, 1};
  std::vector<ConvexSet> psets;
  std::vector<std::vector<Matrix>> pc(3, std::vector<Matrix>(3));
  std::vector<Vector> pb;
  std::vector<double> pk;
  for (int i = 0; i < 3; ++i) {
    psets.push_back(sets[perm[i]]);
    pb.push_back(b[perm[i]]);
    pk.push_back(k[perm[i]]);
    for (int j = 0; j < 3; ++j) pc[i][j] = c[perm[i]][perm[j]];
  }
  const auto game = SmoothConvexGame::MultilinearQuadratic(sets, c, b, k);
  const auto permuted = SmoothConvexGame::MultilinearQuadratic(psets, pc, pb, pk);
  std::vector<LearnerSpec> specs{
      Spec(LearnerKind::kOptimisticGradient, StepSchedule::Constant(0.1)),
      Spec(LearnerKind::kGradientDescent, StepSchedule::InverseSqrt()),
      Spec(LearnerKind::kMirrorDescent, StepSchedule::InverseSqrt())};
  std::vector<LearnerSpec> pspecs;
  for (int i = 0; i < 3; ++i) pspecs.push_back(specs[perm[i]]);
  const PlayRecord a = SelfPlay(game, specs, 200, 5);
  const PlayRecord p = SelfPlay(permuted, pspecs, 200, 5);
  for (int i = 0; i < 3; ++i) {
    for (int t = 0; t < 200; ++t) {
      CHECK((p.traces[i].rounds[t].x - a.traces[perm[i]].rounds[t].x).norm() <= 1e-12);
      CHECK((p.traces[i].rounds[t].g - a.traces[perm[i]].rounds[t].g).norm() <= 1e-12);
    }
  }
}

TEST_CASE("matching pennies average approaches the equilibrium") {
  const int T = 10000;
  const SmoothConvexGame game = SmoothConvexGame::BilinearZeroSum(Pennies());
  const StepSchedule eta = StepSchedule::Constant(1.0 / std::sqrt(T));
  const PlayRecord record =
      SelfPlay(game, {Spec(LearnerKind::kGradientDescent, eta, V({0.9, 0.1})),
                      Spec(LearnerKind::kGradientDescent, eta, V({0.2, 0.8}))},
               T, 1);
  // Regret of both players bounds |2a - 1| + |2b - 1| from above (T times),
  // and the simple bound with D = sqrt 2, B = 0, G = sqrt 2 bounds each
  // regret, so each marginal is within 2 * 4 sqrt(T) / (sqrt(2) T).
  const double simple = GdSimpleBound(std::sqrt(2.0), 0.0, game.lipschitz(), T);
  CHECK(simple == doctest::Approx(4.0 * std::sqrt(T)));
  const double c = 2.0 * simple / std::sqrt(2.0 * T);
  const Vector uniform = Vector::Constant(2, 0.5);
  for (int i = 0; i < 2; ++i) {
    CHECK((record.EmpiricalMean(i) - uniform).norm() <= c / std::sqrt(T));
    CHECK(ExternalRegret(record.traces[i]) <= simple);
  }
  const PceGap gap = ComputePceGap(
      record, {ComparatorFamily::Of(IndicatorPointsAtExtremes(ConvexSet::Simplex(2)))});
  CHECK(gap.epsilon <= simple / T);
  CHECK(gap.epsilon >= 0.0);
}

TEST_CASE("optimistic self-play variation cap") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 5; ++k) {
    const SmoothConvexGame game = SmoothConvexGame::BilinearZeroSum(RandomMatrix(3, 3, rng));
    const double eta = 0.2;
    const PlayRecord record =
        SelfPlay(game, {Spec(LearnerKind::kOptimisticGradient, StepSchedule::Constant(eta)),
                        Spec(LearnerKind::kOptimisticGradient, StepSchedule::Constant(eta))},
                 500, k);
    const double cap = OgVariationCap(game.lipschitz(), game.smoothness(), 2, eta);
    for (int i = 0; i < 2; ++i) {
      const auto terms = GradientVariationTerms(record.traces[i]);
      for (size_t t = 1; t < terms.size(); ++t) CHECK(terms[t] <= cap + 1e-8);
    }
  }
}
