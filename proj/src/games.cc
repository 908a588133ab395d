#include "proxregret/games.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "proxregret/comparators.h"
#include "proxregret/error.h"
#include "proxregret/regret.h"

namespace proxregret {
namespace {

// Upper bound on max over `set` of ||M x||; exact when the set's extreme
// points are enumerable (the norm is convex, so a vertex attains the max).
double MaxImageNorm(const Matrix& m, const ConvexSet& set) {
  const std::vector<Vector> vertices = set.ExtremePoints();
  if (!vertices.empty()) {
    double best = 0.0;
    for (const Vector& v : vertices) best = std::max(best, (m * v).norm());
    return best;
  }
  if (set.kind() == SetKind::kBall) {
    return (m * set.center()).norm() + SpectralNorm(m) * set.radius();
  }
  return SpectralNorm(m) * set.MaxNorm();
}

// Decodes a row-major profile index into per-player actions.
void DecodeProfile(std::size_t index, const std::vector<int>& actions,
                   std::vector<int>& out) {
  for (int i = static_cast<int>(actions.size()) - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % actions[i]);
    index /= actions[i];
  }
}

}  // namespace

const char* GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kBilinearZeroSum: return "bilinear-zero-sum";
    case GameKind::kMultilinearQuadratic: return "multilinear-quadratic";
    case GameKind::kNormalForm: return "normal-form";
    case GameKind::kCustom: return "custom";
  }
  return "unknown";
}

SmoothConvexGame SmoothConvexGame::BilinearZeroSum(Matrix payoff,
                                                   ConvexSet first,
                                                   ConvexSet second) {
  if (payoff.rows() != first.dimension() || payoff.cols() != second.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "payoff matrix must be dim(X1) x dim(X2)");
  }
  if (!payoff.allFinite()) throw Error(ErrorCode::kNonFinite, "payoff matrix");
  if (!first.bounded() || !second.bounded()) {
    throw Error(ErrorCode::kUnbounded, "game strategy sets must be compact");
  }
  SmoothConvexGame game;
  game.kind_ = GameKind::kBilinearZeroSum;
  game.g_ = std::max(MaxImageNorm(payoff, second),
                     MaxImageNorm(payoff.transpose(), first));
  game.l_ = SpectralNorm(payoff);
  game.sets_ = {std::move(first), std::move(second)};
  game.payoff_ = payoff;
  game.gradient_ = [m = payoff](int player, const Profile& x) -> Vector {
    if (player == 0) return m * x[1];
    return -(m.transpose() * x[0]);
  };
  game.utility_ = [m = std::move(payoff)](int player, const Profile& x) {
    const double value = x[0].dot(m * x[1]);
    return player == 0 ? value : -value;
  };
  return game;
}

SmoothConvexGame SmoothConvexGame::BilinearZeroSum(Matrix payoff) {
  const int rows = static_cast<int>(payoff.rows());
  const int cols = static_cast<int>(payoff.cols());
  return BilinearZeroSum(std::move(payoff), ConvexSet::Simplex(rows),
                         ConvexSet::Simplex(cols));
}

SmoothConvexGame SmoothConvexGame::MultilinearQuadratic(
    std::vector<ConvexSet> sets, std::vector<std::vector<Matrix>> coupling,
    std::vector<Vector> linear, std::vector<double> curvature) {
  const int n = static_cast<int>(sets.size());
  if (n < 1 || static_cast<int>(coupling.size()) != n ||
      static_cast<int>(linear.size()) != n ||
      static_cast<int>(curvature.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "multilinear-quadratic game needs per-player data for n players");
  }
  std::vector<int> dims(n);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    if (!sets[i].bounded()) {
      throw Error(ErrorCode::kUnbounded, "game strategy sets must be compact");
    }
    dims[i] = sets[i].dimension();
    total += dims[i];
    RequireDimension(linear[i], dims[i], "linear utility term");
    if (!(curvature[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "curvature must be >= 0 for concave utilities");
    }
  }
  double g = 0.0, l = 0.0;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(coupling[i].size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "coupling must be n x n");
    }
    Matrix block_row = Matrix::Zero(dims[i], total);
    double gi = linear[i].norm() + curvature[i] * sets[i].MaxNorm();
    int offset = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) {
        block_row.block(0, offset, dims[i], dims[i]) =
            -curvature[i] * Matrix::Identity(dims[i], dims[i]);
      } else {
        Matrix& c = coupling[i][j];
        if (c.size() == 0) c = Matrix::Zero(dims[i], dims[j]);
        if (c.rows() != dims[i] || c.cols() != dims[j]) {
          throw Error(ErrorCode::kDimensionMismatch, "coupling block shape");
        }
        block_row.block(0, offset, dims[i], dims[j]) = c;
        gi += MaxImageNorm(c, sets[j]);
      }
      offset += dims[j];
    }
    g = std::max(g, gi);
    l = std::max(l, SpectralNorm(block_row));
  }
  SmoothConvexGame game;
  game.kind_ = GameKind::kMultilinearQuadratic;
  game.sets_ = std::move(sets);
  game.g_ = g;
  game.l_ = l;
  game.gradient_ = [coupling, linear, curvature](int i, const Profile& x) {
    Vector grad = linear[i] - curvature[i] * x[i];
    for (size_t j = 0; j < x.size(); ++j) {
      if (static_cast<int>(j) != i) grad += coupling[i][j] * x[j];
    }
    return grad;
  };
  game.utility_ = [coupling, linear, curvature](int i, const Profile& x) {
    double u = linear[i].dot(x[i]) - 0.5 * curvature[i] * x[i].squaredNorm();
    for (size_t j = 0; j < x.size(); ++j) {
      if (static_cast<int>(j) != i) u += x[i].dot(coupling[i][j] * x[j]);
    }
    return u;
  };
  return game;
}

SmoothConvexGame SmoothConvexGame::NormalForm(
    std::vector<int> actions, std::vector<std::vector<double>> payoffs) {
  const int n = static_cast<int>(actions.size());
  if (n < 1 || static_cast<int>(payoffs.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "need one payoff tensor per player");
  }
  std::size_t profiles = 1;
  for (int a : actions) {
    if (a < 1) throw Error(ErrorCode::kInvalidArgument, "action count < 1");
    profiles *= static_cast<std::size_t>(a);
  }
  double sum_actions = 0.0;
  for (int a : actions) sum_actions += a;
  double g = 0.0, l = 0.0;
  std::vector<ConvexSet> sets;
  for (int i = 0; i < n; ++i) {
    if (payoffs[i].size() != profiles) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "payoff tensor size must equal the number of profiles");
    }
    double umax = 0.0;
    for (double u : payoffs[i]) {
      if (!std::isfinite(u)) throw Error(ErrorCode::kNonFinite, "payoff entry");
      umax = std::max(umax, std::abs(u));
    }
    const double root_a = std::sqrt(static_cast<double>(actions[i]));
    g = std::max(g, root_a * umax);
    // Hybrid argument: a change in x_j moves each gradient entry by at most
    // umax ||dx_j||_1 <= umax sqrt(A_j) ||dx_j||_2.
    l = std::max(l, root_a * umax * std::sqrt(sum_actions - actions[i]));
    sets.push_back(ConvexSet::Simplex(actions[i]));
  }
  SmoothConvexGame game;
  game.kind_ = GameKind::kNormalForm;
  game.sets_ = std::move(sets);
  game.g_ = g;
  game.l_ = l;
  game.gradient_ = [actions, payoffs, profiles](int i, const Profile& x) {
    Vector grad = Vector::Zero(actions[i]);
    std::vector<int> a(actions.size());
    for (std::size_t idx = 0; idx < profiles; ++idx) {
      DecodeProfile(idx, actions, a);
      double weight = 1.0;
      for (size_t j = 0; j < actions.size(); ++j) {
        if (static_cast<int>(j) != i) weight *= x[j][a[j]];
      }
      grad[a[i]] += payoffs[i][idx] * weight;
    }
    return grad;
  };
  game.utility_ = [actions, payoffs, profiles](int i, const Profile& x) {
    double u = 0.0;
    std::vector<int> a(actions.size());
    for (std::size_t idx = 0; idx < profiles; ++idx) {
      DecodeProfile(idx, actions, a);
      double weight = 1.0;
      for (size_t j = 0; j < actions.size(); ++j) weight *= x[j][a[j]];
      u += payoffs[i][idx] * weight;
    }
    return u;
  };
  return game;
}

SmoothConvexGame SmoothConvexGame::Custom(std::vector<ConvexSet> sets,
                                          UtilityGradient gradient, double g,
                                          double l) {
  if (sets.empty()) throw Error(ErrorCode::kInvalidArgument, "no players");
  if (!(g >= 0.0) || !(l >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "declared G and L must be >= 0");
  }
  SmoothConvexGame game;
  game.kind_ = GameKind::kCustom;
  game.sets_ = std::move(sets);
  game.gradient_ = std::move(gradient);
  game.g_ = g;
  game.l_ = l;
  return game;
}

void SmoothConvexGame::CheckProfile(const Profile& profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile size != player count");
  }
  for (int i = 0; i < num_players(); ++i) {
    RequireDimension(profile[i], sets_[i].dimension(), "player strategy");
  }
}

Vector SmoothConvexGame::Gradient(int player, const Profile& profile) const {
  CheckProfile(profile);
  if (player < 0 || player >= num_players()) {
    throw Error(ErrorCode::kInvalidArgument, "player index out of range");
  }
  Vector grad = gradient_(player, profile);
  RequireDimension(grad, sets_[player].dimension(), "utility gradient");
  return grad;
}

std::optional<double> SmoothConvexGame::Utility(int player,
                                                const Profile& profile) const {
  if (!utility_) return std::nullopt;
  CheckProfile(profile);
  return utility_(player, profile);
}

SmoothConvexGame FirstPriceAuction(const std::vector<double>& valuations,
                                   const std::vector<double>& bids) {
  const int n = static_cast<int>(valuations.size());
  const int k = static_cast<int>(bids.size());
  if (n < 1 || k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "auction needs bidders and bids");
  }
  std::vector<int> actions(n, k);
  std::size_t profiles = 1;
  for (int i = 0; i < n; ++i) profiles *= static_cast<std::size_t>(k);
  std::vector<std::vector<double>> payoffs(n, std::vector<double>(profiles));
  std::vector<int> a(n);
  for (std::size_t idx = 0; idx < profiles; ++idx) {
    DecodeProfile(idx, actions, a);
    double top = bids[a[0]];
    for (int i = 1; i < n; ++i) top = std::max(top, bids[a[i]]);
    int winners = 0;
    for (int i = 0; i < n; ++i) winners += bids[a[i]] == top ? 1 : 0;
    for (int i = 0; i < n; ++i) {
      payoffs[i][idx] =
          bids[a[i]] == top ? (valuations[i] - bids[a[i]]) / winners : 0.0;
    }
  }
  return SmoothConvexGame::NormalForm(std::move(actions), std::move(payoffs));
}

ConstantsCheck SpotCheckConstants(const SmoothConvexGame& game, int samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ConstantsCheck check;
  const int n = game.num_players();
  auto sample_profile = [&] {
    Profile x;
    for (int i = 0; i < n; ++i) x.push_back(game.set(i).Sample(rng));
    return x;
  };
  for (int s = 0; s < samples; ++s) {
    const Profile x = sample_profile();
    const Profile y = sample_profile();
    double dist2 = 0.0;
    for (int i = 0; i < n; ++i) dist2 += (x[i] - y[i]).squaredNorm();
    const double dist = std::sqrt(dist2);
    for (int i = 0; i < n; ++i) {
      const Vector gx = game.Gradient(i, x);
      check.max_gradient_norm = std::max(check.max_gradient_norm, gx.norm());
      if (dist > 0.0) {
        const double ratio = (gx - game.Gradient(i, y)).norm() / dist;
        check.max_lipschitz_ratio = std::max(check.max_lipschitz_ratio, ratio);
      }
    }
  }
  check.ok = check.max_gradient_norm <= game.lipschitz() + kTolerance &&
             check.max_lipschitz_ratio <= game.smoothness() + kTolerance;
  return check;
}

std::unique_ptr<OnlineLearner> MakeLearner(const LearnerSpec& spec,
                                           const ConvexSet& set,
                                           std::mt19937_64& rng) {
  std::optional<Vector> initial = spec.initial;
  if (spec.random_initial && !initial) initial = set.Sample(rng);
  switch (spec.kind) {
    case LearnerKind::kGradientDescent:
      return std::make_unique<GradientDescent>(set, spec.schedule, initial);
    case LearnerKind::kOptimisticGradient:
      return std::make_unique<OptimisticGradient>(set, spec.schedule, initial);
    case LearnerKind::kMirrorDescent:
      if (spec.mirror == MirrorKind::kNegativeEntropy) {
        if (set.kind() != SetKind::kSimplex || set.translated()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "entropy mirror descent needs the probability simplex");
        }
        return std::make_unique<MirrorDescent>(
            MirrorMap::NegativeEntropy(set.dimension()), spec.schedule, initial);
      }
      return std::make_unique<MirrorDescent>(MirrorMap::SquaredEuclidean(set),
                                             spec.schedule, initial);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown learner kind");
}

Profile PlayRecord::ProfileAt(int t) const {
  Profile profile;
  for (const Trace& trace : traces) profile.push_back(trace.rounds.at(t - 1).x);
  return profile;
}

Vector PlayRecord::EmpiricalMean(int player) const {
  const Trace& trace = traces.at(player);
  Vector mean = Vector::Zero(trace.dimension());
  for (const Round& r : trace.rounds) mean += r.x;
  if (!trace.empty()) mean /= trace.length();
  return mean;
}

PlayRecord SelfPlay(const SmoothConvexGame& game,
                    const std::vector<LearnerSpec>& learners, int rounds,
                    std::uint64_t seed) {
  const int n = game.num_players();
  if (static_cast<int>(learners.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "need one learner per player");
  }
  if (rounds < 0) throw Error(ErrorCode::kInvalidArgument, "T must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<std::unique_ptr<OnlineLearner>> players;
  PlayRecord record;
  for (int i = 0; i < n; ++i) {
    players.push_back(MakeLearner(learners[i], game.set(i), rng));
    record.traces.push_back(EmptyTraceFor(*players.back()));
    record.traces.back().rounds.reserve(rounds);
  }
  Profile profile(n);
  std::vector<Vector> feedback(n);
  for (int t = 1; t <= rounds; ++t) {
    for (int i = 0; i < n; ++i) profile[i] = players[i]->Act();
    for (int i = 0; i < n; ++i) {
      feedback[i] = -game.Gradient(i, profile);
      const double norm = feedback[i].norm();
      if (norm > game.lipschitz() + kTolerance) {
        std::ostringstream os;
        os << "round " << t << ", player " << i << ": ||g|| = " << norm
           << " > G = " << game.lipschitz();
        throw Error(ErrorCode::kConstantsViolated, os.str());
      }
    }
    for (int i = 0; i < n; ++i) {
      players[i]->Observe(feedback[i]);
      RecordRound(record.traces[i], *players[i], profile[i], feedback[i]);
    }
  }
  return record;
}

double SocialRegret(const PlayRecord& record,
                    const std::vector<Comparator>& comparators) {
  if (static_cast<int>(comparators.size()) != record.num_players()) {
    throw Error(ErrorCode::kInvalidArgument, "need one comparator per player");
  }
  double total = 0.0;
  for (int i = 0; i < record.num_players(); ++i) {
    total += ProximalRegret(record.traces[i], comparators[i]).regret;
  }
  return total;
}

PceGap ComputePceGap(const PlayRecord& record,
                     const std::vector<ComparatorFamily>& families) {
  const int n = record.num_players();
  if (families.empty() ||
      (families.size() != 1 && static_cast<int>(families.size()) != n)) {
    throw Error(ErrorCode::kEmptyFamily,
                "need one comparator family, or one per player");
  }
  if (record.length() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty play record");
  }
  PceGap gap;
  gap.epsilon = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const ComparatorFamily& family = families.size() == 1 ? families[0] : families[i];
    const FamilyRegret result = EvaluateFamily(record.traces[i], family);
    const double eps = result.best.regret / record.length();
    if (eps > gap.epsilon) {
      gap.epsilon = eps;
      gap.worst_player = i;
      gap.worst_comparator = result.best.comparator_id;
    }
  }
  return gap;
}

double GradientVariation(const PlayRecord& record, int player) {
  return GradientVariation(record.traces.at(player));
}

}  // namespace proxregret
