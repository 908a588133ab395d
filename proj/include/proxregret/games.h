#ifndef PROXREGRET_GAMES_H_
#define PROXREGRET_GAMES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxregret/bregman.h"
#include "proxregret/families.h"
#include "proxregret/geometry.h"
#include "proxregret/learners.h"
#include "proxregret/trace.h"

namespace proxregret {

// One strategy per player.
using Profile = std::vector<Vector>;

// (player i, joint profile x) -> gradient of u_i with respect to x_i.
using UtilityGradient = std::function<Vector(int, const Profile&)>;

enum class GameKind { kBilinearZeroSum, kMultilinearQuadratic, kNormalForm, kCustom };

const char* GameKindName(GameKind kind);

// An n-player game with concave utilities, given only through utility
// gradients and the certified constants
//   G >= ||grad_i u_i(x)||                       (per player, all feasible x)
//   L >= ||grad_i u_i(x) - grad_i u_i(x')|| / ||x - x'||  (joint norm)
// Built-in kinds compute G and L analytically.
class SmoothConvexGame {
 public:
  // u_1 = x_1' M x_2, u_2 = -u_1.
  static SmoothConvexGame BilinearZeroSum(Matrix payoff, ConvexSet first,
                                          ConvexSet second);
  // Both players on simplices sized by M.
  static SmoothConvexGame BilinearZeroSum(Matrix payoff);

  // u_i = sum_{j != i} x_i' C_ij x_j + b_i' x_i - (kappa_i / 2) ||x_i||^2
  // with kappa_i >= 0. coupling[i][j] is C_ij (ignored for i == j).
  static SmoothConvexGame MultilinearQuadratic(
      std::vector<ConvexSet> sets, std::vector<std::vector<Matrix>> coupling,
      std::vector<Vector> linear, std::vector<double> curvature);

  // Mixed extension of a finite game. payoffs[i] lists u_i over all action
  // profiles in row-major order (player 0's action varies slowest).
  static SmoothConvexGame NormalForm(std::vector<int> actions,
                                     std::vector<std::vector<double>> payoffs);

  // User-supplied oracle; G and L are declared and can be spot-checked with
  // SpotCheckConstants.
  static SmoothConvexGame Custom(std::vector<ConvexSet> sets,
                                 UtilityGradient gradient, double g, double l);

  GameKind kind() const { return kind_; }
  int num_players() const { return static_cast<int>(sets_.size()); }
  const ConvexSet& set(int player) const { return sets_.at(player); }
  double lipschitz() const { return g_; }   // G
  double smoothness() const { return l_; }  // L

  Vector Gradient(int player, const Profile& profile) const;
  // Utility value; unavailable (nullopt) for custom games.
  std::optional<double> Utility(int player, const Profile& profile) const;

  const Matrix& payoff() const { return payoff_; }  // bilinear only

 private:
  SmoothConvexGame() = default;
  void CheckProfile(const Profile& profile) const;

  GameKind kind_ = GameKind::kCustom;
  std::vector<ConvexSet> sets_;
  UtilityGradient gradient_;
  std::function<double(int, const Profile&)> utility_;
  double g_ = 0.0;
  double l_ = 0.0;
  Matrix payoff_;
};

// First-price auction over a discrete bid grid: each bidder's mixed strategy
// lives on a simplex over `bids`; the highest bid wins (ties split evenly)
// and the winner pays its bid.
SmoothConvexGame FirstPriceAuction(const std::vector<double>& valuations,
                                   const std::vector<double>& bids);

struct ConstantsCheck {
  double max_gradient_norm = 0.0;  // largest sampled ||grad_i u_i||
  double max_lipschitz_ratio = 0.0;  // largest sampled smoothness quotient
  bool ok = true;
};

// Samples random profiles (and pairs) and compares against G and L.
ConstantsCheck SpotCheckConstants(const SmoothConvexGame& game, int samples,
                                  std::uint64_t seed);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kGradientDescent;
  StepSchedule schedule = StepSchedule::InverseSqrt();
  std::optional<Vector> initial;
  // Draw the initial point from the set with the run's seed.
  bool random_initial = false;
  // MD only.
  MirrorKind mirror = MirrorKind::kNegativeEntropy;
};

std::unique_ptr<OnlineLearner> MakeLearner(const LearnerSpec& spec,
                                           const ConvexSet& set,
                                           std::mt19937_64& rng);

// Per-player traces of a self-play run, aligned by round.
struct PlayRecord {
  std::vector<Trace> traces;

  int num_players() const { return static_cast<int>(traces.size()); }
  int length() const { return traces.empty() ? 0 : traces.front().length(); }
  Profile ProfileAt(int t) const;  // 1-based round
  // Mean of player i's strategies (the marginal of the empirical
  // distribution of play).
  Vector EmpiricalMean(int player) const;
};

// Simultaneous play: every player acts from its pre-round state, then each
// receives g_i^t = -grad_i u_i(x^t). Throws kConstantsViolated if some
// ||g_i^t|| exceeds G + 1e-9.
PlayRecord SelfPlay(const SmoothConvexGame& game,
                    const std::vector<LearnerSpec>& learners, int rounds,
                    std::uint64_t seed);

// sum_i proximal regret of player i against comparators[i].
double SocialRegret(const PlayRecord& record,
                    const std::vector<Comparator>& comparators);

struct PceGap {
  double epsilon = 0.0;
  int worst_player = 0;
  std::string worst_comparator;
};

// max_i (family regret of player i) / T; families[i] applies to player i, or
// a single family applies to everyone.
PceGap ComputePceGap(const PlayRecord& record,
                     const std::vector<ComparatorFamily>& families);

// P^T for one player.
double GradientVariation(const PlayRecord& record, int player);

}  // namespace proxregret

#endif  // PROXREGRET_GAMES_H_
