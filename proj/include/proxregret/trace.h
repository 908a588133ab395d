#ifndef PROXREGRET_TRACE_H_
#define PROXREGRET_TRACE_H_

#include <optional>
#include <vector>

#include "proxregret/bregman.h"
#include "proxregret/geometry.h"

namespace proxregret {

enum class LearnerKind { kGradientDescent, kOptimisticGradient, kMirrorDescent };

const char* LearnerKindName(LearnerKind kind);

// One round of the online protocol.
struct Round {
  int t = 0;        // 1-based
  Vector x;         // point played
  Vector g;         // feedback received at x
  double eta = 0.0;
  // OG only: w^t after the update with g.
  std::optional<Vector> anchor;
};

// The record of a run. Rounds are ordered by t starting at 1.
struct Trace {
  ConvexSet set = ConvexSet::WholeSpace(1);
  LearnerKind learner = LearnerKind::kGradientDescent;
  std::vector<Round> rounds;
  // OG only: w^0.
  std::optional<Vector> initial_anchor;
  // MD only: the mirror map the run used.
  std::optional<MirrorMap> mirror;

  int length() const { return static_cast<int>(rounds.size()); }
  bool empty() const { return rounds.empty(); }
  int dimension() const { return set.dimension(); }
  // Sum of g^t.
  Vector GradientSum() const;
};

}  // namespace proxregret

#endif  // PROXREGRET_TRACE_H_
