#include "proxregret/learners.h"

#include <cmath>

#include "proxregret/error.h"

namespace proxregret {
namespace {

Vector InitialPoint(const ConvexSet& set, const std::optional<Vector>& initial,
                    const char* what) {
  if (!initial) return set.Center();
  RequireDimension(*initial, set.dimension(), what);
  RequireFinite(*initial, what);
  if (!set.Contains(*initial)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " is not a member of the feasible set");
  }
  return *initial;
}

}  // namespace

const char* LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kGradientDescent: return "gd";
    case LearnerKind::kOptimisticGradient: return "og";
    case LearnerKind::kMirrorDescent: return "md";
  }
  return "unknown";
}

Vector Trace::GradientSum() const {
  Vector sum = Vector::Zero(dimension());
  for (const Round& r : rounds) sum += r.g;
  return sum;
}

StepSchedule StepSchedule::Constant(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be positive");
  }
  return StepSchedule(ScheduleKind::kConstant, eta);
}

StepSchedule StepSchedule::InverseSqrt(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "step scale must be positive");
  }
  return StepSchedule(ScheduleKind::kInverseSqrt, scale);
}

StepSchedule StepSchedule::Optimized(double diameter, double bf, double g,
                                     int horizon) {
  if (diameter < 0.0 || bf < 0.0 || !(g > 0.0) || horizon < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "optimized schedule needs D, B_f >= 0, G > 0, T >= 1");
  }
  const double eta =
      std::sqrt((diameter * diameter + 2.0 * bf) / (g * g * horizon));
  if (!(eta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "optimized schedule needs D^2 + 2 B_f > 0");
  }
  return StepSchedule(ScheduleKind::kOptimized, eta);
}

double StepSchedule::operator()(int t) const {
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "rounds start at t = 1");
  if (kind_ == ScheduleKind::kInverseSqrt) {
    return value_ / std::sqrt(static_cast<double>(t));
  }
  return value_;
}

GradientDescent::GradientDescent(ConvexSet set, StepSchedule schedule,
                                 std::optional<Vector> initial)
    : set_(std::move(set)),
      schedule_(schedule),
      x_(InitialPoint(set_, initial, "initial point")) {}

void GradientDescent::Step(const Vector& g) {
  RequireDimension(g, set_.dimension(), "gradient feedback");
  RequireFinite(g, "gradient feedback");
  x_ = set_.Project(x_ - schedule_(t_) * g);
  ++t_;
}

OptimisticGradient::OptimisticGradient(ConvexSet set, StepSchedule schedule,
                                       std::optional<Vector> initial_anchor)
    : set_(std::move(set)),
      schedule_(schedule),
      w_(InitialPoint(set_, initial_anchor, "initial anchor")),
      g_prev_(Vector::Zero(set_.dimension())) {}

Vector OptimisticGradient::Predict() {
  if (predicted_) {
    throw Error(ErrorCode::kProtocol, "Predict called twice in one round");
  }
  x_ = set_.Project(w_ - schedule_(t_) * g_prev_);
  predicted_ = true;
  return x_;
}

void OptimisticGradient::Update(const Vector& g) {
  if (!predicted_) {
    throw Error(ErrorCode::kProtocol, "Update called before Predict");
  }
  RequireDimension(g, set_.dimension(), "gradient feedback");
  RequireFinite(g, "gradient feedback");
  w_ = set_.Project(w_ - schedule_(t_) * g);
  g_prev_ = g;
  predicted_ = false;
  ++t_;
}

MirrorDescent::MirrorDescent(MirrorMap map, StepSchedule schedule,
                             std::optional<Vector> initial)
    : map_(std::move(map)),
      schedule_(schedule),
      x_(InitialPoint(map_.domain(), initial, "initial point")) {
  if (map_.kind() == MirrorKind::kNegativeEntropy &&
      (x_.array() <= 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "entropy mirror descent must start in the simplex interior");
  }
}

void MirrorDescent::Step(const Vector& g) {
  x_ = MirrorStep(map_, x_, g, schedule_(t_));
  ++t_;
}

Trace EmptyTraceFor(const OnlineLearner& learner) {
  Trace trace;
  trace.set = learner.set();
  trace.learner = learner.kind();
  if (const auto* og = dynamic_cast<const OptimisticGradient*>(&learner)) {
    trace.initial_anchor = og->anchor();
  }
  if (const auto* md = dynamic_cast<const MirrorDescent*>(&learner)) {
    trace.mirror = md->map();
  }
  return trace;
}

void RecordRound(Trace& trace, const OnlineLearner& learner, const Vector& x,
                 const Vector& g) {
  Round r;
  r.t = learner.round();
  r.x = x;
  r.g = g;
  r.eta = learner.schedule()(r.t);
  if (const auto* og = dynamic_cast<const OptimisticGradient*>(&learner)) {
    r.anchor = og->anchor();
  }
  trace.rounds.push_back(std::move(r));
}

Trace Run(OnlineLearner& learner, const LossOracle& oracle, int rounds) {
  if (rounds < 0) throw Error(ErrorCode::kInvalidArgument, "T must be >= 0");
  Trace trace = EmptyTraceFor(learner);
  trace.rounds.reserve(rounds);
  for (int i = 0; i < rounds; ++i) {
    const Vector x = learner.Act();
    const Vector g = oracle(learner.round() + 1, x);
    RequireDimension(g, learner.set().dimension(), "oracle feedback");
    learner.Observe(g);
    RecordRound(trace, learner, x, g);
  }
  return trace;
}

}  // namespace proxregret
