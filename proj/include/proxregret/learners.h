#ifndef PROXREGRET_LEARNERS_H_
#define PROXREGRET_LEARNERS_H_

#include <functional>
#include <memory>
#include <optional>

#include "proxregret/bregman.h"
#include "proxregret/geometry.h"
#include "proxregret/trace.h"

namespace proxregret {

enum class ScheduleKind { kConstant, kInverseSqrt, kOptimized };

// Non-increasing positive step sizes eta_t, t >= 1.
class StepSchedule {
 public:
  static StepSchedule Constant(double eta);
  // eta_t = scale / sqrt(t).
  static StepSchedule InverseSqrt(double scale = 1.0);
  // Constant eta = sqrt((D^2 + 2 B_f) / (G^2 T)).
  static StepSchedule Optimized(double diameter, double bf, double g, int horizon);

  double operator()(int t) const;
  ScheduleKind kind() const { return kind_; }
  bool is_constant() const { return kind_ != ScheduleKind::kInverseSqrt; }

 private:
  StepSchedule(ScheduleKind kind, double value) : kind_(kind), value_(value) {}

  ScheduleKind kind_;
  double value_;
};

// Every learner plays once (Act) and then observes the feedback for that
// point (Observe), in strict alternation.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual LearnerKind kind() const = 0;
  virtual const ConvexSet& set() const = 0;
  virtual Vector Act() = 0;
  virtual void Observe(const Vector& g) = 0;
  // Number of completed rounds.
  virtual int round() const = 0;
  virtual const StepSchedule& schedule() const = 0;
};

// x^{t+1} = Pi[x^t - eta_t g^t].
class GradientDescent : public OnlineLearner {
 public:
  GradientDescent(ConvexSet set, StepSchedule schedule,
                  std::optional<Vector> initial = std::nullopt);

  LearnerKind kind() const override { return LearnerKind::kGradientDescent; }
  const ConvexSet& set() const override { return set_; }
  Vector Act() override { return x_; }
  void Observe(const Vector& g) override { Step(g); }
  int round() const override { return t_ - 1; }
  const StepSchedule& schedule() const override { return schedule_; }

  void Step(const Vector& g);
  const Vector& x() const { return x_; }

 private:
  ConvexSet set_;
  StepSchedule schedule_;
  Vector x_;
  int t_ = 1;
};

// x^t = Pi[w^{t-1} - eta_t g^{t-1}],  w^t = Pi[w^{t-1} - eta_t g^t], g^0 = 0.
class OptimisticGradient : public OnlineLearner {
 public:
  OptimisticGradient(ConvexSet set, StepSchedule schedule,
                     std::optional<Vector> initial_anchor = std::nullopt);

  LearnerKind kind() const override { return LearnerKind::kOptimisticGradient; }
  const ConvexSet& set() const override { return set_; }
  Vector Act() override { return Predict(); }
  void Observe(const Vector& g) override { Update(g); }
  int round() const override { return t_ - 1; }
  const StepSchedule& schedule() const override { return schedule_; }

  // Must be called exactly once before each Update.
  Vector Predict();
  // kProtocol if Predict has not been called this round.
  void Update(const Vector& g);

  const Vector& anchor() const { return w_; }
  const Vector& previous_gradient() const { return g_prev_; }

 private:
  ConvexSet set_;
  StepSchedule schedule_;
  Vector w_;
  Vector g_prev_;
  Vector x_;
  bool predicted_ = false;
  int t_ = 1;
};

// x^{t+1} = argmin <eta_t g^t, y> + D(y|x^t).
class MirrorDescent : public OnlineLearner {
 public:
  MirrorDescent(MirrorMap map, StepSchedule schedule,
                std::optional<Vector> initial = std::nullopt);

  LearnerKind kind() const override { return LearnerKind::kMirrorDescent; }
  const ConvexSet& set() const override { return map_.domain(); }
  Vector Act() override { return x_; }
  void Observe(const Vector& g) override { Step(g); }
  int round() const override { return t_ - 1; }
  const StepSchedule& schedule() const override { return schedule_; }

  void Step(const Vector& g);
  const Vector& x() const { return x_; }
  const MirrorMap& map() const { return map_; }

 private:
  MirrorMap map_;
  StepSchedule schedule_;
  Vector x_;
  int t_ = 1;
};

// Maps (t, x^t) to the feedback g^t.
using LossOracle = std::function<Vector(int, const Vector&)>;

// Drives the online protocol for T rounds and records the trace.
Trace Run(OnlineLearner& learner, const LossOracle& oracle, int rounds);

// Empty trace shell (set, learner kind, initial anchor, mirror map) for a
// learner that has not played yet.
Trace EmptyTraceFor(const OnlineLearner& learner);
// Appends the round the learner just completed. `x` and `g` are that round's
// point and feedback.
void RecordRound(Trace& trace, const OnlineLearner& learner, const Vector& x,
                 const Vector& g);

}  // namespace proxregret

#endif  // PROXREGRET_LEARNERS_H_
