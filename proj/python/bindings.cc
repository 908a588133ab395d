#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proxregret/adversaries.h"
#include "proxregret/bounds.h"
#include "proxregret/bregman.h"
#include "proxregret/comparators.h"
#include "proxregret/error.h"
#include "proxregret/families.h"
#include "proxregret/games.h"
#include "proxregret/learners.h"
#include "proxregret/regret.h"

namespace py = pybind11;
using namespace proxregret;

namespace {

StepSchedule MakeSchedule(const std::string& kind, double value) {
  if (kind == "constant") return StepSchedule::Constant(value);
  if (kind == "inverse-sqrt") return StepSchedule::InverseSqrt(value);
  throw Error(ErrorCode::kInvalidArgument, "schedule is 'constant' or 'inverse-sqrt'");
}

std::unique_ptr<OnlineLearner> MakeOnlineLearner(const std::string& kind,
                                                 const ConvexSet& set,
                                                 const StepSchedule& schedule,
                                                 const std::string& mirror) {
  if (kind == "gd") return std::make_unique<GradientDescent>(set, schedule);
  if (kind == "og") return std::make_unique<OptimisticGradient>(set, schedule);
  if (kind == "md") {
    if (mirror == "entropy") {
      if (set.kind() != SetKind::kSimplex || set.translated()) {
        throw Error(ErrorCode::kUnsupported, "the entropy map lives on the simplex");
      }
      return std::make_unique<MirrorDescent>(MirrorMap::NegativeEntropy(set.dimension()),
                                             schedule);
    }
    return std::make_unique<MirrorDescent>(MirrorMap::SquaredEuclidean(set), schedule);
  }
  throw Error(ErrorCode::kInvalidArgument, "learner is 'gd', 'og' or 'md'");
}

}  // namespace

PYBIND11_MODULE(_proxregret, m) {
  m.doc() = "Proximal regret: comparators, prox operators, online learners and bounds";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<SetKind>(m, "SetKind")
      .value("BOX", SetKind::kBox)
      .value("BALL", SetKind::kBall)
      .value("SIMPLEX", SetKind::kSimplex)
      .value("WHOLE_SPACE", SetKind::kWholeSpace);

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_static("box", py::overload_cast<Vector, Vector>(&ConvexSet::Box), py::arg("lower"),
                  py::arg("upper"))
      .def_static("cube", py::overload_cast<int, double, double>(&ConvexSet::Box),
                  py::arg("dimension"), py::arg("lower"), py::arg("upper"))
      .def_static("ball", &ConvexSet::Ball, py::arg("center"), py::arg("radius"))
      .def_static("simplex", &ConvexSet::Simplex, py::arg("dimension"))
      .def_static("whole_space", &ConvexSet::WholeSpace, py::arg("dimension"))
      .def("translated", &ConvexSet::Translated, py::arg("offset"))
      .def_property_readonly("kind", &ConvexSet::kind)
      .def_property_readonly("dimension", &ConvexSet::dimension)
      .def("project", &ConvexSet::Project, py::arg("x"))
      .def("contains", &ConvexSet::Contains, py::arg("x"), py::arg("tol") = kTolerance)
      .def("diameter", &ConvexSet::Diameter)
      .def("center", &ConvexSet::Center)
      .def("extreme_points", &ConvexSet::ExtremePoints)
      .def("__repr__", &ConvexSet::Describe);

  py::class_<Comparator>(m, "Comparator")
      .def_static("indicator_point", &Comparator::IndicatorPoint, py::arg("point"))
      .def_static("indicator_set", &Comparator::IndicatorSet, py::arg("subset"))
      .def_static("linear", &Comparator::Linear, py::arg("direction"))
      .def_static("quadratic", &Comparator::Quadratic, py::arg("q"), py::arg("c"),
                  py::arg("rho") = std::nullopt)
      .def_static("constant", &Comparator::Constant, py::arg("dimension"),
                  py::arg("value") = 0.0)
      .def_static("from_affine", &AffineToComparator, py::arg("a"), py::arg("b"))
      .def_property_readonly("kind",
                             [](const Comparator& f) { return ComparatorKindName(f.kind()); })
      .def_property_readonly("id", &Comparator::id)
      .def_property_readonly("rho", &Comparator::rho)
      .def_property_readonly("dimension", &Comparator::dimension)
      .def("with_id", &Comparator::WithId, py::arg("id"))
      .def("__call__", &Comparator::Evaluate, py::arg("x"));

  m.def(
      "prox",
      [](const Comparator& f, const ConvexSet& set, const Vector& x) {
        return Prox(f, set, x).point;
      },
      py::arg("f"), py::arg("set"), py::arg("x"), "argmin over set of f(y) + |y - x|^2 / 2");
  m.def(
      "bregman_prox",
      [](const Comparator& f, const std::string& mirror, const ConvexSet& set, const Vector& x) {
        const MirrorMap map = mirror == "entropy" ? MirrorMap::NegativeEntropy(set.dimension())
                                                  : MirrorMap::SquaredEuclidean(set);
        return BregmanProx(f, map, x).point;
      },
      py::arg("f"), py::arg("mirror"), py::arg("set"), py::arg("x"));
  m.def("key_inequality_gap", &KeyInequalityGap, py::arg("f"), py::arg("set"), py::arg("x"),
        py::arg("p"));
  m.def("prox_optimality_residual", &CheckProxOptimality, py::arg("f"), py::arg("set"),
        py::arg("x"), py::arg("p"));
  m.def("interpolation_weight", &InterpolationWeight, py::arg("a"));
  m.def("kl_divergence",
        [](const Vector& x, const Vector& y) {
          return BregmanDivergence(MirrorMap::NegativeEntropy(x.size()), x, y);
        },
        py::arg("x"), py::arg("y"));

  py::class_<Trace>(m, "Trace")
      .def_property_readonly("length", &Trace::length)
      .def_property_readonly("learner",
                             [](const Trace& t) { return LearnerKindName(t.learner); })
      .def_property_readonly("points",
                             [](const Trace& t) {
                               std::vector<Vector> out;
                               for (const Round& r : t.rounds) out.push_back(r.x);
                               return out;
                             })
      .def_property_readonly("gradients",
                             [](const Trace& t) {
                               std::vector<Vector> out;
                               for (const Round& r : t.rounds) out.push_back(r.g);
                               return out;
                             })
      .def_property_readonly("steps", [](const Trace& t) {
        std::vector<double> out;
        for (const Round& r : t.rounds) out.push_back(r.eta);
        return out;
      });

  m.def(
      "run",
      [](const std::string& learner, const ConvexSet& set, const LossOracle& oracle, int rounds,
         const std::string& schedule, double step, const std::string& mirror) {
        auto l = MakeOnlineLearner(learner, set, MakeSchedule(schedule, step), mirror);
        return Run(*l, oracle, rounds);
      },
      py::arg("learner"), py::arg("set"), py::arg("oracle"), py::arg("rounds"),
      py::arg("schedule") = "inverse-sqrt", py::arg("step") = 1.0,
      py::arg("mirror") = "entropy",
      "Plays `rounds` rounds; oracle(t, x) returns the feedback g^t.");
  m.def(
      "adversary",
      [](const std::string& kind, int dimension, std::uint64_t seed, double scale,
         double quantile) {
        const auto parsed = ParseAdversaryKind(kind);
        if (!parsed) throw Error(ErrorCode::kInvalidArgument, "unknown adversary " + kind);
        AdversarySpec spec;
        spec.kind = *parsed;
        spec.scale = scale;
        spec.quantile = quantile;
        return MakeAdversary(spec, dimension, seed);
      },
      py::arg("kind"), py::arg("dimension"), py::arg("seed") = 0, py::arg("scale") = 1.0,
      py::arg("quantile") = 0.5);

  py::class_<RegretReport>(m, "RegretReport")
      .def_readonly("comparator_id", &RegretReport::comparator_id)
      .def_readonly("regret", &RegretReport::regret)
      .def_readonly("observed_d", &RegretReport::observed_d)
      .def_readonly("observed_bf", &RegretReport::observed_bf)
      .def_readonly("prox_path", &RegretReport::prox_path);

  m.def("proximal_regret", &ProximalRegret, py::arg("trace"), py::arg("f"));
  m.def("bregman_proximal_regret", [](const Trace& trace, const Comparator& f) {
    if (!trace.mirror) throw Error(ErrorCode::kInvalidArgument, "not a mirror-descent trace");
    return BregmanProximalRegret(trace, f, *trace.mirror);
  });
  m.def("external_regret", &ExternalRegret, py::arg("trace"),
        py::arg("radius") = std::nullopt);
  m.def("gradient_equilibrium_norm", &GradientEquilibriumNorm, py::arg("trace"));
  m.def("gradient_variation", py::overload_cast<const Trace&>(&GradientVariation),
        py::arg("trace"));

  m.def("gd_full_bound", &GdFullBound, py::arg("trace"), py::arg("report"));
  m.def("gd_simple_bound", &GdSimpleBound, py::arg("diameter"), py::arg("bf"), py::arg("g"),
        py::arg("horizon"));
  m.def("gd_optimized_bound", &GdOptimizedBound, py::arg("diameter"), py::arg("bf"),
        py::arg("g"), py::arg("horizon"));
  m.def("og_adversarial_bound", &OgAdversarialBound, py::arg("trace"), py::arg("report"));
  m.def("og_game_bound", &OgGameBound, py::arg("diameter"), py::arg("b"), py::arg("g"),
        py::arg("l"), py::arg("players"), py::arg("horizon"), py::arg("eta"));
  m.def("md_bound", &MdBound, py::arg("trace"), py::arg("report"));

  py::class_<SmoothConvexGame>(m, "Game")
      .def_static("bilinear_zero_sum", py::overload_cast<Matrix>(&SmoothConvexGame::BilinearZeroSum),
                  py::arg("payoff"))
      .def_static("normal_form", &SmoothConvexGame::NormalForm, py::arg("actions"),
                  py::arg("payoffs"))
      .def_static("first_price_auction", &FirstPriceAuction, py::arg("valuations"),
                  py::arg("bids"))
      .def_property_readonly("num_players", &SmoothConvexGame::num_players)
      .def_property_readonly("lipschitz", &SmoothConvexGame::lipschitz)
      .def_property_readonly("smoothness", &SmoothConvexGame::smoothness)
      .def("set", &SmoothConvexGame::set, py::arg("player"));

  m.def(
      "self_play",
      [](const SmoothConvexGame& game, const std::string& learner, double eta, int rounds,
         std::uint64_t seed) {
        LearnerSpec spec;
        if (learner == "gd") {
          spec.kind = LearnerKind::kGradientDescent;
        } else if (learner == "og") {
          spec.kind = LearnerKind::kOptimisticGradient;
        } else {
          throw Error(ErrorCode::kInvalidArgument, "self_play learner is 'gd' or 'og'");
        }
        spec.schedule = StepSchedule::Constant(eta);
        spec.random_initial = true;
        const PlayRecord record = SelfPlay(
            game, std::vector<LearnerSpec>(game.num_players(), spec), rounds, seed);
        return record.traces;
      },
      py::arg("game"), py::arg("learner"), py::arg("eta"), py::arg("rounds"),
      py::arg("seed") = 0, "Returns one trace per player.");
}
