#include "proxregret/adversaries.h"

#include <cmath>
#include <memory>
#include <random>

#include "proxregret/error.h"

namespace proxregret {
namespace {

void RequireOneDimensional(int dimension, const char* what) {
  if (dimension != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " adversary is one-dimensional");
  }
}

}  // namespace

const char* AdversaryKindName(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kIidLinear: return "iid-linear";
    case AdversaryKind::kAlternatingSign: return "alternating-sign";
    case AdversaryKind::kPinball: return "pinball";
    case AdversaryKind::kWorstCaseExternal: return "worst-case-external";
    case AdversaryKind::kConstant: return "constant";
  }
  return "unknown";
}

std::optional<AdversaryKind> ParseAdversaryKind(const std::string& name) {
  for (AdversaryKind kind :
       {AdversaryKind::kIidLinear, AdversaryKind::kAlternatingSign,
        AdversaryKind::kPinball, AdversaryKind::kWorstCaseExternal,
        AdversaryKind::kConstant}) {
    if (name == AdversaryKindName(kind)) return kind;
  }
  return std::nullopt;
}

LossOracle MakeAdversary(const AdversarySpec& spec, int dimension,
                         std::uint64_t seed) {
  if (dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "adversary dimension must be >= 1");
  }
  if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale)) {
    throw Error(ErrorCode::kInvalidArgument, "adversary scale must be >= 0");
  }
  auto rng = std::make_shared<std::mt19937_64>(seed);
  const double scale = spec.scale;
  switch (spec.kind) {
    case AdversaryKind::kIidLinear:
      return [rng, scale, dimension](int, const Vector&) {
        std::normal_distribution<double> normal;
        Vector z(dimension);
        double norm = 0.0;
        while (norm == 0.0) {
          for (int i = 0; i < dimension; ++i) z[i] = normal(*rng);
          norm = z.norm();
        }
        return Vector(scale * z / norm);
      };
    case AdversaryKind::kAlternatingSign: {
      const Vector u = Vector::Constant(dimension, scale / std::sqrt(dimension));
      return [u](int t, const Vector&) {
        return Vector(t % 2 == 0 ? u : Vector(-u));
      };
    }
    case AdversaryKind::kPinball: {
      RequireOneDimensional(dimension, "pinball");
      if (!(spec.quantile > 0.0 && spec.quantile < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "pinball quantile must be in (0, 1)");
      }
      if (!(spec.score_std > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "pinball score std must be > 0");
      }
      const double q = spec.quantile;
      auto scores = std::make_shared<std::normal_distribution<double>>(
          spec.score_mean, spec.score_std);
      return [rng, scores, q](int, const Vector& x) {
        const double s = (*scores)(*rng);
        return Vector::Constant(1, q - (s > x[0] ? 1.0 : 0.0)).eval();
      };
    }
    case AdversaryKind::kWorstCaseExternal:
      RequireOneDimensional(dimension, "worst-case-external");
      return [scale](int, const Vector& x) {
        return Vector::Constant(1, x[0] >= 0.0 ? scale : -scale).eval();
      };
    case AdversaryKind::kConstant: {
      RequireDimension(spec.constant, dimension, "constant adversary gradient");
      RequireFinite(spec.constant, "constant adversary gradient");
      const Vector g = spec.constant;
      return [g](int, const Vector&) { return g; };
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown adversary kind");
}

}  // namespace proxregret
