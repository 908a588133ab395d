#ifndef PROXREGRET_ADVERSARIES_H_
#define PROXREGRET_ADVERSARIES_H_

#include <cstdint>
#include <optional>
#include <string>

#include "proxregret/geometry.h"
#include "proxregret/learners.h"

namespace proxregret {

enum class AdversaryKind {
  kIidLinear,          // g^t = G z / ||z||, z standard normal
  kAlternatingSign,    // g^t = (-1)^t G u, u the normalized all-ones vector
  kPinball,            // 1-D: g^t = q - 1{s^t > x^t}, s^t ~ N(mean, std)
  kWorstCaseExternal,  // 1-D: g^t = G sign(x^t), sign(0) = +1
  kConstant,           // g^t = fixed vector
};

const char* AdversaryKindName(AdversaryKind kind);
// Inverse of AdversaryKindName; nullopt for unknown names.
std::optional<AdversaryKind> ParseAdversaryKind(const std::string& name);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kIidLinear;
  double scale = 1.0;  // G
  double quantile = 0.5;
  double score_mean = 0.0;
  double score_std = 1.0;
  Vector constant;  // kConstant only
};

// Deterministic for a fixed seed. The oracle owns its random stream, so two
// oracles built from the same (spec, dimension, seed) emit the same feedback
// for the same sequence of queries.
LossOracle MakeAdversary(const AdversarySpec& spec, int dimension,
                         std::uint64_t seed);

}  // namespace proxregret

#endif  // PROXREGRET_ADVERSARIES_H_
