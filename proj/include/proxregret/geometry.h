#ifndef PROXREGRET_GEOMETRY_H_
#define PROXREGRET_GEOMETRY_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace proxregret {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Default absolute tolerance for floating-point membership and equality.
inline constexpr double kTolerance = 1e-9;

enum class NormKind { kEuclidean, kMax, kOne };

double Norm(const Vector& x, NormKind which = NormKind::kEuclidean);

// The dual of kOne is kMax and vice versa; kEuclidean is self-dual.
NormKind DualNorm(NormKind which);

// Throws kNonFinite if any entry is NaN or infinite.
void RequireFinite(const Vector& x, const char* what);
void RequireDimension(const Vector& x, int dimension, const char* what);

enum class SetKind { kBox, kBall, kSimplex, kWholeSpace };

const char* SetKindName(SetKind kind);

// A closed convex feasible region. Immutable after construction; the
// diameter is computed once here and reused by every bound calculator.
class ConvexSet {
 public:
  static ConvexSet Box(Vector lower, Vector upper);
  static ConvexSet Box(int dimension, double lower, double upper);
  static ConvexSet Ball(Vector center, double radius);
  // Probability simplex {x >= 0, sum x = 1}.
  static ConvexSet Simplex(int dimension);
  static ConvexSet WholeSpace(int dimension);

  // The same set shifted by `offset`.
  ConvexSet Translated(const Vector& offset) const;

  int dimension() const { return dimension_; }
  SetKind kind() const { return kind_; }
  bool bounded() const { return kind_ != SetKind::kWholeSpace; }
  bool translated() const { return translated_; }

  // Euclidean projection. Exact for every kind (the simplex uses the
  // sort-and-threshold rule).
  Vector Project(const Vector& x) const;
  bool Contains(const Vector& x, double tol = kTolerance) const;

  // Throws kUnbounded for whole-space.
  double Diameter() const;
  // Largest Euclidean norm of a member; kUnbounded for whole-space.
  double MaxNorm() const;

  // Box midpoint, ball center, uniform simplex point, origin.
  Vector Center() const;

  // min over the set of <c, x>, returning a minimizer. kUnbounded for
  // whole-space unless c == 0.
  Vector ArgminLinear(const Vector& c) const;
  // max over the set of <c, x - p>.
  double SupportGap(const Vector& c, const Vector& p) const;

  // Vertices of a box (2^d) or a simplex (d). Empty for balls and
  // whole-space, and for boxes with d > kMaxEnumerableBoxDimension.
  std::vector<Vector> ExtremePoints() const;
  static constexpr int kMaxEnumerableBoxDimension = 16;

  // A random member (uniform for box/ball/simplex, standard normal for
  // whole-space).
  Vector Sample(std::mt19937_64& rng) const;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  std::string Describe() const;

 private:
  ConvexSet(SetKind kind, int dimension);

  SetKind kind_;
  int dimension_;
  bool translated_ = false;
  Vector lower_, upper_;  // box
  Vector center_;         // ball center, simplex offset
  double radius_ = 0.0;
  double diameter_ = 0.0;
};

// Sort-and-threshold projection onto {x >= 0, sum x = mass}.
Vector ProjectOntoSimplex(const Vector& x, double mass = 1.0);

}  // namespace proxregret

#endif  // PROXREGRET_GEOMETRY_H_
