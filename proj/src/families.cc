#include "proxregret/families.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "proxregret/error.h"

namespace proxregret {
namespace {

Vector NormalVector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

Matrix RandomOrthogonal(int d, std::mt19937_64& rng) {
  Matrix g(d, d);
  for (int j = 0; j < d; ++j) g.col(j) = NormalVector(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(d, d);
}

std::string Label(const char* prefix, int index) {
  return std::string(prefix) + "-" + std::to_string(index);
}

}  // namespace

ComparatorFamily ComparatorFamily::Of(std::vector<Comparator> members) {
  ComparatorFamily family;
  if (!members.empty()) family.dimension_ = members.front().dimension();
  for (const Comparator& f : members) {
    if (f.dimension() != family.dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "family members must share a dimension");
    }
  }
  family.members_ = std::move(members);
  return family;
}

ComparatorFamily ComparatorFamily::UnitLinear(int dimension) {
  ComparatorFamily family;
  family.unit_linear_ = true;
  family.dimension_ = dimension;
  return family;
}

ComparatorFamily& ComparatorFamily::Add(Comparator f) {
  if (dimension_ == 0) dimension_ = f.dimension();
  if (f.dimension() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "family members must share a dimension");
  }
  members_.push_back(std::move(f));
  return *this;
}

ComparatorFamily& ComparatorFamily::Append(const std::vector<Comparator>& more) {
  for (const Comparator& f : more) Add(f);
  return *this;
}

Matrix RandomSymmetricWithSpectrum(const Vector& eigenvalues,
                                   std::mt19937_64& rng) {
  const int d = static_cast<int>(eigenvalues.size());
  const Matrix u = RandomOrthogonal(d, rng);
  Matrix a = u * eigenvalues.asDiagonal() * u.transpose();
  return 0.5 * (a + a.transpose());
}

std::vector<Comparator> IndicatorPointsAtExtremes(const ConvexSet& set) {
  std::vector<Vector> points = set.ExtremePoints();
  if (set.kind() == SetKind::kBall) {
    for (int i = 0; i < set.dimension(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Vector p = set.center();
        p[i] += sign * set.radius();
        points.push_back(std::move(p));
      }
    }
  }
  if (points.empty()) {
    throw Error(ErrorCode::kUnsupported,
                "no enumerable extreme points for " + set.Describe());
  }
  std::vector<Comparator> out;
  out.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    out.push_back(Comparator::IndicatorPoint(std::move(points[i]))
                      .WithId(Label("vertex", static_cast<int>(i))));
  }
  return out;
}

std::vector<Comparator> RandomIndicatorPoints(const ConvexSet& set, int count,
                                              std::mt19937_64& rng) {
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(
        Comparator::IndicatorPoint(set.Sample(rng)).WithId(Label("point", i)));
  }
  return out;
}

std::vector<Comparator> RandomIndicatorSubsets(const ConvexSet& set, int count,
                                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    if (set.kind() == SetKind::kBox) {
      const Vector a = set.Sample(rng);
      const Vector b = set.Sample(rng);
      out.push_back(Comparator::IndicatorSet(
                        ConvexSet::Box(a.cwiseMin(b), a.cwiseMax(b)))
                        .WithId(Label("subbox", i)));
    } else if (set.kind() == SetKind::kBall) {
      // A ball around a random member, shrunk to stay inside.
      const Vector c = set.Sample(rng);
      const double slack = set.radius() - (c - set.center()).norm();
      out.push_back(Comparator::IndicatorSet(
                        ConvexSet::Ball(c, std::max(0.0, slack) * unit(rng)))
                        .WithId(Label("subball", i)));
    } else {
      throw Error(ErrorCode::kUnsupported,
                  "random sub-set indicators need a box or ball");
    }
  }
  return out;
}

std::vector<Comparator> RandomUnitLinear(int dimension, int count,
                                         std::mt19937_64& rng) {
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    Vector v = NormalVector(dimension, rng);
    v.normalize();
    out.push_back(Comparator::Linear(v).WithId(Label("linear", i)));
  }
  return out;
}

std::vector<Comparator> RandomStronglyConvexQuadratics(int dimension, int count,
                                                       double alpha,
                                                       double spread,
                                                       double c_scale,
                                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    Vector eig(dimension);
    for (int k = 0; k < dimension; ++k) eig[k] = alpha + spread * unit(rng);
    eig[0] = alpha;  // pin the modulus exactly
    Matrix q = RandomSymmetricWithSpectrum(eig, rng);
    Vector c = c_scale * NormalVector(dimension, rng);
    out.push_back(Comparator::Quadratic(std::move(q), std::move(c), 0.0)
                      .WithId(Label("sc-quadratic", i)));
  }
  return out;
}

std::vector<Comparator> RandomWeaklyConvexQuadratics(int dimension, int count,
                                                     double rho_max,
                                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    const double rho = rho_max * unit(rng);
    Vector eig(dimension);
    for (int k = 0; k < dimension; ++k) eig[k] = -rho + (1.0 + rho) * unit(rng);
    eig[0] = -rho;
    Matrix q = RandomSymmetricWithSpectrum(eig, rng);
    Vector c = NormalVector(dimension, rng);
    out.push_back(Comparator::Quadratic(std::move(q), std::move(c), rho)
                      .WithId(Label("wc-quadratic", i)));
  }
  return out;
}

AffineMap RandomSymmetricEndomorphism(const ConvexSet& set,
                                      std::mt19937_64& rng) {
  const int d = set.dimension();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AffineMap map;
  map.b = Vector::Zero(d);
  if (set.kind() == SetKind::kSimplex && !set.translated()) {
    // Mixture of symmetrized permutation matrices.
    map.a = Matrix::Zero(d, d);
    std::exponential_distribution<double> expo(1.0);
    std::vector<int> perm(d);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Matrix p = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) p(perm[i], i) = 1.0;
      const double w = expo(rng);
      map.a += w * 0.5 * (p + p.transpose());
      total += w;
    }
    map.a /= total;
    return map;
  }
  if (set.kind() == SetKind::kBall && set.center().isZero(0.0)) {
    Vector eig(d);
    for (int i = 0; i < d; ++i) eig[i] = -1.0 + 2.0 * unit(rng);
    map.a = RandomSymmetricWithSpectrum(eig, rng);
    return map;
  }
  if (set.kind() == SetKind::kBox && (set.lower() + set.upper()).isZero(0.0)) {
    Matrix s(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = -1.0 + 2.0 * unit(rng);
    }
    const double row_max = s.cwiseAbs().rowwise().sum().maxCoeff();
    map.a = s * (unit(rng) / row_max);
    return map;
  }
  throw Error(ErrorCode::kUnsupported,
              "no symmetric endomorphism generator for " + set.Describe());
}

std::vector<Comparator> RandomAffineComparators(const ConvexSet& set, int count,
                                                std::mt19937_64& rng) {
  std::vector<Comparator> out;
  for (int i = 0; i < count; ++i) {
    const AffineMap phi = RandomSymmetricEndomorphism(set, rng);
    const AffineMap mixed =
        InterpolateEndomorphism(phi.a, phi.b, InterpolationWeight(phi.a));
    out.push_back(AffineToComparator(mixed.a, mixed.b).WithId(Label("affine", i)));
  }
  return out;
}

}  // namespace proxregret
