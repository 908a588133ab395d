#ifndef PROXREGRET_BOUNDS_H_
#define PROXREGRET_BOUNDS_H_

#include <span>

#include "proxregret/regret.h"
#include "proxregret/trace.h"

namespace proxregret {

// A posteriori GD bound for one comparator, from the trace and its report:
//   (D^2 + 2 B_f) / (2 eta_T) + sum_t (eta_t / 2) ||g^t||^2
//     - sum_{t<T} ((1 - rho) / (2 eta_t)) ||p^t - p^{t+1}||^2
// with D = max_t ||x^t - p^t|| and B_f the observed f-value spread. The
// non-positive -||x^{T+1} - p^T||^2 term is dropped.
double GdFullBound(const Trace& trace, const RegretReport& report);

// (D^2 + B_f + G^2) sqrt(T), valid for eta_t = 1/sqrt(t) or 1/sqrt(T).
double GdSimpleBound(double diameter, double bf, double g, int horizon);
// G sqrt(D^2 + 2 B_f) sqrt(T), for the optimized constant step.
double GdOptimizedBound(double diameter, double bf, double g, int horizon);

// 3 (1 + ||A||_2)(4 D^2 + D ||b|| + G^2) sqrt(T) on symmetric linear swap
// regret of GD with eta_t = 1/sqrt(t) over a set inside B(0, D).
double SymmetricSwapBound(double norm_a, double radius, double norm_b, double g,
                          int horizon);

// Anchor-based diameter max_{0<=t<T} ||w^t - p^{t+1}|| of an OG trace.
double OgAnchorDiameter(const Trace& trace, const RegretReport& report);

// A posteriori OG bound for a convex comparator (rho must be 0):
//   (D^2 + 2 B_f) / (2 eta_T) + sum_t eta_t ||g^t - g^{t-1}||^2
//     - sum_t (1 / (2 eta_t)) ||x^t - w^t||^2
// with the anchor-based D. kNotOgTrace without anchors.
double OgAdversarialBound(const Trace& trace, const RegretReport& report);

// Individual regret of OG self-play with a fixed step:
//   (D^2 + 2B) / eta + 2 eta G^2 + 3 n L^2 G^2 eta^3 T.
double OgGameBound(double diameter, double b, double g, double l, int players,
                   int horizon, double eta);
// The eta = T^{-1/4} form (D^2 + 2B + 4 n L^2 G^2) T^{1/4}.
double OgGameBoundTuned(double diameter, double b, double g, double l,
                        int players, int horizon);
// Per-round gradient variation cap 3 n L^2 eta^2 G^2 for OG self-play, t >= 2.
double OgVariationCap(double g, double l, int players, double eta);

// sqrt(min(alpha, 1) / (8 n L^2)).
double SocialStepLimit(double alpha, int players, double l);

// sum_i (D_i + B_i) / (2 eta) + n eta G^2. Throws kStepSizeViolation when
// eta exceeds SocialStepLimit(alpha, n, L).
double SocialBound(std::span<const double> diameters,
                   std::span<const double> bfs, double g, double l,
                   double alpha, double eta);

// A posteriori MD bound from a Bregman report:
//   (D + B_f) / eta_T + sum_t (eta_t / 2) ||g^t||_*^2
//     - sum_{t<T} ((1 - rho) / 2) ||p^t - p^{t+1}||^2
// with D = max_t D(p^t | x^t) and norms from the trace's mirror map.
double MdBound(const Trace& trace, const RegretReport& report);

}  // namespace proxregret

#endif  // PROXREGRET_BOUNDS_H_
