#pragma once

#include <utility>
#include <vector>

#include "specscale/exec.hpp"
#include "specscale/operator_data.hpp"
#include "specscale/pencil.hpp"

namespace specscale {

/// (1/k) * (sum of the k largest eigenvalues of b_theta): the distance from
/// the origin to the tangent line of W_k(c) with outward normal e^{i theta}.
double support_wk(const Operator& op, int k, double theta);

/// Tangent touch set at angle theta: one point when the k-th eigenvalue gap
/// of b_theta is open, the two segment endpoints when it is degenerate.
/// points are ordered [P1, P2] with P1 the counterclockwise-first endpoint
/// (the phi -> theta^- limit of the tangent intersections).
struct TouchResult {
    double r = 0;
    std::vector<cplx> points;
    bool crosscheck_ok = true;  // finite-difference tangent-intersection agreement
};
TouchResult touch_set(const Operator& op, int k, double theta, double tol);

enum class BoundaryKind { Point, Segment, Regular };

struct BoundarySample {
    double theta = 0;
    double r = 0;
    std::vector<cplx> touch;
    bool at_critical = false;
};

struct SegmentFeature {
    cplx p1, p2;
    double theta = 0;
};

struct CornerFeature {
    cplx lambda;
    double theta_lo = 0, theta_hi = 0;  // sectorial tangent-normal angles
};

struct ArcInterval {
    double theta_lo = 0, theta_hi = 0;
    bool closed = false;  // full circle
};

struct RangeBoundary {
    int k = 0, n = 0, grid = 0;
    BoundaryKind kind = BoundaryKind::Regular;
    cplx degenerate_lo, degenerate_hi;  // endpoints (Segment) or the point (Point)
    std::vector<BoundarySample> samples;
    std::vector<SegmentFeature> segments;
    std::vector<CornerFeature> corners;
    std::vector<ArcInterval> arcs;
    std::vector<double> critical_thetas;
    double scale = 1.0;  // recentered touch magnitude, used by the feature thresholds
};

/// Samples the grid plus every critical angle, records segments at angles
/// with a degenerate k-th gap, corners as stationary touch runs, arcs as the
/// rest. Recenters by tau(c) internally and shifts the output back.
/// tol <= 0 selects the 1e-9 * (1 + ||b_theta||) gap default; critical may
/// pass a precomputed angle set to avoid rescanning.
RangeBoundary trace_boundary(const Operator& op, int k, int grid, double tol = 0.0,
                             Exec exec = Exec::Parallel,
                             const CriticalAngleSet* critical = nullptr);

struct CornerReport {
    CornerFeature corner;
    bool isolated = false;
};

struct ClassifyReport {
    bool is_polygon = false;
    bool normal_flag = false;
    bool agreement = false;  // is_polygon == normal_flag
    double commutator_norm = 0;
    double operator_norm = 0;
    std::vector<CornerReport> corners;
};

/// Polygon test from the traced arcs, the commutator-norm normality oracle,
/// and the isolated-extreme-point check for every detected corner.
ClassifyReport classify(const RangeBoundary& boundary, const Operator& op);

/// Max over the grid of |k r_k(theta) - n Re(e^{-i theta} tau)
/// - (n-k) r_{n-k}(theta + pi)|; analytically zero.
double complement_identity_check(const Operator& op, int k, int grid, Exec exec = Exec::Parallel);

/// W_k of a self-adjoint matrix: [mean of k smallest, mean of k largest].
std::pair<double, double> selfadjoint_interval(const CMat& a, int k);

/// Tangent-line intersection of L_theta and L_phi given their support
/// values (the corrected form of the Agler formula).
cplx tangent_intersection(double theta, double r_theta, double phi, double r_phi);

}  // namespace specscale
