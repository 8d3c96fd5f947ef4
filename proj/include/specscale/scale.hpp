#pragma once

#include <string>
#include <vector>

#include "specscale/exec.hpp"
#include "specscale/hull.hpp"
#include "specscale/operator_data.hpp"

namespace specscale {

/// Support of the spectral scale B in direction (-s, t1, t2):
/// tau((b_t - s 1)_+) = (1/n) sum max(mu_i - s, 0) over eigenvalues of
/// b_t = t1 b1 + t2 b2, attained at the spectral projection above level s.
double scale_support(const Operator& op, double s, double t1, double t2);

struct ExtremePointResult {
    bool exposed = true;  // false: s sits at an eigenvalue of b_t, maximizer non-unique
    Vec3 point;           // Psi of the spectral projection of b_t above s
    int rank = 0;
};
ExtremePointResult extreme_point(const Operator& op, double s, double t1, double t2, double tol);

struct ScaleBody {
    int n = 0;
    Hull3 hull;
    Vec3 psi_one;
    std::vector<std::array<double, 3>> provenance;  // per hull vertex: (s, t1, t2)
    std::vector<int> vertex_rank;
    CMat b1, b2;  // generating pencil, kept for face validation
    double hull_tol = 0;
    double coord_scale = 1;
    double x0_level_dev = 0;  // worst |x0 - nearest k/n| over hull vertices
};

/// Samples Fibonacci-sphere directions plus the axis and spectral-gap
/// directions, collects Psi of the exposed spectral projections (both
/// endpoints plus in-face corner completions at degenerate levels), and
/// hulls the cloud. hull_tol <= 0 selects 1e-9 * coordinate scale.
ScaleBody build_scale(const Operator& op, int directions, double hull_tol = 0.0,
                      Exec exec = Exec::Parallel);

struct IsotraceSlice {
    int k = 0, n = 0;
    double t = 0;                // x0 level k/n
    std::vector<cplx> polygon;   // ordered boundary in the (x1, x2) plane
};

/// The pi_k image of W_k(c), computed from the touch points directly rather
/// than by cutting the hull.
IsotraceSlice isotrace_slice(const Operator& op, int k, int grid, Exec exec = Exec::Parallel);

struct FlatFace {
    Vec3 normal;
    double offset = 0;
    double area = 0;
    double x0_span = 0;
    int triangle_count = 0;
    std::vector<int> vertices;  // hull vertex indices
};

/// Maximal coplanar patches of at least two adjacent hull facets with area
/// above tol * scale^2, each required to span more than one isotrace level
/// and to be exposed at a degenerate spectral level (a ruled strip of the
/// sampled hull is planar between adjacent rulings but its supporting
/// direction hits only a simple eigenvalue; a true two-dimensional face
/// needs multiplicity >= 2).
std::vector<FlatFace> flat_faces(const ScaleBody& body, double tol = 1e-6);

enum class MeshFormat { Obj, Ply };

/// Watertight triangle mesh for polytope bodies; degenerate bodies fall back
/// to OBJ point/polyline elements (PLY rejects them).
void export_mesh(const ScaleBody& body, MeshFormat format, const std::string& path);

/// Psi(p) for the projection onto the span of orthonormal columns q.
Vec3 psi_from_columns(const Operator& op, const CMat& q);

}  // namespace specscale
