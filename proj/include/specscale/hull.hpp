#pragma once

#include <array>
#include <vector>

namespace specscale {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Signed volume of the tetrahedron (a, b, c, d), with a long-double
/// fallback when the double result sits inside its rounding-error bound.
double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Convex hull of a 3D point cloud, degenerate ranks reported explicitly.
struct Hull3 {
    enum class Kind { Point, Segment, Polygon, Polytope };
    Kind kind = Kind::Point;
    std::vector<Vec3> vertices;                 // Polygon: ordered around the face
    std::vector<int> source;                    // vertex -> input point index
    std::vector<std::array<int, 3>> triangles;  // Polytope only, outward CCW
    Vec3 plane_normal;                          // Polygon only
};

/// Quickhull with tolerance eps: points within eps of the current hull are
/// treated as inside.
Hull3 convex_hull_3d(const std::vector<Vec3>& points, double eps);

/// Distance from a point to the hull (0 inside at tolerance eps).
double dist_point_hull(const Vec3& p, const Hull3& h, double eps);

/// Indices of the extreme points of a planar cloud in CCW order; triples
/// whose doubled triangle area is <= eps are treated as collinear and the
/// middle point dropped.
std::vector<int> convex_hull_2d(const std::vector<std::array<double, 2>>& points, double eps);

double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace specscale
