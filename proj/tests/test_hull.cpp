#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "specscale/hull.hpp"
#include "specscale/rng.hpp"

using namespace specscale;

namespace {

// V - E + F and edge-manifold check for a closed triangle mesh
bool watertight(const Hull3& h, int* chi = nullptr) {
    std::map<std::pair<int, int>, int> edges;
    for (auto& t : h.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            edges[{std::min(a, b), std::max(a, b)}]++;
        }
    for (auto& [k, count] : edges)
        if (count != 2) return false;
    if (chi) *chi = int(h.vertices.size()) - int(edges.size()) + int(h.triangles.size());
    return true;
}

}  // namespace

TEST_CASE("hull of the unit cube") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    pts.push_back({0.5, 0.5, 0.5});  // interior point must vanish
    auto h = convex_hull_3d(pts, 1e-9);
    REQUIRE(h.kind == Hull3::Kind::Polytope);
    CHECK(h.vertices.size() == 8);
    CHECK(h.triangles.size() == 12);
    int chi = 0;
    CHECK(watertight(h, &chi));
    CHECK(chi == 2);
}

TEST_CASE("hull of random sphere points is watertight and contains the cloud") {
    Rng rng(3);
    std::vector<Vec3> pts;
    for (int i = 0; i < 300; ++i) {
        Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        double n = norm(v);
        pts.push_back(v * (1.0 / n));
    }
    auto h = convex_hull_3d(pts, 1e-9);
    REQUIRE(h.kind == Hull3::Kind::Polytope);
    CHECK(h.vertices.size() == 300);  // all extreme on a sphere
    int chi = 0;
    CHECK(watertight(h, &chi));
    CHECK(chi == 2);
    for (auto& p : pts) CHECK(dist_point_hull(p, h, 1e-9) <= 1e-9);
    CHECK(dist_point_hull({0, 0, 0}, h, 1e-9) == 0.0);
    CHECK(dist_point_hull({2, 0, 0}, h, 1e-9) >= 1.0 - 1e-9);
    CHECK(dist_point_hull({2, 0, 0}, h, 1e-9) <= 1.02);  // inscribed hull sits inside the sphere
}

TEST_CASE("hull degeneracies are reported as explicit kinds") {
    auto h = convex_hull_3d({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}, 1e-9);
    CHECK(h.kind == Hull3::Kind::Point);

    std::vector<Vec3> seg;
    for (int i = 0; i <= 10; ++i) seg.push_back({double(i) / 10, 0, 0});
    h = convex_hull_3d(seg, 1e-9);
    REQUIRE(h.kind == Hull3::Kind::Segment);
    CHECK(norm(h.vertices[0] - Vec3{0, 0, 0}) < 1e-12);
    CHECK(norm(h.vertices[1] - Vec3{1, 0, 0}) < 1e-12);

    std::vector<Vec3> plane;
    Rng rng(7);
    for (int i = 0; i < 50; ++i) plane.push_back({rng.gaussian(), rng.gaussian(), 0.0});
    h = convex_hull_3d(plane, 1e-9);
    REQUIRE(h.kind == Hull3::Kind::Polygon);
    CHECK(h.vertices.size() >= 3);
    CHECK(std::abs(std::abs(h.plane_normal.z) - 1.0) < 1e-12);
}

TEST_CASE("hull tolerates exactly coplanar patches") {
    // octahedron with an extra grid of points on one face's plane
    std::vector<Vec3> pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    // points on the x+y+z=1 face, inside the triangle
    for (double a = 0.1; a < 0.9; a += 0.2)
        for (double b = 0.05; a + b < 0.95; b += 0.2)
            pts.push_back({a, b, 1.0 - a - b});
    auto h = convex_hull_3d(pts, 1e-12);
    REQUIRE(h.kind == Hull3::Kind::Polytope);
    CHECK(watertight(h));
    // all six octahedron corners survive as vertices
    int corners = 0;
    for (auto& v : h.vertices)
        if (std::abs(std::abs(v.x) + std::abs(v.y) + std::abs(v.z) - 1.0) < 1e-9 &&
            (std::abs(v.x) > 1 - 1e-9 || std::abs(v.y) > 1 - 1e-9 || std::abs(v.z) > 1 - 1e-9))
            ++corners;
    CHECK(corners == 6);
}

TEST_CASE("2d hull drops interior and collinear points") {
    std::vector<std::array<double, 2>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1},
                                           {0.5, 0.5}, {0.5, 0.0}};
    auto idx = convex_hull_2d(pts, 1e-12);
    CHECK(idx.size() == 4);
    std::set<int> got(idx.begin(), idx.end());
    CHECK(got == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("orient3d sign and fallback") {
    Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
    CHECK(orient3d(a, b, c, {0, 0, -1}) > 0);
    CHECK(orient3d(a, b, c, {0, 0, 1}) < 0);
    // nearly coplanar: the long-double fallback must still get the sign
    CHECK(orient3d(a, b, c, {0.3, 0.4, 1e-17}) < 0);
    CHECK(orient3d(a, b, c, {0.3, 0.4, -1e-17}) > 0);
}
