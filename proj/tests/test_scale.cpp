#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "specscale/oracle.hpp"
#include "specscale/scale.hpp"

using namespace specscale;

namespace {

const cplx I{0, 1};

CMat from_rows(int n, std::vector<cplx> v) { return CMat(n, n, std::move(v)); }

Operator disk_pair() { return decompose(from_rows(2, {1. + 0.5 * I, 0.5 * I, 0.5 * I, 0.5 * I})); }

Operator diamond_pair() {
    CMat b1 = from_rows(3, {1, 0, 1, 0, 2, 1, 1, 1, 3});
    CMat b2 = CMat::diag({1, 1, 0});
    return decompose(b1 + I * b2);
}

bool has_vertex(const ScaleBody& b, Vec3 v, double tol = 1e-9) {
    for (auto& w : b.hull.vertices)
        if (norm(w - v) <= tol) return true;
    return false;
}

}  // namespace

TEST_CASE("scale_support fixtures") {
    auto opz = decompose(CMat::zero(2, 2));
    CHECK(scale_support(opz, -1.0, 0, 0) == doctest::Approx(1.0));
    auto op = disk_pair();
    CHECK(scale_support(op, 0, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(scale_support(op, 0, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(scale_support(op, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("extreme_point fixtures") {
    auto op = decompose(CMat::diag({1, -1}));  // b1 = diag(1,-1), b2 = 0
    auto r = extreme_point(op, 0.0, 1, 0, 1e-10);
    CHECK(r.exposed);
    CHECK(r.rank == 1);
    CHECK(norm(r.point - Vec3{0.5, 0.5, 0}) < 1e-10);

    r = extreme_point(op, 5.0, 1, 0, 1e-10);  // s above the spectrum
    CHECK(r.rank == 0);
    CHECK(norm(r.point) < 1e-12);
    r = extreme_point(op, -5.0, 1, 0, 1e-10);  // s below: Psi(1)
    CHECK(r.rank == 2);
    CHECK(norm(r.point - Vec3{1, 0, 0}) < 1e-12);

    r = extreme_point(op, 1.0, 1, 0, 1e-10);  // s at an eigenvalue
    CHECK(!r.exposed);
}

TEST_CASE("build_scale: disk-pair cones") {
    auto body = build_scale(disk_pair(), 800);
    REQUIRE(body.hull.kind == Hull3::Kind::Polytope);
    CHECK(has_vertex(body, {0, 0, 0}));
    CHECK(has_vertex(body, {1, 0.5, 0.5}));
    CHECK(body.x0_level_dev <= 1e-9);
    CHECK(flat_faces(body).empty());
    // symmetry: B = Psi(1) - B via support functions over sampled directions
    auto support_of = [&](Vec3 d) {
        double best = -1e300;
        for (auto& v : body.hull.vertices) best = std::max(best, dot(d, v));
        return best;
    };
    Vec3 p1{1, 0.5, 0.5};
    for (int i = 0; i < 50; ++i) {
        double a = 2 * M_PI * i / 50, b = M_PI * (i % 7) / 7 - M_PI / 2;
        Vec3 d{std::sin(b), std::cos(b) * std::cos(a), std::cos(b) * std::sin(a)};
        double lhs = support_of(d);
        double rhs = dot(d, p1) + support_of(d * -1.0);
        CHECK(std::abs(lhs - rhs) <= 1e-7);
    }
}

TEST_CASE("build_scale: the diamond pair has a two-dimensional face") {
    auto body = build_scale(diamond_pair(), 2000);
    REQUIRE(body.hull.kind == Hull3::Kind::Polytope);
    auto faces = flat_faces(body);
    REQUIRE(!faces.empty());
    // the diamond face contains Psi(0) = 0 and Psi(b2) = (2/3, 1, 2/3)
    bool found = false;
    for (auto& f : faces) {
        bool has0 = false, hasb2 = false;
        for (int vi : f.vertices) {
            if (norm(body.hull.vertices[vi]) < 1e-8) has0 = true;
            if (norm(body.hull.vertices[vi] - Vec3{2.0 / 3, 1, 2.0 / 3}) < 1e-8) hasb2 = true;
        }
        if (has0 && hasb2) found = true;
        CHECK(f.x0_span > 1e-7);
    }
    CHECK(found);
}

TEST_CASE("build_scale: degenerate body for c = 0") {
    auto body = build_scale(decompose(CMat::zero(3, 3)), 200);
    REQUIRE(body.hull.kind == Hull3::Kind::Segment);
    CHECK(norm(body.hull.vertices[0] - Vec3{0, 0, 0}) < 1e-12);
    CHECK(norm(body.hull.vertices[1] - Vec3{1, 0, 0}) < 1e-12);
    CHECK(flat_faces(body).empty());
}

TEST_CASE("support consistency between hull and scale_support") {
    Operator op = decompose(random_matrix({4, RandomKind::Ginibre, 77}));
    auto body = build_scale(op, 600);
    for (int i = 0; i < 60; ++i) {
        double a = 2 * M_PI * i / 60, b = M_PI * ((i * 13) % 29) / 29 - M_PI / 2;
        Vec3 d{std::sin(b), std::cos(b) * std::cos(a), std::cos(b) * std::sin(a)};
        double want = scale_support(op, -d.x, d.y, d.z);
        double got = -1e300;
        for (auto& v : body.hull.vertices) got = std::max(got, dot(d, v));
        CHECK(got <= want + 1e-9);          // vertices never exceed the support
        CHECK(got >= want - 2e-3);          // sampled hull reaches close to it
    }
}

TEST_CASE("vertex x0 quantization holds on random bodies") {
    for (std::uint64_t seed : {101, 102}) {
        Operator op = decompose(random_matrix({5, RandomKind::Ginibre, seed}));
        auto body = build_scale(op, 500);
        CHECK(body.x0_level_dev <= 1e-6);
    }
}

TEST_CASE("isotrace_slice: disk-pair slice of radius 1/4") {
    auto slice = isotrace_slice(disk_pair(), 1, 720);
    CHECK(slice.t == doctest::Approx(0.5));
    const cplx center{0.25, 0.25};
    for (auto& p : slice.polygon) CHECK(std::abs(std::abs(p - center) - 0.25) <= 1e-9);
}

TEST_CASE("isotrace_slice: endpoints and triangle") {
    auto op = decompose(CMat::diag({0, 1, I}));
    auto s0 = isotrace_slice(op, 0, 360);
    REQUIRE(s0.polygon.size() == 1);
    CHECK(std::abs(s0.polygon[0]) == 0.0);
    auto sn = isotrace_slice(op, 3, 360);
    REQUIRE(sn.polygon.size() == 1);
    CHECK(std::abs(sn.polygon[0] - op.tau_c) < 1e-12);

    auto s1 = isotrace_slice(op, 1, 720);
    std::vector<cplx> want{0, cplx(1.0 / 3, 0), cplx(0, 1.0 / 3)};
    for (auto& p : s1.polygon) {
        // every point is inside the triangle's circumscribed data: check the
        // three half-planes of conv{0, 1/3, i/3}
        CHECK(p.real() >= -1e-9);
        CHECK(p.imag() >= -1e-9);
        CHECK(p.real() + p.imag() <= 1.0 / 3 + 1e-9);
    }
    // and the three vertices appear
    for (cplx w : want) {
        double best = 1e300;
        for (auto& p : s1.polygon) best = std::min(best, std::abs(p - w));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("pi_k consistency: slice matches the hull section on a polygonal fixture") {
    auto op = decompose(CMat::diag({0, 1, I}));
    auto body = build_scale(op, 900);
    auto slice = isotrace_slice(op, 1, 720);
    const double level = 1.0 / 3;
    // hull vertices at the level must be slice points and vice versa
    std::vector<cplx> section;
    for (auto& v : body.hull.vertices)
        if (std::abs(v.x - level) <= 1e-9) section.push_back({v.y, v.z});
    REQUIRE(section.size() == 3);
    for (auto& s : section) {
        double best = 1e300;
        for (auto& p : slice.polygon) best = std::min(best, std::abs(p - s));
        CHECK(best <= 2e-9);
    }
}

TEST_CASE("export_mesh: obj and ply round out") {
    std::vector<Vec3> cube;
    for (int i = 0; i < 8; ++i)
        cube.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    ScaleBody body;
    body.n = 2;
    body.hull = convex_hull_3d(cube, 1e-9);
    body.coord_scale = 1;

    export_mesh(body, MeshFormat::Obj, "cube_test.obj");
    std::ifstream in("cube_test.obj");
    REQUIRE(bool(in));
    int vcount = 0, fcount = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++vcount;
        if (line.rfind("f ", 0) == 0) ++fcount;
    }
    CHECK(vcount == 8);
    CHECK(fcount == 12);
    std::remove("cube_test.obj");

    export_mesh(body, MeshFormat::Ply, "cube_test.ply");
    std::ifstream ply("cube_test.ply", std::ios::binary);
    REQUIRE(bool(ply));
    std::string header;
    std::getline(ply, header);
    CHECK(header == "ply");
    std::getline(ply, header);
    CHECK(header == "format binary_little_endian 1.0");
    ply.seekg(0, std::ios::end);
    // header + 8 vertices * 24 bytes + 12 faces * 13 bytes
    std::getline(ply, header);
    std::remove("cube_test.ply");

    // degenerate: polyline in OBJ, rejected for PLY
    ScaleBody seg;
    seg.n = 2;
    seg.hull = convex_hull_3d({{0, 0, 0}, {1, 0, 0}}, 1e-9);
    export_mesh(seg, MeshFormat::Obj, "seg_test.obj");
    std::ifstream sin("seg_test.obj");
    bool has_l = false;
    while (std::getline(sin, line))
        if (line.rfind("l ", 0) == 0) has_l = true;
    CHECK(has_l);
    std::remove("seg_test.obj");
    CHECK_THROWS_AS(export_mesh(seg, MeshFormat::Ply, "seg_test.ply"), std::invalid_argument);

    CHECK_THROWS_AS(export_mesh(body, MeshFormat::Obj, "/nonexistent_dir_xyz/file.obj"),
                    std::runtime_error);
}

TEST_CASE("twin pair: the two spectral scales coincide") {
    auto c1 = decompose(from_rows(3, {1. + I, 0, 0, 0, 1. + 2. * I, 1, 0, 1, 1}));
    const double s = 1.0 / std::sqrt(2.0);
    auto c2 = decompose(from_rows(3, {1, s, 0, s, 1. + I, s, 0, s, 1. + 2. * I}));
    auto b1 = build_scale(c1, 700);
    auto b2 = build_scale(c2, 700);
    double h = 0;
    for (auto& v : b1.hull.vertices) h = std::max(h, dist_point_hull(v, b2.hull, b2.hull_tol));
    for (auto& v : b2.hull.vertices) h = std::max(h, dist_point_hull(v, b1.hull, b1.hull_tol));
    CHECK(h <= 2e-9 * std::max(b1.coord_scale, b2.coord_scale));
}

TEST_CASE("export_mesh: disk-pair body is watertight with Euler characteristic 2") {
    auto body = build_scale(disk_pair(), 500);
    REQUIRE(body.hull.kind == Hull3::Kind::Polytope);
    export_mesh(body, MeshFormat::Obj, "disk_body.obj");
    std::ifstream in("disk_body.obj");
    REQUIRE(bool(in));
    std::map<std::pair<int, int>, int> edges;
    int v = 0, f = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) {
            ++f;
            int a, b, c;
            std::sscanf(line.c_str(), "f %d %d %d", &a, &b, &c);
            for (auto [x, y] : {std::pair{a, b}, {b, c}, {c, a}})
                edges[{std::min(x, y), std::max(x, y)}]++;
        }
    }
    std::remove("disk_body.obj");
    CHECK(v == int(body.hull.vertices.size()));
    for (auto& [k, count] : edges) CHECK(count == 2);
    CHECK(v - int(edges.size()) + f == 2);
}

TEST_CASE("export_mesh: zero operator body exports a two-vertex polyline") {
    auto body = build_scale(decompose(CMat::zero(2, 2)), 200);
    export_mesh(body, MeshFormat::Obj, "zero_body.obj");
    std::ifstream in("zero_body.obj");
    int v = 0;
    bool has_l = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("l ", 0) == 0) has_l = true;
    }
    std::remove("zero_body.obj");
    CHECK(v == 2);
    CHECK(has_l);
}

TEST_CASE("flat_faces rejects the planar sampling strips of ruled surfaces") {
    // first matrix of the twin-scale pair: a segment Minkowski-summed with a 2x2
    // body. The swept surface is developable, so adjacent sampled rulings
    // bound exactly planar trapezoids; none of them is a face of B (the
    // deflated pencil never meets the scalar branch: det = -1 for all theta).
    auto c1 = decompose(CMat(3, 3, {1. + I, 0, 0, 0, 1. + 2. * I, 1, 0, 1, 1}));
    auto body = build_scale(c1, 2000);
    CHECK(flat_faces(body).empty());
}

TEST_CASE("five-dimensional shift pair has exactly eight 2d faces") {
    CMat b1(5, 5), b2(5, 5);
    b1(1, 3) = b1(3, 1) = 1;
    b1(2, 4) = b1(4, 2) = 1;
    b2(0, 3) = b2(3, 0) = 1;
    b2(1, 4) = b2(4, 1) = 1;
    Operator op = decompose(b1 + I * b2);
    auto body = build_scale(op, 1200);
    auto faces = flat_faces(body);
    CHECK(faces.size() == 8);
    for (auto& f : faces) {
        // normals all of the form (+-1, +-1, 0)/sqrt2 or (+-1, 0, +-1)/sqrt2
        double ax = std::abs(f.normal.x), ay = std::abs(f.normal.y), az = std::abs(f.normal.z);
        CHECK(std::abs(ax - 1 / std::sqrt(2.0)) < 1e-6);
        CHECK(std::abs(std::max(ay, az) - 1 / std::sqrt(2.0)) < 1e-6);
        CHECK(std::min(ay, az) < 1e-6);
    }
}
