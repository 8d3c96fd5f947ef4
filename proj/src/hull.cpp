#include "specscale/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <numeric>
#include <stdexcept>

namespace specscale {

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
    const double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
    const double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;
    const double det = adx * (bdy * cdz - bdz * cdy) - ady * (bdx * cdz - bdz * cdx) +
                       adz * (bdx * cdy - bdy * cdx);
    const double permanent = std::abs(adx) * (std::abs(bdy * cdz) + std::abs(bdz * cdy)) +
                             std::abs(ady) * (std::abs(bdx * cdz) + std::abs(bdz * cdx)) +
                             std::abs(adz) * (std::abs(bdx * cdy) + std::abs(bdy * cdx));
    const double errbound = 1e-14 * permanent;
    if (std::abs(det) > errbound) return det;
    // borderline: redo in extended precision
    const long double ladx = (long double)a.x - d.x, lady = (long double)a.y - d.y,
                      ladz = (long double)a.z - d.z;
    const long double lbdx = (long double)b.x - d.x, lbdy = (long double)b.y - d.y,
                      lbdz = (long double)b.z - d.z;
    const long double lcdx = (long double)c.x - d.x, lcdy = (long double)c.y - d.y,
                      lcdz = (long double)c.z - d.z;
    const long double ldet = ladx * (lbdy * lcdz - lbdz * lcdy) -
                             lady * (lbdx * lcdz - lbdz * lcdx) +
                             ladz * (lbdx * lcdy - lbdy * lcdx);
    return double(ldet);
}

namespace {

struct Face {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // neighbor across edge (v[i] -> v[i+1])
    Vec3 normal;            // unit
    double offset = 0;      // normal . x = offset on the plane
    bool alive = true;
    std::vector<int> conflict;
};

double plane_dist(const Face& f, const Vec3& p) { return dot(f.normal, p) - f.offset; }

void set_plane(Face& f, const std::vector<Vec3>& pts) {
    Vec3 n = cross(pts[f.v[1]] - pts[f.v[0]], pts[f.v[2]] - pts[f.v[0]]);
    double ln = norm(n);
    if (ln > 0) n = n * (1.0 / ln);
    f.normal = n;
    f.offset = dot(n, pts[f.v[0]]);
}

}  // namespace

Hull3 convex_hull_3d(const std::vector<Vec3>& points, double eps) {
    Hull3 h;
    const int np = int(points.size());
    if (np == 0) return h;

    // Affine rank probe: farthest pair, then farthest from the line, then
    // from the plane.
    int i0 = 0, i1 = 0;
    double best = -1;
    for (int a = 0; a < np; ++a) {
        for (int b = a + 1; b < np; ++b) {
            double d = norm(points[a] - points[b]);
            if (d > best) { best = d; i0 = a; i1 = b; }
        }
        if (np > 2000 && a > 64) break;  // seed pair needn't be optimal
    }
    if (best <= eps) {
        h.kind = Hull3::Kind::Point;
        h.vertices = {points[0]};
        h.source = {0};
        return h;
    }
    int i2 = -1;
    best = -1;
    Vec3 axis = points[i1] - points[i0];
    for (int a = 0; a < np; ++a) {
        double d = norm(cross(axis, points[a] - points[i0])) / norm(axis);
        if (d > best) { best = d; i2 = a; }
    }
    if (best <= eps) {
        h.kind = Hull3::Kind::Segment;
        double lo = 0, hi = 0;
        int alo = i0, ahi = i0;
        for (int a = 0; a < np; ++a) {
            double t = dot(points[a] - points[i0], axis);
            if (t < lo) { lo = t; alo = a; }
            if (t > hi) { hi = t; ahi = a; }
        }
        // canonical endpoint order
        const Vec3 &pl = points[alo], &ph = points[ahi];
        if (std::tie(pl.x, pl.y, pl.z) > std::tie(ph.x, ph.y, ph.z)) std::swap(alo, ahi);
        h.vertices = {points[alo], points[ahi]};
        h.source = {alo, ahi};
        return h;
    }
    int i3 = -1;
    best = -1;
    Vec3 n0 = cross(points[i1] - points[i0], points[i2] - points[i0]);
    n0 = n0 * (1.0 / norm(n0));
    for (int a = 0; a < np; ++a) {
        double d = std::abs(dot(n0, points[a] - points[i0]));
        if (d > best) { best = d; i3 = a; }
    }
    if (best <= eps) {
        // planar cloud: project to an in-plane basis and run the 2D hull
        h.kind = Hull3::Kind::Polygon;
        Vec3 ex = points[i1] - points[i0];
        ex = ex * (1.0 / norm(ex));
        Vec3 ey = cross(n0, ex);
        std::vector<std::array<double, 2>> flat(np);
        for (int a = 0; a < np; ++a)
            flat[a] = {dot(points[a] - points[i0], ex), dot(points[a] - points[i0], ey)};
        auto idx = convex_hull_2d(flat, eps * norm(points[i1] - points[i0]));
        for (int a : idx) {
            h.vertices.push_back(points[a]);
            h.source.push_back(a);
        }
        h.plane_normal = n0;
        return h;
    }

    h.kind = Hull3::Kind::Polytope;
    std::vector<Face> faces;
    // initial tetrahedron, outward orientation
    if (orient3d(points[i0], points[i1], points[i2], points[i3]) < 0) std::swap(i1, i2);
    auto add_face = [&](int a, int b, int c) {
        Face f;
        f.v = {a, b, c};
        f.nb = {-1, -1, -1};
        set_plane(f, points);
        faces.push_back(f);
        return int(faces.size()) - 1;
    };
    // orient3d(i0,i1,i2,i3) > 0 now: i3 sits on the negative side of (i0,i1,i2)
    add_face(i0, i1, i2);
    add_face(i1, i0, i3);
    add_face(i2, i1, i3);
    add_face(i0, i2, i3);
    auto wire = [&]() {
        std::map<std::pair<int, int>, std::pair<int, int>> half;  // (a,b) -> (face, slot)
        for (int fi = 0; fi < int(faces.size()); ++fi) {
            if (!faces[fi].alive) continue;
            for (int e = 0; e < 3; ++e)
                half[{faces[fi].v[e], faces[fi].v[(e + 1) % 3]}] = {fi, e};
        }
        for (auto& [key, val] : half) {
            auto it = half.find({key.second, key.first});
            if (it != half.end()) faces[val.first].nb[val.second] = it->second.first;
        }
    };
    wire();

    for (auto& f : faces)
        for (int a = 0; a < np; ++a)
            if (plane_dist(f, points[a]) > eps) f.conflict.push_back(a);

    // Quickhull loop: always insert the farthest conflict point.
    while (true) {
        int fsel = -1, psel = -1;
        double dsel = eps;
        for (int fi = 0; fi < int(faces.size()); ++fi) {
            if (!faces[fi].alive) continue;
            for (int a : faces[fi].conflict) {
                double d = plane_dist(faces[fi], points[a]);
                if (d > dsel) { dsel = d; fsel = fi; psel = a; }
            }
        }
        if (fsel < 0) break;
        const Vec3 p = points[psel];

        // visible set by BFS across adjacency
        std::vector<int> visible;
        std::vector<char> seen(faces.size(), 0);
        std::vector<int> stack{fsel};
        seen[fsel] = 1;
        while (!stack.empty()) {
            int fi = stack.back();
            stack.pop_back();
            visible.push_back(fi);
            for (int e = 0; e < 3; ++e) {
                int g = faces[fi].nb[e];
                if (g >= 0 && !seen[g] && faces[g].alive && plane_dist(faces[g], p) > eps) {
                    seen[g] = 1;
                    stack.push_back(g);
                }
            }
        }
        // horizon: directed edges of visible faces bordering non-visible ones
        std::vector<std::array<int, 3>> horizon;  // a, b, outside face
        for (int fi : visible)
            for (int e = 0; e < 3; ++e) {
                int g = faces[fi].nb[e];
                if (g < 0 || !seen[g])
                    horizon.push_back({faces[fi].v[e], faces[fi].v[(e + 1) % 3], g});
            }
        std::vector<int> orphan;
        for (int fi : visible) {
            faces[fi].alive = false;
            orphan.insert(orphan.end(), faces[fi].conflict.begin(), faces[fi].conflict.end());
            faces[fi].conflict.clear();
        }
        std::sort(orphan.begin(), orphan.end());
        orphan.erase(std::unique(orphan.begin(), orphan.end()), orphan.end());

        std::map<std::pair<int, int>, std::pair<int, int>> open;  // edge -> (face, slot)
        for (auto& [a, b, g] : horizon) {
            int nf = add_face(a, b, psel);
            faces[nf].nb[0] = g;
            if (g >= 0)
                for (int e = 0; e < 3; ++e)
                    if (faces[g].v[e] == b && faces[g].v[(e + 1) % 3] == a) faces[g].nb[e] = nf;
            open[{b, psel}] = {nf, 1};
            open[{psel, a}] = {nf, 2};
            for (int x : orphan)
                if (x != psel && plane_dist(faces[nf], points[x]) > eps)
                    faces[nf].conflict.push_back(x);
        }
        for (auto& [key, val] : open) {
            auto it = open.find({key.second, key.first});
            if (it != open.end()) faces[val.first].nb[val.second] = it->second.first;
        }
    }

    std::vector<int> remap(np, -1);
    for (auto& f : faces) {
        if (!f.alive) continue;
        for (int e = 0; e < 3; ++e) {
            int v = f.v[e];
            if (remap[v] < 0) {
                remap[v] = int(h.vertices.size());
                h.vertices.push_back(points[v]);
                h.source.push_back(v);
            }
        }
        h.triangles.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
    }
    return h;
}

double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, closest point on triangle.
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0 && d2 <= 0) return norm(ap);
    Vec3 bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0 && d4 <= d3) return norm(bp);
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) {
        double t = d1 / (d1 - d3);
        return norm(p - (a + ab * t));
    }
    Vec3 cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0 && d5 <= d6) return norm(cp);
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) {
        double t = d2 / (d2 - d6);
        return norm(p - (a + ac * t));
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
        double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return norm(p - (b + (c - b) * t));
    }
    double denom = 1.0 / (va + vb + vc);
    Vec3 q = a + ab * (vb * denom) + ac * (vc * denom);
    return norm(p - q);
}

double dist_point_hull(const Vec3& p, const Hull3& h, double eps) {
    switch (h.kind) {
        case Hull3::Kind::Point:
            return norm(p - h.vertices[0]);
        case Hull3::Kind::Segment: {
            Vec3 a = h.vertices[0], b = h.vertices[1];
            Vec3 ab = b - a;
            double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
            return norm(p - (a + ab * t));
        }
        case Hull3::Kind::Polygon: {
            double dmin = 1e300;
            for (size_t i = 1; i + 1 < h.vertices.size(); ++i)
                dmin = std::min(dmin,
                                dist_point_triangle(p, h.vertices[0], h.vertices[i], h.vertices[i + 1]));
            return h.vertices.size() >= 3 ? dmin : norm(p - h.vertices[0]);
        }
        case Hull3::Kind::Polytope: {
            bool inside = true;
            for (auto& t : h.triangles) {
                Vec3 n = cross(h.vertices[t[1]] - h.vertices[t[0]], h.vertices[t[2]] - h.vertices[t[0]]);
                double ln = norm(n);
                if (ln == 0) continue;
                if (dot(n * (1.0 / ln), p - h.vertices[t[0]]) > eps) { inside = false; break; }
            }
            if (inside) return 0.0;
            double dmin = 1e300;
            for (auto& t : h.triangles)
                dmin = std::min(dmin, dist_point_triangle(p, h.vertices[t[0]], h.vertices[t[1]],
                                                          h.vertices[t[2]]));
            return dmin;
        }
    }
    return 0.0;
}

std::vector<int> convex_hull_2d(const std::vector<std::array<double, 2>>& points, double eps) {
    const int np = int(points.size());
    std::vector<int> idx(np);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return points[a][0] != points[b][0] ? points[a][0] < points[b][0]
                                            : points[a][1] < points[b][1];
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](int a, int b) {
                              return points[a][0] == points[b][0] && points[a][1] == points[b][1];
                          }),
              idx.end());
    if (int(idx.size()) <= 2) return idx;
    auto crossv = [&](int o, int a, int b) {
        return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) -
               (points[a][1] - points[o][1]) * (points[b][0] - points[o][0]);
    };
    const int m = int(idx.size());
    std::vector<int> hull(2 * m);
    int k = 0;
    for (int i = 0; i < m; ++i) {  // lower chain
        while (k >= 2 && crossv(hull[k - 2], hull[k - 1], idx[i]) <= eps) --k;
        hull[k++] = idx[i];
    }
    for (int i = m - 2, t = k + 1; i >= 0; --i) {  // upper chain
        while (k >= t && crossv(hull[k - 2], hull[k - 1], idx[i]) <= eps) --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace specscale
