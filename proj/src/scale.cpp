#include "specscale/scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "specscale/eig.hpp"
#include "specscale/pencil.hpp"

namespace specscale {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Sample {
    Vec3 point;
    std::array<double, 3> dir;
    int rank;
};

Vec3 psi_prefix(const Operator& op, const EigSystem& es, int count) {
    cplx acc = 0;
    for (int i = 0; i < count; ++i) acc += quad_form(op.c, es.vectors.col(i));
    acc /= double(op.n);
    return {double(count) / op.n, acc.real(), acc.imag()};
}

// Extreme-point samples for one direction: the generic exposed point, or at
// a degenerate level both endpoints plus the corner completions built from
// secondary-direction compressions to the tied eigenspace.
void sample_direction(const Operator& op, double s, double t1, double t2,
                      std::vector<Sample>& out) {
    const int n = op.n;
    if (std::abs(t1) + std::abs(t2) < 1e-13) {
        int count = s < 0 ? n : 0;
        CMat q = count == n ? CMat::identity(n) : CMat(n, 0);
        out.push_back({psi_from_columns(op, q), {s, t1, t2}, count});
        return;
    }
    auto es = hermitian_eig(op.combination(t1, t2));
    double scale_t = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
    double delta = 1e-10 * std::max(1.0, scale_t);

    int above = 0;
    while (above < n && es.values[above] > s + delta) ++above;
    int upto = above;
    while (upto < n && es.values[upto] > s - delta) ++upto;
    const int mult = upto - above;

    if (mult == 0) {
        out.push_back({psi_prefix(op, es, above), {s, t1, t2}, above});
        return;
    }
    out.push_back({psi_prefix(op, es, above), {s, t1, t2}, above});
    out.push_back({psi_prefix(op, es, upto), {s, t1, t2}, upto});
    if (mult < 2) return;

    // Degenerate level: the exposed face is Psi([p-, p+]). Its own corner
    // vertices come from spectral projections of compressions to the tied
    // eigenspace.
    CMat e_basis = es.vectors.cols_range(above, upto);
    cplx fixed = 0;
    for (int i = 0; i < above; ++i) fixed += quad_form(op.c, es.vectors.col(i));
    for (int m = 0; m < 8; ++m) {
        double phi = kTwoPi * m / 8.0;
        CMat sec = op.pencil_member(phi);
        CMat compressed = adjoint_times(e_basis, sec * e_basis);
        auto ses = hermitian_eig(compressed);
        cplx acc = fixed;
        for (int j = 1; j < mult; ++j) {
            CMat x = e_basis * ses.vectors.col(j - 1);
            acc += quad_form(op.c, x);
            cplx v = acc / double(n);
            out.push_back({{double(above + j) / n, v.real(), v.imag()}, {s, t1, t2}, above + j});
        }
    }
}

}  // namespace

Vec3 psi_from_columns(const Operator& op, const CMat& q) {
    const int r = q.cols();
    cplx acc = 0;
    for (int j = 0; j < r; ++j) acc += quad_form(op.c, q.col(j));
    acc /= double(op.n);
    return {double(r) / op.n, acc.real(), acc.imag()};
}

double scale_support(const Operator& op, double s, double t1, double t2) {
    if (s == 0.0 && t1 == 0.0 && t2 == 0.0)
        throw std::invalid_argument("scale_support: zero direction");
    auto es = hermitian_eig(op.combination(t1, t2));
    double acc = 0;
    for (double mu : es.values) acc += std::max(mu - s, 0.0);
    return acc / op.n;
}

ExtremePointResult extreme_point(const Operator& op, double s, double t1, double t2, double tol) {
    if (s == 0.0 && t1 == 0.0 && t2 == 0.0)
        throw std::invalid_argument("extreme_point: zero direction");
    ExtremePointResult res;
    if (std::abs(t1) + std::abs(t2) < 1e-13) {
        int count = s < 0 ? op.n : 0;
        res.rank = count;
        res.point = count == op.n ? psi_from_columns(op, CMat::identity(op.n))
                                  : Vec3{0, 0, 0};
        return res;
    }
    auto es = hermitian_eig(op.combination(t1, t2));
    int count = 0;
    for (double mu : es.values) {
        if (std::abs(mu - s) <= tol) res.exposed = false;
        if (mu > s) ++count;
    }
    res.rank = count;
    res.point = psi_prefix(op, es, count);
    return res;
}

ScaleBody build_scale(const Operator& op, int directions, double hull_tol, Exec exec) {
    if (directions < 4) throw std::invalid_argument("build_scale: directions >= 4 required");
    const int n = op.n;

    std::vector<std::array<double, 3>> dirs;
    dirs.reserve(directions + 6 + 2 * (n - 1));
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < directions; ++i) {
        double x0 = 1.0 - 2.0 * (i + 0.5) / directions;
        double rr = std::sqrt(std::max(0.0, 1.0 - x0 * x0));
        dirs.push_back({x0, rr * std::cos(golden * i), rr * std::sin(golden * i)});
    }
    dirs.push_back({1, 0, 0});
    dirs.push_back({0, 1, 0});
    dirs.push_back({0, 0, 1});
    // spectral-gap directions along both axes: one supporting plane per gap
    for (int axis = 0; axis < 2; ++axis) {
        double t1 = axis == 0 ? 1.0 : 0.0;
        double t2 = axis == 0 ? 0.0 : 1.0;
        auto es = hermitian_eig(op.combination(t1, t2));
        for (int i = 0; i + 1 < n; ++i)
            if (es.values[i] - es.values[i + 1] > 1e-12)
                dirs.push_back({-(es.values[i] + es.values[i + 1]) / 2.0, t1, t2});
    }
    // Two-dimensional faces live over degenerate spectral levels, which occur
    // exactly at the pencil's critical angles: aim a direction at every
    // repeated eigenvalue there.
    try {
        auto cas = critical_angles(op, 720, 0.0, exec);
        double ctol = 1e-6 * std::max(1.0, pencil_scale(op));
        for (auto& ca : cas.angles) {
            double t1 = std::cos(ca.theta), t2 = std::sin(ca.theta);
            auto es = hermitian_eig(op.combination(t1, t2));
            int i = 0;
            while (i < n) {
                int j = i;
                while (j + 1 < n && es.values[j] - es.values[j + 1] <= ctol) ++j;
                if (j > i) {
                    double mu = 0;
                    for (int t = i; t <= j; ++t) mu += es.values[t];
                    mu /= (j - i + 1);
                    dirs.push_back({-mu, t1, t2});
                }
                i = j + 1;
            }
        }
    } catch (const DegeneratePencilError&) {
        // zero pencil: the body is the segment Psi(t 1), nothing to aim at
    }
    // antipodal closure: the sampled vertex set then satisfies the
    // B = Psi(1) - B symmetry exactly rather than at sampling resolution
    {
        const size_t base = dirs.size();
        for (size_t i = 0; i < base; ++i)
            dirs.push_back({-dirs[i][0], -dirs[i][1], -dirs[i][2]});
    }

    std::vector<std::vector<Sample>> per_dir(dirs.size());
    for_each_index(exec, std::ptrdiff_t(dirs.size()), [&](std::ptrdiff_t i) {
        sample_direction(op, -dirs[i][0], dirs[i][1], dirs[i][2], per_dir[i]);
    });

    std::vector<Sample> samples;
    for (auto& v : per_dir) samples.insert(samples.end(), v.begin(), v.end());

    double coord_scale = 1.0;
    for (auto& s : samples)
        coord_scale = std::max({coord_scale, std::abs(s.point.x), std::abs(s.point.y),
                                std::abs(s.point.z)});
    const double tol = hull_tol > 0 ? hull_tol : 1e-9 * coord_scale;

    // dedup at 1e-9 * scale, bucketed by x0 level (ranks are few)
    std::vector<Sample> unique_samples;
    std::map<int, std::vector<int>> by_rank;
    const double dtol = 1e-9 * coord_scale;
    for (auto& s : samples) {
        bool dup = false;
        for (int j : by_rank[s.rank]) {
            const Vec3& q = unique_samples[j].point;
            if (std::abs(q.y - s.point.y) <= dtol && std::abs(q.z - s.point.z) <= dtol) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            by_rank[s.rank].push_back(int(unique_samples.size()));
            unique_samples.push_back(s);
        }
    }

    std::vector<Vec3> pts(unique_samples.size());
    for (size_t i = 0; i < pts.size(); ++i) pts[i] = unique_samples[i].point;

    ScaleBody body;
    body.n = n;
    body.hull_tol = tol;
    body.coord_scale = coord_scale;
    body.psi_one = psi_from_columns(op, CMat::identity(n));
    body.b1 = op.b1;
    body.b2 = op.b2;
    body.hull = convex_hull_3d(pts, tol);
    for (int src : body.hull.source) {
        body.provenance.push_back(unique_samples[src].dir);
        body.vertex_rank.push_back(unique_samples[src].rank);
    }
    for (auto& v : body.hull.vertices) {
        double lev = v.x * n;
        body.x0_level_dev = std::max(body.x0_level_dev, std::abs(lev - std::round(lev)) / n);
    }
    return body;
}

IsotraceSlice isotrace_slice(const Operator& op, int k, int grid, Exec exec) {
    if (k < 0 || k > op.n) throw std::invalid_argument("isotrace_slice: k out of range");
    IsotraceSlice slice;
    slice.k = k;
    slice.n = op.n;
    slice.t = double(k) / op.n;
    if (k == 0) {
        slice.polygon = {cplx(0, 0)};
        return slice;
    }
    if (k == op.n) {
        slice.polygon = {op.tau_c};  // Psi(1) = (1, tau(b1), tau(b2))
        return slice;
    }
    std::vector<std::vector<cplx>> touches(grid);
    const double ratio = double(k) / op.n;
    for_each_index(exec, grid, [&](std::ptrdiff_t i) {
        double th = kTwoPi * double(i) / grid;
        auto es = hermitian_eig(op.pencil_member(th));
        double gap_tol = 1e-9 * (1.0 + std::max(std::abs(es.values.front()),
                                                std::abs(es.values.back())));
        // same touch logic as the boundary tracer, mapped through pi_k
        const int n = op.n;
        if (k == n || es.values[k - 1] - es.values[k] > gap_tol) {
            cplx acc = 0;
            for (int j = 0; j < k; ++j) acc += quad_form(op.c, es.vectors.col(j));
            touches[i] = {acc / double(k)};
        } else {
            int a = k - 1, b = k - 1;
            while (a > 0 && es.values[a - 1] - es.values[a] <= gap_tol) --a;
            while (b + 1 < n && es.values[b] - es.values[b + 1] <= gap_tol) ++b;
            int jneed = k - a, s = b - a + 1;
            cplx fixed = 0;
            for (int j = 0; j < a; ++j) fixed += quad_form(op.c, es.vectors.col(j));
            CMat e_basis = es.vectors.cols_range(a, b + 1);
            CMat compressed = adjoint_times(e_basis, op.pencil_member_imag(th) * e_basis);
            auto mes = hermitian_eig(compressed);
            auto endpoint = [&](bool top) {
                cplx acc = fixed;
                for (int t = 0; t < jneed; ++t) {
                    CMat x = e_basis * mes.vectors.col(top ? t : s - 1 - t);
                    acc += quad_form(op.c, x);
                }
                return acc / double(k);
            };
            touches[i] = {endpoint(false), endpoint(true)};
        }
    });
    for (auto& tv : touches)
        for (auto& w : tv) slice.polygon.push_back(ratio * w);
    return slice;
}

std::vector<FlatFace> flat_faces(const ScaleBody& body, double tol) {
    std::vector<FlatFace> faces;
    if (body.hull.kind != Hull3::Kind::Polytope) return faces;
    const auto& tris = body.hull.triangles;
    const auto& verts = body.hull.vertices;
    const int nt = int(tris.size());

    std::vector<Vec3> normals(nt);
    std::vector<double> offsets(nt), areas(nt);
    for (int i = 0; i < nt; ++i) {
        Vec3 cr = cross(verts[tris[i][1]] - verts[tris[i][0]], verts[tris[i][2]] - verts[tris[i][0]]);
        double ln = norm(cr);
        areas[i] = 0.5 * ln;
        normals[i] = ln > 0 ? cr * (1.0 / ln) : Vec3{0, 0, 0};
        offsets[i] = dot(normals[i], verts[tris[i][0]]);
    }
    std::map<std::pair<int, int>, int> edge_owner;
    std::vector<std::array<int, 3>> nbr(nt, {-1, -1, -1});
    for (int i = 0; i < nt; ++i)
        for (int e = 0; e < 3; ++e) edge_owner[{tris[i][e], tris[i][(e + 1) % 3]}] = i;
    for (int i = 0; i < nt; ++i)
        for (int e = 0; e < 3; ++e) {
            auto it = edge_owner.find({tris[i][(e + 1) % 3], tris[i][e]});
            if (it != edge_owner.end()) nbr[i][e] = it->second;
        }

    const double scale = body.coord_scale;
    std::vector<int> group(nt, -1);
    int ngroups = 0;
    for (int s = 0; s < nt; ++s) {
        if (group[s] >= 0) continue;
        group[s] = ngroups;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e = 0; e < 3; ++e) {
                int v = nbr[u][e];
                if (v < 0 || group[v] >= 0) continue;
                if (norm(cross(normals[u], normals[v])) <= tol &&
                    std::abs(offsets[u] - offsets[v]) <= tol * scale) {
                    group[v] = ngroups;
                    stack.push_back(v);
                }
            }
        }
        ++ngroups;
    }

    // A patch is a face of B only when its supporting direction (-s, t)
    // exposes a degenerate spectral level of b_t = t1 b1 + t2 b2.
    auto degenerate_level = [&](const Vec3& normal) {
        double t1 = normal.y, t2 = normal.z, s = -normal.x;
        if (std::abs(t1) + std::abs(t2) < 1e-12) return false;  // isotrace plane
        auto es = hermitian_eig(body.b1 * cplx(t1) + body.b2 * cplx(t2));
        double spec_scale =
            std::max({std::abs(es.values.front()), std::abs(es.values.back()), 1e-300});
        int hits = 0;
        for (double mu : es.values)
            if (std::abs(mu - s) <= 1e-6 * spec_scale) ++hits;
        return hits >= 2;
    };

    for (int g = 0; g < ngroups; ++g) {
        FlatFace f;
        std::vector<int> members;
        for (int i = 0; i < nt; ++i)
            if (group[i] == g) members.push_back(i);
        if (members.size() < 2) continue;  // single facets are mesh texture, not faces
        double x0min = 1e300, x0max = -1e300;
        std::vector<int> vs;
        for (int i : members) {
            f.area += areas[i];
            for (int e = 0; e < 3; ++e) {
                vs.push_back(tris[i][e]);
                x0min = std::min(x0min, verts[tris[i][e]].x);
                x0max = std::max(x0max, verts[tris[i][e]].x);
            }
        }
        if (f.area <= tol * scale * scale) continue;
        f.x0_span = x0max - x0min;
        if (f.x0_span <= 1e-7) continue;  // faces are transverse to isotraces
        if (!degenerate_level(normals[members[0]])) continue;
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        f.vertices = vs;
        f.normal = normals[members[0]];
        f.offset = offsets[members[0]];
        f.triangle_count = int(members.size());
        faces.push_back(std::move(f));
    }
    return faces;
}

void export_mesh(const ScaleBody& body, MeshFormat format, const std::string& path) {
    const auto& h = body.hull;
    if (format == MeshFormat::Ply && h.kind != Hull3::Kind::Polytope)
        throw std::invalid_argument("export_mesh: PLY requires a non-degenerate body");

    const std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("export_mesh: cannot open " + tmp);

    if (format == MeshFormat::Obj) {
        char buf[128];
        for (auto& v : h.vertices) {
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
            out << buf;
        }
        switch (h.kind) {
            case Hull3::Kind::Point:
                out << "p 1\n";
                break;
            case Hull3::Kind::Segment:
                out << "l 1 2\n";
                break;
            case Hull3::Kind::Polygon: {
                out << "l";
                for (size_t i = 0; i < h.vertices.size(); ++i) out << ' ' << i + 1;
                out << " 1\n";
                break;
            }
            case Hull3::Kind::Polytope:
                for (auto& t : h.triangles)
                    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
                break;
        }
    } else {
        out << "ply\nformat binary_little_endian 1.0\n";
        out << "element vertex " << h.vertices.size() << "\n";
        out << "property double x\nproperty double y\nproperty double z\n";
        out << "element face " << h.triangles.size() << "\n";
        out << "property list uchar int vertex_indices\nend_header\n";
        for (auto& v : h.vertices) {
            double xyz[3] = {v.x, v.y, v.z};
            out.write(reinterpret_cast<const char*>(xyz), sizeof xyz);
        }
        for (auto& t : h.triangles) {
            unsigned char c3 = 3;
            int idx[3] = {t[0], t[1], t[2]};
            out.write(reinterpret_cast<const char*>(&c3), 1);
            out.write(reinterpret_cast<const char*>(idx), sizeof idx);
        }
    }
    out.flush();
    if (!out) throw std::runtime_error("export_mesh: write failed for " + tmp);
    out.close();
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("export_mesh: cannot move mesh into place: " + path);
    }
}

}  // namespace specscale
