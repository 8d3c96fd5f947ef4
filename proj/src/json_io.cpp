#include "specscale/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace specscale {

using nlohmann::json;

namespace {

json cnum(cplx z) { return json::array({z.real(), z.imag()}); }

json vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

CMat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        if (n < 1) throw InputError("matrix file: n >= 1 required");
        auto& rows = j.at("entries");
        if (!rows.is_array() || int(rows.size()) != n)
            throw InputError("matrix file: entries must be an n x n array");
        CMat m(n, n);
        for (int i = 0; i < n; ++i) {
            if (!rows[i].is_array() || int(rows[i].size()) != n)
                throw InputError("matrix file: entries must be an n x n array");
            for (int k = 0; k < n; ++k) {
                auto& e = rows[i][k];
                if (!e.is_array() || e.size() != 2)
                    throw InputError("matrix file: entries are [re, im] pairs");
                double re = e[0].get<double>();
                double im = e[1].get<double>();
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw InputError("matrix file: non-finite entry");
                m(i, k) = {re, im};
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw InputError("matrix file schema error in " + path + ": " + e.what());
    }
}

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(cnum(m(i, k)));
        rows.push_back(row);
    }
    return json{{"n", m.rows()}, {"entries", rows}};
}

json boundary_to_json(const RangeBoundary& rb, const ClassifyReport& report) {
    json j;
    j["k"] = rb.k;
    j["n"] = rb.n;
    j["grid"] = rb.grid;
    switch (rb.kind) {
        case BoundaryKind::Point: j["kind"] = "point"; break;
        case BoundaryKind::Segment: j["kind"] = "segment"; break;
        case BoundaryKind::Regular: j["kind"] = "regular"; break;
    }
    if (rb.kind != BoundaryKind::Regular) {
        j["endpoints"] = json::array({cnum(rb.degenerate_lo), cnum(rb.degenerate_hi)});
    }
    json theta = json::array(), r = json::array(), tre = json::array(), tim = json::array();
    for (auto& s : rb.samples) {
        theta.push_back(s.theta);
        r.push_back(s.r);
        tre.push_back(s.touch.empty() ? 0.0 : s.touch[0].real());
        tim.push_back(s.touch.empty() ? 0.0 : s.touch[0].imag());
    }
    j["samples"] = {{"theta", theta}, {"r", r}, {"touch_re", tre}, {"touch_im", tim}};
    json segs = json::array();
    for (auto& s : rb.segments)
        segs.push_back({{"p1", cnum(s.p1)}, {"p2", cnum(s.p2)}, {"theta", s.theta}});
    j["segments"] = segs;
    json corners = json::array();
    for (auto& c : report.corners)
        corners.push_back({{"lambda", cnum(c.corner.lambda)},
                           {"theta_lo", c.corner.theta_lo},
                           {"theta_hi", c.corner.theta_hi},
                           {"isolated", c.isolated}});
    j["corners"] = corners;
    json arcs = json::array();
    for (auto& a : rb.arcs)
        arcs.push_back({{"theta_lo", a.theta_lo}, {"theta_hi", a.theta_hi}, {"closed", a.closed}});
    j["arcs"] = arcs;
    json crit = json::array();
    for (double t : rb.critical_thetas) crit.push_back(t);
    j["critical_angles"] = crit;
    j["is_polygon"] = report.is_polygon;
    j["normal_flag"] = report.normal_flag;
    j["agreement"] = report.agreement;
    j["commutator_norm"] = report.commutator_norm;
    return j;
}

json body_to_json(const ScaleBody& body, const std::vector<FlatFace>& faces) {
    json j;
    j["n"] = body.n;
    switch (body.hull.kind) {
        case Hull3::Kind::Point: j["kind"] = "point"; break;
        case Hull3::Kind::Segment: j["kind"] = "segment"; break;
        case Hull3::Kind::Polygon: j["kind"] = "polygon"; break;
        case Hull3::Kind::Polytope: j["kind"] = "polytope"; break;
    }
    json vs = json::array();
    for (auto& v : body.hull.vertices) vs.push_back(vec3(v));
    j["vertices"] = vs;
    json ts = json::array();
    for (auto& t : body.hull.triangles) ts.push_back(json::array({t[0], t[1], t[2]}));
    j["facets"] = ts;
    json prov = json::array();
    for (auto& p : body.provenance) prov.push_back(json::array({p[0], p[1], p[2]}));
    j["provenance"] = prov;
    j["psi_one"] = vec3(body.psi_one);
    j["hull_tol"] = body.hull_tol;
    j["x0_level_dev"] = body.x0_level_dev;
    json fs = json::array();
    for (auto& f : faces)
        fs.push_back({{"normal", vec3(f.normal)},
                      {"offset", f.offset},
                      {"area", f.area},
                      {"x0_span", f.x0_span},
                      {"triangles", f.triangle_count},
                      {"vertices", f.vertices}});
    j["flat_faces"] = fs;
    return j;
}

json slice_to_json(const IsotraceSlice& slice) {
    json poly = json::array();
    for (auto& p : slice.polygon) poly.push_back(cnum(p));
    return json{{"k", slice.k}, {"n", slice.n}, {"t", slice.t}, {"polygon", poly}};
}

json pencil_to_json(const BivariatePencilPoly& f, const Discriminant& disc,
                    const CriticalAngleSet& angles) {
    json j;
    j["n"] = f.n;
    json rows = json::array();
    for (int zj = 0; zj <= f.n; ++zj) {
        json row = json::array();
        for (int yk = 0; yk <= f.n; ++yk) row.push_back(cnum(f.coeffs(zj, yk)));
        rows.push_back(row);
    }
    j["coeffs"] = rows;  // coeffs[j][k] multiplies z^j y^k
    json d;
    d["vanishes"] = disc.vanishes;
    json mono = json::array();
    auto re = disc.re.to_monomial();
    auto im = disc.im.to_monomial();
    for (size_t i = 0; i < re.size(); ++i)
        mono.push_back(json::array({re[i], i < im.size() ? im[i] : 0.0}));
    d["coeffs"] = mono;
    j["discriminant"] = d;
    json angs = json::array();
    for (auto& a : angles.angles) {
        const char* chk = a.check == AngleCheck::Confirmed ? "confirmed"
                          : a.check == AngleCheck::Unconfirmed ? "unconfirmed"
                                                               : "unchecked";
        angs.push_back({{"theta", a.theta}, {"min_gap", a.min_gap}, {"check", chk}});
    }
    j["critical_angles"] = angs;
    j["generic_distinct"] = angles.generic_distinct;
    json prof = json::array();
    for (auto& iv : angles.intervals) {
        json p = json::array();
        for (auto& [branch, mult] : iv.profile) p.push_back(json::array({branch, mult}));
        prof.push_back({{"theta_lo", iv.theta_lo}, {"theta_hi", iv.theta_hi}, {"profile", p}});
    }
    j["multiplicity_profile"] = prof;
    return j;
}

json scan_to_json(const ScanReport& rep) {
    json cex = json::array();
    for (auto& c : rep.counterexamples)
        cex.push_back({{"seed", c.seed},
                       {"matrix", matrix_to_json(c.matrix)},
                       {"segment_count", c.segment_count}});
    return json{{"n", rep.n},           {"trials", rep.trials},
                {"seed", rep.seed},     {"grid", rep.grid},
                {"counterexamples", cex}, {"elapsed", rep.elapsed_seconds}};
}

json analyze_to_json(const Operator& op, const ReducingStructure& rs,
                     const ClassifyReport& base, const std::vector<bool>& polygon_flags) {
    json j;
    j["n"] = op.n;
    j["tau"] = cnum(op.tau_c);
    j["commutator_norm"] = base.commutator_norm;
    j["operator_norm"] = base.operator_norm;
    j["normal_flag"] = base.normal_flag;
    j["indeterminate_decomposition"] = rs.indeterminate;
    json blocks = json::array();
    for (size_t b = 0; b < rs.blocks.size(); ++b) {
        json nb;
        nb["dim"] = rs.blocks[b].dim;
        if (rs.blocks[b].scalar) {
            nb["scalar"] = cnum(*rs.blocks[b].scalar);
        } else {
            nb["scalar"] = nullptr;
        }
        blocks.push_back(nb);
    }
    j["blocks"] = blocks;
    json reig = json::array();
    for (auto& re : rs.reducing_eigenvalues)
        reig.push_back({{"value", cnum(re.value)}, {"multiplicity", re.multiplicity}});
    j["reducing_eigenvalues"] = reig;
    // complex slope of each scalar block's segment from Psi(0)
    json slopes = json::array();
    for (size_t b = 0; b < rs.blocks.size(); ++b) {
        if (!rs.blocks[b].scalar) continue;
        cplx slope = complex_slope(op, CMat::zero(op.n, op.n), rs.projection(int(b)));
        slopes.push_back(cnum(slope));
    }
    j["complex_slopes"] = slopes;
    json flags = json::array();
    for (bool f : polygon_flags) flags.push_back(f);
    j["polygon_flags"] = flags;  // index i is k = i + 1
    bool all_poly = true;
    for (bool f : polygon_flags) all_poly = all_poly && f;
    j["all_polygon"] = all_poly;
    return j;
}

void write_json_atomic(const json& j, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << j.dump(2) << "\n";
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into place: " + path);
    }
}

}  // namespace specscale
