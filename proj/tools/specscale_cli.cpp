// Command-line front end: matrix ingestion, subcommand dispatch, JSON and
// mesh serialization. Exit codes: 0 ok, 2 malformed input, 3 bad flag
// combination, 4 degenerate pencil.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specscale/json_io.hpp"

using namespace specscale;

namespace {

Operator load_operator(const std::string& path) { return decompose(read_matrix_file(path)); }

int run_range(const std::string& input, int k, int grid, double tol, const std::string& out) {
    Operator op = load_operator(input);
    if (k < 1 || k > op.n) throw std::invalid_argument("k out of range 1..n");
    auto boundary = trace_boundary(op, k, grid, tol);
    auto report = classify(boundary, op);
    write_json_atomic(boundary_to_json(boundary, report), out);
    return 0;
}

int run_scale(const std::string& input, int directions, const std::string& mesh,
              const std::string& out) {
    Operator op = load_operator(input);
    auto body = build_scale(op, directions);
    auto faces = flat_faces(body);
    if (!out.empty()) write_json_atomic(body_to_json(body, faces), out);
    if (!mesh.empty()) {
        MeshFormat fmt = mesh.size() >= 4 && mesh.substr(mesh.size() - 4) == ".ply"
                             ? MeshFormat::Ply
                             : MeshFormat::Obj;
        export_mesh(body, fmt, mesh);
    }
    return 0;
}

int run_slice(const std::string& input, int k, int grid, const std::string& out) {
    Operator op = load_operator(input);
    if (k < 0 || k > op.n) throw std::invalid_argument("k out of range 0..n");
    write_json_atomic(slice_to_json(isotrace_slice(op, k, grid)), out);
    return 0;
}

int run_analyze(const std::string& input, int grid, std::uint64_t seed, const std::string& out) {
    Operator op = load_operator(input);
    auto rs = reducing_subspaces(op, 1e-8, seed);
    ClassifyReport base;
    std::vector<bool> flags;
    const CriticalAngleSet cas = [&] {
        try {
            return critical_angles(op, grid);
        } catch (const DegeneratePencilError&) {
            return CriticalAngleSet{};
        }
    }();
    for (int k = 1; k < op.n; ++k) {
        auto boundary = trace_boundary(op, k, grid, 0.0, Exec::Parallel, &cas);
        auto rep = classify(boundary, op);
        if (k == 1) base = rep;
        flags.push_back(rep.is_polygon);
    }
    if (op.n == 1) {
        auto boundary = trace_boundary(op, 1, grid);
        base = classify(boundary, op);
    }
    write_json_atomic(analyze_to_json(op, rs, base, flags), out);
    return 0;
}

int run_pencil(const std::string& input, int grid, const std::string& out) {
    Operator op = load_operator(input);
    auto f = char_poly_bivariate(op);
    auto disc = discriminant_y(f);
    auto angles = critical_angles(op, grid);
    write_json_atomic(pencil_to_json(f, disc, angles), out);
    return 0;
}

int run_conjecture(int n, int trials, int grid, std::uint64_t seed, const std::string& out) {
    auto rep = even_polygon_conjecture_scan(n, trials, grid, seed);
    write_json_atomic(scan_to_json(rep), out);
    std::cout << (rep.counterexamples.empty()
                      ? "no counterexample in " + std::to_string(trials) + " trials"
                      : std::to_string(rep.counterexamples.size()) + " counterexample candidate(s)")
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-numerical ranges and the spectral scale of a complex matrix"};
    app.require_subcommand(1);

    std::string input, out, mesh;
    int k = 1, grid = 3600, directions = 2000, n = 4, trials = 100;
    double tol = 0.0;
    std::uint64_t seed = 1;

    auto* c_range = app.add_subcommand("range", "trace the boundary of W_k(c)");
    c_range->add_option("--input", input)->required();
    c_range->add_option("--k", k)->required();
    c_range->add_option("--grid", grid);
    c_range->add_option("--tol", tol);
    c_range->add_option("--out", out)->required();

    auto* c_scale = app.add_subcommand("scale", "build the spectral scale body");
    c_scale->add_option("--input", input)->required();
    c_scale->add_option("--directions", directions);
    c_scale->add_option("--mesh", mesh);
    c_scale->add_option("--out", out);

    auto* c_slice = app.add_subcommand("slice", "isotrace slice I_{k/n}");
    c_slice->add_option("--input", input)->required();
    c_slice->add_option("--k", k)->required();
    c_slice->add_option("--grid", grid);
    c_slice->add_option("--out", out)->required();

    auto* c_analyze = app.add_subcommand("analyze", "reducing structure and per-k polygon flags");
    c_analyze->add_option("--input", input)->required();
    c_analyze->add_option("--grid", grid);
    c_analyze->add_option("--seed", seed);
    c_analyze->add_option("--out", out)->required();

    auto* c_pencil = app.add_subcommand("pencil", "bivariate characteristic polynomial data");
    c_pencil->add_option("--input", input)->required();
    c_pencil->add_option("--grid", grid);
    c_pencil->add_option("--out", out)->required();

    auto* c_conj = app.add_subcommand("conjecture", "randomized scan of the even-n polygon conjecture");
    c_conj->add_option("--n", n)->required();
    c_conj->add_option("--trials", trials);
    c_conj->add_option("--grid", grid);
    c_conj->add_option("--seed", seed);
    c_conj->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }

    try {
        if (app.got_subcommand(c_range)) return run_range(input, k, grid, tol, out);
        if (app.got_subcommand(c_scale)) return run_scale(input, directions, mesh, out);
        if (app.got_subcommand(c_slice)) return run_slice(input, k, grid, out);
        if (app.got_subcommand(c_analyze)) return run_analyze(input, grid, seed, out);
        if (app.got_subcommand(c_pencil)) return run_pencil(input, grid, out);
        if (app.got_subcommand(c_conj)) return run_conjecture(n, trials, grid, seed, out);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneratePencilError& e) {
        std::cerr << "pencil error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
