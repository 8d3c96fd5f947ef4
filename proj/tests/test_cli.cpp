// End-to-end checks of the command-line tool: file schemas, exit codes, and
// byte-stable round trips. Invoked with the CLI binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_cli;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kDiskPair =
    R"({"n": 2, "entries": [[[1.0, 0.5], [0.0, 0.5]], [[0.0, 0.5], [0.0, 0.5]]]})";
const char* kDiag01i =
    R"({"n": 3, "entries": [[[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[0,1]]]})";

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    write_file("disk_pair.json", kDiskPair);
    write_file("diag01i.json", kDiag01i);

    // range on the example disk: no corners, no segments, not a polygon
    expect(run("range --input disk_pair.json --k 1 --grid 720 --out b_disk.json") == 0,
           "range on disk_pair exits 0");
    {
        json b = json::parse(slurp("b_disk.json"));
        expect(b["corners"].empty(), "disk has no corners");
        expect(b["segments"].empty(), "disk has no segments");
        expect(b["is_polygon"] == false, "disk is not a polygon");
        expect(b["normal_flag"] == false, "disk_pair matrix is not normal");
    }

    // range on diag(0,1,i): 3 corners, 3 segments
    expect(run("range --input diag01i.json --k 1 --grid 720 --out b_tri.json") == 0,
           "range on diag(0,1,i) exits 0");
    {
        json b = json::parse(slurp("b_tri.json"));
        expect(b["corners"].size() == 3, "triangle has 3 corners");
        expect(b["segments"].size() == 3, "triangle has 3 segments");
        expect(b["is_polygon"] == true, "triangle is a polygon");
        expect(b["normal_flag"] == true, "diag(0,1,i) is normal");
    }

    // byte-identical round trip of the range output
    {
        json b = json::parse(slurp("b_tri.json"));
        std::ofstream out("b_tri2.json", std::ios::binary);
        out << b.dump(2) << "\n";
        out.close();
        expect(slurp("b_tri.json") == slurp("b_tri2.json"), "range output round-trips byte-identically");
    }

    // slice of the example disk: radius 1/4 circle about (1/4, 1/4) at x0 = 1/2
    expect(run("slice --input disk_pair.json --k 1 --grid 720 --out s21.json") == 0, "slice exits 0");
    {
        json s = json::parse(slurp("s21.json"));
        expect(std::abs(s["t"].get<double>() - 0.5) < 1e-12, "slice level 1/2");
        bool ok = true;
        for (auto& p : s["polygon"]) {
            double x = p[0].get<double>() - 0.25, y = p[1].get<double>() - 0.25;
            if (std::abs(std::sqrt(x * x + y * y) - 0.25) > 1e-8) ok = false;
        }
        expect(ok, "slice polygon lies on the circle of radius 1/4");
    }

    // scale with mesh output
    expect(run("scale --input disk_pair.json --directions 500 --mesh body.obj --out body.json") == 0,
           "scale exits 0");
    {
        json b = json::parse(slurp("body.json"));
        expect(b["kind"] == "polytope", "disk_pair body is a polytope");
        expect(b["flat_faces"].empty(), "disk_pair body has no 2d faces");
        std::string obj = slurp("body.obj");
        expect(obj.find("v ") != std::string::npos && obj.find("f ") != std::string::npos,
               "obj mesh has vertices and faces");
    }

    // analyze: normal flag must agree with the per-k polygon flags
    expect(run("analyze --input diag01i.json --grid 720 --out a_tri.json") == 0, "analyze exits 0");
    {
        json a = json::parse(slurp("a_tri.json"));
        expect(a["normal_flag"] == true, "diag(0,1,i) normal");
        expect(a["all_polygon"] == true, "all W_k polygons");
        expect(a["normal_flag"] == a["all_polygon"], "normal iff all polygon (normal arm)");
        expect(a["reducing_eigenvalues"].size() == 3, "3 reducing eigenvalues");
    }
    expect(run("analyze --input disk_pair.json --grid 720 --out a_21.json") == 0, "analyze disk_pair exits 0");
    {
        json a = json::parse(slurp("a_21.json"));
        expect(a["normal_flag"] == false, "disk_pair not normal");
        expect(a["all_polygon"] == false, "disk_pair W_1 not a polygon");
    }

    // pencil output on disk_pair
    expect(run("pencil --input disk_pair.json --grid 720 --out p21.json") == 0, "pencil exits 0");
    {
        json p = json::parse(slurp("p21.json"));
        expect(p["n"] == 2, "pencil degree 2");
        expect(p["critical_angles"].empty(), "disk pencil has no critical angles");
        expect(p["discriminant"]["vanishes"] == false, "discriminant not identically zero");
    }

    // conjecture scan
    expect(run("conjecture --n 2 --trials 4 --grid 360 --seed 5 --out scan.json") == 0,
           "conjecture exits 0");
    {
        json s = json::parse(slurp("scan.json"));
        expect(s["n"] == 2 && s["trials"] == 4, "scan echoes parameters");
        expect(s["counterexamples"].empty(), "no 2x2 counterexamples");
        expect(s.contains("elapsed"), "scan reports elapsed time");
    }

    // exit codes: malformed input file -> 2
    write_file("bad.json", "{\"n\": 2, \"entries\": [[1, 2]]}");
    expect(run("range --input bad.json --k 1 --out x.json") == 2, "malformed input exits 2");
    write_file("bad2.json", "not json at all");
    expect(run("range --input bad2.json --k 1 --out x.json") == 2, "non-json input exits 2");
    expect(run("range --input missing_file.json --k 1 --out x.json") == 2, "missing file exits 2");

    // invalid flag combination -> 3
    expect(run("range --input disk_pair.json --k 7 --out x.json") == 3, "k out of range exits 3");
    expect(run("range --input disk_pair.json --out x.json") == 3, "missing required flag exits 3");
    expect(run("conjecture --n 3 --trials 2 --out x.json") == 3, "odd n exits 3");

    // degenerate pencil -> 4
    write_file("zero.json", R"({"n": 2, "entries": [[[0,0],[0,0]],[[0,0],[0,0]]]})");
    expect(run("pencil --input zero.json --out x.json") == 4, "degenerate pencil exits 4");
    expect(!std::ifstream("x.json").good(), "no partial output file on failure");

    for (const char* f : {"disk_pair.json", "diag01i.json", "b_disk.json", "b_tri.json", "b_tri2.json",
                          "s21.json", "body.json", "body.obj", "a_tri.json", "a_21.json",
                          "p21.json", "scan.json", "bad.json", "bad2.json", "zero.json"})
        std::remove(f);

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << g_failures << " failures\n";
    return 1;
}
