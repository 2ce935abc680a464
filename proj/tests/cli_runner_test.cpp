// Drives the command line tool end to end: spawns it on the manifest
// corpus and asserts exit codes, report shapes, known values, and byte
// stability. argv[1] is the tool path, argv[2] the manifest directory.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using njson = nlohmann::json;

namespace {

std::string tool;
std::string dir;
int failures = 0;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = tool + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int st = pclose(p);
    if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
    return r;
}

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    } else {
        std::cout << "ok: " << what << "\n";
    }
}

njson parse_or_null(const std::string& text) {
    try {
        return njson::parse(text);
    } catch (const njson::parse_error&) {
        return nullptr;
    }
}

std::string mf(const char* name) { return dir + "/" + name; }

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <tool> <manifest dir>\n";
        return 2;
    }
    tool = argv[1];
    dir = argv[2];

    // Exact Laplacian with known values.
    {
        RunResult r = run("laplacian " + mf("flat_plane.ini") + " -f 'x^2 + y^2'");
        njson j = parse_or_null(r.out);
        check(r.code == 0, "flat laplacian exits 0");
        check(!j.is_null(), "flat laplacian emits JSON");
        if (!j.is_null()) {
            check(j["mode"] == "exact", "mode defaults to exact");
            check(j["results"].size() == 2, "one result per manifest point");
            check(j["results"][0]["laplacian"] == "4" &&
                      j["results"][1]["laplacian"] == "4",
                  "flat laplacian of the squared norm is 4");
            check(j.contains("manifest_digest") &&
                      j["manifest_digest"].get<std::string>().size() == 16,
                  "report carries the manifest digest");
        }
    }

    // Floating mode override on an exact manifest.
    {
        RunResult r =
            run("laplacian " + mf("hyperbolic_plane.ini") + " --mode float64 -f 'log(y)'");
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "hyperbolic floating laplacian runs");
        if (!j.is_null()) {
            check(j["mode"] == "float64", "--mode overrides the manifest");
            bool all = true;
            for (const auto& row : j["results"]) {
                double v = row["laplacian"].get<double>();
                all = all && std::abs(v + 1.0) < 1e-9;
            }
            check(all, "laplacian of log(y) is -1 on the half-plane");
        }
    }

    // Floating mode preset by the manifest itself.
    {
        RunResult r = run("laplacian " + mf("conformal_sphere_float.ini") + " -f 'exp(x)'");
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "sphere chart laplacian runs");
        if (!j.is_null()) {
            check(j["mode"] == "float64", "manifest [options] set the mode");
            check(j["results"][0]["laplacian"].is_number(),
                  "floating results are JSON numbers");
        }
    }

    // check-map across the corpus, with known verdicts.
    {
        RunResult r = run("check-map " + mf("complex_square.ini") + " --fi");
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "complex squaring check-map runs");
        if (!j.is_null()) {
            const auto& a = j["results"][0];
            const auto& b = j["results"][1];
            check(a["semiconformal"] == true && a["harmonic"] == true &&
                      a["harmonic_morphism"] == true,
                  "squaring is a harmonic morphism");
            check(a["dilation"] == "20" && b["dilation"] == "13/4",
                  "dilation is 4(x^2 + y^2) at both points");
            check(a["fi"]["direct"] == true && a["fi"]["jet_pullback"] == true,
                  "both equivalence routes agree on the positive case");
        }
    }
    {
        RunResult r = run("check-map " + mf("stretch.ini") + " --fi");
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "stretch check-map runs");
        if (!j.is_null()) {
            const auto& a = j["results"][0];
            check(a["semiconformal"] == false && a["harmonic"] == true &&
                      a["harmonic_morphism"] == false,
                  "stretch is harmonic but not semi-conformal");
            check(a["worst_defect"] == "3", "stretch equal-norm defect is 3");
            check(a["fi"]["direct"] == false && a["fi"]["jet_pullback"] == false &&
                      a["fi"].contains("failing_jet"),
                  "both routes reject the stretch and name a failing jet");
        }
    }
    {
        RunResult r = run("check-map " + mf("hopf_quadratic.ini"));
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "quadratic fibration check-map runs");
        if (!j.is_null()) {
            const auto& a = j["results"][0];
            check(a["harmonic_morphism"] == true && a["dilation"] == "36",
                  "fibration is a harmonic morphism with dilation 36");
        }
    }
    {
        RunResult r = run("check-map " + mf("flat3_to_hyperbolic3.ini"));
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "half-space inclusion check-map runs");
        if (!j.is_null()) {
            const auto& a = j["results"][0];
            check(a["semiconformal"] == true && a["harmonic"] == false,
                  "inclusion is semi-conformal, not harmonic");
            njson want = njson::array({"0", "0", "1/2"});
            check(a["tension"] == want, "tension at (1,1,2) is (0, 0, 1/2)");
        }
    }
    {
        RunResult r = run("check-map " + mf("degenerate_sweep.ini"));
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(),
              "a rank-deficient point does not abort the sweep");
        if (!j.is_null()) {
            check(j["results"][0].contains("error"),
                  "the degenerate point is reported as an error row");
            check(j["results"][1]["harmonic_morphism"] == true,
                  "the regular point is still classified");
        }
    }

    // check-jet: harmonic accepts, non-harmonic rejects with exit 1.
    {
        RunResult r = run("check-jet " + mf("harmonic_jet.ini"));
        njson j = parse_or_null(r.out);
        check(r.code == 0 && !j.is_null(), "saddle jet accepted");
        if (!j.is_null())
            check(j["results"][0]["harmonic"] == true &&
                      j["results"][0]["certificate"] == "0",
                  "saddle jet certificate is zero");
    }
    {
        RunResult r = run("check-jet " + mf("nonharmonic_jet.ini"));
        njson j = parse_or_null(r.out);
        check(r.code == 1 && !j.is_null(), "definite jet rejected with exit 1");
        if (!j.is_null())
            check(j["results"][0]["harmonic"] == false &&
                      j["results"][0]["certificate"] == "4",
                  "definite jet certificate is its trace");
    }

    // Byte stability: identical runs produce identical bytes.
    {
        std::string cmd = "check-map " + mf("complex_square.ini") + " --fi";
        check(run(cmd).out == run(cmd).out, "check-map output is byte-stable");
        std::string vp = "verify-paper --seed 5";
        check(run(vp).out == run(vp).out, "verify-paper output is byte-stable");
    }

    // The self-verification suite.
    {
        RunResult r = run("verify-paper --output summary");
        check(r.code == 0, "verify-paper exits 0");
        check(r.out.find("[PASS]") != std::string::npos &&
                  r.out.find("[FAIL]") == std::string::npos,
              "every verification line passes");
        check(r.out.find("checks passed") != std::string::npos,
              "summary ends with a tally");
        check(r.out.find("evidence") != std::string::npos,
              "symmetry lines are flagged as evidence");
    }
    {
        RunResult r = run("verify-paper --flip-gamma-sign");
        njson j = parse_or_null(r.out);
        check(r.code == 1 && !j.is_null(), "flipped connection sign exits 1");
        if (!j.is_null()) {
            int failing = 0;
            std::string name;
            for (const auto& c : j["checks"])
                if (c["pass"] == false) {
                    ++failing;
                    name = c["name"].get<std::string>();
                }
            check(failing == 1 && name == "levicivita-transport-isometry",
                  "exactly the transport isometry fails under the flip");
        }
    }

    // Input failures exit 2.
    {
        RunResult r = run("laplacian " + mf("flat_plane.ini") + " -f 'x +'");
        check(r.code == 2, "expression syntax error exits 2");
    }
    {
        const char* path = "cli_bad_manifest.ini";
        std::ofstream(path) << "[domain]\ndim = 2\ncoords = x y\n";
        RunResult r = run(std::string("laplacian ") + path + " -f 'x'");
        std::remove(path);
        check(r.code == 2, "incomplete manifest exits 2");
    }
    {
        RunResult r = run("laplacian no_such_file.ini -f 'x'");
        check(r.code == 2, "missing manifest file exits 2");
    }
    {
        RunResult r = run("check-map " + mf("flat_plane.ini"));
        check(r.code == 2, "check-map without a codomain exits 2");
    }
    {
        RunResult r = run("frobnicate");
        check(r.code == 2, "unknown subcommand exits 2");
    }

    if (failures) std::cerr << failures << " CLI checks failed\n";
    return failures ? 1 : 0;
}
