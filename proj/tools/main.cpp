/**
 * @file main.cpp
 * @brief The jetgeo command line tool.
 *
 * Subcommands: laplacian, check-map, check-jet, verify-paper. Reports are
 * JSON on stdout (byte-stable for fixed inputs and seed) with a short human
 * summary on stderr, or plain text with --output summary.
 *
 * Exit codes: 0 all requested checks passed, 1 a mathematical check failed
 * or an internal cross-check disagreed, 2 the input could not be used
 * (manifest format, expression syntax, bad metric data). A rank-deficient
 * differential is reported per point without aborting the sweep.
 */

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jetgeo/manifest.hpp"
#include "jetgeo/verify.hpp"
#include "jetgeo/version.hpp"

using njson = nlohmann::ordered_json;
using namespace jetgeo;

namespace {

struct GlobalOpts {
    std::string mode;   // "", "exact", "float64"
    double tol = -1.0;  // <0 means unset
    std::uint64_t seed = 0;
    std::string output = "json";
    bool flip_gamma = false;
};

std::string pretty(const Rational& q) {
    std::string s = q.str();
    std::size_t pos = s.find('/');
    if (pos != std::string::npos && s.compare(pos, std::string::npos, "/1") == 0)
        return s.substr(0, pos);
    return s;
}

njson scalar_json(const Rational& v) { return pretty(v); }
njson scalar_json(double v) { return v; }

std::string scalar_str(const Rational& v) { return pretty(v); }
std::string scalar_str(double v) { return njson(v).dump(); }

template <class T>
njson vec_json(const std::vector<T>& v) {
    njson a = njson::array();
    for (const auto& c : v) a.push_back(scalar_json(c));
    return a;
}

template <class T>
njson mat_json(const Mat<T>& m) {
    njson rows = njson::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        njson r = njson::array();
        for (std::size_t j = 0; j < m.cols; ++j) r.push_back(scalar_json(m.at(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

template <class T>
std::string point_str(const std::vector<T>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        if constexpr (std::is_same_v<T, Rational>) os << pretty(v[i]);
        else os << v[i];
    }
    os << ")";
    return os.str();
}

ScalarMode resolve_mode(const GlobalOpts& g, const Manifest* m) {
    if (g.mode == "exact") return ScalarMode::Exact;
    if (g.mode == "float64") return ScalarMode::Float64;
    return m ? m->mode : ScalarMode::Exact;
}

CheckOptions resolve_opts(const GlobalOpts& g, const Manifest* m) {
    CheckOptions opts;
    if (g.tol > 0.0) opts.tol = g.tol;
    else if (m && m->tol) opts.tol = *m->tol;
    return opts;
}

njson report_head(const char* command, ScalarMode mode, const Manifest* m) {
    njson rep;
    rep["tool"] = "jetgeo";
    rep["version"] = version_string;
    rep["command"] = command;
    rep["mode"] = mode == ScalarMode::Exact ? "exact" : "float64";
    if (m) rep["manifest_digest"] = m->digest;
    return rep;
}

struct Outcome {
    njson report;
    std::vector<std::string> summary;
    int exit_code = 0;
};

void emit(const Outcome& oc, const GlobalOpts& g) {
    if (g.output == "json") {
        std::cout << oc.report.dump(2) << "\n";
        for (const auto& line : oc.summary) std::cerr << line << "\n";
    } else {
        for (const auto& line : oc.summary) std::cout << line << "\n";
    }
}

template <class T>
Outcome run_laplacian(const Manifest& m, const std::string& fsrc,
                      ScalarMode mode, const CheckOptions& opts) {
    if (m.points.empty()) throw ManifestError("laplacian needs a [points] section");
    Metric<T> g = chart_metric<T>(m.domain);
    Ast f = parse(fsrc, m.domain.coords);

    Outcome oc;
    oc.report = report_head("laplacian", mode, &m);
    oc.report["function"] = print(f);
    njson results = njson::array();
    for (const auto& qp : m.points) {
        std::vector<T> x = point_in<T>(qp);
        T value = laplacian(f, g, x, opts);
        njson r;
        r["point"] = vec_json(x);
        r["laplacian"] = scalar_json(value);
        results.push_back(std::move(r));
        oc.summary.push_back("laplacian at " + point_str(x) + " = " +
                             scalar_str(value));
    }
    oc.report["results"] = std::move(results);
    return oc;
}

template <class T>
Outcome run_check_map(const Manifest& m, bool with_fi, ScalarMode mode,
                      const CheckOptions& opts) {
    if (m.points.empty()) throw ManifestError("check-map needs a [points] section");
    if (!m.codomain) throw ManifestError("check-map needs a [codomain] section");
    Metric<T> g = chart_metric<T>(m.domain);
    Metric<T> h = chart_metric<T>(*m.codomain);
    SmoothMap<T> phi = manifest_map<T>(m);

    Outcome oc;
    oc.report = report_head("check-map", mode, &m);
    njson results = njson::array();
    for (const auto& qp : m.points) {
        std::vector<T> x = point_in<T>(qp);
        njson r;
        r["point"] = vec_json(x);
        try {
            PointReport<T> pr = check_point(phi, g, h, x, opts, with_fi);
            r["differential"] = mat_json(pr.dphi);
            r["semiconformal"] = pr.semiconformal.is_semiconformal;
            if (pr.semiconformal.dilation)
                r["dilation"] = scalar_json(*pr.semiconformal.dilation);
            r["worst_defect"] = scalar_json(pr.semiconformal.worst_defect);
            r["tension"] = vec_json(pr.tension_vector);
            r["harmonic"] = pr.harmonic;
            r["harmonic_morphism"] = pr.harmonic_morphism;
            std::string fi_note;
            if (pr.fi) {
                njson fi;
                fi["direct"] = pr.fi->direct;
                fi["jet_pullback"] = pr.fi->jet_pullback;
                if (pr.fi->failing_jet) fi["failing_jet"] = *pr.fi->failing_jet;
                r["fi"] = std::move(fi);
                if (pr.fi->direct != pr.fi->jet_pullback) {
                    oc.exit_code = 1;
                    fi_note = ", FI ROUTES DISAGREE";
                } else {
                    fi_note = std::string(", jet pullback agrees");
                }
            }
            oc.summary.push_back(
                "point " + point_str(x) + ": semi-conformal " +
                (pr.semiconformal.is_semiconformal ? "yes" : "no") + ", harmonic " +
                (pr.harmonic ? "yes" : "no") + ", harmonic morphism " +
                (pr.harmonic_morphism ? "yes" : "no") + fi_note);
        } catch (const RankDeficient& e) {
            r["error"] = e.what();
            oc.summary.push_back("point " + point_str(x) +
                                 ": rank-deficient differential, skipped");
        }
        results.push_back(std::move(r));
    }
    oc.report["results"] = std::move(results);
    return oc;
}

template <class T>
Outcome run_check_jet(const Manifest& m, ScalarMode mode, const CheckOptions& opts) {
    if (m.points.empty()) throw ManifestError("check-jet needs a [points] section");
    if (!m.jet) throw ManifestError("check-jet needs a [jet] section");
    Metric<T> g = chart_metric<T>(m.domain);

    Outcome oc;
    oc.report = report_head("check-jet", mode, &m);
    njson results = njson::array();
    bool all = true;
    for (const auto& qp : m.points) {
        std::vector<T> x = point_in<T>(qp);
        Jet2Scalar<T> j = manifest_jet<T>(*m.jet, x);
        HarmonicVerdict<T> v = is_harmonic_jet(j, g, x, opts);
        njson r;
        r["point"] = vec_json(x);
        r["harmonic"] = v.harmonic;
        r["certificate"] = scalar_json(v.certificate);
        results.push_back(std::move(r));
        all = all && v.harmonic;
        oc.summary.push_back("point " + point_str(x) + ": jet " +
                             (v.harmonic ? std::string("harmonic")
                                         : "not harmonic (certificate " +
                                               scalar_str(v.certificate) + ")"));
    }
    oc.report["results"] = std::move(results);
    oc.exit_code = all ? 0 : 1;
    return oc;
}

Outcome run_verify_paper(const GlobalOpts& g) {
    ScalarMode mode = resolve_mode(g, nullptr);
    CheckOptions opts = resolve_opts(g, nullptr);
    GammaSign sign = g.flip_gamma ? GammaSign::Flipped : GammaSign::Standard;
    std::vector<CheckLine> lines = run_paper_suite(mode, g.seed, opts, sign);

    Outcome oc;
    oc.report = report_head("verify-paper", mode, nullptr);
    oc.report["seed"] = g.seed;
    njson checks = njson::array();
    std::size_t passed = 0;
    for (const auto& line : lines) {
        njson c;
        c["name"] = line.name;
        c["pass"] = line.pass;
        c["detail"] = line.detail;
        checks.push_back(std::move(c));
        if (line.pass) ++passed;
        oc.summary.push_back(std::string(line.pass ? "[PASS] " : "[FAIL] ") +
                             line.name + ": " + line.detail);
    }
    oc.report["checks"] = std::move(checks);
    oc.report["all_pass"] = passed == lines.size();
    oc.summary.push_back(std::to_string(passed) + "/" + std::to_string(lines.size()) +
                         " checks passed");
    oc.exit_code = passed == lines.size() ? 0 : 1;
    return oc;
}

int classify_exit(const std::exception& e) {
    if (dynamic_cast<const ManifestError*>(&e)) return 2;
    if (dynamic_cast<const SyntaxError*>(&e)) return 2;
    if (dynamic_cast<const ExactModeError*>(&e)) return 2;
    if (dynamic_cast<const IrrationalCholesky*>(&e)) return 2;
    if (dynamic_cast<const NotPositiveDefinite*>(&e)) return 2;
    if (dynamic_cast<const DomainError*>(&e)) return 2;
    if (dynamic_cast<const DimensionMismatch*>(&e)) return 2;
    return 1; // CrossCheckError and anything unforeseen
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact infinitesimal calculus on Riemannian charts"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name

    GlobalOpts g;
    app.add_option("--mode", g.mode, "scalar mode: exact or float64")
        ->check(CLI::IsMember({"exact", "float64"}));
    app.add_option("--tol", g.tol, "relative tolerance for float64 comparisons");
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--output", g.output, "output format: json or summary")
        ->check(CLI::IsMember({"json", "summary"}));
    app.add_flag("--flip-gamma-sign", g.flip_gamma)->group("");

    std::string manifest_path, function_src;
    bool with_fi = false;

    CLI::App* lap = app.add_subcommand("laplacian",
                                       "Laplacian of a function at manifest points");
    lap->add_option("manifest", manifest_path, "manifest file")->required();
    lap->add_option("-f,--function", function_src, "expression over the domain coordinates")
        ->required();

    CLI::App* cmap = app.add_subcommand("check-map",
                                        "semi-conformality, tension, and harmonic "
                                        "morphism verdicts for the manifest map");
    cmap->add_option("manifest", manifest_path, "manifest file")->required();
    cmap->add_flag("--fi", with_fi, "also run the jet-pullback equivalence");

    CLI::App* cjet = app.add_subcommand("check-jet",
                                        "harmonicity of the manifest 2-jet");
    cjet->add_option("manifest", manifest_path, "manifest file")->required();

    CLI::App* vp = app.add_subcommand("verify-paper",
                                      "run the library's self-verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Outcome oc;
        if (vp->parsed()) {
            oc = run_verify_paper(g);
        } else {
            Manifest m = load_manifest(manifest_path);
            ScalarMode mode = resolve_mode(g, &m);
            CheckOptions opts = resolve_opts(g, &m);
            if (lap->parsed()) {
                oc = mode == ScalarMode::Exact
                         ? run_laplacian<Rational>(m, function_src, mode, opts)
                         : run_laplacian<double>(m, function_src, mode, opts);
            } else if (cmap->parsed()) {
                oc = mode == ScalarMode::Exact
                         ? run_check_map<Rational>(m, with_fi, mode, opts)
                         : run_check_map<double>(m, with_fi, mode, opts);
            } else {
                oc = mode == ScalarMode::Exact
                         ? run_check_jet<Rational>(m, mode, opts)
                         : run_check_jet<double>(m, mode, opts);
            }
        }
        emit(oc, g);
        return oc.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_exit(e);
    }
}
