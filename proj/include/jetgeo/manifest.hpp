#pragma once

/**
 * @file manifest.hpp
 * @brief INI-style chart/map/point manifests consumed by the command line
 *        tool. See docs/manifest-format.md for the format definition.
 *
 * Parsing is strict: unknown sections, unknown keys, duplicate keys, missing
 * metric entries, and arity mismatches all raise ManifestError with the line
 * number. Expression strings are parsed eagerly so a bad manifest never
 * reaches the geometry layer.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetgeo/morphism.hpp"

namespace jetgeo {

/// One chart: coordinate names plus the upper triangle of the metric,
/// row-major (g11, g12, ..., g1n, g22, ...), as expression strings.
struct ChartSpec {
    std::size_t dim = 0;
    std::vector<std::string> coords;
    std::vector<std::string> metric_upper;
};

/// Explicit 2-jet data for check-jet: value, covector, and the upper
/// triangle of the symmetric form, over the domain chart.
struct JetSpec {
    Rational value;
    std::vector<Rational> p;
    std::vector<Rational> h_upper;
};

struct Manifest {
    ChartSpec domain;
    std::optional<ChartSpec> codomain;
    std::vector<std::string> map_components;
    std::vector<std::vector<Rational>> points;
    std::optional<JetSpec> jet;
    ScalarMode mode = ScalarMode::Exact;
    std::optional<double> tol;
    std::string digest; // FNV-1a 64 of the manifest bytes, 16 hex digits
};

std::string fnv1a_hex(const std::string& bytes);

Manifest parse_manifest_text(const std::string& text);
Manifest load_manifest(const std::string& path);

template <class T>
Metric<T> chart_metric(const ChartSpec& c) {
    return Metric<T>::from_strings(c.coords, c.metric_upper);
}

template <class T>
SmoothMap<T> manifest_map(const Manifest& m) {
    detail::require(!m.map_components.empty(), "manifest has no [map] section");
    return SmoothMap<T>::from_strings(m.domain.coords, m.map_components);
}

template <class T>
std::vector<T> point_in(const std::vector<Rational>& p) {
    std::vector<T> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(ScalarTraits<T>::from_rational(q));
    return out;
}

template <class T>
Jet2Scalar<T> manifest_jet(const JetSpec& js, const std::vector<T>& base) {
    std::size_t n = base.size();
    detail::require(js.p.size() == n && js.h_upper.size() == n * (n + 1) / 2,
                    "jet arity does not match the domain dimension");
    Jet2Scalar<T> j;
    j.base = base;
    j.value = ScalarTraits<T>::from_rational(js.value);
    for (const auto& q : js.p) j.p.push_back(ScalarTraits<T>::from_rational(q));
    j.form = Mat<T>::zero(n, n, ScalarTraits<T>::from_rational(Rational(0)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = i; jj < n; ++jj) {
            T v = ScalarTraits<T>::from_rational(js.h_upper[k++]);
            j.form.at(i, jj) = v;
            j.form.at(jj, i) = v;
        }
    j.label = "manifest jet";
    return j;
}

} // namespace jetgeo
