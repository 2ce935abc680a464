#pragma once

/**
 * @file corpus.hpp
 * @brief The shared example metrics and maps used by the test suites and
 *        shipped as manifest files.
 */

#include "jetgeo/morphism.hpp"

namespace jetgeo::corpus {

template <class T>
Metric<T> flat(std::size_t n) {
    std::vector<std::string> coords;
    const char* names[] = {"x", "y", "z", "w", "v"};
    detail::require(n >= 1 && n <= 5, "corpus flat metric supports n <= 5");
    for (std::size_t i = 0; i < n; ++i) coords.push_back(names[i]);
    std::vector<std::string> upper;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) upper.push_back(i == j ? "1" : "0");
    return Metric<T>::from_strings(coords, upper);
}

/// Half-plane y > 0 with g = diag(1/y², 1/y²).
template <class T>
Metric<T> hyperbolic_plane() {
    return Metric<T>::from_strings({"x", "y"}, {"1/y^2", "0", "1/y^2"});
}

/// Half-space z > 0 with g = (1/z²)·I.
template <class T>
Metric<T> hyperbolic_space3() {
    return Metric<T>::from_strings(
        {"x", "y", "z"}, {"1/z^2", "0", "0", "1/z^2", "0", "1/z^2"});
}

/// Stereographic chart of the round sphere: 4/(1+x²+y²)²·I.
template <class T>
Metric<T> conformal_sphere() {
    return Metric<T>::from_strings(
        {"x", "y"},
        {"4/(1 + x^2 + y^2)^2", "0", "4/(1 + x^2 + y^2)^2"});
}

template <class T>
SmoothMap<T> complex_square() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x^2 - y^2", "2*x*y"});
}

template <class T>
SmoothMap<T> stretch() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x", "2*y"});
}

template <class T>
SmoothMap<T> quad_radial() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x^2 + y^2", "x"});
}

template <class T>
SmoothMap<T> projection_3to2() {
    return SmoothMap<T>::from_strings({"x", "y", "z"}, {"x", "y"});
}

/// Quadratic R⁴ → R³ in the style of the Hopf construction; semi-conformal
/// with Λ = 4(x²+y²+z²+w²) and harmonic components.
template <class T>
SmoothMap<T> hopf_quadratic() {
    return SmoothMap<T>::from_strings(
        {"x", "y", "z", "w"},
        {"2*(x*z + y*w)", "2*(y*z - x*w)", "x^2 + y^2 - z^2 - w^2"});
}

template <class T>
SmoothMap<T> identity_map(std::size_t n) {
    std::vector<std::string> coords;
    const char* names[] = {"x", "y", "z", "w", "v"};
    detail::require(n >= 1 && n <= 5, "corpus identity supports n <= 5");
    for (std::size_t i = 0; i < n; ++i) coords.push_back(names[i]);
    std::vector<std::string> comps = coords;
    return SmoothMap<T>::from_strings(coords, comps);
}

template <class T>
SmoothMap<T> product_and_sum() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x*y", "x + y"});
}

template <class T>
SmoothMap<T> squared_norm() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x^2 + y^2"});
}

template <class T>
SmoothMap<T> coordinate_sum() {
    return SmoothMap<T>::from_strings({"x", "y"}, {"x + y"});
}

} // namespace jetgeo::corpus
