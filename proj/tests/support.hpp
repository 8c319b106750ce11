#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Core>

#include "rz/charfn.hpp"

namespace rz::testing {

inline constexpr double pi = std::numbers::pi;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline TrigPolynomial phi() { return char_poly(triangle_distribution()); }

/// Direct complex-exponential sum, independent of eval_point.
inline std::complex<double> direct_phi(double x, double y) {
    using namespace std::complex_literals;
    return (std::exp(1i * x) + std::exp(1i * y) + std::exp(1i * (x + y))) / 3.0;
}

/// Random planar trigonometric polynomial with small integer frequencies
/// and weights of mixed sign.
inline TrigPolynomial random_planar_poly() {
    const int n = uniform_int(1, 5);
    Eigen::VectorXd w(n);
    Eigen::MatrixXd f(2, n);
    for (int j = 0; j < n; ++j) {
        w(j) = uniform(-1, 1);
        f(0, j) = uniform_int(-3, 3);
        f(1, j) = uniform_int(-3, 3);
    }
    return {w, f};
}

}  // namespace rz::testing
