#pragma once
// Shared helpers for the unit tests: seeded samplers and convergence sweeps.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "spinorsurf/grid.hpp"
#include "spinorsurf/spinalgebra.hpp"

namespace testing {

using C = std::complex<double>;

struct Sampler {
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};

    explicit Sampler(std::uint64_t seed = 7) : rng(seed) {}
    double real() { return normal(rng); }
    C complex() { return {real(), real()}; }
    spinorsurf::Spinord spinor() { return {complex(), complex()}; }
    Eigen::Vector3d vector() { return {real(), real(), real()}; }
    Eigen::Vector3d unit() { return vector().normalized(); }
    Eigen::Matrix3d rotation() {
        Eigen::Quaterniond q(real(), real(), real(), real());
        q.normalize();
        return q.toRotationMatrix();
    }
};

// Residuals on 32^2, 64^2, 128^2.
inline std::vector<double> sweep(const std::function<double(int)>& residual_at) {
    return {residual_at(32), residual_at(64), residual_at(128)};
}

inline double order(const std::vector<double>& r) { return spinorsurf::measured_order(r); }

}  // namespace testing
