#pragma once

#include <cstddef>
#include <vector>

#include "geometry.hpp"

namespace vlcgsm {

struct LambertianParams {
    double half_power_semiangle = 0.0;  // radians, in (0, pi/2)
    double mode = 1.0;                  // n, derived
};

double mode_number(double half_power_semiangle_rad);
LambertianParams make_lambertian(double half_power_semiangle_rad);

// Dense row-major matrix; rows = detectors, cols = LEDs for channel use.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Eq.-style Lambertian LOS gain with FOV cutoff; clamps to 0 when the
// detector sits behind the emitter plane (cos_phi < 0). The FOV test is on
// cos(theta) to avoid arccos precision loss near 1.
double los_gain(const Emitter& e, const Detector& d, const LambertianParams& params);

Matrix build_channel(const std::vector<Emitter>& tx, const std::vector<Detector>& rx,
                     const LambertianParams& params);

}  // namespace vlcgsm
