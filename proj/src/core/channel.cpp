#include "channel.hpp"

#include <cmath>

#include "errors.hpp"

namespace vlcgsm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double mode_number(double half_power_semiangle_rad) {
    if (!(half_power_semiangle_rad > 0.0) || !(half_power_semiangle_rad < kPi / 2.0))
        throw ConfigError("half-power semiangle must lie in (0, 90) degrees");
    return -std::log(2.0) / std::log(std::cos(half_power_semiangle_rad));
}

LambertianParams make_lambertian(double half_power_semiangle_rad) {
    return {half_power_semiangle_rad, mode_number(half_power_semiangle_rad)};
}

double los_gain(const Emitter& e, const Detector& d, const LambertianParams& params) {
    const LinkAngles la = link_angles(e, d);
    if (la.cos_phi < 0.0) return 0.0;
    if (la.cos_theta < std::cos(d.fov)) return 0.0;  // rect(theta/FOV)
    const double n = params.mode;
    return (n + 1.0) / (2.0 * kPi) * std::pow(la.cos_phi, n) * la.cos_theta * d.area /
           (la.distance * la.distance);
}

Matrix build_channel(const std::vector<Emitter>& tx, const std::vector<Detector>& rx,
                     const LambertianParams& params) {
    if (tx.empty() || rx.empty()) throw ConfigError("channel needs at least one LED and one detector");
    Matrix h(rx.size(), tx.size());
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < tx.size(); ++j)
            h(i, j) = los_gain(tx[j], rx[i], params);
    return h;
}

}  // namespace vlcgsm
