#include "geometry.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace vlcgsm {

void validate_room(const RoomConfig& room) {
    if (!(room.length > 0.0) || !(room.width > 0.0) || !(room.height > 0.0))
        throw ConfigError("room dimensions must be positive");
    if (!(room.rx_height > 0.0) || !(room.rx_height < room.tx_height) ||
        !(room.tx_height <= room.height))
        throw ConfigError("room heights must satisfy 0 < rx_height < tx_height <= height");
}

namespace {

std::vector<double> mirrored_offsets(std::size_t n, double d) {
    std::vector<double> o(n, 0.0);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double v = (static_cast<double>(j) - (static_cast<double>(n) - 1.0) / 2.0) * d;
        o[j] = v;
        o[n - 1 - j] = -v;
    }
    return o;
}

}  // namespace

std::vector<Vec3> grid_positions(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) throw ConfigError("grid needs rows, cols >= 1");
    if (!(spec.spacing > 0.0) && (spec.rows > 1 || spec.cols > 1))
        throw ConfigError("grid spacing must be positive");
    const auto xs = mirrored_offsets(spec.cols, spec.spacing);
    const auto ys = mirrored_offsets(spec.rows, spec.spacing);
    std::vector<Vec3> out;
    out.reserve(spec.rows * spec.cols);
    for (std::size_t r = 0; r < spec.rows; ++r)
        for (std::size_t c = 0; c < spec.cols; ++c)
            out.push_back({spec.center.x + xs[c], spec.center.y + ys[r], spec.center.z});
    return out;
}

std::vector<Vec3> grid_positions(const GridSpec& spec, const RoomConfig& room) {
    validate_room(room);
    const double ex = (static_cast<double>(spec.cols) - 1.0) / 2.0 * spec.spacing;
    const double ey = (static_cast<double>(spec.rows) - 1.0) / 2.0 * spec.spacing;
    if (spec.center.x - ex < 0.0 || spec.center.x + ex > room.length ||
        spec.center.y - ey < 0.0 || spec.center.y + ey > room.width)
        throw ConfigError("grid exceeds room footprint (" +
                          std::to_string(spec.cols) + "x" + std::to_string(spec.rows) +
                          " at spacing " + std::to_string(spec.spacing) + " m)");
    return grid_positions(spec);
}

LinkAngles link_angles(const Emitter& e, const Detector& d) {
    const Vec3 to_det = d.position - e.position;
    const double r2 = dot(to_det, to_det);
    if (r2 == 0.0) throw ConfigError("emitter and detector positions coincide");
    const double r = std::sqrt(r2);
    LinkAngles out;
    out.distance = r;
    out.cos_phi = dot(e.normal, to_det) / r;
    const Vec3 to_src = e.position - d.position;
    out.cos_theta = dot(d.normal, to_src) / r;
    return out;
}

}  // namespace vlcgsm
