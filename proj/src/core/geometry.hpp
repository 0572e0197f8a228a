#pragma once

#include <cstddef>
#include <vector>

namespace vlcgsm {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

struct RoomConfig {
    double length = 5.0;     // X, m
    double width = 5.0;      // Y, m
    double height = 3.5;     // Z, m
    double tx_height = 3.0;  // LED plane above floor
    double rx_height = 0.8;  // detector plane above floor
};

void validate_room(const RoomConfig& room);

struct Emitter {
    Vec3 position;
    Vec3 normal{0.0, 0.0, -1.0};  // facing straight down
};

struct Detector {
    Vec3 position;
    Vec3 normal{0.0, 0.0, 1.0};  // facing straight up
    double area = 1e-4;          // m^2
    double fov = 0.0;            // half-angle, radians
    double responsivity = 0.75;  // A/W
};

struct GridSpec {
    std::size_t rows = 1;  // p
    std::size_t cols = 1;  // q
    double spacing = 0.0;  // d, m
    Vec3 center;           // plane center (z = plane height)
};

struct LinkAngles {
    double cos_phi = 0.0;    // emergence, at the emitter
    double cos_theta = 0.0;  // incidence, at the detector
    double distance = 0.0;   // R, m
};

// Row-major from the (min-x, min-y) corner; centroid equals spec.center.
// Offsets are mirrored around the center so symmetric cells are exact
// negations of each other in floating point.
std::vector<Vec3> grid_positions(const GridSpec& spec);

// Same, with a room-footprint check (grid must fit inside [0,X]x[0,Y]).
std::vector<Vec3> grid_positions(const GridSpec& spec, const RoomConfig& room);

LinkAngles link_angles(const Emitter& e, const Detector& d);

}  // namespace vlcgsm
