#include <doctest.h>

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/rng.hpp"

using namespace vlcgsm;

TEST_CASE("2x2 receiver grid positions, row-major from the min corner") {
    GridSpec spec{2, 2, 0.1, {2.5, 2.5, 0.8}};
    const auto p = grid_positions(spec);
    REQUIRE(p.size() == 4);
    CHECK(p[0].x == doctest::Approx(2.45).epsilon(1e-12));
    CHECK(p[0].y == doctest::Approx(2.45).epsilon(1e-12));
    CHECK(p[1].x == doctest::Approx(2.55).epsilon(1e-12));
    CHECK(p[1].y == doctest::Approx(2.45).epsilon(1e-12));
    CHECK(p[2].x == doctest::Approx(2.45).epsilon(1e-12));
    CHECK(p[2].y == doctest::Approx(2.55).epsilon(1e-12));
    CHECK(p[3].x == doctest::Approx(2.55).epsilon(1e-12));
    CHECK(p[3].y == doctest::Approx(2.55).epsilon(1e-12));
    for (const auto& v : p) CHECK(v.z == 0.8);
}

TEST_CASE("4x4 transmitter grid covers {1.6, 2.2, 2.8, 3.4}") {
    GridSpec spec{4, 4, 0.6, {2.5, 2.5, 3.0}};
    const auto p = grid_positions(spec);
    REQUIRE(p.size() == 16);
    for (const auto& v : p) {
        const double dx = std::min({std::abs(v.x - 1.6), std::abs(v.x - 2.2),
                                    std::abs(v.x - 2.8), std::abs(v.x - 3.4)});
        const double dy = std::min({std::abs(v.y - 1.6), std::abs(v.y - 2.2),
                                    std::abs(v.y - 2.8), std::abs(v.y - 3.4)});
        CHECK(dx < 1e-12);
        CHECK(dy < 1e-12);
    }
}

TEST_CASE("degenerate 1x1 grid is the center point") {
    GridSpec spec{1, 1, 0.5, {1.0, 2.0, 3.0}};
    const auto p = grid_positions(spec);
    REQUIRE(p.size() == 1);
    CHECK(p[0].x == 1.0);
    CHECK(p[0].y == 2.0);
    CHECK(p[0].z == 3.0);
}

TEST_CASE("grid count, centroid and min pairwise spacing") {
    RandomStream rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        GridSpec spec;
        spec.rows = 1 + static_cast<std::size_t>(rng.bits() % 4);
        spec.cols = 1 + static_cast<std::size_t>(rng.bits() % 4);
        spec.spacing = 0.1 + rng.uniform();
        spec.center = {2.5, 2.5, 1.0};
        const auto p = grid_positions(spec);
        REQUIRE(p.size() == spec.rows * spec.cols);
        double cx = 0.0, cy = 0.0;
        for (const auto& v : p) { cx += v.x; cy += v.y; }
        CHECK(cx / p.size() == doctest::Approx(2.5).epsilon(1e-12));
        CHECK(cy / p.size() == doctest::Approx(2.5).epsilon(1e-12));
        if (p.size() > 1) {
            double mind = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = i + 1; j < p.size(); ++j) {
                    const Vec3 d = p[j] - p[i];
                    mind = std::min(mind, std::sqrt(dot(d, d)));
                }
            CHECK(mind == doctest::Approx(spec.spacing).epsilon(1e-9));
        }
    }
}

TEST_CASE("grid exceeding the room footprint is rejected") {
    RoomConfig room;
    GridSpec spec{2, 2, 6.0, {2.5, 2.5, 3.0}};
    CHECK_THROWS_AS(grid_positions(spec, room), ConfigError);
}

TEST_CASE("coaxial link angles") {
    Emitter e{{2.5, 2.5, 3.0}};
    Detector d;
    d.position = {2.5, 2.5, 0.8};
    const auto la = link_angles(e, d);
    CHECK(la.distance == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(la.cos_phi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(la.cos_theta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("45-degree offset link") {
    Emitter e{{2.5, 2.5, 3.0}};
    Detector d;
    d.position = {4.7, 2.5, 0.8};
    const auto la = link_angles(e, d);
    CHECK(la.distance == doctest::Approx(2.2 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(la.cos_phi == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(la.cos_theta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("down-facing detector sees cos_theta = -1 on the coaxial link") {
    Emitter e{{2.5, 2.5, 3.0}};
    Detector d;
    d.position = {2.5, 2.5, 0.8};
    d.normal = {0.0, 0.0, -1.0};
    CHECK(link_angles(e, d).cos_theta == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("parallel planes: cos_phi = cos_theta = dz/R for random offsets") {
    RandomStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Emitter e{{rng.uniform() * 5.0, rng.uniform() * 5.0, 3.0}};
        Detector d;
        d.position = {rng.uniform() * 5.0, rng.uniform() * 5.0, 0.8};
        const auto la = link_angles(e, d);
        const double expect = 2.2 / la.distance;
        CHECK(la.cos_phi == doctest::Approx(expect).epsilon(1e-12));
        CHECK(la.cos_theta == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("coincident endpoints are an error") {
    Emitter e{{1.0, 1.0, 1.0}};
    Detector d;
    d.position = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(link_angles(e, d), ConfigError);
}

TEST_CASE("room height constraints are validated") {
    RoomConfig bad;
    bad.rx_height = 3.2;
    bad.tx_height = 3.0;
    CHECK_THROWS_AS(validate_room(bad), ConfigError);
}
