#include <doctest.h>

#include <cmath>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

using namespace vlcgsm;

namespace {
constexpr double kDeg = 3.141592653589793238462643383279502884 / 180.0;

Emitter led_at(double x, double y) { return Emitter{{x, y, 3.0}}; }

Detector pd_at(double x, double y, double fov_deg = 85.0) {
    Detector d;
    d.position = {x, y, 0.8};
    d.fov = fov_deg * kDeg;
    return d;
}
}  // namespace

TEST_CASE("mode number from the half-power semiangle") {
    CHECK(mode_number(60.0 * kDeg) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mode_number(45.0 * kDeg) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mode_number(89.9 * kDeg) < 0.01);
    CHECK_THROWS_AS(mode_number(0.0), ConfigError);
    CHECK_THROWS_AS(mode_number(120.0 * kDeg), ConfigError);
}

TEST_CASE("coaxial LOS gain matches the hand-evaluated value") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    const double h = los_gain(led_at(2.5, 2.5), pd_at(2.5, 2.5), lamb);
    CHECK(h == doctest::Approx(6.57665054098741e-06).epsilon(1e-9));
    CHECK(h == doctest::Approx(6.575e-06).epsilon(1e-3));
}

TEST_CASE("incidence beyond the field of view yields zero gain") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    // horizontal offset for an 88-degree incidence angle at dz = 2.2
    const double off = 2.2 * std::tan(88.0 * kDeg);
    CHECK(los_gain(led_at(2.5 + off, 2.5), pd_at(2.5, 2.5, 85.0), lamb) == 0.0);
    CHECK(los_gain(led_at(2.5 + off, 2.5), pd_at(2.5, 2.5, 89.0), lamb) > 0.0);
}

TEST_CASE("inverse-square law on the coaxial link") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    Detector d = pd_at(2.5, 2.5);
    Emitter near = led_at(2.5, 2.5);
    Emitter far = near;
    far.position.z = 0.8 + 2.0 * 2.2;
    const double h1 = los_gain(near, d, lamb);
    const double h2 = los_gain(far, d, lamb);
    CHECK(std::abs(h1 / h2 - 4.0) <= 1e-12);
}

TEST_CASE("gain decreases monotonically with distance on the coaxial link") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    Detector d = pd_at(2.5, 2.5);
    RandomStream rng(7);
    for (int t = 0; t < 50; ++t) {
        const double z1 = 1.0 + 3.0 * rng.uniform();
        const double z2 = z1 + 0.01 + rng.uniform();
        Emitter a = led_at(2.5, 2.5);
        a.position.z = 0.8 + z1;
        Emitter b = a;
        b.position.z = 0.8 + z2;
        CHECK(los_gain(a, d, lamb) > los_gain(b, d, lamb));
    }
}

TEST_CASE("narrower semiangle boosts the on-axis gain") {
    Detector d = pd_at(2.5, 2.5);
    Emitter e = led_at(2.5, 2.5);
    double prev = 0.0;
    for (double phi = 80.0; phi >= 10.0; phi -= 10.0) {
        const double h = los_gain(e, d, make_lambertian(phi * kDeg));
        CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("detector behind the emitter plane clamps to zero") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    Detector d = pd_at(2.5, 2.5);
    d.position.z = 3.5;  // above the LED plane
    CHECK(los_gain(led_at(2.5, 2.5), d, lamb) == 0.0);
}

TEST_CASE("channel matrix for the Table-1 4-LED / 4-PD layout") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    std::vector<Emitter> tx;
    for (double y : {2.2, 2.8})
        for (double x : {2.2, 2.8}) tx.push_back(led_at(x, y));
    std::vector<Detector> rx;
    for (double y : {2.45, 2.55})
        for (double x : {2.45, 2.55}) rx.push_back(pd_at(x, y));
    const Matrix h = build_channel(tx, rx, lamb);
    REQUIRE(h.rows == 4);
    REQUIRE(h.cols == 4);
    for (double v : h.a) {
        CHECK(v > 1e-7);
        CHECK(v < 1e-5);
    }
    // frozen from an independent implementation of Eq. 2
    CHECK(h(0, 0) == doctest::Approx(6.249668522070e-06).epsilon(1e-9));
    CHECK(h(0, 1) == doctest::Approx(6.101313726411e-06).epsilon(1e-9));
    CHECK(h(0, 3) == doctest::Approx(5.958179383633e-06).epsilon(1e-9));
    // bisymmetric structure of the centered layout
    CHECK(h(0, 0) == h(3, 3));
    CHECK(h(1, 2) == h(2, 1));
}

TEST_CASE("channel invariant under a joint quarter-turn about the room axis") {
    // exactly representable coordinates so the rotated geometry is bit-identical
    const auto lamb = make_lambertian(60.0 * kDeg);
    std::vector<Emitter> tx, tx_rot;
    std::vector<Detector> rx, rx_rot;
    const double c = 2.5;
    const double led[][2] = {{1.5, 2.0}, {3.0, 2.25}, {2.5, 3.25}};
    const double pd[][2] = {{2.25, 2.25}, {2.75, 2.25}, {2.25, 2.75}, {2.75, 2.75}};
    for (auto& p : led) {
        tx.push_back(led_at(p[0], p[1]));
        tx_rot.push_back(led_at(c + (p[1] - c), c - (p[0] - c)));
    }
    for (auto& p : pd) {
        rx.push_back(pd_at(p[0], p[1]));
        rx_rot.push_back(pd_at(c + (p[1] - c), c - (p[0] - c)));
    }
    const Matrix a = build_channel(tx, rx, lamb);
    const Matrix b = build_channel(tx_rot, rx_rot, lamb);
    for (std::size_t i = 0; i < a.a.size(); ++i) CHECK(a.a[i] == b.a[i]);
}

TEST_CASE("tiny field of view zeroes every off-axis entry") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    std::vector<Emitter> tx = {led_at(1.6, 1.6), led_at(3.4, 3.4)};
    std::vector<Detector> rx = {pd_at(2.45, 2.45, 0.5), pd_at(2.55, 2.55, 0.5)};
    const Matrix h = build_channel(tx, rx, lamb);
    for (double v : h.a) CHECK(v == 0.0);
}

TEST_CASE("empty emitter or detector lists are rejected") {
    const auto lamb = make_lambertian(60.0 * kDeg);
    std::vector<Emitter> tx = {led_at(2.5, 2.5)};
    std::vector<Detector> rx;
    CHECK_THROWS_AS(build_channel(tx, rx, lamb), ConfigError);
    CHECK_THROWS_AS(build_channel({}, {pd_at(2.5, 2.5)}, lamb), ConfigError);
}
