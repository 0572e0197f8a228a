#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/rng.hpp"
#include "core/simulation.hpp"

using namespace vlcgsm;

namespace {

constexpr double kDeg = 3.141592653589793238462643383279502884 / 180.0;

struct Table1System {
    Matrix h;
    SignalSet set;
};

// GSM(4,2,2) on the natural 2x2 LED grid with the Table-1 room
Table1System table1_gsm422() {
    const auto lamb = make_lambertian(60.0 * kDeg);
    std::vector<Emitter> tx;
    for (double y : {2.2, 2.8})
        for (double x : {2.2, 2.8}) tx.push_back(Emitter{{x, y, 3.0}});
    std::vector<Detector> rx;
    for (double y : {2.45, 2.55})
        for (double x : {2.45, 2.55}) {
            Detector d;
            d.position = {x, y, 0.8};
            d.fov = 85.0 * kDeg;
            rx.push_back(d);
        }
    Table1System out;
    out.h = build_channel(tx, rx, lamb);
    SchemeConfig cfg;
    cfg.kind = SchemeKind::GSM;
    cfg.n_tx = 4;
    cfg.n_active = 2;
    cfg.levels = 2;
    cfg.policy = PatternPolicy::Optimized;
    out.set = build_signal_set(cfg, select_patterns(cfg, &out.h));
    return out;
}

// scalar two-point system with known distance
struct TwoPoint {
    Matrix h{1, 1};
    SignalSet set;
    TwoPoint(double a, double b) {
        h(0, 0) = 1.0;
        set.n_tx = 1;
        set.n_active = 1;
        set.eta = 1;
        set.index_bits = 0;
        set.sym_bits = 1;
        set.alphabet = intensity_levels(2, (a + b) / 2.0);
        set.patterns = {{0}};
        set.x = {a, b};
    }
};

}  // namespace

TEST_CASE("sigma calibration in a unit scalar system") {
    TwoPoint sys(1.0, 1.0);  // both symbols at power 1
    CHECK(calibrate_sigma(sys.h, sys.set, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(calibrate_sigma(sys.h, sys.set, 1.0, 20.0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("calibration matches direct averaging over the 16-vector GSM set") {
    const auto sys = table1_gsm422();
    // frozen from an independent implementation
    CHECK(received_power_sq(sys.h, sys.set) ==
          doctest::Approx(1.5726741920781812e-10).epsilon(1e-9));
    CHECK(calibrate_sigma(sys.h, sys.set, 0.75, 60.0) ==
          doctest::Approx(9.405473050538058e-09).epsilon(1e-9));
    // in-test oracle: average (H_i x)^2 over all vectors and branches
    double acc = 0.0;
    for (std::size_t k = 0; k < sys.set.cardinality(); ++k)
        for (std::size_t i = 0; i < 4; ++i) {
            double hx = 0.0;
            for (std::size_t j = 0; j < 4; ++j) hx += sys.h(i, j) * sys.set.vector_at(k)[j];
            acc += hx * hx;
        }
    acc /= 16.0 * 4.0;
    CHECK(received_power_sq(sys.h, sys.set) == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("all-zero channel cannot be calibrated") {
    TwoPoint sys(1.0, 2.0);
    sys.h(0, 0) = 0.0;
    CHECK_THROWS_AS(calibrate_sigma(sys.h, sys.set, 1.0, 10.0), ConfigError);
}

TEST_CASE("noise-free regime produces zero errors and a low-confidence flag") {
    const auto sys = table1_gsm422();
    const double sigma = calibrate_sigma(sys.h, sys.set, 0.75, 200.0);
    StoppingRule rule{400, 100000, 10000};
    const auto pt = simulate_point(sys.h, sys.set, 0.75, sigma, 200.0, 0.0, rule, 1, 0, 2);
    CHECK(pt.bit_errors == 0);
    CHECK(pt.ber_sim == 0.0);
    CHECK(pt.low_confidence);
    CHECK(pt.bits_simulated == 100000 * 4);
}

TEST_CASE("two-point system matches the closed-form error rate") {
    TwoPoint sys(0.8, 1.2);
    const double r = 0.75;
    const double dist = r * std::abs(1.2 - 0.8);  // |r H (x2-x1)|
    const double sigma = dist / (2.0 * 2.878);    // Q(2.878) ~ 2e-3
    const double p = 0.5 * std::erfc(dist / (2.0 * sigma) / std::sqrt(2.0));
    StoppingRule rule{400, 10000000, 10000};
    const auto pt = simulate_point(sys.h, sys.set, r, sigma, 0.0, p, rule, 7, 0, 2);
    CHECK(!pt.low_confidence);
    const double se = std::sqrt(p * (1.0 - p) / (pt.bits_simulated));
    CHECK(std::abs(pt.ber_sim - p) <= 3.0 * se);
}

TEST_CASE("results are a pure function of seed and independent of thread count") {
    const auto sys = table1_gsm422();
    const double sigma = calibrate_sigma(sys.h, sys.set, 0.75, 46.0);
    StoppingRule rule{400, 2000000, 10000};
    const auto a = simulate_point(sys.h, sys.set, 0.75, sigma, 46.0, 0.0, rule, 42, 3, 1);
    const auto b = simulate_point(sys.h, sys.set, 0.75, sigma, 46.0, 0.0, rule, 42, 3, 2);
    const auto c = simulate_point(sys.h, sys.set, 0.75, sigma, 46.0, 0.0, rule, 42, 3, 7);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.bits_simulated == b.bits_simulated);
    CHECK(a.bit_errors == c.bit_errors);
    CHECK(a.bits_simulated == c.bits_simulated);
    const auto d = simulate_point(sys.h, sys.set, 0.75, sigma, 46.0, 0.0, rule, 43, 3, 2);
    CHECK(d.bit_errors != a.bit_errors);  // different seed, different stream
}

TEST_CASE("simulated BER is nonincreasing in SNR and respects the bound") {
    const auto sys = table1_gsm422();
    const BoundEvaluator bound(sys.h, sys.set);
    StoppingRule rule{3000, 4000000, 10000};
    const std::vector<double> snrs = {40.0, 44.0, 48.0};
    const auto pts = run_sweep(sys.h, sys.set, 0.75, snrs, rule, 5, 2);
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        CHECK(pts[i + 1].ber_sim <= pts[i].ber_sim * 1.05);
    for (const auto& p : pts) {
        CHECK(p.snr_db == snrs[&p - pts.data()]);
        if (p.bit_errors >= 100) {
            const double se = std::sqrt(p.ber_sim / p.bits_simulated);
            CHECK(p.ber_sim - 1.96 * se <= p.ber_bound);
        }
    }
}

TEST_CASE("empty SNR grid is rejected, single point passes through") {
    const auto sys = table1_gsm422();
    StoppingRule rule{100, 100000, 10000};
    CHECK_THROWS_AS(run_sweep(sys.h, sys.set, 0.75, {}, rule, 1, 1), ConfigError);
    const auto pts = run_sweep(sys.h, sys.set, 0.75, {35.0}, rule, 1, 1);
    CHECK(pts.size() == 1);
    CHECK(pts[0].snr_db == 35.0);
    CHECK(pts[0].ber_sim == doctest::Approx(static_cast<double>(pts[0].bit_errors) /
                                            pts[0].bits_simulated));
}

TEST_CASE("transmit energy bookkeeping converges to r^2 P_r^2") {
    const auto sys = table1_gsm422();
    const double r = 0.75;
    const double target = r * r * received_power_sq(sys.h, sys.set);
    MlDetector det(sys.h, sys.set, r);
    RandomStream rng(derive_stream(99, 0, 0));
    double acc = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) {
        const std::size_t k = rng.bits() & 15;
        const double* img = det.image(k);
        for (int i = 0; i < 4; ++i) acc += img[i] * img[i];
    }
    acc /= 4.0 * n;
    CHECK(std::abs(acc - target) / target < 0.01);
}
