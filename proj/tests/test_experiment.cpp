#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/experiment.hpp"

using namespace vlcgsm;

namespace {

// tiny fast system: 1x2 LED line, single detector, eta = 1
std::string tiny_config(int seed = 42) {
    std::ostringstream ss;
    ss << R"({
      "scheme": {"kind": "ssk", "n_tx": 2},
      "transmitter": {"rows": 1, "cols": 2, "spacing": 0.6, "placement": "full"},
      "receiver": {"rows": 1, "cols": 1},
      "sweep": {"snr_db": [30, 40]},
      "sim": {"seed": )"
       << seed << R"(, "min_bit_errors": 200, "max_channel_uses": 400000}
    })";
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("empty document reports the missing scheme section") {
    try {
        parse_config("");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("scheme") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with a field path") {
    try {
        parse_config(R"({"scheme": {"kind": "ssk", "n_tx": 2}, "room": {"depth": 3}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("room.depth") != std::string::npos);
    }
}

TEST_CASE("out-of-range semiangle names the transmitter field") {
    const std::string text = R"({
      "scheme": {"kind": "ssk", "n_tx": 2},
      "transmitter": {"half_power_semiangle_deg": 120}
    })";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("transmitter.half_power_semiangle_deg") !=
              std::string::npos);
    }
}

TEST_CASE("tilted arrays are rejected, azimuth is accepted and ignored") {
    CHECK_THROWS_AS(parse_config(R"({"scheme": {"kind": "ssk", "n_tx": 2},
                                     "transmitter": {"elevation_deg": -45}})"),
                    ConfigError);
    const auto cfg = parse_config(R"({"scheme": {"kind": "ssk", "n_tx": 2},
                                      "receiver": {"azimuth_deg": 123}})");
    CHECK(cfg.rx_azimuth_deg == 123.0);
}

TEST_CASE("Example-2 configuration reports 8 bpcu") {
    const auto cfg = parse_config(R"({
      "scheme": {"kind": "gsm", "n_tx": 7, "n_active": 2, "levels": 4,
                 "pattern_policy": "lexicographic"},
      "transmitter": {"placement": [1, 2, 3, 4, 5, 6, 7]}
    })");
    const auto ex = resolve_experiment(cfg, 2);
    CHECK(ex.eta == 8);
    CHECK(ex.set.cardinality() == 256);
}

TEST_CASE("defaults reproduce the Table-1 room and arrays") {
    const auto cfg = parse_config(R"({"scheme": {"kind": "ssk", "n_tx": 2},
                                      "transmitter": {"rows": 1, "cols": 2, "placement": "full"}})");
    CHECK(cfg.room.length == 5.0);
    CHECK(cfg.room.height == 3.5);
    CHECK(cfg.room.tx_height == 3.0);
    CHECK(cfg.room.rx_height == 0.8);
    CHECK(cfg.phi_half_deg == 60.0);
    CHECK(cfg.rx_fov_deg == 85.0);
    CHECK(cfg.responsivity == 0.75);
    CHECK(cfg.rx_spacing == 0.1);
    CHECK(cfg.rx_area == 1e-4);
    CHECK(cfg.seed == 42);
    CHECK(cfg.rule.min_bit_errors == 400);
    CHECK(cfg.rule.max_channel_uses == 20000000);
}

TEST_CASE("config round-trips through JSON") {
    const std::string text = R"({
      "label": "paper_example_1",
      "scheme": {"kind": "gsm", "n_tx": 4, "n_active": 2, "levels": 2,
                 "pattern_policy": "explicit",
                 "patterns": [[1,2],[1,3],[2,4],[3,4]]},
      "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
      "sweep": {"snr_db": [40, 50]},
      "sim": {"seed": 7}
    })";
    const auto a = parse_config(text);
    const auto b = parse_config(config_to_json(a).dump());
    CHECK(config_to_json(a) == config_to_json(b));
    CHECK(b.scheme.explicit_patterns.size() == 4);
    CHECK(b.scheme.explicit_patterns[2] == Pattern{1, 3});
    CHECK(b.label == "paper_example_1");
}

TEST_CASE("simulate CSV has the documented header and one row per grid point") {
    const auto ex = resolve_experiment(parse_config(tiny_config()), 2);
    const auto sim = simulate_csv(ex, 2);
    CHECK(sim.csv.rfind("snr_db,bits,bit_errors,ber_sim,ber_bound,low_confidence\n", 0) == 0);
    CHECK(count_lines(sim.csv) == 1 + 2);
}

TEST_CASE("manifest replay: resolved config reproduces byte-identical CSV") {
    const auto ex1 = resolve_experiment(parse_config(tiny_config()), 2);
    const auto sim1 = simulate_csv(ex1, 2);
    // replay from the pinned resolved config, wrapped the way manifests store it
    ojson doc;
    doc["resolved_config"] = config_to_json(ex1.cfg);
    const auto ex2 = resolve_experiment(parse_config(doc.dump()), 1);
    const auto sim2 = simulate_csv(ex2, 1);
    CHECK(sim1.csv == sim2.csv);
}

TEST_CASE("channel and metrics CSV surfaces") {
    const auto ex = resolve_experiment(parse_config(tiny_config()), 2);
    const auto ch = channel_csv(ex);
    CHECK(count_lines(ch) == 1);  // one detector row
    const auto me = metrics_csv(ex);
    CHECK(me.rfind("cardinality,eta_bpcu,d_min,d_avg\n", 0) == 0);
    CHECK(me.find("2,1,") != std::string::npos);
    const auto bo = bound_csv(ex);
    CHECK(count_lines(bo) == 1 + 2);
}

TEST_CASE("compare: identical configs with a shared seed give identical columns") {
    const auto ex1 = resolve_experiment(parse_config(tiny_config()), 2);
    const auto ex2 = resolve_experiment(parse_config(tiny_config()), 2);
    const auto out = compare_csv({ex1, ex2}, false, 2);
    std::istringstream ss(out.csv);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        REQUIRE(cols.size() == 5);
        CHECK(cols[1] == cols[3]);  // ber_sim columns match
        CHECK(cols[2] == cols[4]);  // ber_bound columns match
    }
}

TEST_CASE("compare rejects mismatched efficiencies unless overridden") {
    const auto ex1 = resolve_experiment(parse_config(tiny_config()), 2);
    const auto cfg4 = parse_config(R"({
      "scheme": {"kind": "ssk", "n_tx": 4},
      "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
      "receiver": {"rows": 1, "cols": 1},
      "sweep": {"snr_db": [30, 40]},
      "sim": {"min_bit_errors": 100, "max_channel_uses": 200000}
    })");
    const auto ex2 = resolve_experiment(cfg4, 2);
    try {
        compare_csv({ex1, ex2}, false, 2);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ssk_nt2") != std::string::npos);
        CHECK(msg.find("ssk_nt4") != std::string::npos);
    }
    CHECK_NOTHROW(compare_csv({ex1, ex2}, true, 2));
}

TEST_CASE("parameter sweep emits error rows for impossible geometry") {
    const auto cfg = parse_config(R"({
      "scheme": {"kind": "gsm", "n_tx": 4, "n_active": 2, "levels": 2,
                 "pattern_policy": "lexicographic"},
      "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
      "sweep": {"parameter": "d_tx", "values": [0.6, 6.0], "snr_db": [40]},
      "sim": {"min_bit_errors": 100, "max_channel_uses": 200000}
    })");
    const auto ex = resolve_experiment(cfg, 2);
    const auto sim = simulate_csv(ex, 2);
    CHECK(sim.csv.rfind("d_tx_m,snr_db,", 0) == 0);
    CHECK(count_lines(sim.csv) == 1 + 2);
    std::istringstream ss(sim.csv);
    std::string header, good, bad;
    std::getline(ss, header);
    std::getline(ss, good);
    std::getline(ss, bad);
    CHECK(good.back() == ',');  // good rows carry an empty error field
    CHECK(bad.find("exceeds the room footprint") != std::string::npos);
}

TEST_CASE("sweep values without a parameter are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"scheme": {"kind": "ssk", "n_tx": 2},
                                     "sweep": {"values": [1, 2], "snr_db": [10]}})"),
                    ConfigError);
}

TEST_CASE("missing config file is a config error") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("preset catalogue") {
    const auto names = preset_names();
    CHECK(names.size() == 8);
    CHECK(std::find(names.begin(), names.end(), "table2") != names.end());
    CHECK(std::find(names.begin(), names.end(), "fig12") != names.end());
    CHECK_THROWS_AS(run_preset("fig99", std::nullopt, 2), ConfigError);
}

TEST_CASE("full-precision formatting and checksums are stable") {
    CHECK(format_full(1.0) == "1.0000000000000000e+00");
    CHECK(format_full(6.575e-06) == "6.5749999999999996e-06");
    CHECK(fnv1a64("vlcgsm") == fnv1a64("vlcgsm"));
    CHECK(fnv1a64("a") != fnv1a64("b"));
}
