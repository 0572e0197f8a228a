#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "channel.hpp"
#include "geometry.hpp"
#include "modulation.hpp"
#include "placement.hpp"
#include "simulation.hpp"

namespace vlcgsm {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class PlacementMode { Auto, Full, Explicit };
enum class SweepKind { SnrOnly, TxSpacing, HalfPowerSemiangle };

struct ExperimentConfig {
    std::string label;  // empty: derived from the scheme
    RoomConfig room;

    std::size_t tx_rows = 4, tx_cols = 4;
    double tx_spacing = 0.6;
    double phi_half_deg = 60.0;
    double tx_azimuth_deg = 0.0;    // accepted, ignored (circular-symmetric lobe)
    double tx_elevation_deg = -90.0;
    PlacementMode placement = PlacementMode::Auto;
    std::vector<int> explicit_cells;  // 0-based, used when placement == Explicit

    std::size_t rx_rows = 2, rx_cols = 2;
    double rx_spacing = 0.1;
    double rx_area = 1e-4;
    double rx_fov_deg = 85.0;
    double responsivity = 0.75;
    double rx_azimuth_deg = 0.0;
    double rx_elevation_deg = 90.0;

    SchemeConfig scheme;

    SweepKind sweep_kind = SweepKind::SnrOnly;
    std::vector<double> sweep_values;  // d_tx [m] or half-power semiangle [deg]
    std::vector<double> snr_db;

    std::uint64_t seed = 42;
    StoppingRule rule;

    std::string out_dir = "out";

    std::string effective_label() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
ojson config_to_json(const ExperimentConfig& cfg);

struct ResolvedExperiment {
    ExperimentConfig cfg;  // placement and patterns pinned explicitly
    std::vector<Emitter> cell_pool;
    std::vector<Emitter> tx;
    std::vector<Detector> rx;
    LambertianParams lamb;
    std::vector<Pattern> patterns;
    SignalSet set;
    Matrix h;
    int eta = 0;
};

// Applies defaults and resolves auto placement / pattern selection against the
// base geometry. Parameter sweeps keep the resolved placement, family and
// noise calibration fixed while geometry is rebuilt per value.
ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg, int threads = 0);

std::string channel_csv(const ResolvedExperiment& ex);
std::string metrics_csv(const ResolvedExperiment& ex);
std::string bound_csv(const ResolvedExperiment& ex);

struct SimOutput {
    std::string csv;
    bool low_confidence = false;
};
SimOutput simulate_csv(const ResolvedExperiment& ex, int threads = 0);
SimOutput compare_csv(const std::vector<ResolvedExperiment>& exs,
                      bool allow_eta_mismatch, int threads = 0);

struct PlacementReport {
    std::string art;       // grid picture of the best placement
    std::string topk_csv;  // rank,cells,d_min,d_avg
};
PlacementReport placement_report(const ExperimentConfig& cfg, int top_k = 10,
                                 int threads = 0);

std::vector<std::string> preset_names();

struct PresetOutput {
    std::vector<std::pair<std::string, std::string>> files;  // name -> bytes
    ojson manifest;
    bool low_confidence = false;
};
// Emits one CSV per curve named <preset>_<label>.csv plus a manifest with the
// fully resolved configs and per-output checksums.
PresetOutput run_preset(const std::string& name, std::optional<std::uint64_t> seed,
                        int threads = 0);

std::uint64_t fnv1a64(const std::string& bytes);
std::string format_full(double v);  // full-precision scientific, dot decimal

}  // namespace vlcgsm
