#include "experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "detection.hpp"
#include "errors.hpp"

namespace vlcgsm {

namespace {

constexpr double kDegToRad = 3.141592653589793238462643383279502884 / 180.0;

void check_keys(const ojson& o, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!o.is_object())
        throw ConfigError("section '" + section + "' must be an object");
    for (const auto& [key, _] : o.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
}

double num_or(const ojson& o, const char* key, double def, const std::string& path) {
    if (!o.contains(key)) return def;
    if (!o[key].is_number()) throw ConfigError("field " + path + "." + key + " must be a number");
    return o[key].get<double>();
}

std::int64_t int_or(const ojson& o, const char* key, std::int64_t def, const std::string& path) {
    if (!o.contains(key)) return def;
    if (!o[key].is_number_integer())
        throw ConfigError("field " + path + "." + key + " must be an integer");
    return o[key].get<std::int64_t>();
}

std::vector<double> num_list(const ojson& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError("field " + path + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("field " + path + " must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

void require_positive(double v, const std::string& path) {
    if (!(v > 0.0)) throw ConfigError("field " + path + " must be positive");
}

}  // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string ExperimentConfig::effective_label() const {
    if (!label.empty()) return label;
    std::string s = to_string(scheme.kind);
    s += "_nt" + std::to_string(scheme.n_tx);
    if (scheme.kind == SchemeKind::GSM || scheme.kind == SchemeKind::GSSK)
        s += "_na" + std::to_string(scheme.n_active);
    if (scheme.levels > 1) s += "_m" + std::to_string(scheme.levels);
    return s;
}

ExperimentConfig parse_config(const std::string& json_text) {
    std::string trimmed = json_text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    ojson root;
    if (trimmed.empty()) {
        root = ojson::object();
    } else {
        try {
            root = ojson::parse(json_text);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    // manifest replay: a document with "resolved_config" is unwrapped
    if (root.is_object() && root.contains("resolved_config"))
        root = root["resolved_config"];

    check_keys(root, "config",
               {"label", "room", "transmitter", "receiver", "scheme", "sweep", "sim", "output"});
    ExperimentConfig cfg;
    if (root.contains("label")) {
        if (!root["label"].is_string()) throw ConfigError("field label must be a string");
        cfg.label = root["label"].get<std::string>();
    }

    const ojson room = root.value("room", ojson::object());
    check_keys(room, "room", {"length", "width", "height", "tx_height", "rx_height"});
    cfg.room.length = num_or(room, "length", 5.0, "room");
    cfg.room.width = num_or(room, "width", 5.0, "room");
    cfg.room.height = num_or(room, "height", 3.5, "room");
    cfg.room.tx_height = num_or(room, "tx_height", 3.0, "room");
    cfg.room.rx_height = num_or(room, "rx_height", 0.8, "room");
    validate_room(cfg.room);

    const ojson tx = root.value("transmitter", ojson::object());
    check_keys(tx, "transmitter",
               {"rows", "cols", "spacing", "half_power_semiangle_deg", "azimuth_deg",
                "elevation_deg", "placement"});
    cfg.tx_rows = static_cast<std::size_t>(int_or(tx, "rows", 4, "transmitter"));
    cfg.tx_cols = static_cast<std::size_t>(int_or(tx, "cols", 4, "transmitter"));
    cfg.tx_spacing = num_or(tx, "spacing", 0.6, "transmitter");
    cfg.phi_half_deg = num_or(tx, "half_power_semiangle_deg", 60.0, "transmitter");
    cfg.tx_azimuth_deg = num_or(tx, "azimuth_deg", 0.0, "transmitter");
    cfg.tx_elevation_deg = num_or(tx, "elevation_deg", -90.0, "transmitter");
    if (cfg.tx_rows < 1 || cfg.tx_cols < 1)
        throw ConfigError("field transmitter.rows/cols must be >= 1");
    require_positive(cfg.tx_spacing, "transmitter.spacing");
    if (!(cfg.phi_half_deg > 0.0) || !(cfg.phi_half_deg < 90.0))
        throw ConfigError("field transmitter.half_power_semiangle_deg must lie in (0, 90)");
    if (std::abs(cfg.tx_elevation_deg + 90.0) > 1e-9)
        throw ConfigError("field transmitter.elevation_deg must be -90 (horizontal arrays only)");
    if (tx.contains("placement")) {
        const auto& p = tx["placement"];
        if (p.is_string()) {
            const std::string s = p.get<std::string>();
            if (s == "auto") cfg.placement = PlacementMode::Auto;
            else if (s == "full") cfg.placement = PlacementMode::Full;
            else throw ConfigError("field transmitter.placement must be 'auto', 'full' or a cell list");
        } else if (p.is_array()) {
            cfg.placement = PlacementMode::Explicit;
            for (const auto& e : p) {
                if (!e.is_number_integer())
                    throw ConfigError("field transmitter.placement must list 1-based cell indices");
                cfg.explicit_cells.push_back(e.get<int>() - 1);
            }
        } else {
            throw ConfigError("field transmitter.placement must be 'auto', 'full' or a cell list");
        }
    }

    const ojson rx = root.value("receiver", ojson::object());
    check_keys(rx, "receiver",
               {"rows", "cols", "spacing", "area_m2", "fov_deg", "responsivity_a_per_w",
                "azimuth_deg", "elevation_deg"});
    cfg.rx_rows = static_cast<std::size_t>(int_or(rx, "rows", 2, "receiver"));
    cfg.rx_cols = static_cast<std::size_t>(int_or(rx, "cols", 2, "receiver"));
    cfg.rx_spacing = num_or(rx, "spacing", 0.1, "receiver");
    cfg.rx_area = num_or(rx, "area_m2", 1e-4, "receiver");
    cfg.rx_fov_deg = num_or(rx, "fov_deg", 85.0, "receiver");
    cfg.responsivity = num_or(rx, "responsivity_a_per_w", 0.75, "receiver");
    cfg.rx_azimuth_deg = num_or(rx, "azimuth_deg", 0.0, "receiver");
    cfg.rx_elevation_deg = num_or(rx, "elevation_deg", 90.0, "receiver");
    if (cfg.rx_rows < 1 || cfg.rx_cols < 1)
        throw ConfigError("field receiver.rows/cols must be >= 1");
    require_positive(cfg.rx_spacing, "receiver.spacing");
    require_positive(cfg.rx_area, "receiver.area_m2");
    require_positive(cfg.responsivity, "receiver.responsivity_a_per_w");
    if (!(cfg.rx_fov_deg > 0.0) || cfg.rx_fov_deg > 90.0)
        throw ConfigError("field receiver.fov_deg must lie in (0, 90]");
    if (std::abs(cfg.rx_elevation_deg - 90.0) > 1e-9)
        throw ConfigError("field receiver.elevation_deg must be 90 (horizontal arrays only)");

    if (!root.contains("scheme"))
        throw ConfigError("scheme section is required");
    const ojson sc = root["scheme"];
    check_keys(sc, "scheme",
               {"kind", "n_tx", "n_active", "levels", "mean_power_w", "pattern_policy",
                "patterns", "index_bits"});
    if (!sc.contains("kind") || !sc["kind"].is_string())
        throw ConfigError("field scheme.kind is required");
    cfg.scheme.kind = scheme_kind_from_string(sc["kind"].get<std::string>());
    cfg.scheme.n_tx = static_cast<int>(int_or(sc, "n_tx", 0, "scheme"));
    if (cfg.scheme.n_tx < 1) throw ConfigError("field scheme.n_tx is required and must be >= 1");
    int na_def = -1;
    if (cfg.scheme.kind == SchemeKind::SM || cfg.scheme.kind == SchemeKind::SSK) na_def = 1;
    if (cfg.scheme.kind == SchemeKind::SMP) na_def = cfg.scheme.n_tx;
    cfg.scheme.n_active = static_cast<int>(int_or(sc, "n_active", na_def, "scheme"));
    if (cfg.scheme.n_active < 0)
        throw ConfigError("field scheme.n_active is required for gsm/gssk");
    int lev_def = (cfg.scheme.kind == SchemeKind::SSK || cfg.scheme.kind == SchemeKind::GSSK)
                      ? 1 : -1;
    cfg.scheme.levels = static_cast<int>(int_or(sc, "levels", lev_def, "scheme"));
    if (cfg.scheme.levels < 0)
        throw ConfigError("field scheme.levels is required for gsm/sm/smp");
    cfg.scheme.mean_power = num_or(sc, "mean_power_w", 1.0, "scheme");
    cfg.scheme.index_bits_override = static_cast<int>(int_or(sc, "index_bits", -1, "scheme"));
    std::string policy = "optimized";
    if (sc.contains("pattern_policy")) {
        if (!sc["pattern_policy"].is_string())
            throw ConfigError("field scheme.pattern_policy must be a string");
        policy = sc["pattern_policy"].get<std::string>();
    }
    if (policy == "optimized") cfg.scheme.policy = PatternPolicy::Optimized;
    else if (policy == "lexicographic") cfg.scheme.policy = PatternPolicy::Lexicographic;
    else if (policy == "explicit") cfg.scheme.policy = PatternPolicy::Explicit;
    else throw ConfigError("field scheme.pattern_policy must be optimized|lexicographic|explicit");
    if (cfg.scheme.policy == PatternPolicy::Explicit) {
        if (!sc.contains("patterns") || !sc["patterns"].is_array())
            throw ConfigError("field scheme.patterns is required for the explicit policy");
        for (const auto& pv : sc["patterns"]) {
            if (!pv.is_array()) throw ConfigError("field scheme.patterns must be a list of lists");
            Pattern p;
            for (const auto& e : pv) {
                if (!e.is_number_integer())
                    throw ConfigError("field scheme.patterns must contain 1-based LED indices");
                p.push_back(e.get<int>() - 1);
            }
            cfg.scheme.explicit_patterns.push_back(std::move(p));
        }
        const unsigned n = static_cast<unsigned>(cfg.scheme.explicit_patterns.size());
        if (n == 0 || (n & (n - 1)) != 0)
            throw ConfigError("field scheme.patterns must contain a power-of-two count");
        if (cfg.scheme.index_bits_override < 0)
            cfg.scheme.index_bits_override = std::bit_width(n) - 1;
    } else if (sc.contains("patterns")) {
        throw ConfigError("field scheme.patterns is only valid with the explicit policy");
    }
    validate_scheme(cfg.scheme);

    const ojson sw = root.value("sweep", ojson::object());
    check_keys(sw, "sweep", {"parameter", "values", "snr_db"});
    if (sw.contains("snr_db")) cfg.snr_db = num_list(sw["snr_db"], "sweep.snr_db");
    if (sw.contains("parameter")) {
        if (!sw["parameter"].is_string())
            throw ConfigError("field sweep.parameter must be a string");
        const std::string p = sw["parameter"].get<std::string>();
        if (p == "d_tx") cfg.sweep_kind = SweepKind::TxSpacing;
        else if (p == "half_power_semiangle_deg") cfg.sweep_kind = SweepKind::HalfPowerSemiangle;
        else throw ConfigError("field sweep.parameter must be d_tx or half_power_semiangle_deg");
        if (!sw.contains("values"))
            throw ConfigError("field sweep.values is required for a parameter sweep");
        cfg.sweep_values = num_list(sw["values"], "sweep.values");
        if (cfg.sweep_values.empty()) throw ConfigError("field sweep.values must be nonempty");
    } else if (sw.contains("values")) {
        throw ConfigError("field sweep.values requires sweep.parameter");
    }

    const ojson sim = root.value("sim", ojson::object());
    check_keys(sim, "sim", {"seed", "min_bit_errors", "max_channel_uses", "batch_size"});
    cfg.seed = static_cast<std::uint64_t>(int_or(sim, "seed", 42, "sim"));
    cfg.rule.min_bit_errors =
        static_cast<std::uint64_t>(int_or(sim, "min_bit_errors", 400, "sim"));
    cfg.rule.max_channel_uses =
        static_cast<std::uint64_t>(int_or(sim, "max_channel_uses", 20000000, "sim"));
    cfg.rule.batch_size = static_cast<std::uint64_t>(int_or(sim, "batch_size", 10000, "sim"));
    if (cfg.rule.min_bit_errors == 0 || cfg.rule.max_channel_uses == 0 ||
        cfg.rule.batch_size == 0)
        throw ConfigError("sim stopping counts must be positive");

    const ojson outp = root.value("output", ojson::object());
    check_keys(outp, "output", {"dir"});
    if (outp.contains("dir")) {
        if (!outp["dir"].is_string()) throw ConfigError("field output.dir must be a string");
        cfg.out_dir = outp["dir"].get<std::string>();
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ojson config_to_json(const ExperimentConfig& cfg) {
    ojson o;
    if (!cfg.label.empty()) o["label"] = cfg.label;
    o["room"] = {{"length", cfg.room.length},
                 {"width", cfg.room.width},
                 {"height", cfg.room.height},
                 {"tx_height", cfg.room.tx_height},
                 {"rx_height", cfg.room.rx_height}};
    ojson tx = {{"rows", cfg.tx_rows},
                {"cols", cfg.tx_cols},
                {"spacing", cfg.tx_spacing},
                {"half_power_semiangle_deg", cfg.phi_half_deg},
                {"azimuth_deg", cfg.tx_azimuth_deg},
                {"elevation_deg", cfg.tx_elevation_deg}};
    if (cfg.placement == PlacementMode::Auto) tx["placement"] = "auto";
    else if (cfg.placement == PlacementMode::Full) tx["placement"] = "full";
    else {
        ojson cells = ojson::array();
        for (int c : cfg.explicit_cells) cells.push_back(c + 1);
        tx["placement"] = cells;
    }
    o["transmitter"] = tx;
    o["receiver"] = {{"rows", cfg.rx_rows},
                     {"cols", cfg.rx_cols},
                     {"spacing", cfg.rx_spacing},
                     {"area_m2", cfg.rx_area},
                     {"fov_deg", cfg.rx_fov_deg},
                     {"responsivity_a_per_w", cfg.responsivity},
                     {"azimuth_deg", cfg.rx_azimuth_deg},
                     {"elevation_deg", cfg.rx_elevation_deg}};
    ojson sc = {{"kind", to_string(cfg.scheme.kind)},
                {"n_tx", cfg.scheme.n_tx},
                {"n_active", cfg.scheme.n_active},
                {"levels", cfg.scheme.levels},
                {"mean_power_w", cfg.scheme.mean_power}};
    switch (cfg.scheme.policy) {
        case PatternPolicy::Optimized: sc["pattern_policy"] = "optimized"; break;
        case PatternPolicy::Lexicographic: sc["pattern_policy"] = "lexicographic"; break;
        case PatternPolicy::Explicit: {
            sc["pattern_policy"] = "explicit";
            ojson pats = ojson::array();
            for (const auto& p : cfg.scheme.explicit_patterns) {
                ojson pl = ojson::array();
                for (int e : p) pl.push_back(e + 1);
                pats.push_back(pl);
            }
            sc["patterns"] = pats;
            break;
        }
    }
    if (cfg.scheme.index_bits_override >= 0) sc["index_bits"] = cfg.scheme.index_bits_override;
    o["scheme"] = sc;
    ojson sw = ojson::object();
    if (cfg.sweep_kind == SweepKind::TxSpacing) sw["parameter"] = "d_tx";
    if (cfg.sweep_kind == SweepKind::HalfPowerSemiangle)
        sw["parameter"] = "half_power_semiangle_deg";
    if (cfg.sweep_kind != SweepKind::SnrOnly) sw["values"] = cfg.sweep_values;
    sw["snr_db"] = cfg.snr_db;
    o["sweep"] = sw;
    o["sim"] = {{"seed", cfg.seed},
                {"min_bit_errors", cfg.rule.min_bit_errors},
                {"max_channel_uses", cfg.rule.max_channel_uses},
                {"batch_size", cfg.rule.batch_size}};
    o["output"] = {{"dir", cfg.out_dir}};
    return o;
}

namespace {

std::vector<Detector> build_receiver(const ExperimentConfig& cfg) {
    GridSpec spec;
    spec.rows = cfg.rx_rows;
    spec.cols = cfg.rx_cols;
    spec.spacing = cfg.rx_spacing;
    spec.center = {cfg.room.length / 2.0, cfg.room.width / 2.0, cfg.room.rx_height};
    const auto pos = grid_positions(spec, cfg.room);
    std::vector<Detector> rx;
    rx.reserve(pos.size());
    for (const auto& p : pos) {
        Detector d;
        d.position = p;
        d.area = cfg.rx_area;
        d.fov = cfg.rx_fov_deg * kDegToRad;
        d.responsivity = cfg.responsivity;
        rx.push_back(d);
    }
    return rx;
}

std::vector<Emitter> build_cell_pool(const ExperimentConfig& cfg, double spacing) {
    GridSpec spec;
    spec.rows = cfg.tx_rows;
    spec.cols = cfg.tx_cols;
    spec.spacing = spacing;
    spec.center = {cfg.room.length / 2.0, cfg.room.width / 2.0, cfg.room.tx_height};
    const auto pos = grid_positions(spec, cfg.room);
    std::vector<Emitter> tx;
    tx.reserve(pos.size());
    for (const auto& p : pos) tx.push_back(Emitter{p, {0.0, 0.0, -1.0}});
    return tx;
}

std::vector<Emitter> pick_cells(const std::vector<Emitter>& pool, const std::vector<int>& cells) {
    std::vector<Emitter> tx;
    tx.reserve(cells.size());
    for (int c : cells) tx.push_back(pool[c]);
    return tx;
}

}  // namespace

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg_in, int threads) {
    ResolvedExperiment ex;
    ex.cfg = cfg_in;
    validate_scheme(ex.cfg.scheme);
    ex.lamb = make_lambertian(ex.cfg.phi_half_deg * kDegToRad);
    ex.rx = build_receiver(ex.cfg);
    ex.cell_pool = build_cell_pool(ex.cfg, ex.cfg.tx_spacing);
    const int ncell = static_cast<int>(ex.cell_pool.size());

    std::vector<int> cells;
    bool patterns_from_optimizer = false;
    switch (ex.cfg.placement) {
        case PlacementMode::Full:
            if (ncell != ex.cfg.scheme.n_tx)
                throw ConfigError("placement 'full' needs rows*cols == n_tx");
            for (int i = 0; i < ncell; ++i) cells.push_back(i);
            break;
        case PlacementMode::Explicit: {
            cells = ex.cfg.explicit_cells;
            if (static_cast<int>(cells.size()) != ex.cfg.scheme.n_tx)
                throw ConfigError("explicit placement must list exactly n_tx cells");
            std::set<int> seen;
            for (int c : cells) {
                if (c < 0 || c >= ncell)
                    throw ConfigError("explicit placement cell index out of range");
                if (!seen.insert(c).second)
                    throw ConfigError("explicit placement repeats a cell");
            }
            std::sort(cells.begin(), cells.end());
            break;
        }
        case PlacementMode::Auto: {
            const auto res = optimize_placement(ex.cell_pool, ex.rx, ex.lamb,
                                                ex.cfg.scheme, 1, threads);
            cells = res.best.cells;
            ex.patterns = res.best_patterns;
            patterns_from_optimizer = true;
            break;
        }
    }
    ex.tx = pick_cells(ex.cell_pool, cells);
    ex.h = build_channel(ex.tx, ex.rx, ex.lamb);
    if (!patterns_from_optimizer)
        ex.patterns = select_patterns(ex.cfg.scheme, &ex.h);
    ex.set = build_signal_set(ex.cfg.scheme, ex.patterns);
    ex.eta = ex.set.eta;

    // pin everything in the stored config so a manifest replay is exact
    ex.cfg.placement = PlacementMode::Explicit;
    ex.cfg.explicit_cells = cells;
    ex.cfg.scheme.policy = PatternPolicy::Explicit;
    ex.cfg.scheme.explicit_patterns = ex.patterns;
    ex.cfg.scheme.index_bits_override = ex.set.index_bits;
    return ex;
}

std::string channel_csv(const ResolvedExperiment& ex) {
    std::string out;
    for (std::size_t i = 0; i < ex.h.rows; ++i) {
        for (std::size_t j = 0; j < ex.h.cols; ++j) {
            if (j) out += ',';
            out += format_full(ex.h(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string metrics_csv(const ResolvedExperiment& ex) {
    std::string out = "cardinality,eta_bpcu,d_min,d_avg\n";
    out += std::to_string(ex.set.cardinality());
    out += ',' + std::to_string(ex.eta);
    out += ',' + format_full(d_min(ex.h, ex.set));
    out += ',' + format_full(d_avg(ex.h, ex.set));
    out += '\n';
    return out;
}

std::string bound_csv(const ResolvedExperiment& ex) {
    if (ex.cfg.snr_db.empty()) throw ConfigError("sweep.snr_db is empty");
    const BoundEvaluator bound(ex.h, ex.set);
    std::string out = "snr_db,ber_bound\n";
    for (double s : ex.cfg.snr_db) {
        const double sigma = calibrate_sigma(ex.h, ex.set, ex.cfg.responsivity, s);
        out += format_full(s) + ',' +
               format_full(bound.evaluate(ex.cfg.responsivity, sigma)) + '\n';
    }
    return out;
}

namespace {

std::string ber_fields(const BerPoint& p) {
    std::string out;
    out += std::to_string(p.bits_simulated);
    out += ',' + std::to_string(p.bit_errors);
    out += ',' + format_full(p.ber_sim);
    out += ',' + format_full(p.ber_bound);
    out += ',';
    out += p.low_confidence ? '1' : '0';
    return out;
}

SimOutput snr_run_csv(const ResolvedExperiment& ex, int threads) {
    SimOutput out;
    const auto points = run_sweep(ex.h, ex.set, ex.cfg.responsivity, ex.cfg.snr_db,
                                  ex.cfg.rule, ex.cfg.seed, threads);
    out.csv = "snr_db,bits,bit_errors,ber_sim,ber_bound,low_confidence\n";
    for (const auto& p : points) {
        out.csv += format_full(p.snr_db) + ',' + ber_fields(p) + '\n';
        out.low_confidence = out.low_confidence || p.low_confidence;
    }
    return out;
}

SimOutput parameter_run_csv(const ResolvedExperiment& ex, int threads) {
    SimOutput out;
    if (ex.cfg.snr_db.empty()) throw ConfigError("sweep.snr_db is empty");
    // noise is pinned to the base configuration per SNR label; the sweep then
    // exposes the raw channel-gain and correlation trends
    std::vector<double> sigma;
    for (double s : ex.cfg.snr_db)
        sigma.push_back(calibrate_sigma(ex.h, ex.set, ex.cfg.responsivity, s));
    const bool dtx = ex.cfg.sweep_kind == SweepKind::TxSpacing;
    out.csv = std::string(dtx ? "d_tx_m" : "phi_half_deg") +
              ",snr_db,bits,bit_errors,ber_sim,ber_bound,low_confidence,error\n";
    const std::size_t nsnr = ex.cfg.snr_db.size();
    for (std::size_t vi = 0; vi < ex.cfg.sweep_values.size(); ++vi) {
        const double v = ex.cfg.sweep_values[vi];
        Matrix hv;
        std::string err;
        try {
            if (dtx) {
                const auto pool = build_cell_pool(ex.cfg, v);
                hv = build_channel(pick_cells(pool, ex.cfg.explicit_cells), ex.rx, ex.lamb);
            } else {
                if (!(v > 0.0) || !(v < 90.0))
                    throw ConfigError("half-power semiangle out of (0, 90)");
                hv = build_channel(ex.tx, ex.rx, make_lambertian(v * kDegToRad));
            }
        } catch (const ConfigError& e) {
            err = e.what();
        }
        for (std::size_t si = 0; si < nsnr; ++si) {
            out.csv += format_full(v) + ',' + format_full(ex.cfg.snr_db[si]) + ',';
            if (!err.empty()) {
                std::string msg = err;
                std::replace(msg.begin(), msg.end(), ',', ';');
                out.csv += ",,,,," + msg + '\n';
                continue;
            }
            const double bound =
                BoundEvaluator(hv, ex.set).evaluate(ex.cfg.responsivity, sigma[si]);
            const auto p = simulate_point(hv, ex.set, ex.cfg.responsivity, sigma[si],
                                          ex.cfg.snr_db[si], bound, ex.cfg.rule, ex.cfg.seed,
                                          vi * nsnr + si, threads);
            out.csv += ber_fields(p) + ",\n";
            out.low_confidence = out.low_confidence || p.low_confidence;
        }
    }
    return out;
}

}  // namespace

SimOutput simulate_csv(const ResolvedExperiment& ex, int threads) {
    if (ex.cfg.sweep_kind == SweepKind::SnrOnly) {
        if (ex.cfg.snr_db.empty()) throw ConfigError("sweep.snr_db is empty");
        return snr_run_csv(ex, threads);
    }
    return parameter_run_csv(ex, threads);
}

SimOutput compare_csv(const std::vector<ResolvedExperiment>& exs,
                      bool allow_eta_mismatch, int threads) {
    if (exs.empty()) throw ConfigError("compare needs at least one config");
    for (const auto& ex : exs)
        if (ex.cfg.sweep_kind != SweepKind::SnrOnly)
            throw ConfigError("compare requires plain SNR sweeps");
    const auto& grid = exs.front().cfg.snr_db;
    if (grid.empty()) throw ConfigError("sweep.snr_db is empty");
    for (std::size_t i = 1; i < exs.size(); ++i) {
        if (exs[i].eta != exs.front().eta && !allow_eta_mismatch)
            throw ConfigError("transmission efficiency mismatch: '" +
                              exs.front().cfg.effective_label() + "' has " +
                              std::to_string(exs.front().eta) + " bpcu but '" +
                              exs[i].cfg.effective_label() + "' has " +
                              std::to_string(exs[i].eta) + " bpcu");
    }
    SimOutput out;
    std::vector<std::vector<BerPoint>> cols;
    std::string header = "snr_db";
    for (const auto& ex : exs) {
        cols.push_back(run_sweep(ex.h, ex.set, ex.cfg.responsivity, grid, ex.cfg.rule,
                                 ex.cfg.seed, threads));
        const std::string l = ex.cfg.effective_label();
        header += ',' + l + "_ber_sim," + l + "_ber_bound";
        for (const auto& p : cols.back())
            out.low_confidence = out.low_confidence || p.low_confidence;
    }
    out.csv = header + '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.csv += format_full(grid[i]);
        for (const auto& c : cols)
            out.csv += ',' + format_full(c[i].ber_sim) + ',' + format_full(c[i].ber_bound);
        out.csv += '\n';
    }
    return out;
}

PlacementReport placement_report(const ExperimentConfig& cfg, int top_k, int threads) {
    ResolvedExperiment base;
    base.cfg = cfg;
    const auto lamb = make_lambertian(cfg.phi_half_deg * kDegToRad);
    const auto rx = build_receiver(cfg);
    const auto pool = build_cell_pool(cfg, cfg.tx_spacing);
    const auto res = optimize_placement(pool, rx, lamb, cfg.scheme, top_k, threads);
    PlacementReport rep;
    std::set<int> on(res.best.cells.begin(), res.best.cells.end());
    for (std::size_t r = 0; r < cfg.tx_rows; ++r) {
        for (std::size_t c = 0; c < cfg.tx_cols; ++c) {
            rep.art += on.count(static_cast<int>(r * cfg.tx_cols + c)) ? "×" : "○";
            rep.art += (c + 1 < cfg.tx_cols) ? " " : "";
        }
        rep.art += '\n';
    }
    rep.topk_csv = "rank,cells,d_min,d_avg\n";
    for (std::size_t i = 0; i < res.ranked.size(); ++i) {
        std::string cells;
        for (std::size_t j = 0; j < res.ranked[i].cells.size(); ++j) {
            if (j) cells += ' ';
            cells += std::to_string(res.ranked[i].cells[j] + 1);
        }
        rep.topk_csv += std::to_string(i + 1) + ',' + cells + ',' +
                        format_full(res.ranked[i].d_min) + ',' +
                        format_full(res.ranked[i].d_avg) + '\n';
    }
    return rep;
}

}  // namespace vlcgsm
