#include "vlcgsm/vlcgsm.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "../core/errors.hpp"
#include "../core/experiment.hpp"

using namespace vlcgsm;

struct vlc_experiment {
    ResolvedExperiment ex;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
vlc_status guarded(Fn&& fn) {
    try {
        fn();
        return VLC_OK;
    } catch (const BudgetError& e) {
        g_last_error = e.what();
        return VLC_ERR_BUDGET;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return VLC_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VLC_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* vlc_version(void) { return kArtifactVersion; }

const char* vlc_last_error(void) { return g_last_error.c_str(); }

void vlc_string_free(char* s) { std::free(s); }

vlc_status vlc_experiment_create(const char* json_text, int threads,
                                 vlc_experiment** out) {
    if (!json_text || !out) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&] {
        auto cfg = parse_config(json_text);
        auto handle = new vlc_experiment{resolve_experiment(cfg, threads)};
        *out = handle;
    });
}

vlc_status vlc_experiment_create_from_file(const char* path, int threads,
                                           vlc_experiment** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&] {
        auto cfg = load_config(path);
        *out = new vlc_experiment{resolve_experiment(cfg, threads)};
    });
}

void vlc_experiment_destroy(vlc_experiment* ex) { delete ex; }

vlc_status vlc_experiment_set_seed(vlc_experiment* ex, uint64_t seed) {
    if (!ex) {
        g_last_error = "null experiment";
        return VLC_ERR_CONFIG;
    }
    ex->ex.cfg.seed = seed;
    return VLC_OK;
}

vlc_status vlc_experiment_resolved_json(const vlc_experiment* ex, char** out_json) {
    if (!ex || !out_json) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        ojson doc;
        doc["resolved_config"] = config_to_json(ex->ex.cfg);
        *out_json = dup_string(doc.dump(2));
    });
}

vlc_status vlc_experiment_channel_csv(const vlc_experiment* ex, char** out_csv) {
    if (!ex || !out_csv) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] { *out_csv = dup_string(channel_csv(ex->ex)); });
}

vlc_status vlc_experiment_metrics_csv(const vlc_experiment* ex, char** out_csv) {
    if (!ex || !out_csv) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] { *out_csv = dup_string(metrics_csv(ex->ex)); });
}

vlc_status vlc_experiment_bound_csv(const vlc_experiment* ex, char** out_csv) {
    if (!ex || !out_csv) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] { *out_csv = dup_string(bound_csv(ex->ex)); });
}

vlc_status vlc_experiment_simulate_csv(const vlc_experiment* ex, int threads,
                                       char** out_csv, int* low_confidence) {
    if (!ex || !out_csv) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        const auto sim = simulate_csv(ex->ex, threads);
        *out_csv = dup_string(sim.csv);
        if (low_confidence) *low_confidence = sim.low_confidence ? 1 : 0;
    });
}

vlc_status vlc_experiment_placement_report(const vlc_experiment* ex, int top_k,
                                           int threads, char** out_art,
                                           char** out_topk_csv) {
    if (!ex || !out_art || !out_topk_csv) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        // report from the original (pre-resolution) grid and scheme
        ExperimentConfig cfg = ex->ex.cfg;
        const auto rep = placement_report(cfg, top_k, threads);
        *out_art = dup_string(rep.art);
        *out_topk_csv = dup_string(rep.topk_csv);
    });
}

vlc_status vlc_compare_csv(const vlc_experiment* const* exs, size_t n,
                           int allow_eta_mismatch, int threads, char** out_csv,
                           int* low_confidence) {
    if (!exs || !out_csv || n == 0) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        std::vector<ResolvedExperiment> list;
        list.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (!exs[i]) throw ConfigError("null experiment in compare list");
            list.push_back(exs[i]->ex);
        }
        const auto sim = compare_csv(list, allow_eta_mismatch != 0, threads);
        *out_csv = dup_string(sim.csv);
        if (low_confidence) *low_confidence = sim.low_confidence ? 1 : 0;
    });
}

vlc_status vlc_preset_list(char** out_names) {
    if (!out_names) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        std::string s;
        for (const auto& n : preset_names()) {
            if (!s.empty()) s += ',';
            s += n;
        }
        *out_names = dup_string(s);
    });
}

vlc_status vlc_preset_run(const char* name, const char* out_dir, int has_seed,
                          uint64_t seed, int threads, int* low_confidence) {
    if (!name || !out_dir) {
        g_last_error = "null argument";
        return VLC_ERR_CONFIG;
    }
    return guarded([&] {
        std::optional<std::uint64_t> s;
        if (has_seed) s = seed;
        const auto out = run_preset(name, s, threads);
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        for (const auto& [fname, bytes] : out.files) {
            std::ofstream f(fs::path(out_dir) / fname, std::ios::binary);
            if (!f) throw ConfigError("cannot write output file " + fname);
            f << bytes;
        }
        std::ofstream mf(fs::path(out_dir) / (std::string(name) + "_manifest.json"),
                         std::ios::binary);
        if (!mf) throw ConfigError("cannot write manifest");
        mf << out.manifest.dump(2) << '\n';
        if (low_confidence) *low_confidence = out.low_confidence ? 1 : 0;
    });
}

}  // extern "C"
