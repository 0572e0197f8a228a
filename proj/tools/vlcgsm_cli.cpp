// Command-line front end. Links only the C API of the shared library.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlcgsm/vlcgsm.h"

namespace {

struct ExpDeleter {
    void operator()(vlc_experiment* e) const { vlc_experiment_destroy(e); }
};
using ExpPtr = std::unique_ptr<vlc_experiment, ExpDeleter>;

struct StrDeleter {
    void operator()(char* s) const { vlc_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

int fail(vlc_status st) {
    std::cerr << "error: " << vlc_last_error() << "\n";
    return static_cast<int>(st);
}

ExpPtr open_experiment(const std::string& config, int threads, bool has_seed,
                       std::uint64_t seed, vlc_status& st) {
    vlc_experiment* raw = nullptr;
    st = vlc_experiment_create_from_file(config.c_str(), threads, &raw);
    ExpPtr ex(raw);
    if (st == VLC_OK && has_seed) st = vlc_experiment_set_seed(ex.get(), seed);
    return ex;
}

int write_output(const std::string& bytes, const std::string& out_dir,
                 const std::string& filename) {
    if (out_dir.empty()) {
        std::cout << bytes;
        return 0;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const auto path = fs::path(out_dir) / filename;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << path.string() << "\n";
        return 1;
    }
    f << bytes;
    std::cout << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vlcgsm: indoor visible-light MIMO (GSM/SM/SMP/SSK/GSSK) link simulator"};
    app.require_subcommand(1);

    std::string config, out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 0;
    int top_k = 10;
    bool allow_eta = false;
    std::vector<std::string> configs;
    std::string preset_name;

    app.add_option("--seed", seed, "override the master seed")->each([&](const std::string&) {
        has_seed = true;
    });
    app.add_option("--threads", threads, "worker threads (speed only, never results)");
    app.add_option("--out", out_dir, "output directory (default: stdout for single files)");

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config, "experiment config (JSON)")->required();
    };

    auto* c_channel = app.add_subcommand("channel", "dump the channel matrix H as CSV");
    add_config(c_channel);
    auto* c_metrics = app.add_subcommand("metrics", "print cardinality, eta, d_min, d_avg");
    add_config(c_metrics);
    auto* c_bound = app.add_subcommand("bound", "analytical union-bound BER over the SNR grid");
    add_config(c_bound);
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo BER run (plus bound) as CSV");
    add_config(c_sim);
    auto* c_place = app.add_subcommand("place-opt", "exhaustive optimal LED placement report");
    add_config(c_place);
    c_place->add_option("--top", top_k, "number of ranked candidates to emit");
    auto* c_compare = app.add_subcommand("compare", "merge several configs over a shared SNR grid");
    c_compare->add_option("--config", configs, "experiment configs (JSON)")
        ->required()
        ->expected(-1);
    c_compare->add_flag("--allow-eta-mismatch", allow_eta,
                        "permit differing transmission efficiencies");
    auto* c_preset = app.add_subcommand("preset", "run a paper-experiment preset");
    c_preset->add_option("name", preset_name, "fig5|fig6|fig7|fig8|fig11|fig12|fig13|table2")
        ->required();

    CLI11_PARSE(app, argc, argv);

    vlc_status st = VLC_OK;

    if (c_channel->parsed() || c_metrics->parsed() || c_bound->parsed()) {
        auto ex = open_experiment(config, threads, has_seed, seed, st);
        if (st != VLC_OK) return fail(st);
        char* csv = nullptr;
        const char* fname = nullptr;
        if (c_channel->parsed()) {
            st = vlc_experiment_channel_csv(ex.get(), &csv);
            fname = "channel.csv";
        } else if (c_metrics->parsed()) {
            st = vlc_experiment_metrics_csv(ex.get(), &csv);
            fname = "metrics.csv";
        } else {
            st = vlc_experiment_bound_csv(ex.get(), &csv);
            fname = "bound.csv";
        }
        if (st != VLC_OK) return fail(st);
        StrPtr holder(csv);
        return write_output(csv, out_dir, fname);
    }

    if (c_sim->parsed()) {
        auto ex = open_experiment(config, threads, has_seed, seed, st);
        if (st != VLC_OK) return fail(st);
        char* csv = nullptr;
        int low = 0;
        st = vlc_experiment_simulate_csv(ex.get(), threads, &csv, &low);
        if (st != VLC_OK) return fail(st);
        StrPtr holder(csv);
        const int rc = write_output(csv, out_dir, "simulate.csv");
        if (rc != 0) return rc;
        if (low) std::cerr << "note: low-confidence points present (error target not reached)\n";
        return low ? 3 : 0;
    }

    if (c_place->parsed()) {
        auto ex = open_experiment(config, threads, has_seed, seed, st);
        if (st != VLC_OK) return fail(st);
        char* art = nullptr;
        char* csv = nullptr;
        st = vlc_experiment_placement_report(ex.get(), top_k, threads, &art, &csv);
        if (st != VLC_OK) return fail(st);
        StrPtr art_h(art), csv_h(csv);
        std::cout << art;
        return write_output(csv, out_dir, "place_opt_topk.csv");
    }

    if (c_compare->parsed()) {
        std::vector<ExpPtr> exps;
        std::vector<vlc_experiment*> raw;
        for (const auto& path : configs) {
            auto ex = open_experiment(path, threads, has_seed, seed, st);
            if (st != VLC_OK) return fail(st);
            raw.push_back(ex.get());
            exps.push_back(std::move(ex));
        }
        char* csv = nullptr;
        int low = 0;
        st = vlc_compare_csv(raw.data(), raw.size(), allow_eta ? 1 : 0, threads, &csv, &low);
        if (st != VLC_OK) return fail(st);
        StrPtr holder(csv);
        const int rc = write_output(csv, out_dir, "compare.csv");
        if (rc != 0) return rc;
        return low ? 3 : 0;
    }

    if (c_preset->parsed()) {
        const std::string dir = out_dir.empty() ? "out" : out_dir;
        int low = 0;
        st = vlc_preset_run(preset_name.c_str(), dir.c_str(), has_seed ? 1 : 0, seed,
                            threads, &low);
        if (st != VLC_OK) return fail(st);
        std::cout << "preset " << preset_name << " written to " << dir << "\n";
        if (low) std::cerr << "note: low-confidence points present (error target not reached)\n";
        return low ? 3 : 0;
    }

    return 0;
}
