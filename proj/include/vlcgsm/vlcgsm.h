/* vlcgsm — indoor visible-light MIMO link simulator and analysis library.
 *
 * C interface over the C++ core. All functions return a vlc_status; on
 * failure vlc_last_error() describes the problem for the calling thread.
 * Strings returned through char** are heap-allocated and must be released
 * with vlc_string_free(). Experiments are opaque handles created from a JSON
 * configuration document (see the README for the schema).
 */
#ifndef VLCGSM_H
#define VLCGSM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct vlc_experiment vlc_experiment;

typedef enum vlc_status {
    VLC_OK = 0,
    VLC_ERR_CONFIG = 2,   /* invalid config / input */
    VLC_ERR_BUDGET = 3,   /* enumeration or simulation budget exceeded */
    VLC_ERR_INTERNAL = 4
} vlc_status;

const char* vlc_version(void);

/* Thread-local message for the most recent failure on this thread. */
const char* vlc_last_error(void);

void vlc_string_free(char* s);

/* Parse + validate a JSON config (defaults applied, unknown keys rejected)
 * and resolve it: auto placement optimized, pattern family selected, channel
 * matrix built. threads <= 0 selects the hardware count. */
vlc_status vlc_experiment_create(const char* json_text, int threads,
                                 vlc_experiment** out);
vlc_status vlc_experiment_create_from_file(const char* path, int threads,
                                           vlc_experiment** out);
void vlc_experiment_destroy(vlc_experiment* ex);

vlc_status vlc_experiment_set_seed(vlc_experiment* ex, uint64_t seed);

/* Fully resolved configuration (placement cells and patterns pinned). */
vlc_status vlc_experiment_resolved_json(const vlc_experiment* ex, char** out_json);

/* Channel matrix as CSV, one row per detector. */
vlc_status vlc_experiment_channel_csv(const vlc_experiment* ex, char** out_csv);

/* cardinality, eta, d_min, d_avg of the resolved signal set. */
vlc_status vlc_experiment_metrics_csv(const vlc_experiment* ex, char** out_csv);

/* (snr_db, ber_bound) over the config's SNR grid. */
vlc_status vlc_experiment_bound_csv(const vlc_experiment* ex, char** out_csv);

/* Monte Carlo run (SNR sweep or d_tx / half-power-semiangle parameter sweep
 * as configured). *low_confidence is set to 1 when any point stopped on the
 * channel-use budget before reaching the error target. */
vlc_status vlc_experiment_simulate_csv(const vlc_experiment* ex, int threads,
                                       char** out_csv, int* low_confidence);

/* Optimal-placement report: grid art for the best cell set plus a CSV of the
 * top-k candidates (rank, cells, d_min, d_avg). */
vlc_status vlc_experiment_placement_report(const vlc_experiment* ex, int top_k,
                                           int threads, char** out_art,
                                           char** out_topk_csv);

/* Merged comparison of several experiments over the first one's SNR grid.
 * Transmission efficiencies must match unless allow_eta_mismatch != 0. */
vlc_status vlc_compare_csv(const vlc_experiment* const* exs, size_t n,
                           int allow_eta_mismatch, int threads, char** out_csv,
                           int* low_confidence);

/* Comma-separated preset names (fig5..fig13, table2). */
vlc_status vlc_preset_list(char** out_names);

/* Run a named paper-experiment preset and write its CSVs plus
 * <preset>_manifest.json under out_dir. has_seed != 0 overrides every
 * curve's seed with `seed`. */
vlc_status vlc_preset_run(const char* name, const char* out_dir, int has_seed,
                          uint64_t seed, int threads, int* low_confidence);

#ifdef __cplusplus
}
#endif

#endif /* VLCGSM_H */
