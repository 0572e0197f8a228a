#include "placement.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#include "errors.hpp"
#include "family_search.hpp"
#include "parallel.hpp"

namespace vlcgsm {

namespace {

// Lexicographic-rank -> combination (ascending cell indices).
std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
    std::vector<int> out(k);
    int cell = 0;
    for (int pos = 0; pos < k; ++pos) {
        while (true) {
            const std::uint64_t block = binomial(n - cell - 1, k - pos - 1);
            if (rank < block) break;
            rank -= block;
            ++cell;
        }
        out[pos] = cell++;
    }
    return out;
}

bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

struct Evaluated {
    PlacementCandidate cand;
    detail::FamilyPick pick;
    bool valid = false;
};

// (d_min desc, d_avg desc, cells lex asc)
bool better(const PlacementCandidate& a, const PlacementCandidate& b) {
    if (a.d_min != b.d_min) return a.d_min > b.d_min;
    if (a.d_avg != b.d_avg) return a.d_avg > b.d_avg;
    return a.cells < b.cells;
}

}  // namespace

PlacementResult optimize_placement(const std::vector<Emitter>& cell_pool,
                                   const std::vector<Detector>& rx,
                                   const LambertianParams& lamb,
                                   const SchemeConfig& scheme, int top_k,
                                   int threads, std::uint64_t max_candidates) {
    validate_scheme(scheme);
    if (top_k < 1) top_k = 1;
    const int ncell = static_cast<int>(cell_pool.size());
    if (scheme.n_tx > ncell)
        throw ConfigError("placement grid has fewer cells than N_t");
    const std::uint64_t ncand = binomial(ncell, scheme.n_tx);
    if (ncand > max_candidates)
        throw BudgetError("placement enumeration of " + std::to_string(ncand) +
                          " candidates exceeds the budget; use a smaller grid");

    const Matrix h_full = build_channel(cell_pool, rx, lamb);
    const auto patterns = all_patterns(scheme.n_tx, scheme.n_active);
    const std::size_t count = std::size_t{1} << index_bit_count(scheme);
    const auto alphabet = intensity_levels(scheme.levels, scheme.mean_power);
    const bool exhaustive_family =
        binomial(static_cast<int>(patterns.size()), static_cast<int>(count)) <= 1000000ull;

    // Non-optimized policies use one LED-relative family for every placement.
    std::vector<int> fixed_members;
    if (scheme.policy != PatternPolicy::Optimized || count == patterns.size()) {
        std::vector<Pattern> sel;
        if (scheme.policy == PatternPolicy::Explicit)
            sel = select_patterns(scheme, nullptr);
        else
            sel.assign(patterns.begin(), patterns.begin() + count);
        for (const auto& p : sel) {
            const auto it = std::lower_bound(patterns.begin(), patterns.end(), p);
            fixed_members.push_back(static_cast<int>(it - patterns.begin()));
        }
    }

    std::size_t ncombo = 1;
    for (int i = 0; i < scheme.n_active; ++i)
        ncombo *= std::size_t{1} << symbol_bits_per_led(scheme);
    const double nvec = static_cast<double>(count) * static_cast<double>(ncombo);
    const double npairs = 0.5 * nvec * (nvec - 1.0);

    std::atomic<double> best_seen{-1.0};  // cross-thread hint, used when top_k == 1
    const unsigned nthreads = effective_threads(threads);
    std::vector<Evaluated> thread_best(nthreads);
    std::vector<std::vector<PlacementCandidate>> thread_top(nthreads);
    std::atomic<std::size_t> next_slot{0};

    parallel_blocks(ncand, static_cast<int>(nthreads), [&](std::size_t b, std::size_t e) {
        const std::size_t slot = next_slot.fetch_add(1);
        Evaluated local;
        auto& top = thread_top[slot];
        double local_kth = -1.0;  // k-th best d_min seen by this thread
        std::vector<int> cells = unrank_combination(b, ncell, scheme.n_tx);
        Matrix hs(h_full.rows, scheme.n_tx);
        for (std::size_t r = b; r < e; ++r) {
            for (std::size_t i = 0; i < h_full.rows; ++i)
                for (int j = 0; j < scheme.n_tx; ++j)
                    hs(i, j) = h_full(i, cells[j]);
            const auto images = detail::make_pattern_images(hs, patterns, alphabet);
            const auto tables = detail::block_tables(images);
            detail::FamilyPick pick;
            if (!fixed_members.empty()) {
                pick = detail::fixed_family(tables, fixed_members);
            } else if (exhaustive_family) {
                double prune = local_kth;
                if (top_k == 1)
                    prune = std::max(prune, best_seen.load(std::memory_order_relaxed));
                pick = detail::best_family_exhaustive(tables, static_cast<int>(count), prune);
            } else {
                pick = detail::greedy_family(tables, static_cast<int>(count));
            }
            if (pick.valid()) {
                PlacementCandidate cand;
                cand.cells = cells;
                cand.d_min = pick.dmin;
                cand.d_avg = pick.pair_sum / npairs;
                if (!local.valid || better(cand, local.cand)) {
                    local.cand = cand;
                    local.pick = pick;
                    local.valid = true;
                    double cur = best_seen.load(std::memory_order_relaxed);
                    while (cand.d_min > cur &&
                           !best_seen.compare_exchange_weak(cur, cand.d_min)) {
                    }
                }
                top.push_back(std::move(cand));
                if (top.size() >= static_cast<std::size_t>(top_k) * 4) {
                    std::sort(top.begin(), top.end(), better);
                    top.resize(top_k);
                    local_kth = top.back().d_min;
                }
            }
            if (r + 1 < e && !next_combination(cells, ncell)) break;
        }
        thread_best[slot] = std::move(local);
    });

    PlacementResult out;
    out.candidates = ncand;
    Evaluated overall;
    for (auto& tb : thread_best) {
        if (!tb.valid) continue;
        if (!overall.valid || better(tb.cand, overall.cand)) overall = tb;
    }
    if (!overall.valid) throw ConfigError("placement search found no valid candidate");
    out.best = overall.cand;
    out.best_patterns.reserve(overall.pick.members.size());
    for (int m : overall.pick.members) out.best_patterns.push_back(patterns[m]);

    std::vector<PlacementCandidate> merged;
    for (auto& t : thread_top) merged.insert(merged.end(), t.begin(), t.end());
    std::sort(merged.begin(), merged.end(), better);
    if (merged.size() > static_cast<std::size_t>(top_k)) merged.resize(top_k);
    out.ranked = std::move(merged);
    return out;
}

RankTable rank_configs(const std::vector<SchemeConfig>& configs,
                       const std::vector<Emitter>& cell_pool,
                       const std::vector<Detector>& rx,
                       const LambertianParams& lamb, int threads) {
    RankTable table;
    int eta0 = -1;
    for (const auto& cfg : configs) {
        const auto res = optimize_placement(cell_pool, rx, lamb, cfg, 1, threads);
        RankRow row;
        row.scheme = cfg;
        row.cells = res.best.cells;
        row.eta = efficiency(cfg);
        row.cardinality = std::uint64_t{1} << row.eta;
        row.d_min = res.best.d_min;
        row.d_avg = res.best.d_avg;
        if (eta0 < 0) eta0 = row.eta;
        if (row.eta != eta0) table.eta_mismatch = true;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace vlcgsm
