#pragma once

#include <cstdint>
#include <vector>

#include "modulation.hpp"

namespace vlcgsm {

struct PlacementCandidate {
    std::vector<int> cells;  // occupied grid cells, 0-based ascending
    double d_min = -1.0;
    double d_avg = -1.0;
};

struct PlacementResult {
    PlacementCandidate best;
    std::vector<Pattern> best_patterns;     // family used by the best candidate
    std::vector<PlacementCandidate> ranked; // best first, up to top_k
    std::uint64_t candidates = 0;           // placements evaluated
};

// Exhaustive search over C(|cell_pool|, N_t) LED placements maximizing the
// induced signal set's d_min,H, d_avg,H tie-break, lexicographically-least
// cell set on exact ties. The pattern policy is applied per placement.
// Throws BudgetError when the enumeration exceeds `max_candidates`.
PlacementResult optimize_placement(const std::vector<Emitter>& cell_pool,
                                   const std::vector<Detector>& rx,
                                   const LambertianParams& lamb,
                                   const SchemeConfig& scheme,
                                   int top_k = 10, int threads = 0,
                                   std::uint64_t max_candidates = 2000000);

struct RankRow {
    SchemeConfig scheme;
    std::vector<int> cells;
    int eta = 0;
    std::uint64_t cardinality = 0;
    double d_min = 0.0;
    double d_avg = 0.0;
};

struct RankTable {
    std::vector<RankRow> rows;  // input order preserved
    bool eta_mismatch = false;
};

// Table-2-style comparison: every config on its own optimal placement.
RankTable rank_configs(const std::vector<SchemeConfig>& configs,
                       const std::vector<Emitter>& cell_pool,
                       const std::vector<Detector>& rx,
                       const LambertianParams& lamb, int threads = 0);

}  // namespace vlcgsm
