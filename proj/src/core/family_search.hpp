#pragma once

// Shared machinery for activation-pattern family selection and LED placement
// search: per-pattern channel images and the block distance tables they
// induce. A family's d_min is the min over intra/cross block minima of its
// patterns; its pair-distance sum decomposes the same way, which keeps the
// exhaustive search over families cheap.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modulation.hpp"

namespace vlcgsm::detail {

struct PatternImages {
    std::size_t npat = 0;
    std::size_t ncombo = 0;  // M^N_a
    std::size_t nr = 0;
    std::vector<double> img;  // [pat][combo][nr]

    const double* at(std::size_t p, std::size_t c) const {
        return img.data() + (p * ncombo + c) * nr;
    }
};

PatternImages make_pattern_images(const Matrix& h, const std::vector<Pattern>& patterns,
                                  const IntensityAlphabet& alphabet);

struct BlockTables {
    std::size_t npat = 0;
    // symmetric npat x npat: [p][q] min / sum of squared distances between
    // the two patterns' image sets; diagonal = intra (unordered combo pairs)
    std::vector<double> min2;
    std::vector<double> sum2;

    double dmin(std::size_t p, std::size_t q) const { return min2[p * npat + q]; }
    double dsum(std::size_t p, std::size_t q) const { return sum2[p * npat + q]; }
};

BlockTables block_tables(const PatternImages& pi);

struct FamilyPick {
    std::vector<int> members;  // pattern indices, ascending
    double dmin = -1.0;
    double pair_sum = 0.0;  // sum of squared distances over unordered vector pairs
    bool valid() const { return !members.empty(); }
};

// Exhaustive branch-and-bound over size-`count` families maximizing
// (dmin, pair_sum, lexicographic-least). Families with dmin < prune_below are
// skipped entirely; returns invalid pick if everything pruned.
FamilyPick best_family_exhaustive(const BlockTables& t, int count, double prune_below);

// Greedy fallback: best pair by induced d_min, then repeatedly add the
// pattern maximizing the running d_min (ties to the lowest index).
FamilyPick greedy_family(const BlockTables& t, int count);

// Upper bound on any size-`count` family's d_min: the count-th largest
// intra-pattern minimum.
double family_dmin_upper_bound(const BlockTables& t, int count);

FamilyPick fixed_family(const BlockTables& t, const std::vector<int>& members);

}  // namespace vlcgsm::detail
