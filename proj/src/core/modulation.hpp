#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"

namespace vlcgsm {

struct IntensityAlphabet {
    int m = 1;                   // M = |alphabet|
    double mean_power = 1.0;     // I_p, W
    std::vector<double> levels;  // I_1..I_M, strictly increasing, mean == I_p
};

// Eq.-defined PAM levels I_m = 2 I_p m / (M+1).
IntensityAlphabet intensity_levels(int m, double mean_power);

enum class SchemeKind { GSM, SM, SMP, SSK, GSSK };
enum class PatternPolicy { Lexicographic, Optimized, Explicit };

const char* to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

// Activation pattern: sorted 0-based LED indices, N_a of them.
using Pattern = std::vector<int>;

struct SchemeConfig {
    SchemeKind kind = SchemeKind::GSM;
    int n_tx = 0;      // N_t
    int n_active = 0;  // N_a
    int levels = 1;    // M
    double mean_power = 1.0;
    PatternPolicy policy = PatternPolicy::Optimized;
    std::vector<Pattern> explicit_patterns;  // used when policy == Explicit
    int index_bits_override = -1;            // -1: floor(log2 C(N_t, N_a))
};

void validate_scheme(const SchemeConfig& cfg);

// Saturating binomial coefficient (caps at ~1e18).
std::uint64_t binomial(int n, int k);

int symbol_bits_per_led(const SchemeConfig& cfg);  // floor(log2 M)
int index_bit_count(const SchemeConfig& cfg);
int efficiency(const SchemeConfig& cfg);  // eta, bpcu; throws if 0

std::vector<Pattern> all_patterns(int n_tx, int n_active);  // lexicographic

// Picks 2^index_bits activation patterns. `optimized` maximizes the induced
// signal set's d_min,H with d_avg then lexicographic tie-breaks; exhaustive
// when C(C(N_t,N_a), count) <= 10^6, greedy otherwise. H is required only
// when a real choice exists.
std::vector<Pattern> select_patterns(const SchemeConfig& cfg, const Matrix* h);

struct SignalSet {
    int n_tx = 0;
    int n_active = 0;
    int eta = 0;         // label length, bits
    int index_bits = 0;  // leading bits choosing the pattern
    int sym_bits = 0;    // bits per active LED
    IntensityAlphabet alphabet;
    std::vector<Pattern> patterns;
    std::vector<double> x;  // cardinality() rows of n_tx entries, label order

    std::size_t cardinality() const { return n_tx == 0 ? 0 : x.size() / n_tx; }
    const double* vector_at(std::size_t k) const { return x.data() + k * n_tx; }
    // bit label of vector k is k itself, eta bits, most significant first
    std::uint32_t label(std::size_t k) const { return static_cast<std::uint32_t>(k); }
};

// Label bit layout: [pattern index, natural binary, MSB first] then one
// floor(log2 M)-bit natural-binary symbol per active LED in increasing LED
// order (value m-1 selects I_m).
SignalSet build_signal_set(const SchemeConfig& cfg, const std::vector<Pattern>& patterns);

// Channel images Hx_k, row per signal vector.
std::vector<double> signal_images(const Matrix& h, const SignalSet& set);

// Eq. 7 / Eq. 8: squared-norm minimum and unordered-pair mean.
double d_min(const Matrix& h, const SignalSet& set);
double d_avg(const Matrix& h, const SignalSet& set);

}  // namespace vlcgsm
