#include "modulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "errors.hpp"
#include "family_search.hpp"

namespace vlcgsm {

IntensityAlphabet intensity_levels(int m, double mean_power) {
    if (m < 1) throw ConfigError("alphabet size M must be >= 1");
    if (!(mean_power > 0.0)) throw ConfigError("mean optical power I_p must be positive");
    IntensityAlphabet a;
    a.m = m;
    a.mean_power = mean_power;
    a.levels.reserve(m);
    for (int i = 1; i <= m; ++i)
        a.levels.push_back(2.0 * mean_power * static_cast<double>(i) / (m + 1.0));
    return a;
}

const char* to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::GSM: return "gsm";
        case SchemeKind::SM: return "sm";
        case SchemeKind::SMP: return "smp";
        case SchemeKind::SSK: return "ssk";
        case SchemeKind::GSSK: return "gssk";
    }
    return "?";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
    if (s == "gsm") return SchemeKind::GSM;
    if (s == "sm") return SchemeKind::SM;
    if (s == "smp") return SchemeKind::SMP;
    if (s == "ssk") return SchemeKind::SSK;
    if (s == "gssk") return SchemeKind::GSSK;
    throw ConfigError("unknown scheme kind '" + s + "'");
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    constexpr std::uint64_t cap = 1000000000000000000ull;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        if (c > cap / static_cast<std::uint64_t>(n - k + i)) return cap;
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        if (c > cap) return cap;
    }
    return c;
}

void validate_scheme(const SchemeConfig& cfg) {
    if (cfg.n_tx < 1) throw ConfigError("scheme.n_tx must be >= 1");
    if (cfg.n_active < 1 || cfg.n_active > cfg.n_tx)
        throw ConfigError("scheme.n_active must satisfy 1 <= N_a <= N_t");
    if (cfg.levels < 1) throw ConfigError("scheme.levels must be >= 1");
    if (!(cfg.mean_power > 0.0)) throw ConfigError("scheme.mean_power_w must be positive");
    switch (cfg.kind) {
        case SchemeKind::SM:
        case SchemeKind::SSK:
            if (cfg.n_active != 1) throw ConfigError("sm/ssk require n_active = 1");
            break;
        case SchemeKind::SMP:
            if (cfg.n_active != cfg.n_tx) throw ConfigError("smp requires n_active = n_tx");
            break;
        default:
            break;
    }
    if ((cfg.kind == SchemeKind::SSK || cfg.kind == SchemeKind::GSSK) && cfg.levels != 1)
        throw ConfigError("ssk/gssk carry no intensity bits; levels must be 1");
    if (cfg.index_bits_override >= 0) {
        const std::uint64_t npat = binomial(cfg.n_tx, cfg.n_active);
        const int max_bits = npat == 0 ? 0 : std::bit_width(npat) - 1;
        if (cfg.index_bits_override > max_bits)
            throw ConfigError("scheme.index_bits exceeds floor(log2 C(N_t, N_a))");
    }
    efficiency(cfg);  // rejects zero-bit configurations
}

int symbol_bits_per_led(const SchemeConfig& cfg) {
    return std::bit_width(static_cast<unsigned>(cfg.levels)) - 1;
}

int index_bit_count(const SchemeConfig& cfg) {
    const std::uint64_t npat = binomial(cfg.n_tx, cfg.n_active);
    const int nat = npat == 0 ? 0 : std::bit_width(npat) - 1;
    return cfg.index_bits_override >= 0 ? cfg.index_bits_override : nat;
}

int efficiency(const SchemeConfig& cfg) {
    const int eta = index_bit_count(cfg) + cfg.n_active * symbol_bits_per_led(cfg);
    if (eta < 1)
        throw ConfigError("scheme conveys zero bits per channel use");
    return eta;
}

std::vector<Pattern> all_patterns(int n_tx, int n_active) {
    std::vector<Pattern> out;
    Pattern cur(n_active);
    for (int i = 0; i < n_active; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = n_active - 1;
        while (i >= 0 && cur[i] == n_tx - n_active + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < n_active; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<Pattern> select_patterns(const SchemeConfig& cfg, const Matrix* h) {
    validate_scheme(cfg);
    const auto pats = all_patterns(cfg.n_tx, cfg.n_active);
    const std::size_t count = std::size_t{1} << index_bit_count(cfg);
    if (count > pats.size())
        throw ConfigError("pattern count exceeds C(N_t, N_a)");

    if (cfg.policy == PatternPolicy::Explicit) {
        auto list = cfg.explicit_patterns;
        if (list.size() != count)
            throw ConfigError("explicit pattern list must contain exactly " +
                              std::to_string(count) + " patterns");
        std::set<Pattern> seen;
        for (auto& p : list) {
            std::sort(p.begin(), p.end());
            if (static_cast<int>(p.size()) != cfg.n_active)
                throw ConfigError("explicit pattern has wrong size");
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p[i] < 0 || p[i] >= cfg.n_tx) throw ConfigError("explicit pattern index out of range");
                if (i > 0 && p[i] == p[i - 1]) throw ConfigError("explicit pattern has repeated LED");
            }
            if (!seen.insert(p).second) throw ConfigError("duplicate explicit pattern");
        }
        return list;
    }

    if (count == pats.size()) return pats;  // no choice exists

    if (cfg.policy == PatternPolicy::Lexicographic)
        return {pats.begin(), pats.begin() + count};

    // optimized
    if (h == nullptr)
        throw ConfigError("optimized pattern selection requires a channel matrix");
    const auto alphabet = intensity_levels(cfg.levels, cfg.mean_power);
    const auto images = detail::make_pattern_images(*h, pats, alphabet);
    const auto tables = detail::block_tables(images);
    detail::FamilyPick pick;
    if (binomial(static_cast<int>(pats.size()), static_cast<int>(count)) <= 1000000ull)
        pick = detail::best_family_exhaustive(tables, static_cast<int>(count), -1.0);
    else
        pick = detail::greedy_family(tables, static_cast<int>(count));
    std::vector<Pattern> out;
    out.reserve(count);
    for (int idx : pick.members) out.push_back(pats[idx]);
    return out;
}

SignalSet build_signal_set(const SchemeConfig& cfg, const std::vector<Pattern>& patterns) {
    validate_scheme(cfg);
    if (patterns.empty()) throw ConfigError("signal set needs at least one pattern");
    const unsigned npat = static_cast<unsigned>(patterns.size());
    const int idx_bits = std::bit_width(npat) - 1;
    if ((1u << idx_bits) != npat)
        throw ConfigError("pattern count must be a power of two");
    SignalSet set;
    set.n_tx = cfg.n_tx;
    set.n_active = cfg.n_active;
    set.index_bits = idx_bits;
    set.sym_bits = symbol_bits_per_led(cfg);
    set.eta = idx_bits + cfg.n_active * set.sym_bits;
    if (set.eta < 1) throw ConfigError("signal set would convey zero bits");
    if (set.eta > 24) throw ConfigError("signal set too large (eta > 24)");
    set.alphabet = intensity_levels(cfg.levels, cfg.mean_power);
    set.patterns = patterns;
    const std::size_t a = std::size_t{1} << set.eta;
    set.x.assign(a * cfg.n_tx, 0.0);
    const int sym_total = cfg.n_active * set.sym_bits;
    const std::uint32_t sym_mask = set.sym_bits == 0 ? 0u : ((1u << set.sym_bits) - 1u);
    for (std::size_t u = 0; u < a; ++u) {
        const std::size_t pat_idx = u >> sym_total;
        const Pattern& pat = patterns[pat_idx];
        double* row = set.x.data() + u * cfg.n_tx;
        for (int pos = 0; pos < cfg.n_active; ++pos) {
            std::uint32_t m = 0;
            if (set.sym_bits > 0)
                m = (static_cast<std::uint32_t>(u) >>
                     (set.sym_bits * (cfg.n_active - 1 - pos))) & sym_mask;
            row[pat[pos]] = set.alphabet.levels[m];
        }
    }
    return set;
}

std::vector<double> signal_images(const Matrix& h, const SignalSet& set) {
    if (h.cols != static_cast<std::size_t>(set.n_tx))
        throw ConfigError("channel matrix width does not match N_t");
    const std::size_t a = set.cardinality();
    std::vector<double> g(a * h.rows, 0.0);
    for (std::size_t k = 0; k < a; ++k) {
        const double* xk = set.vector_at(k);
        for (std::size_t i = 0; i < h.rows; ++i) {
            double acc = 0.0;
            const double* hrow = h.a.data() + i * h.cols;
            for (std::size_t j = 0; j < h.cols; ++j) acc += hrow[j] * xk[j];
            g[k * h.rows + i] = acc;
        }
    }
    return g;
}

namespace {

template <typename Fn>
void over_image_pairs(const Matrix& h, const SignalSet& set, Fn&& fn) {
    const std::size_t a = set.cardinality();
    if (a < 2) throw ConfigError("distance metrics need at least two signal vectors");
    const auto g = signal_images(h, set);
    const std::size_t nr = h.rows;
    for (std::size_t i = 0; i < a; ++i) {
        const double* gi = g.data() + i * nr;
        for (std::size_t j = i + 1; j < a; ++j) {
            const double* gj = g.data() + j * nr;
            double d2 = 0.0;
            for (std::size_t q = 0; q < nr; ++q) {
                const double d = gj[q] - gi[q];
                d2 += d * d;
            }
            fn(d2);
        }
    }
}

}  // namespace

double d_min(const Matrix& h, const SignalSet& set) {
    double best = std::numeric_limits<double>::infinity();
    over_image_pairs(h, set, [&](double d2) { best = std::min(best, d2); });
    return best;
}

double d_avg(const Matrix& h, const SignalSet& set) {
    double sum = 0.0;
    std::size_t n = 0;
    over_image_pairs(h, set, [&](double d2) { sum += d2; ++n; });
    return sum / static_cast<double>(n);
}

}  // namespace vlcgsm
