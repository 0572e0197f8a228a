#include "family_search.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "errors.hpp"

namespace vlcgsm::detail {

PatternImages make_pattern_images(const Matrix& h, const std::vector<Pattern>& patterns,
                                  const IntensityAlphabet& alphabet) {
    if (patterns.empty()) throw ConfigError("no activation patterns");
    const int na = static_cast<int>(patterns.front().size());
    const int sym_bits = std::bit_width(static_cast<unsigned>(alphabet.m)) - 1;
    const std::size_t nlev = std::size_t{1} << sym_bits;  // addressable levels
    std::size_t ncombo = 1;
    for (int i = 0; i < na; ++i) ncombo *= nlev;
    PatternImages pi;
    pi.npat = patterns.size();
    pi.ncombo = ncombo;
    pi.nr = h.rows;
    pi.img.assign(pi.npat * ncombo * h.rows, 0.0);
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        for (std::size_t c = 0; c < ncombo; ++c) {
            double* out = pi.img.data() + (p * ncombo + c) * h.rows;
            std::size_t rem = c;
            for (int pos = na - 1; pos >= 0; --pos) {
                const std::size_t lvl = rem % nlev;
                rem /= nlev;
                const double w = alphabet.levels[lvl];
                const int led = patterns[p][pos];
                for (std::size_t i = 0; i < h.rows; ++i) out[i] += w * h(i, led);
            }
        }
    }
    return pi;
}

BlockTables block_tables(const PatternImages& pi) {
    BlockTables t;
    t.npat = pi.npat;
    t.min2.assign(pi.npat * pi.npat, std::numeric_limits<double>::infinity());
    t.sum2.assign(pi.npat * pi.npat, 0.0);
    const std::size_t nr = pi.nr;
    for (std::size_t p = 0; p < pi.npat; ++p) {
        for (std::size_t q = p; q < pi.npat; ++q) {
            double mn = std::numeric_limits<double>::infinity();
            double sm = 0.0;
            for (std::size_t c1 = 0; c1 < pi.ncombo; ++c1) {
                const double* a = pi.at(p, c1);
                const std::size_t c2_begin = (p == q) ? c1 + 1 : 0;
                for (std::size_t c2 = c2_begin; c2 < pi.ncombo; ++c2) {
                    const double* b = pi.at(q, c2);
                    double d2 = 0.0;
                    for (std::size_t i = 0; i < nr; ++i) {
                        const double d = b[i] - a[i];
                        d2 += d * d;
                    }
                    if (d2 < mn) mn = d2;
                    sm += d2;
                }
            }
            if (p == q && pi.ncombo == 1) mn = std::numeric_limits<double>::infinity();
            t.min2[p * pi.npat + q] = t.min2[q * pi.npat + p] = mn;
            t.sum2[p * pi.npat + q] = t.sum2[q * pi.npat + p] = sm;
        }
    }
    return t;
}

namespace {

struct Search {
    const BlockTables& t;
    int count;
    std::vector<int> chosen;
    FamilyPick best;

    explicit Search(const BlockTables& tables, int cnt, double prune_below)
        : t(tables), count(cnt) {
        best.dmin = prune_below;
        best.pair_sum = -1.0;
    }

    void run(int start, double run_min, double run_sum) {
        const int need = count - static_cast<int>(chosen.size());
        if (need == 0) {
            if (run_min > best.dmin ||
                (run_min == best.dmin && run_sum > best.pair_sum)) {
                best.dmin = run_min;
                best.pair_sum = run_sum;
                best.members = chosen;
            }
            return;
        }
        for (int c = start; c <= static_cast<int>(t.npat) - need; ++c) {
            double m = std::min(run_min, t.dmin(c, c));
            double s = run_sum + t.dsum(c, c);
            for (int f : chosen) {
                const double v = t.dmin(f, c);
                if (v < m) m = v;
                s += t.dsum(f, c);
            }
            if (m < best.dmin) continue;
            chosen.push_back(c);
            run(c + 1, m, s);
            chosen.pop_back();
        }
    }
};

}  // namespace

FamilyPick best_family_exhaustive(const BlockTables& t, int count, double prune_below) {
    if (count >= static_cast<int>(t.npat)) {
        std::vector<int> all(t.npat);
        for (std::size_t i = 0; i < t.npat; ++i) all[i] = static_cast<int>(i);
        return fixed_family(t, all);
    }
    Search s(t, count, prune_below);
    s.run(0, std::numeric_limits<double>::infinity(), 0.0);
    FamilyPick out = std::move(s.best);
    if (out.members.empty()) out = FamilyPick{};  // everything pruned
    return out;
}

FamilyPick greedy_family(const BlockTables& t, int count) {
    const int npat = static_cast<int>(t.npat);
    if (count >= npat) {
        std::vector<int> all(npat);
        for (int i = 0; i < npat; ++i) all[i] = i;
        return fixed_family(t, all);
    }
    std::vector<int> fam;
    std::vector<double> mind(npat, std::numeric_limits<double>::infinity());
    double cur = std::numeric_limits<double>::infinity();
    if (count == 1) {
        int bi = 0;
        for (int c = 1; c < npat; ++c)
            if (t.dmin(c, c) > t.dmin(bi, bi)) bi = c;
        fam.push_back(bi);
    } else {
        int ba = 0, bb = 1;
        double bv = -1.0;
        for (int a = 0; a < npat; ++a)
            for (int b = a + 1; b < npat; ++b) {
                const double v = std::min({t.dmin(a, a), t.dmin(b, b), t.dmin(a, b)});
                if (v > bv) { bv = v; ba = a; bb = b; }
            }
        fam = {ba, bb};
        cur = bv;
        for (int c = 0; c < npat; ++c) mind[c] = std::min(t.dmin(ba, c), t.dmin(bb, c));
    }
    std::vector<char> in(npat, 0);
    for (int f : fam) in[f] = 1;
    while (static_cast<int>(fam.size()) < count) {
        int bc = -1;
        double bv = -1.0;
        for (int c = 0; c < npat; ++c) {
            if (in[c]) continue;
            const double v = std::min({cur, mind[c], t.dmin(c, c)});
            if (v > bv) { bv = v; bc = c; }
        }
        fam.push_back(bc);
        in[bc] = 1;
        cur = bv;
        for (int c = 0; c < npat; ++c) mind[c] = std::min(mind[c], t.dmin(bc, c));
    }
    std::sort(fam.begin(), fam.end());
    return fixed_family(t, fam);
}

double family_dmin_upper_bound(const BlockTables& t, int count) {
    std::vector<double> intra(t.npat);
    for (std::size_t p = 0; p < t.npat; ++p) intra[p] = t.dmin(p, p);
    if (count >= static_cast<int>(t.npat)) count = static_cast<int>(t.npat);
    std::nth_element(intra.begin(), intra.begin() + (count - 1), intra.end(),
                     std::greater<double>());
    return intra[count - 1];
}

FamilyPick fixed_family(const BlockTables& t, const std::vector<int>& members) {
    FamilyPick out;
    out.members = members;
    out.dmin = std::numeric_limits<double>::infinity();
    out.pair_sum = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i; j < members.size(); ++j) {
            out.dmin = std::min(out.dmin, t.dmin(members[i], members[j]));
            out.pair_sum += t.dsum(members[i], members[j]);
        }
    }
    return out;
}

}  // namespace vlcgsm::detail
