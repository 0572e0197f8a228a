// Development probe: print the full-search optimum for GSM(7,2,4).
#include <cstdio>

#include "core/channel.hpp"
#include "core/geometry.hpp"
#include "core/placement.hpp"

using namespace vlcgsm;

int main() {
    GridSpec tx{4, 4, 0.6, {2.5, 2.5, 3.0}};
    GridSpec rxg{2, 2, 0.1, {2.5, 2.5, 0.8}};
    std::vector<Emitter> pool;
    for (const auto& p : grid_positions(tx)) pool.push_back(Emitter{p});
    std::vector<Detector> rx;
    for (const auto& p : grid_positions(rxg)) {
        Detector d;
        d.position = p;
        d.fov = 85.0 * 3.141592653589793 / 180.0;
        rx.push_back(d);
    }
    SchemeConfig cfg;
    cfg.kind = SchemeKind::GSM;
    cfg.n_tx = 7;
    cfg.n_active = 2;
    cfg.levels = 4;
    cfg.policy = PatternPolicy::Optimized;
    const auto res =
        optimize_placement(pool, rx, make_lambertian(60.0 * 3.141592653589793 / 180.0),
                           cfg, 5, 2);
    for (const auto& cand : res.ranked) {
        std::printf("dmin=%.15e davg=%.15e cells=", cand.d_min, cand.d_avg);
        for (int c : cand.cells) std::printf("%d ", c);
        std::printf("\n");
    }
    return 0;
}
