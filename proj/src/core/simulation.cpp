#include "simulation.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace vlcgsm {

double received_power_sq(const Matrix& h, const SignalSet& set) {
    const auto g = signal_images(h, set);
    const std::size_t a = set.cardinality();
    if (a == 0) throw ConfigError("empty signal set");
    double acc = 0.0;
    for (double v : g) acc += v * v;
    return acc / static_cast<double>(a) / static_cast<double>(h.rows);
}

double calibrate_sigma(const Matrix& h, const SignalSet& set, double responsivity,
                       double snr_db) {
    const double pr2 = received_power_sq(h, set);
    if (!(pr2 > 0.0)) throw ConfigError("all-zero channel: cannot calibrate SNR");
    return responsivity * std::sqrt(pr2) / std::pow(10.0, snr_db / 20.0);
}

namespace {

struct BatchResult {
    std::uint64_t uses = 0;
    std::uint64_t errors = 0;
};

BatchResult run_batch(const MlDetector& det, int eta, double sigma,
                      std::uint64_t uses, std::uint64_t stream_key) {
    RandomStream rng(stream_key);
    const std::uint64_t label_mask = (std::uint64_t{1} << eta) - 1;
    const std::size_t nr = det.branches();
    double y[64];
    BatchResult out;
    out.uses = uses;
    for (std::uint64_t t = 0; t < uses; ++t) {
        const std::size_t sent = static_cast<std::size_t>(rng.bits() & label_mask);
        const double* img = det.image(sent);
        for (std::size_t i = 0; i < nr; ++i) y[i] = img[i] + sigma * rng.gaussian();
        const std::size_t got = det.detect(y);
        out.errors += static_cast<std::uint64_t>(
            hamming(static_cast<std::uint32_t>(sent), static_cast<std::uint32_t>(got)));
    }
    return out;
}

}  // namespace

BerPoint simulate_point(const Matrix& h, const SignalSet& set, double responsivity,
                        double sigma, double snr_db, double ber_bound,
                        const StoppingRule& rule, std::uint64_t master_seed,
                        std::uint64_t point_index, int threads) {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (rule.min_bit_errors == 0 || rule.max_channel_uses == 0 || rule.batch_size == 0)
        throw ConfigError("stopping rule counts must be positive");
    if (h.rows > 64) throw ConfigError("N_r > 64 unsupported");
    const MlDetector det(h, set, responsivity);
    const std::uint64_t nbatch =
        (rule.max_channel_uses + rule.batch_size - 1) / rule.batch_size;
    const unsigned nthreads = effective_threads(threads);

    BerPoint pt;
    pt.snr_db = snr_db;
    pt.ber_bound = ber_bound;

    std::uint64_t done = 0;  // batches consumed in order
    bool stopped = false;
    std::vector<BatchResult> wave;
    while (!stopped && done < nbatch) {
        const std::uint64_t w = std::min<std::uint64_t>(nbatch - done, nthreads);
        wave.assign(w, {});
        parallel_blocks(w, static_cast<int>(nthreads), [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                const std::uint64_t batch = done + k;
                const std::uint64_t begin_use = batch * rule.batch_size;
                const std::uint64_t uses =
                    std::min<std::uint64_t>(rule.batch_size, rule.max_channel_uses - begin_use);
                wave[k] = run_batch(det, set.eta, sigma, uses,
                                    derive_stream(master_seed, point_index, batch));
            }
        });
        for (std::uint64_t k = 0; k < w; ++k) {
            pt.bits_simulated += wave[k].uses * static_cast<std::uint64_t>(set.eta);
            pt.bit_errors += wave[k].errors;
            ++done;
            if (pt.bit_errors >= rule.min_bit_errors) {
                stopped = true;
                break;
            }
        }
    }
    pt.low_confidence = pt.bit_errors < rule.min_bit_errors;
    pt.ber_sim = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_simulated);
    return pt;
}

std::vector<BerPoint> run_sweep(const Matrix& h, const SignalSet& set,
                                double responsivity, const std::vector<double>& snr_db,
                                const StoppingRule& rule, std::uint64_t master_seed,
                                int threads) {
    if (snr_db.empty()) throw ConfigError("SNR grid is empty");
    const BoundEvaluator bound(h, set);
    std::vector<BerPoint> out;
    out.reserve(snr_db.size());
    for (std::size_t p = 0; p < snr_db.size(); ++p) {
        const double sigma = calibrate_sigma(h, set, responsivity, snr_db[p]);
        out.push_back(simulate_point(h, set, responsivity, sigma, snr_db[p],
                                     bound.evaluate(responsivity, sigma), rule,
                                     master_seed, p, threads));
    }
    return out;
}

}  // namespace vlcgsm
