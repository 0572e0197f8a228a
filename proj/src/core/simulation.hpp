#pragma once

#include <cstdint>
#include <vector>

#include "detection.hpp"
#include "modulation.hpp"

namespace vlcgsm {

// Average received signal power from Eq. 4, expectation uniform over the
// signal set: P_r^2 = (1/N_r) sum_i E[(H_i x)^2].
double received_power_sq(const Matrix& h, const SignalSet& set);

// sigma for a target average received SNR (dB): gamma = r^2 P_r^2 / sigma^2.
double calibrate_sigma(const Matrix& h, const SignalSet& set, double responsivity,
                       double snr_db);

struct StoppingRule {
    std::uint64_t min_bit_errors = 400;
    std::uint64_t max_channel_uses = 20000000;
    std::uint64_t batch_size = 10000;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bits_simulated = 0;
    std::uint64_t bit_errors = 0;
    double ber_sim = 0.0;
    double ber_bound = 0.0;
    bool low_confidence = false;
};

// Monte Carlo BER at one noise level. Batches are numbered from 0 and the
// stopping rule is applied to cumulative counts in batch order, so the result
// is a pure function of (seed, point_index) regardless of thread count.
// snr_db and ber_bound are carried through into the returned record.
BerPoint simulate_point(const Matrix& h, const SignalSet& set, double responsivity,
                        double sigma, double snr_db, double ber_bound,
                        const StoppingRule& rule, std::uint64_t master_seed,
                        std::uint64_t point_index, int threads);

// One point per SNR grid entry, sigma calibrated from (H, set) per point.
std::vector<BerPoint> run_sweep(const Matrix& h, const SignalSet& set,
                                double responsivity, const std::vector<double>& snr_db,
                                const StoppingRule& rule, std::uint64_t master_seed,
                                int threads);

}  // namespace vlcgsm
