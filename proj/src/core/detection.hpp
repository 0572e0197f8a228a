#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modulation.hpp"

namespace vlcgsm {

// Standard normal tail via erfc; stable to far below 1e-300.
double q_function(double u);

int hamming(std::uint32_t a, std::uint32_t b);

struct DetectionResult {
    std::size_t index = 0;
    std::uint32_t label = 0;
};

// argmin_k ||y - r H x_k||^2, ties to the lowest index.
DetectionResult ml_detect(std::span<const double> y, const Matrix& h,
                          const SignalSet& set, double responsivity);

// Precomputed r*H*x_k images for the Monte Carlo hot path.
class MlDetector {
public:
    MlDetector(const Matrix& h, const SignalSet& set, double responsivity);
    std::size_t detect(const double* y) const;
    std::size_t cardinality() const { return a_; }
    std::size_t branches() const { return nr_; }
    const double* image(std::size_t k) const { return g_.data() + k * nr_; }

private:
    std::size_t a_ = 0;
    std::size_t nr_ = 0;
    std::vector<double> g_;
};

// Eq.-form pairwise error probability Q((r/2sigma) ||H(x2 - x1)||).
double pep(const Matrix& h, std::span<const double> x1, std::span<const double> x2,
           double responsivity, double sigma);

// Union bound on BER: (1/(A eta)) sum_i sum_{j != i} d_H(i,j) Q((r/2s)||H(x_j - x_i)||).
// Both ordered directions are summed as the bound is written.
double union_bound_ber(const Matrix& h, const SignalSet& set, double responsivity,
                       double sigma);

// Reusable evaluator over a fixed (H, set): pair distances are computed once,
// each SNR point costs one pass of Q evaluations.
class BoundEvaluator {
public:
    BoundEvaluator(const Matrix& h, const SignalSet& set);
    double evaluate(double responsivity, double sigma) const;

private:
    std::size_t a_ = 0;
    int eta_ = 0;
    std::vector<double> dist_;     // upper triangle, ||H(x_j - x_i)||
    std::vector<std::uint16_t> ham_;
};

}  // namespace vlcgsm
