#include "detection.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace vlcgsm {

double q_function(double u) {
    return 0.5 * std::erfc(u / std::sqrt(2.0));
}

int hamming(std::uint32_t a, std::uint32_t b) {
    return std::popcount(a ^ b);
}

MlDetector::MlDetector(const Matrix& h, const SignalSet& set, double responsivity)
    : a_(set.cardinality()), nr_(h.rows), g_(signal_images(h, set)) {
    for (double& v : g_) v *= responsivity;
}

std::size_t MlDetector::detect(const double* y) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    const double* g = g_.data();
    for (std::size_t k = 0; k < a_; ++k, g += nr_) {
        double d = 0.0;
        for (std::size_t i = 0; i < nr_; ++i) {
            const double e = y[i] - g[i];
            d += e * e;
        }
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

DetectionResult ml_detect(std::span<const double> y, const Matrix& h,
                          const SignalSet& set, double responsivity) {
    if (y.size() != h.rows) throw ConfigError("received vector length != N_r");
    MlDetector det(h, set, responsivity);
    DetectionResult out;
    out.index = det.detect(y.data());
    out.label = set.label(out.index);
    return out;
}

double pep(const Matrix& h, std::span<const double> x1, std::span<const double> x2,
           double responsivity, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (x1.size() != h.cols || x2.size() != h.cols)
        throw ConfigError("signal vector length != N_t");
    double d2 = 0.0;
    for (std::size_t i = 0; i < h.rows; ++i) {
        double acc = 0.0;
        const double* row = h.a.data() + i * h.cols;
        for (std::size_t j = 0; j < h.cols; ++j) acc += row[j] * (x2[j] - x1[j]);
        d2 += acc * acc;
    }
    return q_function(responsivity / (2.0 * sigma) * std::sqrt(d2));
}

BoundEvaluator::BoundEvaluator(const Matrix& h, const SignalSet& set)
    : a_(set.cardinality()), eta_(set.eta) {
    if (a_ < 2) throw ConfigError("union bound needs at least two signal vectors");
    const auto g = signal_images(h, set);
    const std::size_t nr = h.rows;
    dist_.reserve(a_ * (a_ - 1) / 2);
    ham_.reserve(a_ * (a_ - 1) / 2);
    for (std::size_t i = 0; i < a_; ++i) {
        const double* gi = g.data() + i * nr;
        for (std::size_t j = i + 1; j < a_; ++j) {
            const double* gj = g.data() + j * nr;
            double d2 = 0.0;
            for (std::size_t q = 0; q < nr; ++q) {
                const double d = gj[q] - gi[q];
                d2 += d * d;
            }
            dist_.push_back(std::sqrt(d2));
            ham_.push_back(static_cast<std::uint16_t>(
                hamming(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))));
        }
    }
}

double BoundEvaluator::evaluate(double responsivity, double sigma) const {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    const double scale = responsivity / (2.0 * sigma);
    double acc = 0.0;
    for (std::size_t t = 0; t < dist_.size(); ++t)
        acc += static_cast<double>(ham_[t]) * q_function(scale * dist_[t]);
    // each unordered pair appears in both ordered directions of the bound
    return 2.0 * acc / (static_cast<double>(a_) * eta_);
}

double union_bound_ber(const Matrix& h, const SignalSet& set, double responsivity,
                       double sigma) {
    return BoundEvaluator(h, set).evaluate(responsivity, sigma);
}

}  // namespace vlcgsm
