#pragma once

#include <cstddef>
#include <vector>

namespace zipflab {

struct TailFit {
    enum class Method { Hill, RankSize };
    Method method = Method::Hill;
    double m_hat = 0.0;     // estimated tail index
    double stderr_ = 0.0;   // plug-in standard error
    std::size_t k = 0;      // order statistics used
    double threshold = 0.0; // size cutoff (the (k+1)-th largest for Hill)
    double ks_distance = 0.0;  // KS distance of the top-k tail to the fitted Pareto
    double r_squared = 0.0;    // log-log fit quality over the top k
};

// Hill estimator over the k largest order statistics:
// m_hat = k / sum_i ln(S_(i)/S_(k+1)), stderr = m_hat/sqrt(k).
TailFit hill(const std::vector<double>& sample, std::size_t k);

// OLS of ln(rank - 1/2) on ln size over the top k; m_hat = -slope,
// stderr = m_hat*sqrt(2/k).  The -1/2 shift removes the leading
// small-sample bias of the naive rank-size regression.
TailFit rank_size(const std::vector<double>& sample, std::size_t k);

// Default order-statistic count: ceil(n^0.6) capped at n/10, at least 2.
std::size_t default_k(std::size_t n);

// Exact empirical CCDF P(s) = #{S_i > s}/n at each distinct sample value.
std::vector<std::pair<double, double>> ccdf(const std::vector<double>& sample);

}  // namespace zipflab
