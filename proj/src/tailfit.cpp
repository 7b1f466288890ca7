#include "zipflab/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zipflab/errors.hpp"

namespace zipflab {

namespace {

// k+1 largest values, descending.  Stable partial sort keeps tie order
// equal to input order.
std::vector<double> top_order_statistics(const std::vector<double>& sample, std::size_t count) {
    std::vector<double> top(sample);
    std::stable_sort(top.begin(), top.end(), std::greater<double>());
    top.resize(std::min(count, top.size()));
    return top;
}

void check_sample(const std::vector<double>& sample, std::size_t k, std::size_t k_min) {
    if (k < k_min || sample.size() <= k)
        throw DegenerateSample("tail fit requires n > k >= " + std::to_string(k_min));
    for (double s : sample)
        if (!(s > 0.0)) throw DegenerateSample("tail fit requires strictly positive sizes");
}

// KS distance between the empirical tail (conditional on exceeding the
// threshold) and a Pareto with index m.
double pareto_ks(const std::vector<double>& top, double threshold, double m) {
    const std::size_t k = top.size();
    double ks = 0.0;
    // top is descending; ascending index j gives empirical CDF j/k .. (j+1)/k
    for (std::size_t j = 0; j < k; ++j) {
        const double s = top[k - 1 - j];
        const double model = 1.0 - std::pow(threshold / s, m);
        ks = std::max(ks, std::fabs(model - static_cast<double>(j) / k));
        ks = std::max(ks, std::fabs(model - static_cast<double>(j + 1) / k));
    }
    return ks;
}

// R^2 of the ln(rank-1/2) vs ln(size) regression over the top k.
double loglog_r2(const std::vector<double>& top) {
    const std::size_t k = top.size();
    double mx = 0, my = 0;
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = std::log(top[i]);
        ys[i] = std::log(static_cast<double>(i) + 0.5);
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy * sxy / (sxx * syy);
}

}  // namespace

std::size_t default_k(std::size_t n) {
    const auto k_pow = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.6)));
    std::size_t k = std::min(k_pow, n / 10);
    return std::max<std::size_t>(k, 2);
}

TailFit hill(const std::vector<double>& sample, std::size_t k) {
    check_sample(sample, k, 2);
    const auto top = top_order_statistics(sample, k + 1);
    const double threshold = top[k];
    double sum_log = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum_log += std::log(top[i] / threshold);
    if (sum_log <= 0.0) throw DegenerateSample("top k+1 sample values are all equal");

    TailFit fit;
    fit.method = TailFit::Method::Hill;
    fit.k = k;
    fit.threshold = threshold;
    fit.m_hat = static_cast<double>(k) / sum_log;
    fit.stderr_ = fit.m_hat / std::sqrt(static_cast<double>(k));
    std::vector<double> head(top.begin(), top.begin() + k);
    fit.ks_distance = pareto_ks(head, threshold, fit.m_hat);
    fit.r_squared = loglog_r2(head);
    return fit;
}

TailFit rank_size(const std::vector<double>& sample, std::size_t k) {
    check_sample(sample, k, 3);
    const auto top = top_order_statistics(sample, k + 1);
    std::vector<double> head(top.begin(), top.begin() + k);

    double mx = 0, my = 0;
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = std::log(head[i]);
        ys[i] = std::log(static_cast<double>(i + 1) - 0.5);
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) throw DegenerateSample("top k sample values are all equal");

    TailFit fit;
    fit.method = TailFit::Method::RankSize;
    fit.k = k;
    fit.threshold = top[k];
    fit.m_hat = -sxy / sxx;
    if (!(fit.m_hat > 0.0)) throw DegenerateSample("rank-size slope is not negative");
    fit.stderr_ = fit.m_hat * std::sqrt(2.0 / static_cast<double>(k));
    fit.ks_distance = pareto_ks(head, fit.threshold, fit.m_hat);
    fit.r_squared = loglog_r2(head);
    return fit;
}

std::vector<std::pair<double, double>> ccdf(const std::vector<double>& sample) {
    if (sample.empty()) throw DegenerateSample("ccdf requires a non-empty sample");
    std::vector<double> sorted(sample);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.emplace_back(sorted[i], static_cast<double>(sorted.size() - j) / n);
        i = j;
    }
    return out;
}

}  // namespace zipflab
