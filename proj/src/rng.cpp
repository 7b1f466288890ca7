#include "zipflab/rng.hpp"

#include <cmath>

namespace zipflab {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t key) : key_(key), state_(key) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t replica, std::string_view purpose)
    : RngStream(mix64(mix64(mix64(seed + kGamma) ^ (replica * kGamma + 1)) ^ fnv1a(purpose))) {}

RngStream::result_type RngStream::operator()() {
    state_ += kGamma;
    return mix64(state_);
}

double RngStream::uniform() {
    // 53-bit mantissa, offset by half an ulp to stay strictly inside (0,1)
    return (static_cast<double>((*this)() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925287 * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

double RngStream::exponential(double rate) {
    return -std::log(uniform()) / rate;
}

std::uint64_t RngStream::poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t k = 0;
    double t = exponential(1.0);
    while (t < mean) {
        ++k;
        t += exponential(1.0);
    }
    return k;
}

RngStream RngStream::fork(std::uint64_t child) const {
    return RngStream(mix64(key_ ^ mix64(child * kGamma + 0x632be59bd9b4e019ULL)));
}

}  // namespace zipflab
