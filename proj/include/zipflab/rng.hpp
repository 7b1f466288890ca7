#pragma once

#include <cstdint>
#include <string_view>

namespace zipflab {

// Counter-based random stream keyed by (seed, replica, purpose).
// The generator is splitmix64: state walks a keyed arithmetic sequence and
// each output is a bijective mix of the state, so identical keys always
// reproduce identical streams regardless of scheduling, and forked
// substreams (one per firm) are cheap value objects.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t replica, std::string_view purpose);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()();

    // Uniform on the open interval (0,1).
    double uniform();
    // Standard normal (Box-Muller, pair cached).
    double normal();
    // Exponential with the given rate (mean 1/rate).
    double exponential(double rate);
    // Exact Poisson draw by summing unit exponentials; O(mean).
    std::uint64_t poisson(double mean);

    // Derive an independent substream (e.g. per firm id) without
    // consuming state from this stream.
    RngStream fork(std::uint64_t child) const;

private:
    explicit RngStream(std::uint64_t key);

    std::uint64_t key_;    // stream identity, never advanced
    std::uint64_t state_;  // current counter position
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace zipflab
