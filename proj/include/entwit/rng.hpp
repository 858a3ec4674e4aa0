#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace entwit {

// Philox4x32-10 counter-based generator. The output at position k of stream s
// under key (seed) is a pure function of (seed, s, k), so independent streams
// can be handed to parallel workers and still reproduce a serial run exactly.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    // Uniform on (0, 1].
    double uniform_open_low() noexcept;
    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal() noexcept;

    // Child stream keyed by (this stream, index). Does not advance this generator.
    CounterRng substream(std::uint64_t index) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }
    std::uint64_t position() const noexcept { return counter_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> block_{};
    int block_pos_ = 2;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Raw Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept;

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace entwit
