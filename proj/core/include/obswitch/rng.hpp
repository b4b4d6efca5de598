#pragma once

#include <array>
#include <cstdint>

namespace obswitch {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: output is a pure function of (key, counter).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) noexcept;
};

/// Which independent noise source a stream feeds.
enum class Series : std::uint32_t {
    Signal = 0,       // dW driving the hidden signal / reduced process
    Observation = 1,  // dW-hat in the observation equation
    Initial = 2,      // draws for randomized starting points
};

/// Standard normal stream keyed by (seed, path index, series).
/// Two streams with distinct keys never overlap, so paths can be simulated
/// in any order or concurrently and still reproduce bit for bit.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t path_index, Series series) noexcept;

    double next() noexcept;

private:
    void refill() noexcept;

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;  // {block, path_lo, path_hi, series}
    std::array<double, 2> cache_{};
    int cached_ = 0;
};

/// Map 64 random bits to a double in (0, 1); never returns 0 or 1.
double to_open_unit(std::uint64_t bits) noexcept;

}  // namespace obswitch
