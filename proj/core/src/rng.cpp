#include "obswitch/rng.hpp"

#include <cmath>
#include <numbers>

namespace obswitch {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t path_index, Series series) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, static_cast<std::uint32_t>(path_index),
               static_cast<std::uint32_t>(path_index >> 32), static_cast<std::uint32_t>(series)} {}

void NormalStream::refill() noexcept {
    const auto out = Philox4x32::generate(counter_, key_);
    ++counter_[0];
    const double u1 = to_open_unit((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
    const double u2 = to_open_unit((static_cast<std::uint64_t>(out[2]) << 32) | out[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cache_ = {radius * std::cos(angle), radius * std::sin(angle)};
    cached_ = 2;
}

double NormalStream::next() noexcept {
    if (cached_ == 0) refill();
    return cache_[2 - cached_--];
}

}  // namespace obswitch
