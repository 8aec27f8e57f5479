#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so independent cells of a computation reproduce
// regardless of the order or thread they run on.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace snrshrink {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

class CounterRng {
public:
    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(detail::splitmix64(detail::splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

    constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
        return detail::splitmix64(key_ ^ detail::splitmix64(counter));
    }

    std::uint64_t next_u64() noexcept { return at(counter_++); }

    // Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Box-Muller; the second variate of each pair is cached.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        has_spare_ = true;
        return r * std::cos(angle);
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace snrshrink
