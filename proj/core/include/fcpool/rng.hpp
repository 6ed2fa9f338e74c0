#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fcpool {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox-4x32 with 10 rounds (Salmon et al. counter-based generator).
Philox4x32Counter philox4x32_10(Philox4x32Counter counter, Philox4x32Key key);

/// Counter-based random stream.
///
/// A stream is identified by (seed, stream id); draw number d of a stream is a
/// pure function of (seed, stream id, d). Replications that each own a stream
/// can therefore run in any order, on any thread, and reproduce bit-exactly.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

    /// Exp(rate) by inversion.
    double exponential(double rate) noexcept;

    std::uint64_t draws() const noexcept { return draw_; }

private:
    Philox4x32Key key_{};
    std::uint64_t stream_ = 0;
    std::uint64_t draw_ = 0;
    Philox4x32Counter block_{};
    int cached_ = 0;
};

}  // namespace fcpool
