#include "fcpool/rng.hpp"

#include <cmath>

namespace fcpool {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t const product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key)
{
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

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream_id)
{
}

RandomStream::result_type RandomStream::operator()() noexcept
{
    if (cached_ == 0) {
        Philox4x32Counter const ctr{static_cast<std::uint32_t>(draw_),
                                    static_cast<std::uint32_t>(draw_ >> 32),
                                    static_cast<std::uint32_t>(stream_),
                                    static_cast<std::uint32_t>(stream_ >> 32)};
        block_ = philox4x32_10(ctr, key_);
        ++draw_;
        cached_ = 2;
    }
    int const offset = (2 - cached_) * 2;
    --cached_;
    return (static_cast<std::uint64_t>(block_[offset]) << 32) | block_[offset + 1];
}

double RandomStream::uniform() noexcept
{
    // 53 random bits, shifted by half an ulp so that 0 and 1 are excluded.
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential(double rate) noexcept
{
    return -std::log(uniform()) / rate;
}

}  // namespace fcpool
