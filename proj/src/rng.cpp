#include "ionread/rng.hpp"

#include <cmath>

namespace ionread {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;  // sqrt(3) - 1

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
}

}  // namespace

std::array<std::uint32_t, 4> PhiloxStream::round10() const {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

void PhiloxStream::advance() {
    block_ = round10();
    cursor_ = 0;
    if (++counter_[0] == 0) ++counter_[1];  // low 64 bits only; stream id stays put
}

std::uint32_t PhiloxStream::next_u32() {
    if (cursor_ == 4) advance();
    return block_[cursor_++];
}

std::uint64_t PhiloxStream::next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double PhiloxStream::next_double() {
    // 53-bit mantissa, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double PhiloxStream::next_exponential(double rate) {
    return -std::log(next_double()) / rate;
}

}  // namespace ionread
