#pragma once
// "OMGA" container for encoded streams.
//
//   offset  size  field
//   0       4     magic 'O' 'M' 'G' 'A'
//   4       1     version (0x01)
//   5       1     codec (0x01 omega, 0x02 gamma, 0x03 delta)
//   6       8     bit count, little-endian
//   14      ...   payload, bits packed MSB-first, zero padded

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bitstring.hpp"
#include "codecs.hpp"
#include "errors.hpp"

namespace omegalab {

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{0x4F, 0x4D, 0x47, 0x41};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::size_t kContainerHeaderSize = 14;

struct Container {
    Code code = Code::omega;
    BitString bits;
};

inline std::vector<std::uint8_t> write_container(Code code, const BitString& bits) {
    std::vector<std::uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
    out.push_back(kContainerVersion);
    out.push_back(static_cast<std::uint8_t>(code));
    const auto count = static_cast<std::uint64_t>(bits.size());
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
    const auto payload = bits.to_bytes();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

inline bool has_container_magic(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 4 && std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin());
}

inline Container read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize) throw FormatError("container shorter than its 14-byte header");
    if (!has_container_magic(bytes)) throw FormatError("bad magic, expected OMGA");
    if (bytes[4] != kContainerVersion) throw FormatError("unsupported container version " + std::to_string(bytes[4]));
    const std::uint8_t codec = bytes[5];
    if (codec < 1 || codec > 3) throw FormatError("unknown codec byte " + std::to_string(codec));
    std::uint64_t count = 0;
    for (int i = 0; i < 8; ++i) count |= static_cast<std::uint64_t>(bytes[6 + i]) << (8 * i);
    if (count > (bytes.size() - kContainerHeaderSize) * 8) throw FormatError("bit count exceeds payload size");
    return {static_cast<Code>(codec), BitString::from_bytes(bytes.subspan(kContainerHeaderSize), count)};
}

}  // namespace omegalab
