#pragma once
// BitString: an MSB-first sequence of bits, the carrier for every codeword.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace omegalab {

class BitString {
public:
    BitString() = default;

    static BitString from_string(std::string_view text) {
        BitString out;
        out.bits_.reserve(text.size());
        for (char c : text) {
            if (c == '0') {
                out.bits_.push_back(false);
            } else if (c == '1') {
                out.bits_.push_back(true);
            } else {
                throw FormatError(std::string("invalid bit character '") + c + "'");
            }
        }
        return out;
    }

    /// Unpacks `bit_count` bits stored MSB-first; trailing pad bits must be zero.
    static BitString from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t bit_count) {
        const std::uint64_t need = (bit_count + 7) / 8;
        if (bytes.size() != need) {
            throw FormatError("payload holds " + std::to_string(bytes.size()) + " bytes, bit count needs " +
                              std::to_string(need));
        }
        BitString out;
        out.bits_.reserve(bit_count);
        for (std::uint64_t i = 0; i < bit_count; ++i) {
            out.bits_.push_back(((bytes[i / 8] >> (7 - i % 8)) & 1U) != 0);
        }
        for (std::uint64_t i = bit_count; i < need * 8; ++i) {
            if (((bytes[i / 8] >> (7 - i % 8)) & 1U) != 0) throw FormatError("nonzero pad bit in final byte");
        }
        return out;
    }

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i]; }

    void push_back(bool bit) { bits_.push_back(bit); }

    /// Appends the low `width` bits of `value`, most significant first.
    void append_bits(std::uint64_t value, unsigned width) {
        for (unsigned i = width; i-- > 0;) bits_.push_back(((value >> i) & 1U) != 0);
    }

    void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

    BitString& operator+=(const BitString& other) {
        append(other);
        return *this;
    }

    friend BitString operator+(BitString lhs, const BitString& rhs) {
        lhs.append(rhs);
        return lhs;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

    [[nodiscard]] bool is_prefix_of(const BitString& other) const {
        if (size() > other.size()) return false;
        for (std::size_t i = 0; i < size(); ++i) {
            if (bits_[i] != other.bits_[i]) return false;
        }
        return true;
    }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        out.reserve(bits_.size());
        for (bool b : bits_) out.push_back(b ? '1' : '0');
        return out;
    }

    [[nodiscard]] std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
        }
        return out;
    }

private:
    std::vector<bool> bits_;
};

}  // namespace omegalab
