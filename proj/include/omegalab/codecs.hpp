#pragma once
// Elias omega codec over arbitrary-precision integers, its codelength
// formulas, and the gamma/delta baselines.
//
// Codewords are MSB-first. An omega codeword is the concatenation
// bin(n_{m-1}) ... bin(n_1) bin(n_0) 0 where n_0 = n and
// n_{j+1} = beta(n_j) - 1, stopping once the value reaches 1.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bitstring.hpp"
#include "errors.hpp"
#include "integer.hpp"

namespace omegalab {

enum class Code : std::uint8_t { omega = 1, gamma = 2, delta = 3 };

inline std::string to_string(Code code) {
    switch (code) {
        case Code::omega: return "omega";
        case Code::gamma: return "gamma";
        case Code::delta: return "delta";
    }
    return "unknown";
}

inline Code parse_code(std::string_view name) {
    if (name == "omega") return Code::omega;
    if (name == "gamma") return Code::gamma;
    if (name == "delta") return Code::delta;
    throw FormatError("unknown code '" + std::string(name) + "'");
}

template <CodecInteger Int>
struct Decoded {
    Int value;
    std::size_t bits_consumed;
};

/// Binary length floor(log2 n) + 1.
template <CodecInteger Int>
std::uint64_t beta(const Int& n) {
    if (n == 0) throw DomainError("beta: n must be >= 1");
    return bit_length(n);
}

namespace detail {

template <CodecInteger Int>
void append_binary(BitString& out, const Int& n, std::uint64_t width) {
    if constexpr (std::unsigned_integral<Int>) {
        out.append_bits(static_cast<std::uint64_t>(n), static_cast<unsigned>(width));
    } else {
        for (std::uint64_t i = width; i-- > 0;) out.push_back(test_bit(n, i));
    }
}

// Reads `width` bits starting at `pos` as an MSB-first integer.
template <CodecInteger Int>
Int read_binary(const BitString& bits, std::size_t pos, std::uint64_t width) {
    constexpr std::uint64_t limit = max_bits<Int>();
    if (limit != 0 && width > limit) {
        throw ResourceLimit("codeword value needs " + std::to_string(width) + " bits, integer type holds " +
                            std::to_string(limit));
    }
    Int value = 0;
    for (std::uint64_t i = 0; i < width; ++i) {
        if (bits[pos + i]) set_bit(value, width - 1 - i);
    }
    return value;
}

inline void require_positive(bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(what) + ": n must be >= 1");
}

}  // namespace detail

/// The length chain n_0 = n, n_{j+1} = beta(n_j) - 1, ending with 1.
template <CodecInteger Int>
std::vector<Int> omega_chain(const Int& n) {
    detail::require_positive(n != 0, "omega_chain");
    std::vector<Int> chain{n};
    while (chain.back() > 1) chain.push_back(Int(bit_length(chain.back()) - 1));
    return chain;
}

template <CodecInteger Int>
BitString omega_encode(const Int& n) {
    detail::require_positive(n != 0, "omega_encode");
    // Groups are produced from n downwards but emitted in reverse.
    std::vector<std::uint64_t> small;
    std::uint64_t top_width = 0;
    std::uint64_t next = 1;
    if (n > 1) {
        top_width = bit_length(n);
        next = top_width - 1;
    }
    while (next > 1) {
        small.push_back(next);
        next = bit_length(next) - 1;
    }
    BitString out;
    for (auto it = small.rbegin(); it != small.rend(); ++it) {
        detail::append_binary(out, *it, bit_length(*it));
    }
    if (top_width != 0) detail::append_binary(out, n, top_width);
    out.push_back(false);
    return out;
}

template <CodecInteger Int = PosInt>
Decoded<Int> omega_decode(const BitString& bits, std::size_t start = 0) {
    Int value = 1;
    std::size_t pos = start;
    for (;;) {
        if (pos >= bits.size()) throw TruncatedStream("omega: stream ended before terminating 0");
        if (!bits[pos]) {
            ++pos;
            break;
        }
        // The next group holds value + 1 bits.
        const std::size_t remaining = bits.size() - pos;
        if (value >= remaining) throw TruncatedStream("omega: group runs past end of stream");
        const auto width = static_cast<std::uint64_t>(value) + 1;
        value = detail::read_binary<Int>(bits, pos, width);
        pos += width;
    }
    return {std::move(value), pos - start};
}

/// Codelength in bits: 1 + sum over the chain of beta(n_j), without encoding.
template <CodecInteger Int>
std::uint64_t omega_len(const Int& n) {
    detail::require_positive(n != 0, "omega_len");
    if (n == 1) return 1;
    std::uint64_t width = bit_length(n);
    std::uint64_t total = 1 + width;
    std::uint64_t next = width - 1;
    while (next > 1) {
        width = bit_length(next);
        total += width;
        next = width - 1;
    }
    return total;
}

/// Iterated base-2 logarithm: applications of log2 until the value is <= 1.
inline unsigned log_star2(double x) {
    if (!(x > 0)) throw DomainError("log_star2: x must be positive");
    unsigned count = 0;
    while (x > 1.0) {
        x = std::log2(x);
        ++count;
    }
    return count;
}

/// log2 of a positive integer as a double; exact for powers of two.
inline double log2_of(const PosInt& n) {
    const std::uint64_t bits = bit_length(n);
    if (bits <= 53) return std::log2(static_cast<double>(n.convert_to<std::uint64_t>()));
    const PosInt top = n >> static_cast<unsigned>(bits - 53);
    const double mantissa = static_cast<double>(top.convert_to<std::uint64_t>()) / 4503599627370496.0;  // 2^52
    return static_cast<double>(bits - 1) + std::log2(mantissa);
}

inline unsigned log_star2(const PosInt& n) {
    detail::require_positive(n != 0, "log_star2");
    if (n == 1) return 0;
    return 1 + log_star2(log2_of(n));
}

/// Sum of log2 n_j over the omega chain (excluding the final 1).
inline double omega_chain_log2_sum(const PosInt& n) {
    double sum = 0;
    for (const auto& v : omega_chain(n)) {
        if (v > 1) sum += log2_of(v);
    }
    return sum;
}

// Gamma: beta(n) - 1 zeros followed by bin(n).
template <CodecInteger Int>
BitString gamma_encode(const Int& n) {
    detail::require_positive(n != 0, "gamma_encode");
    const std::uint64_t width = bit_length(n);
    BitString out;
    for (std::uint64_t i = 1; i < width; ++i) out.push_back(false);
    detail::append_binary(out, n, width);
    return out;
}

template <CodecInteger Int = PosInt>
Decoded<Int> gamma_decode(const BitString& bits, std::size_t start = 0) {
    std::size_t pos = start;
    std::uint64_t zeros = 0;
    while (pos < bits.size() && !bits[pos]) {
        ++zeros;
        ++pos;
    }
    if (bits.size() - pos < zeros + 1) throw TruncatedStream("gamma: stream ended inside codeword");
    Int value = detail::read_binary<Int>(bits, pos, zeros + 1);
    pos += zeros + 1;
    return {std::move(value), pos - start};
}

template <CodecInteger Int>
std::uint64_t gamma_len(const Int& n) {
    return 2 * beta(n) - 1;
}

// Delta: gamma(beta(n)) followed by the beta(n) - 1 bits of n below its leading 1.
template <CodecInteger Int>
BitString delta_encode(const Int& n) {
    detail::require_positive(n != 0, "delta_encode");
    const std::uint64_t width = bit_length(n);
    BitString out = gamma_encode(width);
    detail::append_binary(out, n, width - 1);
    return out;
}

template <CodecInteger Int = PosInt>
Decoded<Int> delta_decode(const BitString& bits, std::size_t start = 0) {
    const auto head = gamma_decode<std::uint64_t>(bits, start);
    const std::uint64_t width = head.value;
    std::size_t pos = start + head.bits_consumed;
    if (bits.size() - pos < width - 1) throw TruncatedStream("delta: stream ended inside codeword");
    Int value = detail::read_binary<Int>(bits, pos, width - 1);
    set_bit(value, width - 1);
    pos += width - 1;
    return {std::move(value), pos - start};
}

template <CodecInteger Int>
std::uint64_t delta_len(const Int& n) {
    const std::uint64_t width = beta(n);
    return (width - 1) + 2 * (bit_length(width) - 1) + 1;
}

template <CodecInteger Int>
BitString encode(Code code, const Int& n) {
    switch (code) {
        case Code::omega: return omega_encode(n);
        case Code::gamma: return gamma_encode(n);
        case Code::delta: return delta_encode(n);
    }
    throw FormatError("unknown code");
}

template <CodecInteger Int = PosInt>
Decoded<Int> decode(Code code, const BitString& bits, std::size_t start = 0) {
    switch (code) {
        case Code::omega: return omega_decode<Int>(bits, start);
        case Code::gamma: return gamma_decode<Int>(bits, start);
        case Code::delta: return delta_decode<Int>(bits, start);
    }
    throw FormatError("unknown code");
}

template <CodecInteger Int>
std::uint64_t codelength(Code code, const Int& n) {
    switch (code) {
        case Code::omega: return omega_len(n);
        case Code::gamma: return gamma_len(n);
        case Code::delta: return delta_len(n);
    }
    throw FormatError("unknown code");
}

template <CodecInteger Int>
BitString encode_stream(Code code, std::span<const Int> values) {
    BitString out;
    for (const auto& v : values) out.append(encode(code, v));
    return out;
}

/// Decodes codewords until the stream is exhausted.
template <CodecInteger Int = PosInt>
std::vector<Int> decode_stream(Code code, const BitString& bits) {
    std::vector<Int> out;
    std::size_t pos = 0;
    while (pos < bits.size()) {
        auto d = decode<Int>(code, bits, pos);
        pos += d.bits_consumed;
        out.push_back(std::move(d.value));
    }
    return out;
}

}  // namespace omegalab
