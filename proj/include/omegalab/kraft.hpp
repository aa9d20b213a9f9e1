#pragma once
// Exact Kraft sums for omega (and the gamma/delta baselines).
//
// I_k = {n : beta(n) = k} has 2^(k-1) members that all share one codelength,
// so each block contributes a single power of two:
//   omega  S_1 = 1/2, S_k = 2^-(len(k-1) + 1)
//   gamma  S_k = 2^-k
//   delta  S_k = 2^-(2 floor(log2 k) + 1)
// Partial sums over blocks are accumulated as a histogram of exponents and
// then combined exactly, so the result does not depend on how the block
// range is split across threads.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "codecs.hpp"
#include "dyadic.hpp"
#include "errors.hpp"

namespace omegalab {

struct KraftOptions {
    /// Upper bound on K for partial_sum_beta_le.
    std::uint64_t max_blocks = std::uint64_t{1} << 36;
    /// Upper bound on N for brute_partial_sum.
    std::uint64_t max_brute = 10'000'000;
    unsigned threads = 1;
};

/// Exponent e such that S_k = 2^-e.
inline std::uint64_t block_exponent(std::uint64_t k, Code code = Code::omega) {
    if (k == 0) throw DomainError("block index k must be >= 1");
    switch (code) {
        case Code::omega: return k == 1 ? 1 : omega_len(k - 1) + 1;
        case Code::gamma: return k;
        case Code::delta: return 2 * (bit_length(k) - 1) + 1;
    }
    throw FormatError("unknown code");
}

inline Dyadic block_sum(std::uint64_t k, Code code = Code::omega) {
    return Dyadic::inverse_pow2(block_exponent(k, code));
}

namespace detail {

// Block exponents are bounded by 2*64+1 for any 64-bit k.
inline constexpr std::size_t kExponentSlots = 160;
using ExponentHistogram = std::array<std::uint64_t, kExponentSlots>;

inline Dyadic histogram_sum(const ExponentHistogram& hist) {
    std::size_t top = 0;
    for (std::size_t e = 0; e < hist.size(); ++e) {
        if (hist[e] != 0) top = e;
    }
    PosInt num = 0;
    for (std::size_t e = 0; e <= top; ++e) {
        if (hist[e] != 0) num += PosInt(hist[e]) << static_cast<unsigned>(top - e);
    }
    return Dyadic(num, top);
}

}  // namespace detail

/// Sum of S_k for k = 1..K, i.e. of 2^-len(n) over all n < 2^K.
inline Dyadic partial_sum_beta_le(std::uint64_t K, Code code = Code::omega, const KraftOptions& options = {}) {
    if (K == 0) throw DomainError("K must be >= 1");
    if (K > options.max_blocks) {
        throw ResourceLimit("K = " + std::to_string(K) + " exceeds configured cap " +
                            std::to_string(options.max_blocks));
    }
    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(K)));
    std::vector<detail::ExponentHistogram> partial(threads, detail::ExponentHistogram{});
    const std::uint64_t chunk = (K + threads - 1) / threads;
    auto work = [&](unsigned t) {
        const std::uint64_t lo = 1 + chunk * t;
        const std::uint64_t hi = std::min(K, chunk * (t + 1));
        auto& hist = partial[t];
        for (std::uint64_t k = lo; k <= hi; ++k) ++hist[block_exponent(k, code)];
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    detail::ExponentHistogram merged{};
    for (const auto& h : partial) {
        for (std::size_t e = 0; e < merged.size(); ++e) merged[e] += h[e];
    }
    return detail::histogram_sum(merged);
}

/// Direct sum of 2^-len(n) for n = 1..N, one exact addition per integer.
inline Dyadic brute_partial_sum(std::uint64_t N, Code code = Code::omega, const KraftOptions& options = {}) {
    if (N > options.max_brute) {
        throw ResourceLimit("brute-force N = " + std::to_string(N) + " exceeds oracle cap " +
                            std::to_string(options.max_brute));
    }
    Dyadic sum;
    for (std::uint64_t n = 1; n <= N; ++n) sum += Dyadic::inverse_pow2(codelength(code, n));
    return sum;
}

/// 1 - partial_sum_beta_le(K); positive for every finite K.
inline Dyadic completeness_gap(std::uint64_t K, Code code = Code::omega, const KraftOptions& options = {}) {
    return Dyadic(PosInt(1), 0) - partial_sum_beta_le(K, code, options);
}

}  // namespace omegalab
