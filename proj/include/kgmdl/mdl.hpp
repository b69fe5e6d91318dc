#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kgmdl {

/** All description lengths are real-valued bit counts. */
using Bits = double;

/** Bits to pick one of n equally likely outcomes. Requires n >= 1. */
Bits log_uniform(std::uint64_t n);

/** Bits to pick a k-subset of an n-set, log2 C(n, k). Requires k <= n. */
Bits log_binomial(std::uint64_t n, std::uint64_t k);

/**
 * Universal integer code length for n >= 0: the Elias delta length of n + 1,
 * lambda + 2 * floor(log2(lambda + 1)) + 1 bits with lambda = floor(log2(n + 1)).
 */
Bits universal_int(std::uint64_t n);

/** Optimal prefix code length -log2(count / total). Requires 0 < count <= total. */
Bits prefix_code(std::uint64_t count, std::uint64_t total);

/**
 * Prequential plug-in code length of a sequence over a finite universe,
 * given per-element usage counts (zeros allowed) and epsilon = 1/2.
 * Order-independent closed form; the empty sequence costs 0 bits.
 */
Bits prequential(std::span<const std::uint64_t> usages, std::size_t universe_size);
Bits prequential(const std::vector<std::uint64_t>& usages, std::size_t universe_size);

} // namespace kgmdl
