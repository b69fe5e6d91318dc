#include "kgmdl/mdl.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgmdl {

namespace {

constexpr double ln2 = std::numbers::ln2;

double log2_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0) / ln2;
}

} // namespace

Bits log_uniform(std::uint64_t n) {
    if (n == 0)
        throw std::domain_error("log_uniform: n must be >= 1");
    return std::log2(static_cast<double>(n));
}

Bits log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        throw std::domain_error("log_binomial: k must be <= n");
    if (k == 0 || k == n)
        return 0.0;
    return log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k);
}

Bits universal_int(std::uint64_t n) {
    if (n == UINT64_MAX)
        throw std::domain_error("universal_int: n + 1 overflows");
    const auto lambda = static_cast<std::uint64_t>(std::bit_width(n + 1) - 1);
    const auto inner = static_cast<std::uint64_t>(std::bit_width(lambda + 1) - 1);
    return static_cast<double>(lambda + 2 * inner + 1);
}

Bits prefix_code(std::uint64_t count, std::uint64_t total) {
    if (count == 0 || count > total)
        throw std::domain_error("prefix_code: need 0 < count <= total");
    return std::log2(static_cast<double>(total)) - std::log2(static_cast<double>(count));
}

Bits prequential(std::span<const std::uint64_t> usages, std::size_t universe_size) {
    if (universe_size == 0)
        throw std::domain_error("prequential: empty universe");
    if (usages.size() > universe_size)
        throw std::domain_error("prequential: more usage entries than universe elements");

    constexpr double eps = 0.5;
    std::uint64_t n = 0;
    double sum = 0.0; // sum over elements of ln Gamma(usage + eps) - ln Gamma(eps)
    for (auto u : usages) {
        n += u;
        if (u > 0)
            sum += std::lgamma(static_cast<double>(u) + eps) - std::lgamma(eps);
    }
    if (n == 0)
        return 0.0;
    const double ke = static_cast<double>(universe_size) * eps;
    const double denom = std::lgamma(static_cast<double>(n) + ke) - std::lgamma(ke);
    return (denom - sum) / ln2;
}

Bits prequential(const std::vector<std::uint64_t>& usages, std::size_t universe_size) {
    return prequential(std::span<const std::uint64_t>(usages), universe_size);
}

} // namespace kgmdl
