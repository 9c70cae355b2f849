#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qkdpp::gf2 {

/// Product of two polynomials over GF(2) packed LSB-first (bit i of the
/// sequence is the coefficient of z^i). Result has a.size() + b.size() words.
///
/// Karatsuba above a small schoolbook threshold; the 64x64 base multiply
/// uses PCLMULQDQ when the CPU has it.
std::vector<std::uint64_t> clmul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// 64x64 -> 128 bit carry-less multiply, portable reference.
void clmul64_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) noexcept;

/// True when the hardware carry-less multiply path is active.
bool hardware_clmul_available() noexcept;

}  // namespace qkdpp::gf2
