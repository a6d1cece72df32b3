#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "hibound/lossless/stage.hpp"

namespace hibound::lossless {

// Two's complement to magnitude-sign, word-wise over little-endian words.
template <class U>
constexpr U tcms_word(U word) {
  using S = std::make_signed_t<U>;
  constexpr int bits = static_cast<int>(sizeof(U) * 8);
  return static_cast<U>(static_cast<U>(word << 1) ^ static_cast<U>(static_cast<S>(word) >> (bits - 1)));
}

template <class U>
constexpr U tcms_word_inverse(U word) {
  return static_cast<U>((word >> 1) ^ static_cast<U>(U{0} - (word & U{1})));
}

std::vector<std::uint8_t> tcms_encode(std::span<const std::uint8_t> input, unsigned width);
std::vector<std::uint8_t> tcms_decode(std::span<const std::uint8_t> encoded);

/// Bit-plane transpose: plane k holds bit (8w-1-k) of every symbol, planes
/// stored MSB plane first, bits MSB-first within bytes.
std::vector<std::uint8_t> bit_shuffle(std::span<const std::uint8_t> input, unsigned width);
std::vector<std::uint8_t> bit_unshuffle(std::span<const std::uint8_t> encoded);

/// Repeated-run eliminator: drops symbols equal to their predecessor.
std::vector<std::uint8_t> rre_encode(std::span<const std::uint8_t> input, unsigned width);
std::vector<std::uint8_t> rre_decode(std::span<const std::uint8_t> encoded);

/// Zero eliminator: drops all-zero symbols.
std::vector<std::uint8_t> rze_encode(std::span<const std::uint8_t> input, unsigned width);
std::vector<std::uint8_t> rze_decode(std::span<const std::uint8_t> encoded);

inline constexpr int kMaxBitmapDepth = 3;

/// The keep-bitmap and kept symbols of a reducer, before serialization.
struct Reduction {
  std::vector<std::uint8_t> bitmap;  // one bit per symbol, MSB-first
  std::vector<std::uint8_t> payload;
};

Reduction reduce_repeats(std::span<const std::uint8_t> symbols, unsigned width);
Reduction reduce_zeros(std::span<const std::uint8_t> symbols, unsigned width);

/// Canonical Huffman over bytes.
inline constexpr int kMaxHuffmanCodeLength = 16;

std::vector<std::uint8_t> huffman_encode(std::span<const std::uint8_t> input);
std::vector<std::uint8_t> huffman_decode(std::span<const std::uint8_t> encoded);

/// Length-limited Huffman code lengths for a byte histogram (0 = unused symbol).
std::array<std::uint8_t, 256> huffman_code_lengths(const std::array<std::uint64_t, 256>& histogram);

}  // namespace hibound::lossless
