#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acas/octets.hpp"

namespace acas {

// One spreading chip, +1 or -1.
using Chip = std::int8_t;

// Global chip/bit convention: bit 0 <-> chip +1, bit 1 <-> chip -1.
constexpr Chip chip_from_bit(bool bit) noexcept { return bit ? Chip{-1} : Chip{+1}; }
constexpr bool bit_from_chip(Chip chip) noexcept { return chip < 0; }

enum class SequenceRole : std::uint8_t { Ecs, Recs };

// Packed MSB-first bit string whose length is a positive multiple of 128 bits.
class BitBlockSequence {
 public:
  BitBlockSequence(Octets bytes, SequenceRole role);

  static BitBlockSequence from_chips(std::span<const Chip> chips, SequenceRole role);

  std::size_t bit_length() const noexcept { return bytes_.size() * 8; }
  std::size_t block_count() const noexcept { return bytes_.size() / 16; }
  SequenceRole role() const noexcept { return role_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  bool bit(std::size_t index) const { return (bytes_[index / 8] >> (7 - index % 8)) & 1U; }
  std::vector<Chip> to_chips() const;

  friend bool operator==(const BitBlockSequence&, const BitBlockSequence&) = default;

 private:
  Octets bytes_;
  SequenceRole role_;
};

}  // namespace acas
