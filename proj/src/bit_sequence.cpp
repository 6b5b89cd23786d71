#include "acas/bit_sequence.hpp"

#include <string>

#include "acas/error.hpp"

namespace acas {

BitBlockSequence::BitBlockSequence(Octets bytes, SequenceRole role)
    : bytes_(std::move(bytes)), role_(role) {
  if (bytes_.empty() || bytes_.size() % 16 != 0) {
    throw Error(ErrorKind::Structural,
                "bit sequence length " + std::to_string(bytes_.size() * 8) +
                    " is not a positive multiple of 128");
  }
}

BitBlockSequence BitBlockSequence::from_chips(std::span<const Chip> chips, SequenceRole role) {
  if (chips.empty() || chips.size() % 128 != 0) {
    throw Error(ErrorKind::Structural,
                "chip count " + std::to_string(chips.size()) + " is not a positive multiple of 128");
  }
  Octets bytes(chips.size() / 8, 0);
  for (std::size_t i = 0; i < chips.size(); ++i) {
    if (bit_from_chip(chips[i])) bytes[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return BitBlockSequence(std::move(bytes), role);
}

std::vector<Chip> BitBlockSequence::to_chips() const {
  std::vector<Chip> chips(bit_length());
  for (std::size_t i = 0; i < chips.size(); ++i) chips[i] = chip_from_bit(bit(i));
  return chips;
}

}  // namespace acas
