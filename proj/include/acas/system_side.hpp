#pragma once

// Ground-segment model: the encrypted E6C chip stream, ECS extraction at the
// scheduled slots, re-encryption into RECS files and BGD prediction.

#include <array>
#include <cstdint>
#include <vector>

#include "acas/bit_sequence.hpp"
#include "acas/crypto_core.hpp"
#include "acas/gst_time.hpp"
#include "acas/recs_format.hpp"
#include "acas/tesla_chain.hpp"

namespace acas {

struct EncryptionKey {
  std::array<std::uint8_t, 32> bytes{};
};

// Opaque encrypted E6C chips for one satellite at 5.115 Mchip/s.
struct ChipStreamModel {
  EncryptionKey k_encr;
  int svid = 1;
};

// Absolute chip count since GST 0.
using ChipIndex = std::int64_t;

ChipIndex chip_index_at(std::int64_t gst_second, std::int64_t milliseconds);

// Throws Error{Structural} unless t lies on a chip boundary (1e-6 chip).
ChipIndex chip_index_at(const GstTime& t);

GstTime chip_time(ChipIndex index);

// AES-256 counter-mode keystream, counter block = svid (octet 0) and
// chip_index / 128 (octets 8..15, big-endian); bits map to chips through the
// global bit 0 -> +1 convention.
std::vector<Chip> chips_at(const ChipStreamModel& model, ChipIndex first, std::size_t n);
std::vector<Chip> chips_at(const ChipStreamModel& model, const GstTime& start, std::size_t n);

// First chip of the ECS of a slot: slot second + delta_RECS + 8 ms * offset.
ChipIndex ecs_start_chip(const RecsFileHeader& header, const SlotLocation& location,
                         RandomOffset offset);

// Throws Error{Range} for a slot outside the file.
BitBlockSequence extract_ecs(const ChipStreamModel& model, const RecsFileHeader& header,
                             std::int64_t block0_gst, std::size_t slot, RandomOffset offset);

// Full generator path for one satellite. Throws Error{Validation} for an
// invalid header or overlapping slots and Error{Range} when the chain does
// not cover every key block.
RecsFile build_recs_file(const ChipStreamModel& model, const KeyChain& chain,
                         const RecsFileHeader& header);

struct BgdTruth {
  double bgd_true = 0.0;            // s
  double prediction_error_m = 0.0;  // deliberate prediction error
  double sigma_m = 0.0;             // published 1-sigma accuracy
  std::int64_t validity_start_gst = 0;
  std::int64_t validity_end_gst = 1;
};

BgdRecord predict_bgd(int svid, const BgdTruth& truth);

}  // namespace acas
