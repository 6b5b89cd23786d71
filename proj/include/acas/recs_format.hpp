#pragma once

// Binary RECS file codec (.recs), text BGD codec (.bgd) and the slot layout
// implied by a RECS header.
//
// .recs layout, all integers big-endian:
//   "ACRS" | version u8 = 1
//   | start_gst u64 | duration u32 | svid u8 | recs_period u32 | n_chips u32
//   | recs_offset_ms u16 | slrecs_offset u16 | dtau_max u8          (26 octets)
//   | slot payloads, n_chips/8 octets each, in slot order
//   | CRC-32 (IEEE) of every preceding octet, u32

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acas/bit_sequence.hpp"
#include "acas/octets.hpp"

namespace acas {

inline constexpr std::uint8_t kRecsFormatVersion = 1;
inline constexpr std::size_t kRecsHeaderBytes = 26;
inline constexpr std::size_t kRecsFramingBytes = 4 + 1 + kRecsHeaderBytes + 4;

struct RecsFileHeader {
  std::uint64_t start_gst = 0;       // s
  std::uint32_t duration = 0;        // s
  std::uint8_t svid = 1;
  std::uint32_t recs_period = 30;    // s
  std::uint32_t n_chips = 5120;
  std::uint16_t recs_offset_ms = 0;  // delta_RECS from the integer second
  std::uint16_t slrecs_offset = 1;   // 30-s blocks between slot and key
  std::uint8_t dtau_max = 0;         // 8-ms units

  std::size_t slot_count() const noexcept { return recs_period ? duration / recs_period : 0; }
  std::size_t slot_bytes() const noexcept { return n_chips / 8; }

  friend bool operator==(const RecsFileHeader&, const RecsFileHeader&) = default;
};

// Throws Error{Validation} naming the first violated invariant.
void validate(const RecsFileHeader& header);

struct RecsFile {
  RecsFileHeader header;
  std::vector<BitBlockSequence> slots;

  friend bool operator==(const RecsFile&, const RecsFile&) = default;
};

Octets serialize_recs(const RecsFile& file);

// Distinct error kinds: BadMagic, BadVersion, Truncated, BadChecksum,
// Validation (header or slot layout).
RecsFile parse_recs(std::span<const std::uint8_t> bytes);

std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes);

// ---------------------------------------------------------------------------
// Slot layout
// ---------------------------------------------------------------------------

struct SlotLocation {
  std::size_t slot = 0;          // 0-based slot index in the file
  std::int64_t gst_second = 0;   // integer GST second the slot period starts at
  std::size_t block = 0;         // 30-s key block containing the slot
  std::size_t position = 1;      // 1-based slot position inside the block
  std::size_t key_block = 0;     // block + SLRECS: key that unlocks the slot
};

// RECS slots per 30-second block (1 when the period is 30 s or longer).
std::size_t slots_per_block(const RecsFileHeader& header);

// Offset cyphertext length: 3 blocks per slot in a 30-second block.
std::size_t offset_cyphertext_blocks(const RecsFileHeader& header);

// Throws Error{Range} for slot >= slot_count or start before block0_gst.
SlotLocation locate_slot(const RecsFileHeader& header, std::int64_t block0_gst, std::size_t slot);

// Key block whose GST tag seeds the file-wide IV (block of start_gst).
std::size_t iv_block(const RecsFileHeader& header, std::int64_t block0_gst);

// ---------------------------------------------------------------------------
// BGD files
// ---------------------------------------------------------------------------

struct BgdRecord {
  int svid = 1;
  double bgd_e1_e6 = 0.0;   // s
  double sigma_bgd = 0.0;   // s
  std::int64_t validity_start_gst = 0;
  std::int64_t validity_end_gst = 0;

  friend bool operator==(const BgdRecord&, const BgdRecord&) = default;
};

// One record per line: svid,bgd_e1_e6,sigma_bgd,validity_start,validity_end.
// Delays are written with 17 significant digits; '#' starts a comment line.
std::string serialize_bgd(std::span<const BgdRecord> records);

// Throws Error{Parse} with the 1-based line number on malformed input and
// for records violating sigma >= 0 or a non-empty validity interval.
std::vector<BgdRecord> parse_bgd(std::string_view text);

}  // namespace acas
