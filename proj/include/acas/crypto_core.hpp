#pragma once

// Cryptographic derivations used by both the RECS generator and the receiver:
// RECS key derivation, IV construction, offset cyphertext, random offset
// allocation and RECS encryption/decryption.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "acas/bit_sequence.hpp"
#include "acas/octets.hpp"

namespace acas {

using Block128 = std::array<std::uint8_t, 16>;
using Digest256 = std::array<std::uint8_t, 32>;

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

Digest256 sha256(std::span<const std::uint8_t> message);

// Single AES-256 block encryption (the CIPH function of the modes of operation).
Block128 aes256_encrypt_block(std::span<const std::uint8_t, 32> key, const Block128& in);

// AES-256 ECB over a whole buffer; used for counter-mode keystreams.
Octets aes256_ecb_encrypt(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t> data);

Octets aes256_ofb(std::span<const std::uint8_t, 32> key, const Block128& iv,
                  std::span<const std::uint8_t> data);
Octets aes256_cbc_encrypt(std::span<const std::uint8_t, 32> key, const Block128& iv,
                          std::span<const std::uint8_t> data);
Octets aes256_cbc_decrypt(std::span<const std::uint8_t, 32> key, const Block128& iv,
                          std::span<const std::uint8_t> data);

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultOsnmaKeyBytes = 16;

// TESLA chain key together with the 32-bit GST tag of its 30-second block.
class OsnmaKey {
 public:
  OsnmaKey(Octets bytes, std::uint32_t gst_sf);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::uint32_t gst_sf() const noexcept { return gst_sf_; }

  friend bool operator==(const OsnmaKey&, const OsnmaKey&) = default;

 private:
  Octets bytes_;
  std::uint32_t gst_sf_;
};

struct RecsKey {
  Digest256 bytes{};
  friend bool operator==(const RecsKey&, const RecsKey&) = default;
};

struct InitVector {
  Block128 bytes{};
  friend bool operator==(const InitVector&, const InitVector&) = default;
};

class OffsetCyphertext {
 public:
  explicit OffsetCyphertext(std::vector<Block128> blocks);

  std::span<const Block128> blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  // Number of RECS slots whose offsets this cyphertext can serve.
  std::size_t slot_capacity() const noexcept { return blocks_.size() / 3; }

  // Byte B_i^k: slot i (1-based) occupies blocks 3i-2..3i, whose 48 bytes map
  // in order to SVID indices 1..48.
  std::uint8_t offset_byte(std::size_t slot_index, int svid_index) const;

 private:
  std::vector<Block128> blocks_;
};

// Random RECS delay in 8-ms units.
struct RandomOffset {
  unsigned units = 0;

  int milliseconds() const noexcept { return static_cast<int>(units) * 8; }
  double seconds() const noexcept { return units * 0.008; }
  friend bool operator==(const RandomOffset&, const RandomOffset&) = default;
};

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

// K' = SHA-256(K). The GST tag does not enter.
RecsKey derive_recs_key(const OsnmaKey& key);

// GST_SF big-endian followed by 96 zero bits.
Block128 build_plaintext(std::uint32_t gst_sf);

// First 128 bits of SHA-256(plaintext).
InitVector compute_iv(const Block128& plaintext);

// AES-256-OFB keystream over an all-zero plaintext of n_blocks blocks.
OffsetCyphertext generate_offset_cyphertext(const RecsKey& key, const InitVector& iv,
                                            std::size_t n_blocks);

// B_i^k mod (dtau_max + 1). Throws Error{Structural} for svid outside 1..36
// or when the cyphertext does not cover slot i.
RandomOffset offset_for(const OffsetCyphertext& cyphertext, std::size_t slot_index, int svid,
                        unsigned dtau_max);

// AES-256-CBC over 128-bit aligned payloads; length is preserved.
BitBlockSequence encrypt_ecs(const BitBlockSequence& ecs, const RecsKey& key, const InitVector& iv);
BitBlockSequence decrypt_recs(const BitBlockSequence& recs, const RecsKey& key,
                              const InitVector& iv);

}  // namespace acas
