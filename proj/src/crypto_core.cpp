#include "acas/crypto_core.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <string>

#include "acas/constants.hpp"
#include "acas/error.hpp"

namespace acas {

namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const noexcept { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

void require_aligned(std::size_t size, const char* what) {
  if (size % constants::kAesBlockBytes != 0) {
    throw Error(ErrorKind::Structural, std::string(what) + ": length " +
                                           std::to_string(size * 8) +
                                           " bits is not a multiple of 128");
  }
}

// Runs one EVP cipher pass with padding disabled.
Octets run_cipher(const EVP_CIPHER* cipher, std::span<const std::uint8_t, 32> key,
                  const std::uint8_t* iv, std::span<const std::uint8_t> data, bool encrypt) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::bad_alloc();
  if (EVP_CipherInit_ex(ctx.get(), cipher, nullptr, key.data(), iv, encrypt ? 1 : 0) != 1) {
    throw std::runtime_error("EVP_CipherInit_ex failed");
  }
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);

  Octets out(data.size() + constants::kAesBlockBytes);
  int produced = 0;
  int tail = 0;
  if (!data.empty() &&
      EVP_CipherUpdate(ctx.get(), out.data(), &produced, data.data(),
                       static_cast<int>(data.size())) != 1) {
    throw std::runtime_error("EVP_CipherUpdate failed");
  }
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + produced, &tail) != 1) {
    throw std::runtime_error("EVP_CipherFinal_ex failed");
  }
  out.resize(static_cast<std::size_t>(produced + tail));
  return out;
}

}  // namespace

Digest256 sha256(std::span<const std::uint8_t> message) {
  Digest256 digest{};
  unsigned int len = 0;
  if (EVP_Digest(message.data(), message.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != digest.size()) {
    throw std::runtime_error("EVP_Digest(SHA-256) failed");
  }
  return digest;
}

Block128 aes256_encrypt_block(std::span<const std::uint8_t, 32> key, const Block128& in) {
  Octets out = run_cipher(EVP_aes_256_ecb(), key, nullptr, in, true);
  Block128 block{};
  std::copy_n(out.begin(), block.size(), block.begin());
  return block;
}

Octets aes256_ecb_encrypt(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t> data) {
  require_aligned(data.size(), "AES-256-ECB");
  return run_cipher(EVP_aes_256_ecb(), key, nullptr, data, true);
}

Octets aes256_ofb(std::span<const std::uint8_t, 32> key, const Block128& iv,
                  std::span<const std::uint8_t> data) {
  return run_cipher(EVP_aes_256_ofb(), key, iv.data(), data, true);
}

Octets aes256_cbc_encrypt(std::span<const std::uint8_t, 32> key, const Block128& iv,
                          std::span<const std::uint8_t> data) {
  require_aligned(data.size(), "AES-256-CBC");
  return run_cipher(EVP_aes_256_cbc(), key, iv.data(), data, true);
}

Octets aes256_cbc_decrypt(std::span<const std::uint8_t, 32> key, const Block128& iv,
                          std::span<const std::uint8_t> data) {
  require_aligned(data.size(), "AES-256-CBC");
  return run_cipher(EVP_aes_256_cbc(), key, iv.data(), data, false);
}

OsnmaKey::OsnmaKey(Octets bytes, std::uint32_t gst_sf) : bytes_(std::move(bytes)), gst_sf_(gst_sf) {
  if (bytes_.empty()) throw Error(ErrorKind::Structural, "OSNMA key must not be empty");
  if ((gst_sf_ & 0xFFFFFU) >= constants::kSecondsPerWeek) {
    throw Error(ErrorKind::Structural, "GST_SF time of week out of range");
  }
}

OffsetCyphertext::OffsetCyphertext(std::vector<Block128> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    throw Error(ErrorKind::Structural, "offset cyphertext must hold at least one block");
  }
}

std::uint8_t OffsetCyphertext::offset_byte(std::size_t slot_index, int svid_index) const {
  if (svid_index < 1 || svid_index > constants::kOffsetBytesPerSlot) {
    throw Error(ErrorKind::Structural, "SVID index outside 1..48");
  }
  if (slot_index < 1 || 3 * slot_index > blocks_.size()) {
    throw Error(ErrorKind::Structural, "offset cyphertext does not cover slot " +
                                           std::to_string(slot_index));
  }
  std::size_t byte = static_cast<std::size_t>(svid_index - 1);
  const Block128& block = blocks_[3 * (slot_index - 1) + byte / 16];
  return block[byte % 16];
}

RecsKey derive_recs_key(const OsnmaKey& key) { return RecsKey{sha256(key.bytes())}; }

Block128 build_plaintext(std::uint32_t gst_sf) {
  Block128 p{};
  p[0] = static_cast<std::uint8_t>(gst_sf >> 24);
  p[1] = static_cast<std::uint8_t>(gst_sf >> 16);
  p[2] = static_cast<std::uint8_t>(gst_sf >> 8);
  p[3] = static_cast<std::uint8_t>(gst_sf);
  return p;
}

InitVector compute_iv(const Block128& plaintext) {
  Digest256 d = sha256(plaintext);
  InitVector iv;
  std::copy_n(d.begin(), iv.bytes.size(), iv.bytes.begin());
  return iv;
}

OffsetCyphertext generate_offset_cyphertext(const RecsKey& key, const InitVector& iv,
                                            std::size_t n_blocks) {
  if (n_blocks == 0) throw Error(ErrorKind::Structural, "n_blocks must be >= 1");
  Octets zeros(n_blocks * constants::kAesBlockBytes, 0);
  Octets stream = aes256_ofb(key.bytes, iv.bytes, zeros);

  std::vector<Block128> blocks(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::copy_n(stream.begin() + static_cast<std::ptrdiff_t>(b * 16), 16, blocks[b].begin());
  }
  return OffsetCyphertext(std::move(blocks));
}

RandomOffset offset_for(const OffsetCyphertext& cyphertext, std::size_t slot_index, int svid,
                        unsigned dtau_max) {
  if (svid < 1 || svid > constants::kMaxSvid) {
    throw Error(ErrorKind::Structural, "SVID " + std::to_string(svid) + " outside 1..36");
  }
  std::uint8_t b = cyphertext.offset_byte(slot_index, svid);
  return RandomOffset{b % (dtau_max + 1U)};
}

BitBlockSequence encrypt_ecs(const BitBlockSequence& ecs, const RecsKey& key, const InitVector& iv) {
  return BitBlockSequence(aes256_cbc_encrypt(key.bytes, iv.bytes, ecs.bytes()), SequenceRole::Recs);
}

BitBlockSequence decrypt_recs(const BitBlockSequence& recs, const RecsKey& key,
                              const InitVector& iv) {
  return BitBlockSequence(aes256_cbc_decrypt(key.bytes, iv.bytes, recs.bytes()), SequenceRole::Ecs);
}

}  // namespace acas
