#pragma once

// Delayed-disclosure one-way key chain with one key per 30-second block.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "acas/crypto_core.hpp"

namespace acas {

struct DisclosureSchedule {
  int delay_blocks = 1;  // key of block j is disclosed at the start of block j + delay
};

// key(m) is used for block m; hash(key(m+1)) truncated to the key length
// equals key(m), so the chain is consumed in reverse generation order and
// key(0) is the root.
class KeyChain {
 public:
  // Key length equals the seed length (1..32 octets). The last key is the
  // truncated SHA-256 of the seed.
  static KeyChain generate(std::span<const std::uint8_t> seed, std::size_t length,
                           std::int64_t block0_gst);

  const OsnmaKey& root() const noexcept { return keys_.front(); }
  const OsnmaKey& key(std::size_t block) const;
  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t key_length() const noexcept { return keys_.front().bytes().size(); }
  std::int64_t block0_gst() const noexcept { return block0_gst_; }
  // First GST second no longer covered by the chain.
  std::int64_t coverage_end() const noexcept {
    return block0_gst_ + 30 * static_cast<std::int64_t>(keys_.size());
  }
  std::int64_t block_start_gst(std::size_t block) const noexcept {
    return block0_gst_ + 30 * static_cast<std::int64_t>(block);
  }

 private:
  KeyChain(std::vector<OsnmaKey> keys, std::int64_t block0_gst)
      : keys_(std::move(keys)), block0_gst_(block0_gst) {}

  std::vector<OsnmaKey> keys_;
  std::int64_t block0_gst_;
};

struct KeyLookup {
  std::size_t block = 0;
  OsnmaKey key;
  std::int64_t disclosure_gst = 0;
};

// Chain hash step: SHA-256 truncated to the key length.
Octets chain_hash(std::span<const std::uint8_t> key);

// Block index, key and disclosure time for a GST second. Throws Error{Range}
// outside [block0_gst, coverage_end).
KeyLookup key_for_gst(const KeyChain& chain, std::int64_t gst, DisclosureSchedule schedule = {});

std::int64_t disclosure_gst(std::int64_t block0_gst, std::size_t block, DisclosureSchedule schedule);

// True iff hashing the candidate forward `block` times reproduces the root.
bool verify_key(const OsnmaKey& candidate, std::size_t block, const OsnmaKey& root);
bool verify_key(std::span<const std::uint8_t> candidate, std::size_t block,
                std::span<const std::uint8_t> root);

// Receiver-side view of the chain: releases keys only once their disclosure
// time has passed and checks them against the published root.
class KeyDisclosureFeed {
 public:
  KeyDisclosureFeed(const KeyChain& chain, DisclosureSchedule schedule)
      : chain_(&chain), schedule_(schedule) {}

  // Throws Error{KeyNotDisclosed} when now_gst precedes the disclosure time,
  // Error{Range} when the block is outside the chain.
  const OsnmaKey& disclosed_key(std::size_t block, std::int64_t now_gst) const;
  std::int64_t disclosure_time(std::size_t block) const {
    return disclosure_gst(chain_->block0_gst(), block, schedule_);
  }
  const KeyChain& chain() const noexcept { return *chain_; }

 private:
  const KeyChain* chain_;
  DisclosureSchedule schedule_;
};

}  // namespace acas
