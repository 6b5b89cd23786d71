#include "acas/tesla_chain.hpp"

#include <algorithm>

#include "acas/error.hpp"
#include "acas/gst_time.hpp"

namespace acas {

Octets chain_hash(std::span<const std::uint8_t> key) {
  Digest256 d = sha256(key);
  return Octets(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(key.size()));
}

KeyChain KeyChain::generate(std::span<const std::uint8_t> seed, std::size_t length,
                            std::int64_t block0_gst) {
  if (length == 0) throw Error(ErrorKind::Structural, "key chain length must be >= 1");
  if (seed.empty() || seed.size() > 32) {
    throw Error(ErrorKind::Structural, "chain seed must be 1..32 octets");
  }
  if (block0_gst < 0 || block0_gst % 30 != 0) {
    throw Error(ErrorKind::Structural, "block0_gst must be a non-negative multiple of 30");
  }

  Digest256 d = sha256(seed);
  Octets current(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(seed.size()));

  // Generate from the last block backwards.
  std::vector<Octets> raw(length);
  raw[length - 1] = current;
  for (std::size_t m = length - 1; m-- > 0;) raw[m] = chain_hash(raw[m + 1]);

  std::vector<OsnmaKey> keys;
  keys.reserve(length);
  for (std::size_t m = 0; m < length; ++m) {
    keys.emplace_back(std::move(raw[m]), gst_sf_tag(block0_gst + 30 * static_cast<std::int64_t>(m)));
  }
  return KeyChain(std::move(keys), block0_gst);
}

const OsnmaKey& KeyChain::key(std::size_t block) const {
  if (block >= keys_.size()) {
    throw Error(ErrorKind::Range, "block " + std::to_string(block) + " outside key chain");
  }
  return keys_[block];
}

std::int64_t disclosure_gst(std::int64_t block0_gst, std::size_t block, DisclosureSchedule schedule) {
  return block0_gst + 30 * (static_cast<std::int64_t>(block) + schedule.delay_blocks);
}

KeyLookup key_for_gst(const KeyChain& chain, std::int64_t gst, DisclosureSchedule schedule) {
  if (schedule.delay_blocks < 1) throw Error(ErrorKind::Structural, "disclosure delay must be >= 1");
  if (gst < chain.block0_gst() || gst >= chain.coverage_end()) {
    throw Error(ErrorKind::Range, "GST " + std::to_string(gst) + " outside key chain coverage");
  }
  auto block = static_cast<std::size_t>((gst - chain.block0_gst()) / 30);
  return KeyLookup{block, chain.key(block), disclosure_gst(chain.block0_gst(), block, schedule)};
}

bool verify_key(std::span<const std::uint8_t> candidate, std::size_t block,
                std::span<const std::uint8_t> root) {
  if (candidate.size() != root.size()) return false;
  Octets k(candidate.begin(), candidate.end());
  for (std::size_t i = 0; i < block; ++i) k = chain_hash(k);
  return std::equal(k.begin(), k.end(), root.begin(), root.end());
}

bool verify_key(const OsnmaKey& candidate, std::size_t block, const OsnmaKey& root) {
  return verify_key(candidate.bytes(), block, root.bytes());
}

const OsnmaKey& KeyDisclosureFeed::disclosed_key(std::size_t block, std::int64_t now_gst) const {
  const OsnmaKey& key = chain_->key(block);
  std::int64_t when = disclosure_time(block);
  if (now_gst < when) {
    throw Error(ErrorKind::KeyNotDisclosed, "key not yet disclosed: block " + std::to_string(block) +
                                                " is released at GST " + std::to_string(when) +
                                                ", now " + std::to_string(now_gst));
  }
  if (!verify_key(key, block, chain_->root())) {
    throw Error(ErrorKind::KeyVerification, "disclosed key fails chain verification");
  }
  return key;
}

}  // namespace acas
