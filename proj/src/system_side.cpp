#include "acas/system_side.hpp"

#include <cmath>
#include <string>

#include "acas/constants.hpp"
#include "acas/error.hpp"
#include "acas/slot_crypto.hpp"

namespace acas {

namespace c = constants;

ChipIndex chip_index_at(std::int64_t gst_second, std::int64_t milliseconds) {
  return gst_second * c::kChipsPerSecond + milliseconds * c::kChipsPerMillisecond;
}

ChipIndex chip_index_at(const GstTime& t) {
  double chips = t.fraction() * c::kChipRate;
  double rounded = std::round(chips);
  if (std::abs(chips - rounded) > 1e-6) {
    throw Error(ErrorKind::Structural, "start time is not aligned to a chip boundary");
  }
  return t.whole_seconds() * c::kChipsPerSecond + static_cast<ChipIndex>(rounded);
}

GstTime chip_time(ChipIndex index) {
  std::int64_t s = index / c::kChipsPerSecond;
  std::int64_t rem = index % c::kChipsPerSecond;
  return GstTime(s, static_cast<double>(rem) / c::kChipRate);
}

std::vector<Chip> chips_at(const ChipStreamModel& model, ChipIndex first, std::size_t n) {
  if (first < 0) throw Error(ErrorKind::Structural, "negative chip index");
  std::vector<Chip> chips(n);
  if (n == 0) return chips;

  const std::int64_t first_block = first / 128;
  const std::int64_t last_block = (first + static_cast<ChipIndex>(n) - 1) / 128;
  const auto blocks = static_cast<std::size_t>(last_block - first_block + 1);

  Octets counters(blocks * 16, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint8_t* ctr = counters.data() + 16 * b;
    ctr[0] = static_cast<std::uint8_t>(model.svid);
    auto idx = static_cast<std::uint64_t>(first_block) + b;
    for (int k = 0; k < 8; ++k) ctr[15 - k] = static_cast<std::uint8_t>(idx >> (8 * k));
  }
  Octets stream = aes256_ecb_encrypt(model.k_encr.bytes, counters);

  const auto skip = static_cast<std::size_t>(first - first_block * 128);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t bit = skip + i;
    chips[i] = chip_from_bit((stream[bit / 8] >> (7 - bit % 8)) & 1U);
  }
  return chips;
}

std::vector<Chip> chips_at(const ChipStreamModel& model, const GstTime& start, std::size_t n) {
  return chips_at(model, chip_index_at(start), n);
}

ChipIndex ecs_start_chip(const RecsFileHeader& header, const SlotLocation& location,
                         RandomOffset offset) {
  return chip_index_at(location.gst_second,
                       header.recs_offset_ms + static_cast<std::int64_t>(offset.milliseconds()));
}

BitBlockSequence extract_ecs(const ChipStreamModel& model, const RecsFileHeader& header,
                             std::int64_t block0_gst, std::size_t slot, RandomOffset offset) {
  SlotLocation loc = locate_slot(header, block0_gst, slot);
  auto chips = chips_at(model, ecs_start_chip(header, loc, offset), header.n_chips);
  return BitBlockSequence::from_chips(chips, SequenceRole::Ecs);
}

RecsFile build_recs_file(const ChipStreamModel& model, const KeyChain& chain,
                         const RecsFileHeader& header) {
  validate(header);
  if (model.svid != header.svid) throw Error(ErrorKind::Validation, "chip model SVID differs from header");
  // Consecutive slots must not overlap even at the largest random delay.
  double span_s = header.n_chips / c::kChipRate + c::kOffsetUnitSeconds * header.dtau_max;
  if (span_s > header.recs_period) {
    throw Error(ErrorKind::Validation, "RECS slots overlap: n_chips/Rc + 8 ms * dtau_max exceeds the period");
  }

  const std::int64_t block0 = chain.block0_gst();
  const std::size_t n_slots = header.slot_count();
  if (n_slots > 0) {
    SlotLocation last = locate_slot(header, block0, n_slots - 1);
    if (last.key_block >= chain.size()) {
      throw Error(ErrorKind::Range, "key chain does not cover block " + std::to_string(last.key_block));
    }
  }

  const InitVector iv = file_iv(chain.key(iv_block(header, block0)));
  RecsFile file{header, {}};
  file.slots.reserve(n_slots);
  for (std::size_t i = 0; i < n_slots; ++i) {
    SlotLocation loc = locate_slot(header, block0, i);
    SlotCrypto sc = derive_slot_crypto(header, loc, iv, chain.key(loc.key_block));
    auto chips = chips_at(model, ecs_start_chip(header, loc, sc.offset), header.n_chips);
    file.slots.push_back(encrypt_ecs(BitBlockSequence::from_chips(chips, SequenceRole::Ecs), sc.key, iv));
  }
  return file;
}

BgdRecord predict_bgd(int svid, const BgdTruth& truth) {
  BgdRecord r;
  r.svid = svid;
  r.bgd_e1_e6 = truth.bgd_true + truth.prediction_error_m / c::kSpeedOfLight;
  r.sigma_bgd = truth.sigma_m / c::kSpeedOfLight;
  r.validity_start_gst = truth.validity_start_gst;
  r.validity_end_gst = truth.validity_end_gst;
  return r;
}

}  // namespace acas
