#include "acas/recs_format.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "acas/constants.hpp"
#include "acas/error.hpp"

namespace acas {

namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'C', 'R', 'S'};

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

}  // namespace

void validate(const RecsFileHeader& h) {
  if (h.svid < 1 || h.svid > constants::kMaxSvid) invalid("svid outside 1..36");
  if (h.recs_period == 0) invalid("RECS period must be positive");
  if (30 % h.recs_period != 0 && h.recs_period % 30 != 0) {
    invalid("RECS period must divide 30 or be a multiple of 30");
  }
  if (h.n_chips == 0 || h.n_chips % 128 != 0) {
    invalid("n_chips " + std::to_string(h.n_chips) + " is not a positive multiple of 128");
  }
  if (h.duration == 0 || h.duration % h.recs_period != 0) {
    invalid("duration must be a positive multiple of the RECS period");
  }
  if (h.recs_offset_ms >= 1000) invalid("RECS offset must be below 1000 ms");
}

std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for very large buffers.
  constexpr std::size_t kChunk = 1U << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    std::size_t n = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

Octets serialize_recs(const RecsFile& file) {
  const RecsFileHeader& h = file.header;
  validate(h);
  if (file.slots.size() != h.slot_count()) {
    invalid("slot count " + std::to_string(file.slots.size()) + " does not match header (" +
            std::to_string(h.slot_count()) + ")");
  }
  for (const auto& slot : file.slots) {
    if (slot.bit_length() != h.n_chips) invalid("slot length does not match n_chips");
  }

  ByteWriter w;
  w.reserve(kRecsFramingBytes + file.slots.size() * h.slot_bytes());
  w.bytes(kMagic);
  w.u8(kRecsFormatVersion);
  w.u64(h.start_gst);
  w.u32(h.duration);
  w.u8(h.svid);
  w.u32(h.recs_period);
  w.u32(h.n_chips);
  w.u16(h.recs_offset_ms);
  w.u16(h.slrecs_offset);
  w.u8(h.dtau_max);
  for (const auto& slot : file.slots) w.bytes(slot.bytes());
  std::uint32_t crc = crc32_ieee(w.data());
  w.u32(crc);
  return std::move(w).take();
}

RecsFile parse_recs(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw Error(ErrorKind::BadMagic, "not a RECS file (bad magic)");
  }
  if (std::uint8_t v = r.u8(); v != kRecsFormatVersion) {
    throw Error(ErrorKind::BadVersion, "unsupported RECS version " + std::to_string(v));
  }

  RecsFile file;
  RecsFileHeader& h = file.header;
  h.start_gst = r.u64();
  h.duration = r.u32();
  h.svid = r.u8();
  h.recs_period = r.u32();
  h.n_chips = r.u32();
  h.recs_offset_ms = r.u16();
  h.slrecs_offset = r.u16();
  h.dtau_max = r.u8();

  // Expected size is only meaningful once the header layout is sane; the CRC
  // decides first so corrupted fields report as checksum failures.
  bool layout_known = h.recs_period != 0 && h.n_chips % 8 == 0;
  std::uint64_t expected = kRecsFramingBytes;
  if (layout_known) {
    expected += static_cast<std::uint64_t>(h.duration / h.recs_period) * (h.n_chips / 8);
    if (bytes.size() < expected) throw Error(ErrorKind::Truncated, "RECS file truncated");
  }
  if (bytes.size() < kRecsFramingBytes) throw Error(ErrorKind::Truncated, "RECS file truncated");

  std::size_t body_end = bytes.size() - 4;
  std::uint32_t stored = 0;
  for (auto b : bytes.subspan(body_end)) stored = (stored << 8) | b;
  if (crc32_ieee(bytes.first(body_end)) != stored) {
    throw Error(ErrorKind::BadChecksum, "RECS checksum mismatch");
  }

  validate(h);
  if (bytes.size() != expected) invalid("RECS file has trailing octets");

  file.slots.reserve(h.slot_count());
  for (std::size_t i = 0; i < h.slot_count(); ++i) {
    auto s = r.bytes(h.slot_bytes());
    file.slots.emplace_back(Octets(s.begin(), s.end()), SequenceRole::Recs);
  }
  return file;
}

std::size_t slots_per_block(const RecsFileHeader& header) {
  if (header.recs_period == 0) invalid("RECS period must be positive");
  return header.recs_period >= 30 ? 1 : 30 / header.recs_period;
}

std::size_t offset_cyphertext_blocks(const RecsFileHeader& header) {
  return 3 * slots_per_block(header);
}

SlotLocation locate_slot(const RecsFileHeader& header, std::int64_t block0_gst, std::size_t slot) {
  if (slot >= header.slot_count()) {
    throw Error(ErrorKind::Range, "slot " + std::to_string(slot) + " outside RECS file (" +
                                      std::to_string(header.slot_count()) + " slots)");
  }
  auto start = static_cast<std::int64_t>(header.start_gst);
  if (start < block0_gst) throw Error(ErrorKind::Range, "RECS file starts before the key chain");

  SlotLocation loc;
  loc.slot = slot;
  loc.gst_second = start + static_cast<std::int64_t>(slot) * header.recs_period;
  std::int64_t since = loc.gst_second - block0_gst;
  loc.block = static_cast<std::size_t>(since / 30);
  std::int64_t into_block = since % 30;
  loc.position = header.recs_period >= 30
                     ? 1
                     : static_cast<std::size_t>(into_block / header.recs_period) + 1;
  loc.key_block = loc.block + header.slrecs_offset;
  return loc;
}

std::size_t iv_block(const RecsFileHeader& header, std::int64_t block0_gst) {
  auto start = static_cast<std::int64_t>(header.start_gst);
  if (start < block0_gst) throw Error(ErrorKind::Range, "RECS file starts before the key chain");
  return static_cast<std::size_t>((start - block0_gst) / 30);
}

// ---------------------------------------------------------------------------

std::string serialize_bgd(std::span<const BgdRecord> records) {
  std::string out = "# ACAS BGD file v1\n# svid,bgd_e1_e6_s,sigma_bgd_s,validity_start_gst,validity_end_gst\n";
  char line[160];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%lld,%lld\n", r.svid, r.bgd_e1_e6, r.sigma_bgd,
                  static_cast<long long>(r.validity_start_gst),
                  static_cast<long long>(r.validity_end_gst));
    out += line;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "BGD line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    bad_line(line, std::string("invalid ") + name);
  }
  return value;
}

}  // namespace

std::vector<BgdRecord> parse_bgd(std::string_view text) {
  std::vector<BgdRecord> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 5) bad_line(line_no, "expected 5 comma-separated fields");

    BgdRecord r;
    r.svid = parse_number<int>(fields[0], line_no, "svid");
    r.bgd_e1_e6 = parse_number<double>(fields[1], line_no, "bgd");
    r.sigma_bgd = parse_number<double>(fields[2], line_no, "sigma");
    r.validity_start_gst = parse_number<std::int64_t>(fields[3], line_no, "validity start");
    r.validity_end_gst = parse_number<std::int64_t>(fields[4], line_no, "validity end");

    if (r.svid < 1 || r.svid > constants::kMaxSvid) bad_line(line_no, "svid outside 1..36");
    if (!std::isfinite(r.bgd_e1_e6) || !std::isfinite(r.sigma_bgd)) bad_line(line_no, "non-finite delay");
    if (r.sigma_bgd < 0) bad_line(line_no, "sigma_bgd must be >= 0");
    if (r.validity_end_gst <= r.validity_start_gst) bad_line(line_no, "empty validity interval");
    records.push_back(r);
  }
  return records;
}

}  // namespace acas
