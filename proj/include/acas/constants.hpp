#pragma once

#include <cstdint>

namespace acas::constants {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Carrier frequencies (Hz). f1/f6 = 1.232 exactly.
inline constexpr double kF1 = 1575.42e6;
inline constexpr double kF6 = 1278.75e6;

// E6C chip rate. Integer forms are used for exact chip bookkeeping.
inline constexpr double kChipRate = 5.115e6;
inline constexpr std::int64_t kChipsPerSecond = 5'115'000;
inline constexpr std::int64_t kChipsPerMillisecond = 5'115;

// Random RECS offsets are counted in 8-ms units (two E1B/C code periods).
inline constexpr int kOffsetUnitMs = 8;
inline constexpr double kOffsetUnitSeconds = 0.008;

inline constexpr std::int64_t kOsnmaBlockSeconds = 30;
inline constexpr std::int64_t kSecondsPerWeek = 604'800;

inline constexpr double kIonoConstant = 40.3;  // m^3/s^2 per el/m^2

inline constexpr int kMaxSvid = 36;
inline constexpr int kOffsetBytesPerSlot = 48;  // three 16-octet blocks

inline constexpr std::size_t kAesBlockBytes = 16;
inline constexpr std::size_t kAesBlockBits = 128;

}  // namespace acas::constants
