#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace acas {

// Galileo System Time as whole seconds plus a sub-second fraction.
//
// A plain double loses sub-chip resolution at GST magnitudes (~1e9 s gives
// ~1e-7 s spacing, half an E6C chip), so the fraction is carried separately.
class GstTime {
 public:
  constexpr GstTime() = default;
  GstTime(std::int64_t seconds, double fraction) : seconds_(seconds), fraction_(fraction) {
    normalize();
  }

  static GstTime from_seconds(std::int64_t seconds) { return GstTime(seconds, 0.0); }

  static GstTime from_nanoseconds(std::int64_t ns) {
    std::int64_t s = ns / 1'000'000'000;
    std::int64_t rem = ns % 1'000'000'000;
    if (rem < 0) {
      rem += 1'000'000'000;
      --s;
    }
    return GstTime(s, static_cast<double>(rem) * 1e-9);
  }

  std::int64_t whole_seconds() const noexcept { return seconds_; }
  double fraction() const noexcept { return fraction_; }

  std::int64_t to_nanoseconds_floor() const {
    return seconds_ * 1'000'000'000 + static_cast<std::int64_t>(std::floor(fraction_ * 1e9));
  }
  std::int64_t to_nanoseconds_ceil() const {
    return seconds_ * 1'000'000'000 + static_cast<std::int64_t>(std::ceil(fraction_ * 1e9));
  }

  // Seconds relative to an integer reference second; exact to double precision
  // as long as the difference is small.
  double seconds_since(std::int64_t reference_second) const {
    return static_cast<double>(seconds_ - reference_second) + fraction_;
  }

  GstTime operator+(double dt) const { return GstTime(seconds_, fraction_ + dt); }
  GstTime operator-(double dt) const { return GstTime(seconds_, fraction_ - dt); }
  GstTime& operator+=(double dt) { return *this = *this + dt; }

  friend double operator-(const GstTime& a, const GstTime& b) {
    return static_cast<double>(a.seconds_ - b.seconds_) + (a.fraction_ - b.fraction_);
  }

  friend bool operator==(const GstTime&, const GstTime&) = default;
  friend auto operator<=>(const GstTime& a, const GstTime& b) {
    if (auto c = a.seconds_ <=> b.seconds_; c != 0) return c <=> 0;
    return a.fraction_ < b.fraction_   ? std::strong_ordering::less
           : a.fraction_ > b.fraction_ ? std::strong_ordering::greater
                                        : std::strong_ordering::equal;
  }

 private:
  void normalize() {
    double whole = std::floor(fraction_);
    seconds_ += static_cast<std::int64_t>(whole);
    fraction_ -= whole;
    if (fraction_ >= 1.0) {  // rounding of e.g. -1e-20
      fraction_ = 0.0;
      ++seconds_;
    }
  }

  std::int64_t seconds_ = 0;
  double fraction_ = 0.0;
};

// Half-open time interval [start, end).
struct TimeWindow {
  GstTime start;
  GstTime end;

  double length() const { return end - start; }
  bool contains(const TimeWindow& inner) const {
    return !(inner.start < start) && !(end < inner.end);
  }
};

// 32-bit GST tag: week number (12 bits, modulo 4096) followed by the
// time of week in seconds (20 bits).
inline std::uint32_t gst_sf_tag(std::int64_t gst_seconds) {
  constexpr std::int64_t kWeek = 604'800;
  std::int64_t wn = gst_seconds / kWeek;
  std::int64_t tow = gst_seconds % kWeek;
  return static_cast<std::uint32_t>(((wn & 0xFFF) << 20) | tow);
}

}  // namespace acas
