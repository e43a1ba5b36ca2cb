#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace geonet {

/// Timezone-free calendar date with day arithmetic.
class Date {
public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  /// Parses strict ISO-8601 `YYYY-MM-DD`. Throws ValidationError.
  static Date parse(std::string_view text);

  std::chrono::sys_days days() const { return days_; }
  std::string to_string() const;

  Date operator+(int n) const { return Date(days_ + std::chrono::days(n)); }
  /// Signed day difference `*this - other`.
  int operator-(const Date& other) const { return static_cast<int>((days_ - other.days_).count()); }

  auto operator<=>(const Date&) const = default;

private:
  std::chrono::sys_days days_{};
};

}  // namespace geonet
