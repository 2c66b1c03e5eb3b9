#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elgas {

/// Point of the integer lattice Z^3. Ordering is lexicographic on (x, y, z).
struct IVec3 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  constexpr auto operator<=>(const IVec3&) const = default;

  constexpr IVec3 operator+(const IVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr IVec3 operator-(const IVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr IVec3 operator-() const { return {-x, -y, -z}; }

  constexpr std::int64_t norm2() const { return x * x + y * y + z * z; }
  constexpr bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  constexpr std::array<std::int64_t, 3> as_array() const { return {x, y, z}; }
};

constexpr std::int64_t dot(const IVec3& a, const IVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline std::string to_string(const IVec3& v) {
  return std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z);
}

inline std::ostream& operator<<(std::ostream& os, const IVec3& v) {
  return os << '(' << v.x << ',' << v.y << ',' << v.z << ')';
}

/// Parses "a,b,c" (no spaces). Throws std::invalid_argument on malformed input.
inline IVec3 parse_ivec3(std::string_view text) {
  std::array<std::int64_t, 3> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = (i < 2) ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos || end == pos)
      throw std::invalid_argument("expected integer triple 'a,b,c', got '" + std::string(text) + "'");
    const auto field = text.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size())
      throw std::invalid_argument("expected integer triple 'a,b,c', got '" + std::string(text) + "'");
    pos = end + 1;
  }
  return {out[0], out[1], out[2]};
}

}  // namespace elgas
