#pragma once

#include <ostream>
#include <string_view>

namespace superctl {

enum class Parity { Even = 0, Odd = 1 };

/// Result of inspecting an arbitrary (possibly inhomogeneous) value.
enum class GradeKind { Even, Odd, Mixed };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

constexpr int bit(Parity p) { return static_cast<int>(p); }

/// (-1)^{|a||b|}
constexpr int koszul_sign(Parity a, Parity b) {
  return (bit(a) & bit(b)) ? -1 : 1;
}

constexpr std::string_view to_string(Parity p) {
  return p == Parity::Even ? "even" : "odd";
}

constexpr std::string_view to_string(GradeKind g) {
  switch (g) {
    case GradeKind::Even:
      return "even";
    case GradeKind::Odd:
      return "odd";
    default:
      return "mixed";
  }
}

inline std::ostream& operator<<(std::ostream& os, Parity p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, GradeKind g) { return os << to_string(g); }

/// Graded dimension (even|odd).
struct GradedDim {
  int even = 0;
  int odd = 0;

  int total() const { return even + odd; }
  friend bool operator==(const GradedDim&, const GradedDim&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const GradedDim& d) {
  return os << '(' << d.even << '|' << d.odd << ')';
}

}  // namespace superctl
