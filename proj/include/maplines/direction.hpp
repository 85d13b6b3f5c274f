#pragma once

#include <array>

namespace maplines {

/// One of the 8 grid directions. Codes increase counterclockwise starting
/// from east: 0=E 1=NE 2=N 3=NW 4=W 5=SW 6=S 7=SE, with x to the right and
/// y downward. All arithmetic is modulo 8.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(int code) : code_(((code % 8) + 8) % 8) {}

  constexpr int code() const { return code_; }

  constexpr int dx() const { return kOffsets[code_][0]; }
  constexpr int dy() const { return kOffsets[code_][1]; }

  constexpr Direction operator+(int k) const { return Direction(code_ + k); }
  constexpr Direction operator-(int k) const { return Direction(code_ - k); }
  constexpr Direction opposite() const { return *this + 4; }

  constexpr bool operator==(const Direction&) const = default;

  static constexpr std::array<Direction, 8> all() {
    return {Direction(0), Direction(1), Direction(2), Direction(3),
            Direction(4), Direction(5), Direction(6), Direction(7)};
  }

 private:
  static constexpr int kOffsets[8][2] = {{1, 0},  {1, -1}, {0, -1}, {-1, -1},
                                         {-1, 0}, {-1, 1}, {0, 1},  {1, 1}};
  int code_ = 0;
};

}  // namespace maplines
