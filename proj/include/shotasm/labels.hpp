#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shotasm {

// Framing categories, in score-matrix row/column order.
enum class ShotSize : std::size_t { ELS = 0, LS, MS, CU, ECU };

// Dominant camera movement, in score-matrix row/column order.
// Seven members; OUT/IN are zoom or dolly out/in.
enum class MotionType : std::size_t { STABLE = 0, UP, DOWN, LEFT, RIGHT, OUT, IN };

inline constexpr std::size_t kShotSizeCount = 5;
inline constexpr std::size_t kMotionCount = 7;

enum class Alphabet { ShotSize, Motion };

inline constexpr std::size_t index_of(ShotSize s) { return static_cast<std::size_t>(s); }
inline constexpr std::size_t index_of(MotionType m) { return static_cast<std::size_t>(m); }

ShotSize shot_size_at(std::size_t index);
MotionType motion_at(std::size_t index);

std::string_view to_string(ShotSize s);
std::string_view to_string(MotionType m);

std::optional<ShotSize> parse_shot_size(std::string_view text);
std::optional<MotionType> parse_motion(std::string_view text);

std::size_t alphabet_size(Alphabet a);
std::string_view to_string(Alphabet a);
std::optional<Alphabet> parse_alphabet(std::string_view text);

// Label strings for an alphabet, in index order.
std::vector<std::string> alphabet_labels(Alphabet a);

}  // namespace shotasm
