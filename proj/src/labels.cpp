#include "shotasm/labels.hpp"

#include "shotasm/error.hpp"

namespace shotasm {
namespace {

constexpr std::array<std::string_view, kShotSizeCount> kSizeNames = {"ELS", "LS", "MS", "CU", "ECU"};
constexpr std::array<std::string_view, kMotionCount> kMotionNames = {"STABLE", "UP",  "DOWN", "LEFT",
                                                                     "RIGHT",  "OUT", "IN"};

}  // namespace

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::DuplicateShotId: return "DuplicateShotId";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmbeddingDimMismatch: return "EmbeddingDimMismatch";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::KExceedsN: return "KExceedsN";
    case ErrorCode::MissingEmbeddings: return "MissingEmbeddings";
    case ErrorCode::NoTransitions: return "NoTransitions";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::UnknownShotId: return "UnknownShotId";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

ShotSize shot_size_at(std::size_t index) {
    if (index >= kShotSizeCount) {
        throw Error(ErrorCode::UnknownLabel, "shot size index " + std::to_string(index));
    }
    return static_cast<ShotSize>(index);
}

MotionType motion_at(std::size_t index) {
    if (index >= kMotionCount) {
        throw Error(ErrorCode::UnknownLabel, "motion index " + std::to_string(index));
    }
    return static_cast<MotionType>(index);
}

std::string_view to_string(ShotSize s) { return kSizeNames[index_of(s)]; }
std::string_view to_string(MotionType m) { return kMotionNames[index_of(m)]; }

std::optional<ShotSize> parse_shot_size(std::string_view text) {
    for (std::size_t i = 0; i < kSizeNames.size(); ++i) {
        if (kSizeNames[i] == text) return static_cast<ShotSize>(i);
    }
    return std::nullopt;
}

std::optional<MotionType> parse_motion(std::string_view text) {
    for (std::size_t i = 0; i < kMotionNames.size(); ++i) {
        if (kMotionNames[i] == text) return static_cast<MotionType>(i);
    }
    return std::nullopt;
}

std::size_t alphabet_size(Alphabet a) { return a == Alphabet::ShotSize ? kShotSizeCount : kMotionCount; }

std::string_view to_string(Alphabet a) { return a == Alphabet::ShotSize ? "size" : "motion"; }

std::optional<Alphabet> parse_alphabet(std::string_view text) {
    if (text == "size") return Alphabet::ShotSize;
    if (text == "motion") return Alphabet::Motion;
    return std::nullopt;
}

std::vector<std::string> alphabet_labels(Alphabet a) {
    std::vector<std::string> out;
    if (a == Alphabet::ShotSize) {
        for (auto n : kSizeNames) out.emplace_back(n);
    } else {
        for (auto n : kMotionNames) out.emplace_back(n);
    }
    return out;
}

}  // namespace shotasm
