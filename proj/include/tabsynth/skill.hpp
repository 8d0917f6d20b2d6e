#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace tabsynth {

// The seven table-reasoning skills, one example generator each.
enum class SkillKind {
    Conjunction = 0,
    Quantifier,
    TemporalComparison,
    DateDifference,
    Counting,
    NumericalOperation,
    NumericalComparison,
};

inline constexpr std::array<SkillKind, 7> kAllSkills = {
    SkillKind::Conjunction,        SkillKind::Quantifier,
    SkillKind::TemporalComparison, SkillKind::DateDifference,
    SkillKind::Counting,           SkillKind::NumericalOperation,
    SkillKind::NumericalComparison,
};

std::string skill_name(SkillKind s);
// Accepts the canonical snake_case token and display spellings
// ("Counting", "Temporal Comparison"), case-insensitively.
std::optional<SkillKind> skill_from_name(std::string_view name);

inline int skill_index(SkillKind s) { return static_cast<int>(s); }

}  // namespace tabsynth
