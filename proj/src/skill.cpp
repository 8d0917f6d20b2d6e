#include "tabsynth/skill.hpp"

#include "tabsynth/strutil.hpp"

namespace tabsynth {

std::string skill_name(SkillKind s) {
    switch (s) {
        case SkillKind::Conjunction: return "conjunction";
        case SkillKind::Quantifier: return "quantifier";
        case SkillKind::TemporalComparison: return "temporal_comparison";
        case SkillKind::DateDifference: return "date_difference";
        case SkillKind::Counting: return "counting";
        case SkillKind::NumericalOperation: return "numerical_operation";
        case SkillKind::NumericalComparison: return "numerical_comparison";
    }
    return "unknown";
}

std::optional<SkillKind> skill_from_name(std::string_view name) {
    std::string key = to_lower_ascii(trim(name));
    // Display spellings use spaces; fold them to the canonical token.
    for (char& c : key) {
        if (c == ' ' || c == '-') c = '_';
    }
    for (SkillKind s : kAllSkills) {
        if (key == skill_name(s)) return s;
    }
    return std::nullopt;
}

}  // namespace tabsynth
