#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tabsynth/question_template.hpp"
#include "tabsynth/skill.hpp"
#include "tabsynth/table.hpp"

namespace tabsynth {

struct Example {
    std::string table_id;
    SkillKind skill = SkillKind::Conjunction;
    std::string template_id;
    std::string question;
    std::vector<std::string> answers;
    std::string provenance;  // binding digest, in-memory only
    std::string source = "synthetic";
};

// Example plus the binding it came from, so tests can recompute the answer
// through an independent path.
struct GenResult {
    Example example;
    Binding binding;
};

struct GenOptions {
    int max_attempts = 64;        // instantiation attempts per requested example
    bool strict_ordinals = true;  // resample when the rank lands on a sort-key tie
};

struct GenDiag {
    std::size_t attempts = 0;
    std::size_t rejected = 0;  // instantiations vetoed by the answer step
    std::array<std::size_t, kAllSkills.size()> shortfall{};
    void merge(const GenDiag& o);
};

using SkillQuotas = std::array<std::size_t, kAllSkills.size()>;

// Answer kernels, pure over (table, binding pieces). Generation emits only
// what these return; tests replay them against a naive evaluator.
std::vector<std::string> conjunction_answers(const Table& t, int out_col, const Condition& c2,
                                             const Condition& c3);
std::string quantifier_answer(const Table& t, std::string_view op, const Condition& filter,
                              const Condition& target);
std::string counting_answer(const Table& t, const Condition& c);

// Up to n examples of one skill; fewer when the table runs out of
// satisfiable bindings. Questions are unique within one call.
std::vector<GenResult> generate_skill(const Table& t, SkillKind skill,
                                      const std::vector<Template>& templates, Rng& rng,
                                      std::size_t n, const GenOptions& opts = {},
                                      GenDiag* diag = nullptr);

// Runs every skill with a nonzero quota on its own seed substream, so the
// output for one skill does not depend on which others are enabled.
// Deterministic in (seed, table_id).
std::vector<GenResult> generate_all(const Table& t, const SkillQuotas& quotas,
                                    std::uint64_t seed, const std::vector<Template>& templates,
                                    const GenOptions& opts = {}, GenDiag* diag = nullptr);

}  // namespace tabsynth
