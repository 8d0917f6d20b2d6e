#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabsynth/generator.hpp"
#include "tabsynth/skill.hpp"

namespace tabsynth {

// Target share of the corpus per skill.
const std::map<SkillKind, double>& default_proportions();

std::set<SkillKind> all_skills_enabled();

struct CorpusConfig {
    std::size_t total = 0;
    std::map<SkillKind, double> proportions = default_proportions();
    std::set<SkillKind> enabled = all_skills_enabled();
    std::uint64_t seed = 0;
    std::map<SkillKind, std::string> external_paths;  // extra pool files per skill
};

// Largest-remainder apportionment: quotas sum to cfg.total exactly and each
// is within 1 of total x renormalized fraction. Disabled skills get 0.
// Throws ValidationError on a zero total or no positive enabled proportion.
SkillQuotas skill_quotas(const CorpusConfig& cfg);

// Pull stream; nullopt marks the end.
using ExampleStream = std::function<std::optional<Example>()>;

// Uniform reservoir sample of each enabled pool to its quota, deduplicated
// by (table_id, question), then one deterministic shuffle over the whole
// draw. Throws PoolExhaustedError when a pool cannot fill its quota.
std::vector<Example> sample_corpus(std::map<SkillKind, ExampleStream>& pools,
                                   const CorpusConfig& cfg);

struct ImportReport {
    struct Line {
        std::size_t line_no;
        std::string message;
    };
    std::vector<Line> errors;
    std::size_t imported = 0;
};

// Reads JSONL records {question, answers, table_id, table?} and forwards
// them as external Examples of the labeled skill. Answers are taken on
// faith; an attached table is not materialized. Bad lines are reported and
// skipped.
void import_external(std::istream& in, SkillKind skill,
                     const std::function<void(Example&&)>& sink, ImportReport& report);

// One JSON object per line, keys fixed:
// {"answers", "question", "skill", "source", "table_id", "template_id"}.
std::string example_to_json(const Example& e);
Example example_from_json(const std::string& line, std::size_t line_no = 0);
void write_corpus(const std::vector<Example>& corpus, std::ostream& out);

struct CorpusStats {
    std::size_t total = 0;
    std::array<std::size_t, kAllSkills.size()> per_skill{};
    std::size_t external = 0;
    std::map<std::string, std::size_t> per_table;
    std::map<std::size_t, std::size_t> answer_len_hist;
    std::size_t quantifier_yes = 0;
    std::size_t quantifier_total = 0;
};

struct StatsAccumulator {
    void add(const Example& e);
    CorpusStats stats;
};

std::string format_stats(const CorpusStats& s);

}  // namespace tabsynth
