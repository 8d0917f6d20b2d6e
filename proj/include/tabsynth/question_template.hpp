#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tabsynth/condition.hpp"
#include "tabsynth/rng.hpp"
#include "tabsynth/skill.hpp"
#include "tabsynth/table.hpp"

namespace tabsynth {

// Placeholder inside a question pattern.
struct Slot {
    enum class Kind { Col, Val, Cond, Operator, Ordinal };
    Kind kind;
    int index = 0;  // meaningful for Col/Val/Cond only
};

struct Template {
    SkillKind skill;
    std::string id;       // "<skill>.<n>", n counted per skill in load order
    std::string pattern;  // original pattern text
    std::vector<std::variant<std::string, Slot>> parts;
    std::map<int, DataType> constraints;  // slot index -> required column type

    std::vector<int> indices() const;
    std::vector<int> condition_indices() const;
    std::vector<int> value_indices() const;
    bool has_operator() const;
    bool has_ordinal() const;
};

// One template per line: SKILL <TAB> pattern <TAB> constraints. Constraints
// are "-" or comma-separated "<index>:<type>" pairs; a fourth tab-separated
// field is treated as a comment. Blank lines and '#' lines are skipped.
// Each skill expects the slot layout of its canonical pattern; paraphrase
// variants may reword the text but not change the slots.
std::vector<Template> load_templates(std::string_view text);

// The built-in set, identical to data/templates.tsv.
const std::vector<Template>& builtin_templates();

std::vector<const Template*> templates_for(const std::vector<Template>& all, SkillKind s);

// How a template was grounded in a concrete table.
struct Binding {
    std::map<int, int> cols;              // slot index -> column
    std::map<int, Condition> conds;       // slot index -> sampled condition
    std::map<int, std::string> vals;      // slot index -> referent cell surface
    std::map<int, std::size_t> val_rows;  // slot index -> row the referent names
    std::string op_token;                 // "every"/"only" or "sum"/"average"
    int ordinal = 0;                      // 1-based rank, 0 when unused
    int axis_col = -1;                    // date column anchoring {val:i} rows

    std::string digest() const;  // stable provenance summary
};

struct Instantiation {
    std::string question;
    Binding binding;
};

// "1st", "2nd", "3rd", "4th", ... with the 11..13 exception.
std::string ordinal_en(int k);

struct InstantiateOptions {
    int pair_tries = 16;  // row-pair draws per attempt for {val:i} slots
};

// Grounds the template in the table: binds distinct columns (uniform among
// eligible ones per slot), samples conditions and the operator/ordinal, and
// renders the question text. Returns nullopt when the table cannot satisfy
// the template; callers retry with fresh randomness.
std::optional<Instantiation> instantiate(const Template& tmpl, const Table& t, Rng& rng,
                                         const InstantiateOptions& opts = {});

}  // namespace tabsynth
