#include "tabsynth/question_template.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>

#include "tabsynth/errors.hpp"
#include "tabsynth/oracle.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

namespace {

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};

bool parse_index(std::string_view s, int& out) {
    if (s.empty() || s.size() > 2) return false;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    if (v < 1) return false;
    out = v;
    return true;
}

Slot parse_slot(std::string_view token, std::size_t line_no) {
    if (token == "OPERATOR") return {Slot::Kind::Operator, 0};
    if (token == "ORDINAL") return {Slot::Kind::Ordinal, 0};
    const auto colon = token.find(':');
    if (colon != std::string_view::npos) {
        const auto head = token.substr(0, colon);
        int idx = 0;
        if (parse_index(token.substr(colon + 1), idx)) {
            if (head == "col") return {Slot::Kind::Col, idx};
            if (head == "val") return {Slot::Kind::Val, idx};
            if (head == "CONDITION") return {Slot::Kind::Cond, idx};
        }
    }
    throw BadPlaceholderError(line_no, std::string(token));
}

void parse_pattern(Template& t, std::size_t line_no) {
    std::string literal;
    auto flush = [&] {
        if (!literal.empty()) {
            t.parts.emplace_back(std::move(literal));
            literal.clear();
        }
    };
    const std::string& p = t.pattern;
    for (std::size_t i = 0; i < p.size();) {
        if (p[i] != '{') {
            literal += p[i++];
            continue;
        }
        const auto close = p.find('}', i + 1);
        if (close == std::string::npos)
            throw BadPlaceholderError(line_no, p.substr(i + 1));
        flush();
        t.parts.emplace_back(parse_slot(std::string_view(p).substr(i + 1, close - i - 1), line_no));
        i = close + 1;
    }
    flush();
}

// Per-skill slot layout of the canonical pattern. Paraphrase variants may
// reword the literal text only.
struct Shape {
    std::vector<int> idxs;
    std::vector<int> conds;
    std::vector<int> vals;
    bool op = false;
    bool ord = false;
};

Shape expected_shape(SkillKind s) {
    switch (s) {
        case SkillKind::Conjunction: return {{1, 2, 3}, {2, 3}, {}, false, false};
        case SkillKind::Quantifier: return {{1, 2, 3}, {2, 3}, {}, true, false};
        case SkillKind::TemporalComparison: return {{1, 2, 3}, {2}, {}, false, true};
        case SkillKind::DateDifference: return {{1, 2}, {}, {1, 2}, false, false};
        case SkillKind::Counting: return {{1, 2}, {2}, {}, false, false};
        case SkillKind::NumericalOperation: return {{1, 2}, {2}, {}, true, false};
        case SkillKind::NumericalComparison: return {{1, 2, 3}, {2}, {}, false, true};
    }
    return {};
}

void require_constraint(const Template& t, int idx, DataType dt, std::size_t line_no) {
    const auto it = t.constraints.find(idx);
    if (it == t.constraints.end() || it->second != dt)
        throw TemplateParseError(line_no, skill_name(t.skill) + " templates need constraint " +
                                              std::to_string(idx) + ":" + data_type_name(dt));
}

void check_shape(const Template& t, std::size_t line_no) {
    const Shape want = expected_shape(t.skill);
    if (t.indices() != want.idxs || t.condition_indices() != want.conds ||
        t.value_indices() != want.vals || t.has_operator() != want.op ||
        t.has_ordinal() != want.ord)
        throw TemplateParseError(line_no, "slot layout does not match the " +
                                              skill_name(t.skill) + " pattern");
    switch (t.skill) {
        case SkillKind::TemporalComparison:
            require_constraint(t, 3, DataType::Date, line_no);
            break;
        case SkillKind::NumericalComparison:
            require_constraint(t, 3, DataType::Number, line_no);
            break;
        case SkillKind::NumericalOperation:
            require_constraint(t, 1, DataType::Number, line_no);
            break;
        default:
            break;
    }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string cond_key(const Condition& c) {
    return std::visit(
        Overload{
            [](const Condition::Equals& e) { return "=" + e.raw; },
            [](const Condition::NumCmp& n) {
                return std::string(n.op == NumOp::Greater ? ">" : "<") + n.pivot.to_string();
            },
            [](const Condition::DateCmp& d) {
                return std::string(d.op == DateOp::Later ? ">" : "<") + d.pivot.to_string();
            },
        },
        c.kind);
}

}  // namespace

std::vector<int> Template::indices() const {
    std::set<int> s;
    for (const auto& part : parts)
        if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->index > 0)
            s.insert(slot->index);
    return {s.begin(), s.end()};
}

std::vector<int> Template::condition_indices() const {
    std::set<int> s;
    for (const auto& part : parts)
        if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->kind == Slot::Kind::Cond)
            s.insert(slot->index);
    return {s.begin(), s.end()};
}

std::vector<int> Template::value_indices() const {
    std::set<int> s;
    for (const auto& part : parts)
        if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->kind == Slot::Kind::Val)
            s.insert(slot->index);
    return {s.begin(), s.end()};
}

bool Template::has_operator() const {
    for (const auto& part : parts)
        if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->kind == Slot::Kind::Operator)
            return true;
    return false;
}

bool Template::has_ordinal() const {
    for (const auto& part : parts)
        if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->kind == Slot::Kind::Ordinal)
            return true;
    return false;
}

std::vector<Template> load_templates(std::string_view text) {
    std::vector<Template> out;
    std::map<SkillKind, int> per_skill;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                                                : nl - start);
        start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || line.front() == '#') continue;

        const auto fields = split_tabs(line);
        if (fields.size() < 3)
            throw TemplateParseError(line_no, "expected SKILL<TAB>pattern<TAB>constraints");

        Template t;
        const auto skill = skill_from_name(fields[0]);
        if (!skill)
            throw TemplateParseError(line_no, "unknown skill '" + std::string(fields[0]) + "'");
        t.skill = *skill;
        t.pattern = std::string(trim(fields[1]));
        if (t.pattern.empty()) throw TemplateParseError(line_no, "empty pattern");
        parse_pattern(t, line_no);

        const auto spec = trim(fields[2]);
        if (spec != "-") {
            std::size_t pos = 0;
            while (pos <= spec.size()) {
                const auto comma = spec.find(',', pos);
                const auto item = trim(spec.substr(
                    pos, comma == std::string_view::npos ? spec.size() - pos : comma - pos));
                pos = (comma == std::string_view::npos) ? spec.size() + 1 : comma + 1;
                if (item.empty()) continue;
                const auto colon = item.find(':');
                int idx = 0;
                if (colon == std::string_view::npos || !parse_index(item.substr(0, colon), idx))
                    throw TemplateParseError(line_no, "bad constraint '" + std::string(item) + "'");
                const auto dt = data_type_from_name(trim(item.substr(colon + 1)));
                if (!dt)
                    throw TemplateParseError(line_no, "bad constraint type in '" +
                                                          std::string(item) + "'");
                t.constraints[idx] = *dt;
            }
        }

        // Every index referenced by a value/condition slot or a constraint
        // must also appear as a {col:i} slot.
        std::set<int> col_idxs;
        for (const auto& part : t.parts)
            if (const Slot* slot = std::get_if<Slot>(&part); slot && slot->kind == Slot::Kind::Col)
                col_idxs.insert(slot->index);
        for (const auto& part : t.parts) {
            if (const Slot* slot = std::get_if<Slot>(&part);
                slot && (slot->kind == Slot::Kind::Val || slot->kind == Slot::Kind::Cond) &&
                !col_idxs.count(slot->index))
                throw DanglingIndexError(line_no, slot->index);
        }
        for (const auto& [idx, dt] : t.constraints)
            if (!col_idxs.count(idx)) throw DanglingIndexError(line_no, idx);

        check_shape(t, line_no);
        t.id = skill_name(t.skill) + "." + std::to_string(++per_skill[t.skill]);
        out.push_back(std::move(t));
    }
    return out;
}

const std::vector<Template>& builtin_templates() {
    static const std::vector<Template> kSet = [] {
        const std::string tsv =
            "conjunction\tWhat was the {col:1} when the {col:2} was {CONDITION:2} and the "
            "{col:3} was {CONDITION:3}?\t-\n"
            "conjunction\tWhich {col:1} had the {col:2} {CONDITION:2} and the {col:3} "
            "{CONDITION:3}?\t-\n"
            "quantifier\tDoes {OPERATOR} {col:1}, with {col:2} was {CONDITION:2}, have {col:3} "
            "{CONDITION:3}?\t-\n"
            "quantifier\tIs it true that {OPERATOR} {col:1}, with {col:2} was {CONDITION:2}, has "
            "{col:3} {CONDITION:3}?\t-\n"
            "temporal_comparison\tWhich {col:1}, with {col:2} was {CONDITION:2}, happened the "
            "{ORDINAL} according to {col:3}?\t3:date\n"
            "temporal_comparison\tWhich {col:1}, with {col:2} was {CONDITION:2}, came {ORDINAL} "
            "according to {col:3}?\t3:date\n"
            "date_difference\thow much time had passed between when the {col:1} was {val:1} and "
            "when the {col:2} was {val:2}?\t-\n"
            "date_difference\tHow much time went by between when the {col:1} was {val:1} and "
            "when the {col:2} was {val:2}?\t-\n"
            "counting\tHow many {col:1} have {col:2} {CONDITION:2}?\t-\n"
            "counting\tHow many {col:1} had {col:2} {CONDITION:2}?\t-\n"
            "numerical_operation\tWhat was the {OPERATOR} of {col:1} when the {col:2} was "
            "{CONDITION:2}?\t1:number\n"
            "numerical_operation\tWhat is the {OPERATOR} of {col:1} for rows where the {col:2} "
            "was {CONDITION:2}?\t1:number\n"
            "numerical_comparison\tWhich {col:1}, with {col:2} was {CONDITION:2}, has the "
            "{ORDINAL} {col:3}?\t3:number\n"
            "numerical_comparison\tWhich {col:1}, with {col:2} was {CONDITION:2}, shows the "
            "{ORDINAL} {col:3}?\t3:number\n";
        return load_templates(tsv);
    }();
    return kSet;
}

std::vector<const Template*> templates_for(const std::vector<Template>& all, SkillKind s) {
    std::vector<const Template*> out;
    for (const auto& t : all)
        if (t.skill == s) out.push_back(&t);
    return out;
}

std::string Binding::digest() const {
    std::string s;
    for (const auto& [i, c] : cols) s += "c" + std::to_string(i) + "=" + std::to_string(c) + ";";
    for (const auto& [i, cond] : conds) s += "q" + std::to_string(i) + cond_key(cond) + ";";
    for (const auto& [i, v] : vals) s += "v" + std::to_string(i) + "=" + v + ";";
    for (const auto& [i, r] : val_rows) s += "r" + std::to_string(i) + "=" + std::to_string(r) + ";";
    if (!op_token.empty()) s += "op=" + op_token + ";";
    if (ordinal > 0) s += "k=" + std::to_string(ordinal) + ";";
    if (axis_col >= 0) s += "axis=" + std::to_string(axis_col) + ";";
    return s;
}

std::string ordinal_en(int k) {
    const int mod100 = k % 100;
    const char* suffix = "th";
    if (mod100 < 11 || mod100 > 13) {
        switch (k % 10) {
            case 1: suffix = "st"; break;
            case 2: suffix = "nd"; break;
            case 3: suffix = "rd"; break;
            default: break;
        }
    }
    return std::to_string(k) + suffix;
}

std::optional<Instantiation> instantiate(const Template& tmpl, const Table& t, Rng& rng,
                                         const InstantiateOptions& opts) {
    const auto& cols = t.columns();
    Binding b;

    // Columns with duplicated or empty names are never bound: the question
    // text could not name them unambiguously.
    std::map<std::string, int> name_count;
    for (const auto& c : cols) ++name_count[c.name];
    std::vector<int> eligible;
    for (int i = 0; i < static_cast<int>(cols.size()); ++i)
        if (!cols[i].name.empty() && name_count[cols[i].name] == 1) eligible.push_back(i);

    // Bind constrained indices first so a free slot cannot steal the only
    // column of the required type.
    const auto idxs = tmpl.indices();
    std::vector<int> order;
    for (int i : idxs)
        if (tmpl.constraints.count(i)) order.push_back(i);
    for (int i : idxs)
        if (!tmpl.constraints.count(i)) order.push_back(i);

    std::vector<char> used(cols.size(), 0);
    for (int idx : order) {
        std::vector<int> cands;
        const auto it = tmpl.constraints.find(idx);
        for (int c : eligible) {
            if (used[c]) continue;
            if (it != tmpl.constraints.end() && cols[c].dtype != it->second) continue;
            cands.push_back(c);
        }
        if (cands.empty()) return std::nullopt;
        const int chosen = cands[rng.pick_index(cands.size())];
        used[chosen] = 1;
        b.cols[idx] = chosen;
    }

    if (tmpl.skill == SkillKind::DateDifference) {
        std::vector<int> axes;
        for (int c : eligible)
            if (cols[c].dtype == DataType::Date) axes.push_back(c);
        if (axes.empty()) return std::nullopt;
        const int axis = axes[rng.pick_index(axes.size())];
        b.axis_col = axis;

        // A referent cell must name its row uniquely and sit on a row whose
        // axis date parsed.
        auto referents = [&](int col) {
            std::map<std::string, int> seen;
            for (std::size_t r = 0; r < t.row_count(); ++r) ++seen[t.cell(r, col).surface()];
            std::vector<std::size_t> out;
            for (std::size_t r = 0; r < t.row_count(); ++r) {
                const auto s = t.cell(r, col).surface();
                if (s.empty() || seen[s] != 1) continue;
                if (!std::holds_alternative<Date>(t.cell(r, axis).parsed)) continue;
                out.push_back(r);
            }
            return out;
        };
        const auto r1s = referents(b.cols.at(1));
        const auto r2s = referents(b.cols.at(2));
        if (r1s.empty() || r2s.empty()) return std::nullopt;
        bool ok = false;
        for (int tries = 0; tries < opts.pair_tries && !ok; ++tries) {
            const auto r1 = r1s[rng.pick_index(r1s.size())];
            const auto r2 = r2s[rng.pick_index(r2s.size())];
            if (r1 == r2) continue;
            const auto& d1 = std::get<Date>(t.cell(r1, b.axis_col).parsed);
            const auto& d2 = std::get<Date>(t.cell(r2, b.axis_col).parsed);
            if (d1.compare(d2) == 0) continue;  // zero elapsed time reads wrong
            b.val_rows[1] = r1;
            b.val_rows[2] = r2;
            b.vals[1] = t.cell(r1, b.cols.at(1)).surface();
            b.vals[2] = t.cell(r2, b.cols.at(2)).surface();
            ok = true;
        }
        if (!ok) return std::nullopt;
    }

    for (int i : tmpl.condition_indices()) {
        try {
            b.conds[i] = sample_condition(t, b.cols.at(i), rng);
        } catch (const ExhaustedSamplingError&) {
            return std::nullopt;
        }
    }

    if (tmpl.has_operator()) {
        if (tmpl.skill == SkillKind::Quantifier)
            b.op_token = rng.coin() ? "every" : "only";
        else
            b.op_token = rng.coin() ? "sum" : "average";
    }

    if (tmpl.has_ordinal()) {
        const auto ci = tmpl.condition_indices();
        const auto rows = select_rows(t, b.conds.at(ci.front()));
        if (rows.empty()) return std::nullopt;
        b.ordinal = 1 + static_cast<int>(rng.below(rows.size()));
    }

    std::string q;
    for (const auto& part : tmpl.parts) {
        if (const std::string* lit = std::get_if<std::string>(&part)) {
            q += *lit;
            continue;
        }
        const Slot& s = std::get<Slot>(part);
        switch (s.kind) {
            case Slot::Kind::Col: q += collapse_ws(cols[b.cols.at(s.index)].name); break;
            case Slot::Kind::Val: q += b.vals.at(s.index); break;
            case Slot::Kind::Cond:
                q += render_condition(b.conds.at(s.index), cols[b.cols.at(s.index)]);
                break;
            case Slot::Kind::Operator: q += b.op_token; break;
            case Slot::Kind::Ordinal: q += ordinal_en(b.ordinal); break;
        }
    }
    return Instantiation{collapse_ws(q), std::move(b)};
}

}  // namespace tabsynth
