#include "tabsynth/generator.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>
#include <utility>

#include "tabsynth/errors.hpp"
#include "tabsynth/oracle.hpp"
#include "tabsynth/rng.hpp"

namespace tabsynth {

void GenDiag::merge(const GenDiag& o) {
    attempts += o.attempts;
    rejected += o.rejected;
    for (std::size_t i = 0; i < shortfall.size(); ++i) shortfall[i] += o.shortfall[i];
}

std::vector<std::string> conjunction_answers(const Table& t, int out_col, const Condition& c2,
                                             const Condition& c3) {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        if (eval_condition(t.cell(r, static_cast<std::size_t>(c2.column_index)), c2) &&
            eval_condition(t.cell(r, static_cast<std::size_t>(c3.column_index)), c3)) {
            out.push_back(t.cell(r, static_cast<std::size_t>(out_col)).surface());
        }
    }
    return out;
}

std::string quantifier_answer(const Table& t, std::string_view op, const Condition& filter,
                              const Condition& target) {
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        const bool f = eval_condition(t.cell(r, static_cast<std::size_t>(filter.column_index)), filter);
        const bool g = eval_condition(t.cell(r, static_cast<std::size_t>(target.column_index)), target);
        // every: no filter row may miss the target; only: no target row may
        // fall outside the filter.
        if (op == "every" ? (f && !g) : (g && !f)) return "No";
    }
    return "Yes";
}

std::string counting_answer(const Table& t, const Condition& c) {
    const auto rows = select_rows(t, c);
    return format_number(Decimal::from_int(static_cast<std::int64_t>(rows.size())));
}

namespace {

bool all_nonempty(const std::vector<std::string>& v) {
    return std::all_of(v.begin(), v.end(), [](const std::string& s) { return !s.empty(); });
}

// True when the k-th rank is decided by a sort-key tie with a neighbor,
// which would make the question ambiguous.
bool tied_rank(const Table& t, const std::vector<std::size_t>& sorted, int key_col, int k) {
    const auto col = static_cast<std::size_t>(key_col);
    const Value& v = t.cell(sorted[static_cast<std::size_t>(k - 1)], col).parsed;
    if (k >= 2 && value_equal(v, t.cell(sorted[static_cast<std::size_t>(k - 2)], col).parsed))
        return true;
    if (static_cast<std::size_t>(k) < sorted.size() &&
        value_equal(v, t.cell(sorted[static_cast<std::size_t>(k)], col).parsed))
        return true;
    return false;
}

// Computes the answer for a grounded binding, or nullopt to veto it and let
// the sampling loop try again.
std::optional<std::vector<std::string>> answer_for(const Table& t, const Template& tmpl,
                                                   const Binding& b, const GenOptions& opts) {
    switch (tmpl.skill) {
        case SkillKind::Conjunction: {
            auto ans = conjunction_answers(t, b.cols.at(1), b.conds.at(2), b.conds.at(3));
            if (ans.empty() || !all_nonempty(ans)) return std::nullopt;
            return ans;
        }
        case SkillKind::Quantifier:
            return std::vector<std::string>{
                quantifier_answer(t, b.op_token, b.conds.at(2), b.conds.at(3))};
        case SkillKind::TemporalComparison:
        case SkillKind::NumericalComparison: {
            const SortOrder order = tmpl.skill == SkillKind::TemporalComparison
                                        ? SortOrder::Ascending
                                        : SortOrder::Descending;
            const int key_col = b.cols.at(3);
            std::vector<std::size_t> sorted;
            try {
                sorted = sorted_by(t, select_rows(t, b.conds.at(2)), key_col, order);
            } catch (const UnparsableKeyError&) {
                return std::nullopt;
            }
            if (b.ordinal < 1 || static_cast<std::size_t>(b.ordinal) > sorted.size())
                return std::nullopt;
            if (opts.strict_ordinals && tied_rank(t, sorted, key_col, b.ordinal))
                return std::nullopt;
            auto a = t.cell(sorted[static_cast<std::size_t>(b.ordinal - 1)],
                            static_cast<std::size_t>(b.cols.at(1)))
                         .surface();
            if (a.empty()) return std::nullopt;
            return std::vector<std::string>{std::move(a)};
        }
        case SkillKind::DateDifference: {
            const auto col = static_cast<std::size_t>(b.axis_col);
            const auto& d1 = std::get<Date>(t.cell(b.val_rows.at(1), col).parsed);
            const auto& d2 = std::get<Date>(t.cell(b.val_rows.at(2), col).parsed);
            return std::vector<std::string>{format_duration(date_difference(d1, d2))};
        }
        case SkillKind::Counting:
            return std::vector<std::string>{counting_answer(t, b.conds.at(2))};
        case SkillKind::NumericalOperation: {
            const auto rows = select_rows(t, b.conds.at(2));
            std::vector<Decimal> vals;
            for (const auto r : rows) {
                const Value& v = t.cell(r, static_cast<std::size_t>(b.cols.at(1))).parsed;
                if (const Decimal* d = std::get_if<Decimal>(&v)) vals.push_back(*d);
            }
            if (vals.empty()) return std::nullopt;
            const bool avg = b.op_token == "average";
            const Decimal agg = aggregate(vals, avg ? AggOp::Average : AggOp::Sum);
            return std::vector<std::string>{avg ? format_number_max2(agg) : format_number(agg)};
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<GenResult> generate_skill(const Table& t, SkillKind skill,
                                      const std::vector<Template>& templates, Rng& rng,
                                      std::size_t n, const GenOptions& opts, GenDiag* diag) {
    std::vector<GenResult> out;
    const auto pool = templates_for(templates, skill);
    if (pool.empty() || n == 0) {
        if (diag && n > 0) diag->shortfall[static_cast<std::size_t>(skill_index(skill))] += n;
        return out;
    }
    std::set<std::string> seen;  // questions already emitted for this table
    const long long budget = static_cast<long long>(opts.max_attempts) * static_cast<long long>(n);
    long long attempts = 0;
    std::optional<std::string> want;  // pre-drawn quantifier answer, for Yes/No balance
    while (out.size() < n && attempts < budget) {
        ++attempts;
        if (diag) ++diag->attempts;
        const Template& tmpl = *pool[rng.pick_index(pool.size())];
        if (skill == SkillKind::Quantifier && !want) want = rng.coin() ? "Yes" : "No";
        auto inst = instantiate(tmpl, t, rng);
        if (!inst) continue;
        auto ans = answer_for(t, tmpl, inst->binding, opts);
        if (!ans) {
            if (diag) ++diag->rejected;
            continue;
        }
        if (skill == SkillKind::Quantifier && ans->front() != *want) {
            if (diag) ++diag->rejected;
            continue;
        }
        if (!seen.insert(inst->question).second) continue;
        want.reset();
        Example ex;
        ex.table_id = t.table_id();
        ex.skill = skill;
        ex.template_id = tmpl.id;
        ex.question = std::move(inst->question);
        ex.answers = std::move(*ans);
        ex.provenance = inst->binding.digest();
        out.push_back(GenResult{std::move(ex), std::move(inst->binding)});
    }
    if (diag && out.size() < n)
        diag->shortfall[static_cast<std::size_t>(skill_index(skill))] += n - out.size();
    return out;
}

std::vector<GenResult> generate_all(const Table& t, const SkillQuotas& quotas, std::uint64_t seed,
                                    const std::vector<Template>& templates, const GenOptions& opts,
                                    GenDiag* diag) {
    const std::uint64_t table_seed = mix_seed(seed, hash_str(t.table_id()));
    std::vector<GenResult> out;
    for (const SkillKind s : kAllSkills) {
        const std::size_t q = quotas[static_cast<std::size_t>(skill_index(s))];
        if (q == 0) continue;
        // One substream per skill: disabling a skill never shifts another's
        // draws.
        Rng rng(mix_seed(table_seed, static_cast<std::uint64_t>(skill_index(s)) + 1));
        auto part = generate_skill(t, s, templates, rng, q, opts, diag);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace tabsynth
