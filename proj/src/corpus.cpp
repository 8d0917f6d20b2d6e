#include "tabsynth/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "tabsynth/errors.hpp"
#include "tabsynth/rng.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

using nlohmann::json;

const std::map<SkillKind, double>& default_proportions() {
    static const std::map<SkillKind, double> kDefaults = {
        {SkillKind::Conjunction, 0.216},        {SkillKind::Quantifier, 0.103},
        {SkillKind::TemporalComparison, 0.145}, {SkillKind::DateDifference, 0.057},
        {SkillKind::Counting, 0.180},           {SkillKind::NumericalOperation, 0.159},
        {SkillKind::NumericalComparison, 0.140},
    };
    return kDefaults;
}

std::set<SkillKind> all_skills_enabled() { return {kAllSkills.begin(), kAllSkills.end()}; }

SkillQuotas skill_quotas(const CorpusConfig& cfg) {
    if (cfg.total < 1) throw ValidationError("corpus total must be at least 1");
    double denom = 0.0;
    for (const SkillKind s : cfg.enabled) {
        const auto it = cfg.proportions.find(s);
        if (it == cfg.proportions.end()) continue;
        if (it->second < 0.0)
            throw ValidationError("negative proportion for " + skill_name(s));
        denom += it->second;
    }
    if (denom <= 0.0) throw ValidationError("enabled skills have no positive proportion");

    SkillQuotas quotas{};
    struct Rem {
        double frac;
        int idx;
    };
    std::vector<Rem> rems;
    std::size_t assigned = 0;
    for (const SkillKind s : kAllSkills) {
        if (!cfg.enabled.count(s)) continue;
        const auto it = cfg.proportions.find(s);
        const double share = it == cfg.proportions.end() ? 0.0 : it->second;
        const double exact = static_cast<double>(cfg.total) * share / denom;
        const auto base = static_cast<std::size_t>(std::floor(exact));
        const int i = skill_index(s);
        quotas[static_cast<std::size_t>(i)] = base;
        assigned += base;
        rems.push_back({exact - static_cast<double>(base), i});
    }
    // Hand the rounding leftover to the largest remainders; stable sort keeps
    // the tie-break at skill order.
    std::stable_sort(rems.begin(), rems.end(),
                     [](const Rem& a, const Rem& b) { return a.frac > b.frac; });
    for (std::size_t j = 0, left = cfg.total - assigned; left > 0; ++j, --left)
        quotas[static_cast<std::size_t>(rems[j % rems.size()].idx)] += 1;
    return quotas;
}

std::vector<Example> sample_corpus(std::map<SkillKind, ExampleStream>& pools,
                                   const CorpusConfig& cfg) {
    const SkillQuotas quotas = skill_quotas(cfg);
    std::unordered_set<std::uint64_t> seen;  // (table_id, question) across all pools
    std::vector<Example> out;
    for (const SkillKind s : kAllSkills) {
        const std::size_t quota = quotas[static_cast<std::size_t>(skill_index(s))];
        if (quota == 0) continue;
        const auto it = pools.find(s);
        if (it == pools.end()) throw PoolExhaustedError(skill_name(s), quota, 0);

        // Algorithm R over the deduplicated stream.
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(skill_index(s)) + 1));
        std::vector<Example> reservoir;
        reservoir.reserve(quota);
        std::size_t available = 0;
        while (auto ex = it->second()) {
            const std::uint64_t key = hash_str(ex->table_id + '\x1f' + ex->question);
            if (!seen.insert(key).second) continue;
            ++available;
            if (reservoir.size() < quota) {
                reservoir.push_back(std::move(*ex));
            } else {
                const std::uint64_t j = rng.below(available);
                if (j < quota) reservoir[static_cast<std::size_t>(j)] = std::move(*ex);
            }
        }
        if (available < quota) throw PoolExhaustedError(skill_name(s), quota, available);
        for (auto& e : reservoir) out.push_back(std::move(e));
    }
    Rng shuffle_rng(mix_seed(cfg.seed, 0xC0FFEEull));
    shuffle_rng.shuffle(out);
    return out;
}

void import_external(std::istream& in, SkillKind skill,
                     const std::function<void(Example&&)>& sink, ImportReport& report) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            report.errors.push_back({line_no, "not a JSON object"});
            continue;
        }
        try {
            Example ex;
            ex.table_id = j.at("table_id").get<std::string>();
            ex.question = collapse_ws(j.at("question").get<std::string>());
            for (const auto& a : j.at("answers")) ex.answers.push_back(collapse_ws(a.get<std::string>()));
            if (ex.question.empty()) {
                report.errors.push_back({line_no, "empty question"});
                continue;
            }
            if (ex.answers.empty()) {
                report.errors.push_back({line_no, "empty answers"});
                continue;
            }
            ex.skill = skill;
            ex.template_id = "external";
            ex.source = "external";
            sink(std::move(ex));
            ++report.imported;
        } catch (const json::exception& e) {
            report.errors.push_back({line_no, e.what()});
        }
    }
}

std::string example_to_json(const Example& e) {
    json j;
    j["answers"] = e.answers;
    j["question"] = e.question;
    j["skill"] = skill_name(e.skill);
    j["source"] = e.source;
    j["table_id"] = e.table_id;
    j["template_id"] = e.template_id;
    return j.dump();
}

Example example_from_json(const std::string& line, std::size_t line_no) {
    const std::string ctx = line_no > 0 ? "line " + std::to_string(line_no) + ": " : "";
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ValidationError(ctx + "not a JSON object");
    try {
        Example e;
        e.table_id = j.at("table_id").get<std::string>();
        const auto skill = skill_from_name(j.at("skill").get<std::string>());
        if (!skill) throw ValidationError(ctx + "unknown skill");
        e.skill = *skill;
        e.template_id = j.at("template_id").get<std::string>();
        e.question = j.at("question").get<std::string>();
        for (const auto& a : j.at("answers")) e.answers.push_back(a.get<std::string>());
        if (e.answers.empty()) throw ValidationError(ctx + "empty answers");
        e.source = j.at("source").get<std::string>();
        return e;
    } catch (const json::exception& ex) {
        throw ValidationError(ctx + ex.what());
    }
}

void write_corpus(const std::vector<Example>& corpus, std::ostream& out) {
    for (const Example& e : corpus) out << example_to_json(e) << '\n';
    if (!out) throw IoError("corpus write failed");
}

void StatsAccumulator::add(const Example& e) {
    ++stats.total;
    ++stats.per_skill[static_cast<std::size_t>(skill_index(e.skill))];
    if (e.source == "external") ++stats.external;
    ++stats.per_table[e.table_id];
    ++stats.answer_len_hist[e.answers.size()];
    if (e.skill == SkillKind::Quantifier) {
        ++stats.quantifier_total;
        if (!e.answers.empty() && e.answers.front() == "Yes") ++stats.quantifier_yes;
    }
}

std::string format_stats(const CorpusStats& s) {
    char buf[128];
    std::string out;
    std::snprintf(buf, sizeof buf, "total examples: %zu (external: %zu)\n", s.total, s.external);
    out += buf;
    out += "per skill:\n";
    for (const SkillKind k : kAllSkills) {
        const std::size_t n = s.per_skill[static_cast<std::size_t>(skill_index(k))];
        const double pct = s.total ? 100.0 * static_cast<double>(n) / static_cast<double>(s.total) : 0.0;
        std::snprintf(buf, sizeof buf, "  %-22s %10zu  %6.2f%%\n", skill_name(k).c_str(), n, pct);
        out += buf;
    }
    if (!s.per_table.empty()) {
        std::size_t mn = SIZE_MAX, mx = 0, sum = 0;
        for (const auto& [id, n] : s.per_table) {
            mn = std::min(mn, n);
            mx = std::max(mx, n);
            sum += n;
        }
        std::snprintf(buf, sizeof buf,
                      "tables covered: %zu (examples per table: min %zu, mean %.1f, max %zu)\n",
                      s.per_table.size(), mn,
                      static_cast<double>(sum) / static_cast<double>(s.per_table.size()), mx);
        out += buf;
    }
    out += "answers per example:\n";
    for (const auto& [len, n] : s.answer_len_hist) {
        std::snprintf(buf, sizeof buf, "  %zu: %zu\n", len, n);
        out += buf;
    }
    if (s.quantifier_total > 0) {
        std::snprintf(buf, sizeof buf, "quantifier yes-rate: %.3f (%zu/%zu)\n",
                      static_cast<double>(s.quantifier_yes) /
                          static_cast<double>(s.quantifier_total),
                      s.quantifier_yes, s.quantifier_total);
        out += buf;
    }
    return out;
}

}  // namespace tabsynth
