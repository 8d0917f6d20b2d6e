#include "tabsynth/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>

#include <json.hpp>

#include "tabsynth/corpus.hpp"
#include "tabsynth/errors.hpp"
#include "tabsynth/skill.hpp"
#include "tabsynth/strutil.hpp"
#include "tabsynth/typeinfer.hpp"

namespace tabsynth {

using nlohmann::json;

std::string normalize_answer_item(std::string_view s) {
    const std::string flat = collapse_ws(s);
    if (const auto num = parse_number(flat)) return num->to_string();
    return to_lower_ascii(flat);
}

namespace {

std::vector<std::string> split_answers(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(", ", start);
        if (pos == std::string_view::npos) {
            items.emplace_back(text.substr(start));
            return items;
        }
        items.emplace_back(text.substr(start, pos - start));
        start = pos + 2;
    }
}

}  // namespace

bool denotation_match(std::string_view pred, const std::vector<std::string>& gold) {
    std::vector<std::string> a;
    for (const auto& item : split_answers(pred)) a.push_back(normalize_answer_item(item));
    std::vector<std::string> b;
    b.reserve(gold.size());
    for (const auto& item : gold) b.push_back(normalize_answer_item(item));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

ScoreReport score_streams(std::istream& pred_in, std::istream& gold_in) {
    struct GoldRec {
        std::vector<std::string> answers;
        std::string skill;
    };
    std::vector<GoldRec> gold;
    std::string line;
    bool gold_json = false;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(gold_in, line)) {
        ++line_no;
        if (first) {
            first = false;
            const auto t = trim(line);
            gold_json = !t.empty() && t.front() == '{';
        }
        if (gold_json) {
            if (trim(line).empty()) continue;
            const Example e = example_from_json(line, line_no);
            gold.push_back({e.answers, skill_name(e.skill)});
        } else {
            gold.push_back({split_answers(line), ""});
        }
    }

    struct Pred {
        std::string id;
        std::string text;
    };
    std::vector<Pred> preds;
    bool pred_json = false;
    first = true;
    line_no = 0;
    while (std::getline(pred_in, line)) {
        ++line_no;
        if (first) {
            first = false;
            const auto t = trim(line);
            if (!t.empty() && t.front() == '{') {
                const json probe = json::parse(t, nullptr, false);
                pred_json = !probe.is_discarded() && probe.is_object() && probe.contains("prediction");
            }
        }
        if (!pred_json) {
            preds.push_back({std::to_string(preds.size()), line});
            continue;
        }
        if (trim(line).empty()) continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("prediction line " + std::to_string(line_no) +
                                  ": not a JSON object");
        if (!j.contains("id")) throw IdMismatchError("(missing)");
        std::string id;
        if (j["id"].is_string())
            id = j["id"].get<std::string>();
        else if (j["id"].is_number_integer())
            id = std::to_string(j["id"].get<long long>());
        else
            throw IdMismatchError(j["id"].dump());
        if (!j.contains("prediction") || !j["prediction"].is_string())
            throw ValidationError("prediction line " + std::to_string(line_no) +
                                  ": missing prediction string");
        preds.push_back({id, j["prediction"].get<std::string>()});
    }

    if (preds.size() != gold.size()) throw LengthMismatchError(preds.size(), gold.size());

    std::map<std::string, const std::string*> by_id;
    for (const Pred& p : preds)
        if (!by_id.emplace(p.id, &p.text).second) throw IdMismatchError(p.id);

    ScoreReport r;
    r.total = gold.size();
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const auto it = by_id.find(std::to_string(i));
        if (it == by_id.end()) throw IdMismatchError(std::to_string(i));
        const bool ok = denotation_match(*it->second, gold[i].answers);
        if (ok) ++r.matched;
        if (!gold[i].skill.empty()) {
            auto& [m, tot] = r.per_skill[gold[i].skill];
            ++tot;
            if (ok) ++m;
        }
    }
    r.accuracy = r.total > 0 ? static_cast<double>(r.matched) / static_cast<double>(r.total) : 0.0;
    return r;
}

std::string format_score(const ScoreReport& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "accuracy: %.4f (%zu/%zu)\n", r.accuracy, r.matched, r.total);
    std::string out = buf;
    for (const auto& [skill, counts] : r.per_skill) {
        const auto [m, tot] = counts;
        std::snprintf(buf, sizeof buf, "  %-22s %.4f (%zu/%zu)\n", skill.c_str(),
                      tot ? static_cast<double>(m) / static_cast<double>(tot) : 0.0, m, tot);
        out += buf;
    }
    return out;
}

}  // namespace tabsynth
