#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tabsynth/corpus.hpp"
#include "tabsynth/errors.hpp"
#include "tabsynth/eval.hpp"
#include "tabsynth/generator.hpp"
#include "tabsynth/ingest.hpp"
#include "tabsynth/pipeline.hpp"
#include "tabsynth/question_template.hpp"
#include "tabsynth/skill.hpp"
#include "tabsynth/strutil.hpp"
#include "tabsynth/typeinfer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tabsynth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All flag-bound state, so a config file can pre-seed it before parsing.
struct Args {
    std::string config;

    struct {
        std::string in;
        std::string format = "csv";
        std::string out;
        std::uint64_t seed = 0;
        bool no_shuffle = false;
        double threshold = 0.8;
    } ingest;

    struct {
        std::string tables;
        std::string templates;
        std::size_t quota = 8;
        std::uint64_t seed = 0;
        std::string out;
        int threads = 0;
    } generate;

    struct {
        std::string pool;
        std::size_t total = 0;
        std::string proportions;  // inline JSON map skill -> fraction
        std::string disable;      // comma-separated skills
        std::uint64_t seed = 0;
        std::string out;
        std::vector<std::string> external;  // skill=path
    } sample;

    struct {
        std::string corpus;
        std::string tables;
        std::string out;
        bool lowercase = false;
    } exp;

    struct {
        std::string corpus;
    } stats;

    struct {
        std::string pred;
        std::string gold;
    } score;
};

template <class T>
void set_from_json(const json& v, T& out) {
    out = v.get<T>();
}

// Config file layout mirrors the CLI: {"generate": {"quota": 16}, ...}.
void apply_config(const std::string& path, Args& a) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    json cfg = json::parse(in, nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object())
        throw ValidationError("config '" + path + "' is not a JSON object");

    const auto section = [&](const char* name, auto&& apply) {
        if (!cfg.contains(name)) return;
        const json& s = cfg[name];
        if (!s.is_object()) throw ValidationError(std::string("config section '") + name +
                                                  "' is not an object");
        for (const auto& [key, value] : s.items()) {
            try {
                if (!apply(key, value))
                    std::cerr << "config: ignoring unknown key '" << name << "." << key << "'\n";
            } catch (const json::exception& e) {
                throw ValidationError("config key '" + std::string(name) + "." + key + "': " +
                                      e.what());
            }
        }
    };

    section("ingest", [&](const std::string& k, const json& v) {
        if (k == "in") set_from_json(v, a.ingest.in);
        else if (k == "format") set_from_json(v, a.ingest.format);
        else if (k == "out") set_from_json(v, a.ingest.out);
        else if (k == "seed") set_from_json(v, a.ingest.seed);
        else if (k == "no-shuffle") set_from_json(v, a.ingest.no_shuffle);
        else if (k == "threshold") set_from_json(v, a.ingest.threshold);
        else return false;
        return true;
    });
    section("generate", [&](const std::string& k, const json& v) {
        if (k == "tables") set_from_json(v, a.generate.tables);
        else if (k == "templates") set_from_json(v, a.generate.templates);
        else if (k == "quota") set_from_json(v, a.generate.quota);
        else if (k == "seed") set_from_json(v, a.generate.seed);
        else if (k == "out") set_from_json(v, a.generate.out);
        else if (k == "threads") set_from_json(v, a.generate.threads);
        else return false;
        return true;
    });
    section("sample", [&](const std::string& k, const json& v) {
        if (k == "pool") set_from_json(v, a.sample.pool);
        else if (k == "total") set_from_json(v, a.sample.total);
        else if (k == "proportions") set_from_json(v, a.sample.proportions);
        else if (k == "disable") set_from_json(v, a.sample.disable);
        else if (k == "seed") set_from_json(v, a.sample.seed);
        else if (k == "out") set_from_json(v, a.sample.out);
        else if (k == "external") set_from_json(v, a.sample.external);
        else return false;
        return true;
    });
    section("export", [&](const std::string& k, const json& v) {
        if (k == "corpus") set_from_json(v, a.exp.corpus);
        else if (k == "tables") set_from_json(v, a.exp.tables);
        else if (k == "out") set_from_json(v, a.exp.out);
        else if (k == "lowercase") set_from_json(v, a.exp.lowercase);
        else return false;
        return true;
    });
    section("stats", [&](const std::string& k, const json& v) {
        if (k == "corpus") set_from_json(v, a.stats.corpus);
        else return false;
        return true;
    });
    section("score", [&](const std::string& k, const json& v) {
        if (k == "pred") set_from_json(v, a.score.pred);
        else if (k == "gold") set_from_json(v, a.score.gold);
        else return false;
        return true;
    });
}

void require_flag(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

std::vector<Template> load_template_set(const std::string& path) {
    if (path.empty()) return builtin_templates();
    auto in = open_input(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_templates(buf.str());
}

int cmd_ingest(const Args& a) {
    require_flag(a.ingest.in, "--in");
    require_flag(a.ingest.out, "--out");
    if (a.ingest.format != "csv" && a.ingest.format != "jsonl")
        throw UsageError("--format must be csv or jsonl");

    TypeInferOptions infer_opts;
    infer_opts.threshold = a.ingest.threshold;

    std::vector<Table> accepted;
    std::set<std::string> ids;
    std::size_t rejected = 0;
    const auto consider = [&](Table&& t) {
        if (const auto issue = validate_table(t, /*corpus_mode=*/true)) {
            std::cerr << "reject " << t.table_id() << ": " << issue->message() << "\n";
            ++rejected;
            return;
        }
        if (!ids.insert(t.table_id()).second) {
            std::cerr << "reject " << t.table_id() << ": duplicate table_id\n";
            ++rejected;
            return;
        }
        accepted.push_back(a.ingest.no_shuffle ? std::move(t)
                                               : shuffle_rows(t, a.ingest.seed));
    };

    if (a.ingest.format == "csv") {
        std::vector<fs::path> files;
        if (fs::is_directory(a.ingest.in)) {
            for (const auto& entry : fs::directory_iterator(a.ingest.in))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
        } else {
            files.push_back(a.ingest.in);
        }
        for (const auto& path : files) {
            try {
                auto in = open_input(path.string());
                RawTable raw = ingest_csv(in, path.stem().string());
                consider(annotate(raw, /*fixture=*/false, infer_opts));
            } catch (const ValidationError& e) {
                std::cerr << "reject " << path.string() << ": " << e.what() << "\n";
                ++rejected;
            }
        }
    } else {
        auto in = open_input(a.ingest.in);
        IngestReport report;
        ingest_jsonl(
            in,
            [&](RawTable&& raw) { consider(annotate(raw, /*fixture=*/false, infer_opts)); },
            report);
        for (const auto& issue : report.errors) {
            std::cerr << "reject line " << issue.line_no << ": " << issue.message << "\n";
            ++rejected;
        }
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Table& x, const Table& y) { return x.table_id() < y.table_id(); });
    auto out = open_output(a.ingest.out);
    write_table_store(accepted, out);
    std::cerr << "accepted " << accepted.size() << " tables, rejected " << rejected << "\n";
    return kExitOk;
}

int cmd_generate(const Args& a) {
    require_flag(a.generate.tables, "--tables");
    require_flag(a.generate.out, "--out");
    if (a.generate.quota == 0) throw UsageError("--quota must be at least 1");

    auto tables_in = open_input(a.generate.tables);
    const std::vector<Table> tables = read_table_store(tables_in);
    const std::vector<Template> templates = load_template_set(a.generate.templates);

    fs::create_directories(a.generate.out);
    std::array<std::ofstream, kAllSkills.size()> outs;
    for (const SkillKind s : kAllSkills) {
        const auto path = fs::path(a.generate.out) / (skill_name(s) + ".jsonl");
        outs[static_cast<std::size_t>(skill_index(s))] = open_output(path.string());
    }

    GenerateRun run;
    run.quotas.fill(a.generate.quota);
    run.seed = a.generate.seed;
    run.threads = a.generate.threads;

    std::size_t written = 0;
    const GenDiag diag = generate_examples(tables, run, templates, [&](const Example& e) {
        outs[static_cast<std::size_t>(skill_index(e.skill))] << example_to_json(e) << '\n';
        ++written;
    });
    for (auto& out : outs)
        if (!out) throw IoError("pool write failed");

    std::cerr << "generated " << written << " examples from " << tables.size() << " tables ("
              << diag.attempts << " attempts, " << diag.rejected << " rejected bindings)\n";
    for (const SkillKind s : kAllSkills) {
        const auto short_n = diag.shortfall[static_cast<std::size_t>(skill_index(s))];
        if (short_n > 0)
            std::cerr << "note: " << skill_name(s) << " short by " << short_n << " examples\n";
    }
    return kExitOk;
}

CorpusConfig build_corpus_config(const Args& a) {
    CorpusConfig cfg;
    cfg.total = a.sample.total;
    cfg.seed = a.sample.seed;
    if (!a.sample.proportions.empty()) {
        const json j = json::parse(a.sample.proportions, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("--proportions is not a JSON object");
        std::map<SkillKind, double> props;
        for (const auto& [key, value] : j.items()) {
            const auto s = skill_from_name(key);
            if (!s) throw ValidationError("--proportions: unknown skill '" + key + "'");
            props[*s] = value.get<double>();
        }
        cfg.proportions = std::move(props);
        // A custom map narrows the enabled set to its keys.
        cfg.enabled.clear();
        for (const auto& [s, p] : cfg.proportions) cfg.enabled.insert(s);
    }
    if (!a.sample.disable.empty()) {
        std::stringstream ss(a.sample.disable);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto s = skill_from_name(item);
            if (!s) throw ValidationError("--disable: unknown skill '" + item + "'");
            cfg.enabled.erase(*s);
        }
    }
    for (const auto& spec : a.sample.external) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw UsageError("--external expects <skill>=<path>, got '" + spec + "'");
        const auto s = skill_from_name(spec.substr(0, eq));
        if (!s) throw ValidationError("--external: unknown skill '" + spec.substr(0, eq) + "'");
        cfg.external_paths[*s] = spec.substr(eq + 1);
    }
    return cfg;
}

int cmd_sample(const Args& a) {
    require_flag(a.sample.pool, "--pool");
    require_flag(a.sample.out, "--out");
    if (a.sample.total == 0) throw UsageError("--total must be at least 1");

    const CorpusConfig cfg = build_corpus_config(a);

    // Each pool stream drains the generated JSONL file, then any external
    // examples labeled with the same skill.
    struct PoolSource {
        std::ifstream file;
        bool file_open = false;
        std::vector<Example> external;
        std::size_t next_external = 0;
        std::size_t line_no = 0;
    };
    std::map<SkillKind, PoolSource> sources;
    std::map<SkillKind, ExampleStream> pools;
    for (const SkillKind s : cfg.enabled) {
        PoolSource& src = sources[s];
        const auto path = fs::path(a.sample.pool) / (skill_name(s) + ".jsonl");
        src.file.open(path, std::ios::binary);
        src.file_open = src.file.is_open();
        if (const auto ext = cfg.external_paths.find(s); ext != cfg.external_paths.end()) {
            auto in = open_input(ext->second);
            ImportReport report;
            import_external(in, s, [&](Example&& e) { src.external.push_back(std::move(e)); },
                            report);
            for (const auto& err : report.errors)
                std::cerr << "external " << ext->second << " line " << err.line_no << ": "
                          << err.message << "\n";
        }
        pools[s] = [&src, s]() -> std::optional<Example> {
            std::string line;
            while (src.file_open && std::getline(src.file, line)) {
                ++src.line_no;
                if (trim(line).empty()) continue;
                return example_from_json(line, src.line_no);
            }
            if (src.next_external < src.external.size())
                return std::move(src.external[src.next_external++]);
            return std::nullopt;
        };
    }

    const std::vector<Example> corpus = sample_corpus(pools, cfg);
    auto out = open_output(a.sample.out);
    write_corpus(corpus, out);
    std::cerr << "sampled " << corpus.size() << " examples\n";
    return kExitOk;
}

int cmd_export(const Args& a) {
    require_flag(a.exp.corpus, "--corpus");
    require_flag(a.exp.tables, "--tables");
    require_flag(a.exp.out, "--out");

    auto tables_in = open_input(a.exp.tables);
    std::map<std::string, Table> by_id;
    for (Table& t : read_table_store(tables_in)) {
        std::string id = t.table_id();
        by_id.emplace(std::move(id), std::move(t));
    }

    auto corpus = open_input(a.exp.corpus);
    auto out = open_output(a.exp.out);
    ExportOptions opts;
    opts.lowercase = a.exp.lowercase;
    const ExportReport report = export_seq2seq(corpus, by_id, out, opts);
    std::cerr << "exported " << report.written << " records";
    if (report.missing_table > 0)
        std::cerr << ", skipped " << report.missing_table << " with no stored table";
    if (report.serialize.pipe_cells > 0)
        std::cerr << ", replaced '|' in " << report.serialize.pipe_cells << " cells";
    std::cerr << "\n";
    return kExitOk;
}

int cmd_stats(const Args& a) {
    require_flag(a.stats.corpus, "--corpus");
    auto in = open_input(a.stats.corpus);
    StatsAccumulator acc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        acc.add(example_from_json(line, line_no));
    }
    std::cout << format_stats(acc.stats);
    return kExitOk;
}

int cmd_score(const Args& a) {
    require_flag(a.score.pred, "--pred");
    require_flag(a.score.gold, "--gold");
    auto pred = open_input(a.score.pred);
    auto gold = open_input(a.score.gold);
    std::cout << format_score(score_streams(pred, gold));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Args args;

    // Config values must land before CLI11 binds defaults, so find --config
    // ahead of the real parse.
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) args.config = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) args.config = std::string(arg.substr(9));
    }
    try {
        if (!args.config.empty()) apply_config(args.config, args);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    CLI::App app{"deterministic table-QA corpus builder"};
    app.require_subcommand(1);
    app.add_option("--config", args.config, "JSON config mirroring all flags");

    auto* ingest = app.add_subcommand("ingest", "validate and store input tables");
    ingest->add_option("--in", args.ingest.in, "CSV file/directory or JSONL file");
    ingest->add_option("--format", args.ingest.format, "csv or jsonl")
        ->capture_default_str();
    ingest->add_option("--out", args.ingest.out, "table store to write");
    ingest->add_option("--seed", args.ingest.seed, "row shuffle seed")->capture_default_str();
    ingest->add_flag("--no-shuffle", args.ingest.no_shuffle, "keep source row order");
    ingest->add_option("--threshold", args.ingest.threshold, "type inference vote threshold")
        ->capture_default_str();

    auto* generate = app.add_subcommand("generate", "fill per-skill example pools");
    generate->add_option("--tables", args.generate.tables, "table store");
    generate->add_option("--templates", args.generate.templates,
                         "template TSV (default: built-in set)");
    generate->add_option("--quota", args.generate.quota, "examples per skill per table")
        ->capture_default_str();
    generate->add_option("--seed", args.generate.seed, "generation seed")->capture_default_str();
    generate->add_option("--out", args.generate.out, "pool directory");
    generate->add_option("--threads", args.generate.threads,
                         "worker count (0 = TABSYNTH_THREADS or all cores)")
        ->capture_default_str();

    auto* sample = app.add_subcommand("sample", "draw the corpus from the pools");
    sample->add_option("--pool", args.sample.pool, "pool directory");
    sample->add_option("--total", args.sample.total, "corpus size");
    sample->add_option("--proportions", args.sample.proportions,
                       "inline JSON map skill -> fraction");
    sample->add_option("--disable", args.sample.disable, "comma-separated skills to drop");
    sample->add_option("--seed", args.sample.seed, "sampling seed")->capture_default_str();
    sample->add_option("--out", args.sample.out, "corpus JSONL to write");
    sample->add_option("--external", args.sample.external,
                       "<skill>=<path> JSONL of external QA pairs (repeatable)");

    auto* exp = app.add_subcommand("export", "render seq2seq input/target pairs");
    exp->add_option("--corpus", args.exp.corpus, "corpus JSONL");
    exp->add_option("--tables", args.exp.tables, "table store");
    exp->add_option("--out", args.exp.out, "seq2seq JSONL to write");
    exp->add_flag("--lowercase", args.exp.lowercase, "lowercase inputs and targets");

    auto* stats = app.add_subcommand("stats", "summarize a corpus");
    stats->add_option("--corpus", args.stats.corpus, "corpus JSONL");

    auto* score = app.add_subcommand("score", "denotation accuracy of predictions");
    score->add_option("--pred", args.score.pred, "predictions (lines or JSONL)");
    score->add_option("--gold", args.score.gold, "gold corpus JSONL or answer lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(args);
        if (generate->parsed()) return cmd_generate(args);
        if (sample->parsed()) return cmd_sample(args);
        if (exp->parsed()) return cmd_export(args);
        if (stats->parsed()) return cmd_stats(args);
        if (score->parsed()) return cmd_score(args);
        std::cerr << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
