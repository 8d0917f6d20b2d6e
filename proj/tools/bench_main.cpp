// Benchmarks parallel example generation against the serial reference and
// checks that both emit identical bytes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "support/synth_tables.hpp"
#include "tabsynth/corpus.hpp"
#include "tabsynth/pipeline.hpp"
#include "tabsynth/question_template.hpp"
#include "tabsynth/rng.hpp"

using namespace tabsynth;

namespace {

struct SinkDigest {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    std::size_t count = 0;
    void operator()(const Example& e) {
        const std::string line = example_to_json(e);
        for (const char c : line) {
            hash ^= static_cast<unsigned char>(c);
            hash *= 0x100000001b3ull;
        }
        ++count;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t num_tables = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000;
    const std::size_t quota = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 4;

    std::printf("building %zu tables...\n", num_tables);
    const auto tables = testsupport::synth_tables(7, num_tables, 8, 30);

    GenerateRun run;
    run.quotas.fill(quota);
    run.seed = 42;
    const auto& templates = builtin_templates();

    SinkDigest serial;
    auto t0 = std::chrono::steady_clock::now();
    generate_examples_serial(tables, run, templates, std::ref(serial));
    const double serial_s = seconds_since(t0);

    run.threads = resolve_thread_count(0);
    SinkDigest parallel;
    t0 = std::chrono::steady_clock::now();
    generate_examples(tables, run, templates, std::ref(parallel));
    const double parallel_s = seconds_since(t0);

    std::printf("serial:   %8.3f s  %10.0f examples/s  (%zu examples)\n", serial_s,
                static_cast<double>(serial.count) / serial_s, serial.count);
    std::printf("parallel: %8.3f s  %10.0f examples/s  (%d threads)\n", parallel_s,
                static_cast<double>(parallel.count) / parallel_s, run.threads);
    std::printf("speedup:  %.2fx\n", serial_s / parallel_s);

    if (serial.hash != parallel.hash || serial.count != parallel.count) {
        std::printf("MISMATCH: serial and parallel outputs differ\n");
        return 1;
    }
    std::printf("outputs identical (digest %016llx)\n",
                static_cast<unsigned long long>(serial.hash));
    return 0;
}
