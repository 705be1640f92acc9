#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "gsmds/dataset.hpp"
#include "gsmds/perturb.hpp"
#include "gsmds/pipeline.hpp"
#include "gsmds/structure_io.hpp"

namespace {

const std::vector<gsmds::Problem>& problems() {
    static const std::vector<gsmds::Problem> data =
        gsmds::load_problems_jsonl(std::string(GSMDS_BENCH_DATA_DIR) + "/worked_problems.jsonl");
    return data;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void BM_Analyze(benchmark::State& state) {
    const auto& ps = problems();
    std::size_t i = 0;
    for (auto _ : state) {
        gsmds::Analysis a = gsmds::analyze(ps[i++ % ps.size()]);
        benchmark::DoNotOptimize(a.structure.edges.data());
    }
}
BENCHMARK(BM_Analyze);

void BM_SerializeParseRoundTrip(benchmark::State& state) {
    gsmds::Analysis a = gsmds::analyze(problems().front());
    for (auto _ : state) {
        std::string block = gsmds::serialize_structure(a.structure);
        gsmds::DiscourseStructure back = gsmds::parse_structure(block);
        benchmark::DoNotOptimize(back.premises.data());
    }
}
BENCHMARK(BM_SerializeParseRoundTrip);

void BM_ExtractAnswer(benchmark::State& state) {
    const std::string transcript =
        read_file(std::string(GSMDS_BENCH_DATA_DIR) + "/transcripts/t12_marcus_ds_plus.txt");
    for (auto _ : state) {
        auto v = gsmds::extract_answer(transcript);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ExtractAnswer);

void BM_UniformScale(benchmark::State& state) {
    const gsmds::Problem* kenny = nullptr;
    for (const gsmds::Problem& p : problems()) {
        if (p.id == "kenny") kenny = &p;
    }
    gsmds::PerturbationSpec spec;
    spec.kind = gsmds::PerturbationKind::n_mod;
    spec.scale_factor = 2;
    for (auto _ : state) {
        gsmds::PerturbResult r = gsmds::apply_nmod(*kenny, spec);
        benchmark::DoNotOptimize(r.problem.gold_answer);
    }
}
BENCHMARK(BM_UniformScale);

}  // namespace

BENCHMARK_MAIN();
