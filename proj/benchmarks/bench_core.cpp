#include <benchmark/benchmark.h>

#include <random>

#include "corec/eval.hpp"
#include "corec/util.hpp"

using namespace corec;

namespace {

const char* kSource = R"(
var binding = loadBinding('fs');
var limit = 64;
function maybeCallback(cb) { return cb || rethrow; }
function wrapper() { return 1; }
function validate(x) { return !!x; }
function write(fd, data, position, enc, done) {
    done = maybeCallback(done);
    req.oncomplete = wrapper;
    limit -= 1;
    out.header = 'w:' + enc + ':' + data.length + ':' + position + ':' + fd;
    out.payload = String(data);
    validate(out.payload);
    metrics.bytesOut += out.payload.length;
}
function read(handle, target, size, done) {
    done = maybeCallback(done);
    req.oncomplete = wrapper;
    limit -= 1;
    for (var i = 0; i < size && cursor + i < pool.limit; i = i + stride.step) {
        target[i] = validate(pool[cursor + i]);
    }
    binding.read(handle, target, size, readReq);
}
)";

void bench_parse_extract(benchmark::State& state) {
    for (auto _ : state) {
        ParsedFile pf;
        if (try_parse(kSource, pf)) state.SkipWithError("parse failed");
        benchmark::DoNotOptimize(extract_entities(pf, "lib.fs"));
    }
}
BENCHMARK(bench_parse_extract);

void bench_token_lcs(benchmark::State& state) {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> sym(0, 25);
    std::vector<std::string> a, b;
    for (int i = 0; i < 200; ++i) {
        a.push_back(std::string(1, char('a' + sym(rng))));
        b.push_back(std::string(1, char('a' + sym(rng))));
    }
    for (auto _ : state) benchmark::DoNotOptimize(lcs_length(a, b));
}
BENCHMARK(bench_token_lcs);

ChangeDependencyGraph random_cdg(std::mt19937& rng, int n) {
    const EditKind kinds[] = {EditKind::CF, EditKind::AF, EditKind::AV, EditKind::CB};
    const char labels[] = {'f', 'v', 'c'};
    std::uniform_int_distribution<int> kind(0, 3), pct(0, 99);
    ChangeDependencyGraph g;
    for (int i = 0; i < n; ++i) {
        EntityEdit e;
        e.kind = kinds[kind(rng)];
        Entity ent;
        ent.kind = EntityKind::Function;
        ent.signature = "m.e" + std::to_string(i);
        ent.module_path = "m";
        if (is_deleted(e.kind))
            e.old_entity = ent;
        else
            e.new_entity = ent;
        g.nodes.push_back({i, std::move(e)});
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && pct(rng) < 30) g.edges.push_back({i, j, labels[pct(rng) % 3]});
    return g;
}

void bench_lcs_graph(benchmark::State& state) {
    std::mt19937 rng(2);
    auto a = random_cdg(rng, static_cast<int>(state.range(0)));
    auto b = random_cdg(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(largest_common_subgraph(a, b));
}
BENCHMARK(bench_lcs_graph)->Arg(4)->Arg(6)->Arg(8);

void bench_train_forest(benchmark::State& state) {
    ml::Dataset data;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> jitter(0.0, 0.5);
    for (int i = 0; i < 400; ++i) {
        std::vector<double> row(10);
        double base = i % 2 ? 3.0 : 0.0;
        for (auto& v : row) v = base + jitter(rng);
        data.add(std::move(row), i % 2);
    }
    ml::ModelSpec spec;
    spec.tree_count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ml::train(spec, data));
}
BENCHMARK(bench_train_forest)->Arg(10)->Arg(100);

void bench_mine_rose(benchmark::State& state) {
    HistoryIndex h;
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> ent(0, 49);
    for (std::size_t o = 0; o < 500; ++o)
        for (int k = 0; k < 4; ++k) h.record(o, "m.e" + std::to_string(ent(rng)));
    for (auto _ : state) benchmark::DoNotOptimize(mine_rose(h, 2, 0.1));
}
BENCHMARK(bench_mine_rose);

}  // namespace

BENCHMARK_MAIN();
