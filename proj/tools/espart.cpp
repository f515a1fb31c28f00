// espart: monotone-partition toolkit CLI.
//
// Subcommands:
//   decompose  partition a sequence into monotone parts, JSON out
//   verify     validate a partition file against a sequence file
//   bench      run the algo x generator x n x seed matrix, CSV out
//   gridlab    build segment families / measure adversarial score ratios
//   dynlis     replay an operation stream against the dynamic structure

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "espart/bench.hpp"
#include "espart/core.hpp"
#include "espart/dynamic_lis.hpp"
#include "espart/generators.hpp"
#include "espart/grid.hpp"
#include "espart/io.hpp"
#include "espart/partition.hpp"

namespace {

using nlohmann::json;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ESPART_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw espart::BadSpecError("ESPART_SEED is not a number");
        }
    }
    return 1;
}

espart::Sequence load_input(const std::string& input_file,
                            const std::string& gen_spec) {
    if (!input_file.empty()) return espart::read_sequence_file(input_file);
    if (gen_spec.empty())
        throw espart::BadSpecError("need --input FILE or --gen SPEC");
    espart::GeneratorSpec spec = espart::parse_generator(gen_spec);
    if (gen_spec.find("seed=") == std::string::npos) spec.seed = default_seed();
    return espart::generate(spec);
}

json stats_to_json(const espart::DecomposeStats& stats,
                   const espart::DynConfig& dyn) {
    json j;
    j["algo"] = stats.algo;
    j["parts"] = stats.parts_count;
    j["rounds"] = stats.rounds;
    j["per_round_sizes"] = stats.per_round_sizes;
    json ops;
    ops["total"] = stats.ops;
    if (stats.algo == "dynamic") {
        ops["segments_touched"] = stats.dyn_work.segments_touched;
        ops["points_resorted"] = stats.dyn_work.points_resorted;
        ops["dp_cells"] = stats.dyn_work.dp_cells;
        ops["rebuilds"] = stats.dyn_work.rebuilds;
        j["config"] = {{"kappa", dyn.kappa},
                       {"depth", dyn.depth},
                       {"rebuild_factor", dyn.rebuild_factor}};
    } else {
        j["config"] = json::object();
    }
    j["ops"] = ops;
    j["defects"] = stats.defects;
    return j;
}

int cmd_decompose(const std::string& input_file, const std::string& gen_spec,
                  const std::string& algo, const espart::DynConfig& dyn,
                  const std::string& out_file) {
    espart::Sequence seq = load_input(input_file, gen_spec);
    auto [part, stats] = espart::run_decomposer(algo, seq, dyn);
    espart::ValidationReport rep = espart::validate_partition(seq, part);

    json j = espart::partition_to_json(part);
    j["stats"] = stats_to_json(stats, dyn);
    std::string text = j.dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file);
        if (!out) throw espart::IoError("cannot write " + out_file);
        out << text;
    }
    if (!rep.ok) {
        for (const auto& v : rep.violations)
            std::cerr << "invalid partition: " << v.what << "\n";
        return 2;
    }
    return 0;
}

int cmd_verify(const std::string& input_file, const std::string& part_file) {
    espart::Sequence seq = espart::read_sequence_file(input_file);
    espart::Partition part = espart::read_partition_file(part_file);
    espart::ValidationReport rep = espart::validate_partition(seq, part);
    if (rep.ok) {
        std::cout << "ok: " << part.parts.size() << " parts cover 1.."
                  << part.n << "\n";
        return 0;
    }
    for (const auto& v : rep.violations) std::cout << "fail: " << v.what << "\n";
    return 2;
}

int cmd_bench(const std::vector<std::string>& algos,
              const std::vector<std::string>& gens,
              const std::vector<std::size_t>& ns,
              const std::vector<std::uint64_t>& seeds,
              const espart::DynConfig& dyn, const std::string& csv_file) {
    espart::BenchOptions opt;
    opt.algos = algos;
    for (const std::string& g : gens)
        opt.generators.push_back(espart::parse_generator(g, false));
    if (opt.generators.empty())
        opt.generators.push_back({espart::GeneratorKind::UniformRandom, 0, 0, 0});
    opt.ns = ns;
    opt.seeds = seeds;
    if (opt.seeds.empty()) opt.seeds.push_back(default_seed());
    opt.dyn = dyn;
    espart::BenchReport rep = espart::run_bench(opt);
    if (csv_file.empty()) {
        espart::write_bench_csv(std::cout, rep);
    } else {
        std::ofstream out(csv_file);
        if (!out) throw espart::IoError("cannot write " + csv_file);
        espart::write_bench_csv(out, rep);
    }
    return rep.all_valid() ? 0 : 2;
}

espart::WeightStrategy parse_strategy(const std::string& name) {
    if (name == "uniform_random") return espart::WeightStrategy::UniformRandom;
    if (name == "single_path") return espart::WeightStrategy::SinglePath;
    if (name == "anti_segment") return espart::WeightStrategy::AntiSegment;
    if (name == "sparse_spikes") return espart::WeightStrategy::SparseSpikes;
    throw espart::BadSpecError("unknown adversary '" + name + "'");
}

int cmd_gridlab_build(int m, double kappa) {
    espart::SegmentFamily fam = espart::build_family(m, kappa);
    std::cout << "m,kappa,segments,max_cover\n";
    std::cout << m << ',' << kappa << ',' << fam.size() << ','
              << fam.max_cover() << "\n";
    return 0;
}

int cmd_gridlab_score(const std::string& table_file, double kappa) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!table_file.empty()) {
        file.open(table_file);
        if (!file) throw espart::IoError("cannot open " + table_file);
        in = &file;
    }
    espart::Table t = espart::read_table(*in);
    espart::SegmentFamily fam = espart::build_family(t.m, kappa);
    espart::PathResult path = espart::best_path_score(t);
    espart::ChainResult chain = espart::best_chain(fam, t);
    std::cout << "m,kappa,path_score,chain_score,chain_segments\n";
    std::cout << t.m << ',' << kappa << ',' << path.score << ',' << chain.value
              << ',' << chain.chosen.size() << "\n";
    return 0;
}

int cmd_gridlab_measure(int m, double kappa, int trials, std::uint64_t seed,
                        const std::vector<std::string>& adversaries,
                        bool summary) {
    std::vector<espart::WeightStrategy> strats;
    for (const std::string& a : adversaries) strats.push_back(parse_strategy(a));
    if (strats.empty())
        strats = {espart::WeightStrategy::UniformRandom,
                  espart::WeightStrategy::SinglePath,
                  espart::WeightStrategy::AntiSegment,
                  espart::WeightStrategy::SparseSpikes};
    espart::RatioReport rep = espart::measure_ratio(m, kappa, strats, trials, seed);
    char buf[64];
    if (summary) {
        std::cout << "adversary,trials,max_ratio,mean_ratio\n";
        for (const auto& st : rep.per_strategy) {
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f", st.max_ratio,
                          st.mean_ratio);
            std::cout << to_string(st.strategy) << ',' << trials << ',' << buf
                      << "\n";
        }
    } else {
        std::cout << "adversary,trial,path_score,chain_score,ratio\n";
        for (const auto& row : rep.rows) {
            std::snprintf(buf, sizeof(buf), "%.6f", row.ratio);
            std::cout << to_string(row.strategy) << ',' << row.trial << ','
                      << row.path_score << ',' << row.chain_score << ',' << buf
                      << "\n";
        }
    }
    return 0;
}

// Stream lines: "I pos value", "D key", "S key value", "Q", "X".
// Keys are assigned 1,2,3,... in insertion order.
int cmd_dynlis_replay(const std::string& input_file, double kappa, int depth) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input_file.empty()) {
        file.open(input_file);
        if (!file) throw espart::IoError("cannot open " + input_file);
        in = &file;
    }
    espart::DynConfig cfg;
    cfg.kappa = kappa;
    cfg.depth = depth;
    espart::DynLisInstance inst(cfg);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(*in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        char op;
        ls >> op;
        auto bad = [&](const std::string& why) {
            throw espart::IoError("line " + std::to_string(lineno) + ": " + why);
        };
        switch (op) {
            case 'I': {
                std::size_t pos;
                espart::Value v;
                if (!(ls >> pos >> v)) bad("expected 'I pos value'");
                espart::PointKey k = inst.insert(pos, v);
                std::cout << "K " << k.id << "\n";
                break;
            }
            case 'D': {
                std::uint64_t id;
                if (!(ls >> id)) bad("expected 'D key'");
                inst.erase(espart::PointKey{id});
                break;
            }
            case 'S': {
                std::uint64_t id;
                espart::Value v;
                if (!(ls >> id >> v)) bad("expected 'S key value'");
                inst.substitute(espart::PointKey{id}, v);
                break;
            }
            case 'Q':
                std::cout << "Q " << inst.estimate_lis() << "\n";
                break;
            case 'X': {
                std::vector<espart::PointKey> keys = inst.extract_solution();
                std::cout << "X " << keys.size();
                for (espart::PointKey k : keys)
                    std::cout << ' ' << inst.position_of(k) << ':'
                              << inst.value_of(k);
                std::cout << "\n";
                break;
            }
            default:
                bad(std::string("unknown op '") + op + "'");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monotone sequence partitioning toolkit"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "partition a sequence");
    std::string input_file, gen_spec, out_file, algo = "greedy";
    std::string format = "json";
    espart::DynConfig dyn;
    dec->add_option("--input", input_file, "sequence file, one integer per line");
    dec->add_option("--gen", gen_spec, "generator spec, e.g. uniform_random:4096:seed=7");
    dec->add_option("--algo", algo, "greedy | byf | dynamic")
        ->check(CLI::IsMember({"greedy", "byf", "dynamic"}));
    dec->add_option("--kappa", dyn.kappa, "grid parameter in (0,1)");
    dec->add_option("--depth", dyn.depth, "recursion depth")
        ->check(CLI::IsMember({1, 2}));
    dec->add_option("--out", out_file, "output file (default stdout)");
    dec->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json"}));

    // verify
    auto* ver = app.add_subcommand("verify", "validate a partition file");
    std::string ver_input, ver_part;
    ver->add_option("--input", ver_input, "sequence file")->required();
    ver->add_option("--partition", ver_part, "partition JSON file")->required();

    // bench
    auto* ben = app.add_subcommand("bench", "run the benchmark matrix");
    std::vector<std::string> algos{"greedy", "byf", "dynamic"};
    std::vector<std::string> gens;
    std::vector<std::size_t> ns;
    std::vector<std::uint64_t> seeds;
    std::string csv_file;
    ben->add_option("--algos", algos, "algorithms")->delimiter(',');
    ben->add_option("--ns", ns, "sequence lengths")->delimiter(',');
    ben->add_option("--seeds", seeds, "seeds")->delimiter(',');
    ben->add_option("--gens", gens, "generator kinds (no length)")->delimiter(',');
    ben->add_option("--kappa", dyn.kappa, "dynamic grid parameter");
    ben->add_option("--depth", dyn.depth, "dynamic recursion depth")
        ->check(CLI::IsMember({1, 2}));
    ben->add_option("--csv", csv_file, "CSV output file (default stdout)");

    // gridlab
    auto* grid = app.add_subcommand("gridlab", "grid packing tools");
    grid->require_subcommand(1);
    auto* gbuild = grid->add_subcommand("build", "build a segment family");
    int gm = 16;
    double gkappa = 0.5;
    gbuild->add_option("--m", gm, "table side")->required();
    gbuild->add_option("--kappa", gkappa, "cover parameter in (0,1)")->required();
    auto* gscore = grid->add_subcommand("score", "score a table file");
    std::string table_file;
    double skappa = 0.5;
    gscore->add_option("--table", table_file, "table file (default stdin)");
    gscore->add_option("--kappa", skappa, "cover parameter in (0,1)");
    auto* gmeasure = grid->add_subcommand("measure", "adversarial ratio probe");
    int mm = 16, trials = 100;
    double mkappa = 0.5;
    std::uint64_t mseed = 0;
    bool have_seed = false, summary = false;
    std::vector<std::string> adversaries;
    gmeasure->add_option("--m", mm, "table side")->required();
    gmeasure->add_option("--kappa", mkappa, "cover parameter")->required();
    gmeasure->add_option("--trials", trials, "trials per adversary");
    gmeasure->add_option("--seed", mseed, "seed")->each([&](const std::string&) {
        have_seed = true;
    });
    gmeasure->add_option("--adversary", adversaries,
                         "uniform_random,single_path,anti_segment,sparse_spikes")
        ->delimiter(',');
    gmeasure->add_flag("--summary", summary, "per-strategy summary only");

    // dynlis
    auto* dl = app.add_subcommand("dynlis", "dynamic LIS tools");
    dl->require_subcommand(1);
    auto* replay = dl->add_subcommand("replay", "replay an operation stream");
    std::string replay_input;
    double rkappa = 0.5;
    int rdepth = 1;
    replay->add_option("--input", replay_input, "stream file (default stdin)");
    replay->add_option("--kappa", rkappa, "grid parameter");
    replay->add_option("--depth", rdepth, "recursion depth")
        ->check(CLI::IsMember({1, 2}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dec->parsed())
            return cmd_decompose(input_file, gen_spec, algo, dyn, out_file);
        if (ver->parsed()) return cmd_verify(ver_input, ver_part);
        if (ben->parsed())
            return cmd_bench(algos, gens, ns, seeds, dyn, csv_file);
        if (grid->parsed()) {
            if (gbuild->parsed()) return cmd_gridlab_build(gm, gkappa);
            if (gscore->parsed()) return cmd_gridlab_score(table_file, skappa);
            if (gmeasure->parsed())
                return cmd_gridlab_measure(mm, mkappa, trials,
                                           have_seed ? mseed : default_seed(),
                                           adversaries, summary);
        }
        if (dl->parsed() && replay->parsed())
            return cmd_dynlis_replay(replay_input, rkappa, rdepth);
    } catch (const espart::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
