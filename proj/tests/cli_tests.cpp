#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "espart/bench.hpp"
#include "espart/io.hpp"

namespace {

const std::string kCli = ESPART_CLI_PATH;

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = "") {
        path = std::string("espart_test_") + name;
        if (!content.empty()) {
            std::ofstream out(path);
            out << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::string& args, std::string* out = nullptr) {
    std::string cmd = kCli + " " + args;
    TempFile capture("cli_out.txt");
    cmd += " > " + capture.path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(capture.path);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("decompose a generated sorted sequence") {
    std::string out;
    int rc = run("decompose --gen sorted:8 --algo greedy", &out);
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["n"] == 8);
    CHECK(j["parts"].size() == 1);
    CHECK(j["stats"]["algo"] == "greedy");
}

TEST_CASE("decompose missing input file exits 1") {
    CHECK(run("decompose --input espart_definitely_missing.txt --algo greedy") == 1);
    CHECK(run("decompose --algo greedy") == 1);  // neither --input nor --gen
    CHECK(run("decompose --gen sorted:8 --algo nope") == 1);
}

TEST_CASE("decompose to file, then verify round-trips") {
    TempFile seq("seq.txt", "7\n2\n4\n1\n9\n6\n3\n5\n8\n");
    TempFile part("part.json");
    int rc = run("decompose --input " + seq.path + " --algo byf --out " +
                 part.path);
    CHECK(rc == 0);
    CHECK(run("verify --input " + seq.path + " --partition " + part.path) == 0);
}

TEST_CASE("verify catches an uncovered position") {
    TempFile seq("seq3.txt", "1\n2\n3\n");
    TempFile part("part3.json",
                  R"({"n":3,"parts":[{"direction":"inc","indices":[1,2]}]})");
    std::string out;
    CHECK(run("verify --input " + seq.path + " --partition " + part.path,
              &out) == 2);
    CHECK(out.find("uncovered") != std::string::npos);
}

TEST_CASE("verify rejects malformed JSON with exit 1") {
    TempFile seq("seq4.txt", "1\n2\n");
    TempFile part("part4.json", "{not json");
    CHECK(run("verify --input " + seq.path + " --partition " + part.path) == 1);
}

TEST_CASE("dynamic decompose via CLI") {
    std::string out;
    int rc = run(
        "decompose --gen uniform_random:512:seed=7 --algo dynamic --kappa 0.5",
        &out);
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["stats"]["algo"] == "dynamic");
    CHECK(j["stats"]["config"]["kappa"] == 0.5);
}

TEST_CASE("bench CSV matrix") {
    TempFile csv("bench.csv");
    int rc = run("bench --algos greedy,byf --ns 16,64 --seeds 1,2 "
                 "--gens uniform_random --csv " + csv.path);
    CHECK(rc == 0);
    std::string text = slurp(csv.path);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == espart::bench_csv_header());
    std::size_t rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2 * 2 * 2);
}

TEST_CASE("gridlab build and measure emit CSV") {
    std::string out;
    CHECK(run("gridlab build --m 16 --kappa 0.5", &out) == 0);
    CHECK(out.find("m,kappa,segments,max_cover") == 0);
    CHECK(run("gridlab measure --m 8 --kappa 0.5 --trials 3 --seed 1 "
              "--adversary uniform_random --summary",
              &out) == 0);
    CHECK(out.find("adversary,trials,max_ratio,mean_ratio") == 0);
    CHECK(out.find("uniform_random") != std::string::npos);
}

TEST_CASE("dynlis replay") {
    TempFile stream("ops.txt",
                    "I 1 10\n"
                    "I 2 20\n"
                    "I 3 5\n"
                    "Q\n"
                    "D 3\n"
                    "Q\n"
                    "S 2 1\n"
                    "Q\n"
                    "X\n");
    std::string out;
    int rc = run("dynlis replay --input " + stream.path, &out);
    CHECK(rc == 0);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "K 1");
    std::getline(lines, line);
    CHECK(line == "K 2");
    std::getline(lines, line);
    CHECK(line == "K 3");
    std::getline(lines, line);
    CHECK(line == "Q 2");  // 10,20,5 -> LIS 2
    std::getline(lines, line);
    CHECK(line == "Q 2");  // 10,20
    std::getline(lines, line);
    CHECK(line == "Q 1");  // 10,1
    std::getline(lines, line);
    CHECK(line.substr(0, 3) == "X 1");
}

TEST_CASE("gridlab score reads the table format") {
    // reference 4x4 table, top row first
    TempFile table("table.txt",
                   "4\n"
                   "3 0 0 1\n"
                   "2 5 1 1\n"
                   "0 1 0 2\n"
                   "2 1 3 0\n");
    std::string out;
    CHECK(run("gridlab score --table " + table.path + " --kappa 0.5", &out) == 0);
    CHECK(out.find("path_score") != std::string::npos);
    CHECK(out.find("4,0.5,12,") != std::string::npos);
    CHECK(run("gridlab score --table espart_missing_table.txt") == 1);
}

TEST_CASE("dynlis replay stream errors exit 1") {
    TempFile stream("ops_bad.txt", "I 1 10\nD 99\n");
    CHECK(run("dynlis replay --input " + stream.path) == 1);
    TempFile stream2("ops_bad2.txt", "Z\n");
    CHECK(run("dynlis replay --input " + stream2.path) == 1);
    CHECK(run("dynlis replay --input espart_no_such_stream.txt") == 1);
}

TEST_CASE("identical CLI invocations are byte-identical apart from wall_ms") {
    auto normalize = [](const std::string& csv) {
        std::istringstream lines(csv);
        std::string line, out;
        while (std::getline(lines, line)) {
            // strip the wall_ms column (second to last)
            std::size_t last = line.rfind(',');
            std::size_t prev = last == std::string::npos
                                   ? std::string::npos
                                   : line.rfind(',', last - 1);
            if (prev != std::string::npos)
                out += line.substr(0, prev) + line.substr(last);
            out += '\n';
        }
        return out;
    };
    TempFile a("bench_a.csv"), b("bench_b.csv");
    std::string cmd = "bench --algos greedy,dynamic --ns 32,128 --seeds 3 "
                      "--gens uniform_random,sorted --csv ";
    CHECK(run(cmd + a.path) == 0);
    CHECK(run(cmd + b.path) == 0);
    std::string ca = slurp(a.path), cb = slurp(b.path);
    CHECK_FALSE(ca.empty());
    CHECK(normalize(ca) == normalize(cb));
}
