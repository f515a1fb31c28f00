#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "espart/core.hpp"
#include "espart/grid.hpp"

namespace espart {

// Sequence text format: one ASCII decimal integer per line (optional leading
// '-'), optional trailing newline.
inline Sequence read_sequence(std::istream& in) {
    Sequence seq;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() && in.eof()) break;
        std::size_t i = 0;
        bool neg = false;
        if (i < line.size() && (line[i] == '-' || line[i] == '+')) {
            neg = line[i] == '-';
            ++i;
        }
        if (i >= line.size())
            throw IoError("line " + std::to_string(lineno) + ": empty value");
        long long v = 0;
        for (; i < line.size(); ++i) {
            char c = line[i];
            if (c == '\r' && i + 1 == line.size()) break;
            if (c < '0' || c > '9')
                throw IoError("line " + std::to_string(lineno) +
                              ": not an integer: '" + line + "'");
            v = v * 10 + (c - '0');
        }
        seq.values.push_back(neg ? -v : v);
    }
    return seq;
}

inline Sequence read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_sequence(in);
}

inline void write_sequence(std::ostream& out, const Sequence& seq) {
    for (Value v : seq.values) out << v << '\n';
}

// Partition JSON schema:
//   {"n": int, "parts": [{"direction": "inc"|"dec", "indices": [int,...]}]}
inline nlohmann::json partition_to_json(const Partition& p) {
    nlohmann::json j;
    j["n"] = p.n;
    j["parts"] = nlohmann::json::array();
    for (const MonotonePart& part : p.parts) {
        nlohmann::json jp;
        jp["direction"] = to_string(part.direction);
        jp["indices"] = part.indices;
        j["parts"].push_back(jp);
    }
    return j;
}

inline Partition partition_from_json(const nlohmann::json& j) {
    Partition p;
    if (!j.contains("n") || !j.contains("parts"))
        throw IoError("partition JSON must contain 'n' and 'parts'");
    p.n = j.at("n").get<std::size_t>();
    for (const auto& jp : j.at("parts")) {
        MonotonePart part;
        std::string dir = jp.at("direction").get<std::string>();
        if (dir == "inc")
            part.direction = Direction::Increasing;
        else if (dir == "dec")
            part.direction = Direction::Decreasing;
        else
            throw IoError("unknown direction '" + dir + "'");
        part.indices = jp.at("indices").get<std::vector<std::size_t>>();
        p.parts.push_back(std::move(part));
    }
    return p;
}

inline Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
    try {
        return partition_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad partition JSON in " + path + ": " + e.what());
    }
}

// Table text format: first line m, then m lines of m integers, top row
// first. Internally row 0 is the bottom row, so reading flips vertically.
inline Table read_table(std::istream& in) {
    int m;
    if (!(in >> m) || m < 1) throw IoError("bad table side");
    Table t(m);
    for (int r = m - 1; r >= 0; --r) {
        for (int c = 0; c < m; ++c) {
            Weight w;
            if (!(in >> w)) throw IoError("truncated table");
            if (w < 0) throw IoError("negative weight in table");
            t.at(r, c) = w;
        }
    }
    return t;
}

inline void write_table(std::ostream& out, const Table& t) {
    out << t.m << '\n';
    for (int r = t.m - 1; r >= 0; --r) {
        for (int c = 0; c < t.m; ++c)
            out << t.at(r, c) << (c + 1 == t.m ? '\n' : ' ');
    }
}

}  // namespace espart
