#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "espart/errors.hpp"

namespace espart {

using Value = long long;

// A finite sequence of pairwise-distinct integers, positions 1..n.
// Distinctness is a usage precondition; operations that rely on it check and
// throw DuplicateValueError.
struct Sequence {
    std::vector<Value> values;

    Sequence() = default;
    explicit Sequence(std::vector<Value> v) : values(std::move(v)) {}
    Sequence(std::initializer_list<Value> v) : values(v) {}

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    Value at1(std::size_t pos) const { return values[pos - 1]; }  // 1-based

    bool operator==(const Sequence& o) const { return values == o.values; }
};

struct Point {
    std::size_t x;  // position, 1..n
    std::size_t y;  // rank/value, 1..n
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// Permutation graph of a rank-normalized sequence: one point per position,
// one point per rank.
struct PointSet {
    std::vector<Point> points;  // ordered by x

    std::size_t size() const { return points.size(); }
};

enum class Direction { Increasing, Decreasing };

inline const char* to_string(Direction d) {
    return d == Direction::Increasing ? "inc" : "dec";
}

// One monotone piece of a partition: 1-based positions in strictly
// increasing order whose values run strictly up or strictly down.
struct MonotonePart {
    Direction direction = Direction::Increasing;
    std::vector<std::size_t> indices;
};

struct Partition {
    std::size_t n = 0;
    std::vector<MonotonePart> parts;
};

struct Violation {
    std::string what;        // human-readable constraint description
    std::size_t index;       // first witnessing 1-based index (0 if n/a)
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void fail(std::string what, std::size_t index) {
        ok = false;
        violations.push_back({std::move(what), index});
    }
};

namespace detail {

// Returns indices of `values` sorted by value; throws on the first duplicate
// pair encountered.
inline std::vector<std::size_t> sorted_order_checked(
    const std::vector<Value>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return values[a] < values[b];
                     });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (values[order[i - 1]] == values[order[i]]) {
            std::size_t a = order[i - 1] + 1, b = order[i] + 1;
            throw DuplicateValueError(values[order[i]], std::min(a, b),
                                      std::max(a, b));
        }
    }
    return order;
}

}  // namespace detail

// Throws DuplicateValueError if the sequence has two equal values.
inline void require_distinct(const Sequence& seq) {
    detail::sorted_order_checked(seq.values);
}

// Replaces each value by its rank in sorted order, producing a permutation
// of 1..n. Order-isomorphic to the input and idempotent.
inline Sequence rank_normalize(const Sequence& seq) {
    std::vector<std::size_t> order = detail::sorted_order_checked(seq.values);
    Sequence out;
    out.values.resize(seq.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        out.values[order[r]] = static_cast<Value>(r + 1);
    return out;
}

inline bool is_permutation_of_1n(const Sequence& seq) {
    std::size_t n = seq.size();
    std::vector<bool> seen(n + 1, false);
    for (Value v : seq.values) {
        if (v < 1 || v > static_cast<Value>(n)) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

// Maps a rank-normalized sequence to its permutation graph {(i, a_i)}.
inline PointSet to_points(const Sequence& seq) {
    if (!is_permutation_of_1n(seq))
        throw Error("to_points requires a rank-normalized sequence");
    PointSet ps;
    ps.points.reserve(seq.size());
    for (std::size_t i = 1; i <= seq.size(); ++i)
        ps.points.push_back({i, static_cast<std::size_t>(seq.at1(i))});
    return ps;
}

// Checks every Partition invariant against the sequence. Failures are report
// content, not errors.
inline ValidationReport validate_partition(const Sequence& seq,
                                           const Partition& p) {
    ValidationReport rep;
    const std::size_t n = seq.size();
    if (p.n != n)
        rep.fail("partition n=" + std::to_string(p.n) +
                     " does not match sequence length " + std::to_string(n),
                 0);

    std::vector<std::size_t> covered(n + 1, 0);  // index -> covering part count
    for (std::size_t pi = 0; pi < p.parts.size(); ++pi) {
        const MonotonePart& part = p.parts[pi];
        const std::string label = "part " + std::to_string(pi + 1);
        if (part.indices.empty()) {
            rep.fail(label + " is empty", 0);
            continue;
        }
        bool in_range = true;
        for (std::size_t idx : part.indices) {
            if (idx < 1 || idx > n) {
                rep.fail(label + " index " + std::to_string(idx) +
                             " out of range 1.." + std::to_string(n),
                         idx);
                in_range = false;
                break;
            }
        }
        if (!in_range) continue;
        for (std::size_t i = 1; i < part.indices.size(); ++i) {
            if (part.indices[i - 1] >= part.indices[i]) {
                rep.fail(label + " indices not strictly increasing",
                         part.indices[i]);
                break;
            }
        }
        for (std::size_t i = 1; i < part.indices.size(); ++i) {
            Value prev = seq.at1(part.indices[i - 1]);
            Value cur = seq.at1(part.indices[i]);
            bool ok_dir = part.direction == Direction::Increasing
                              ? prev < cur
                              : prev > cur;
            if (!ok_dir) {
                rep.fail(label + " values " + std::to_string(prev) + "," +
                             std::to_string(cur) + " not " +
                             (part.direction == Direction::Increasing
                                  ? "increasing"
                                  : "decreasing"),
                         part.indices[i]);
                break;
            }
        }
        for (std::size_t idx : part.indices)
            if (idx >= 1 && idx <= n) ++covered[idx];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (covered[i] == 0) {
            rep.fail("position " + std::to_string(i) + " uncovered", i);
            break;
        }
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (covered[i] > 1) {
            rep.fail("position " + std::to_string(i) + " covered " +
                         std::to_string(covered[i]) + " times",
                     i);
            break;
        }
    }
    return rep;
}

}  // namespace espart
