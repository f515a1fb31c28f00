#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "espart/errors.hpp"
#include "espart/rng.hpp"

namespace espart {

using Weight = long long;

// m x m table of non-negative weights. Row 0 is the bottom row, column 0 the
// leftmost column, so "up" increases the row index and "right" the column.
struct Table {
    int m = 0;
    std::vector<Weight> w;  // row-major from the bottom row

    Table() = default;
    explicit Table(int side) : m(side), w(static_cast<std::size_t>(side) * side, 0) {}

    Weight at(int row, int col) const {
        return w[static_cast<std::size_t>(row) * m + col];
    }
    Weight& at(int row, int col) {
        return w[static_cast<std::size_t>(row) * m + col];
    }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < m && col >= 0 && col < m;
    }
};

enum class Orientation : std::uint8_t { Row, Col };

// A consecutive run of cells within a single row or column.
struct Segment {
    Orientation orientation = Orientation::Row;
    int line = 0;  // the fixed row (Row) or column (Col)
    int lo = 0;    // inclusive span along the other axis
    int hi = 0;

    int min_row() const { return orientation == Orientation::Row ? line : lo; }
    int max_row() const { return orientation == Orientation::Row ? line : hi; }
    int min_col() const { return orientation == Orientation::Row ? lo : line; }
    int max_col() const { return orientation == Orientation::Row ? hi : line; }
    int length() const { return hi - lo + 1; }

    bool operator==(const Segment& o) const {
        return orientation == o.orientation && line == o.line && lo == o.lo &&
               hi == o.hi;
    }
};

inline Segment row_segment(int row, int lo, int hi) {
    return {Orientation::Row, row, lo, hi};
}
inline Segment col_segment(int col, int lo, int hi) {
    return {Orientation::Col, col, lo, hi};
}

// a precedes b iff every cell of a is strictly higher and strictly to the
// right of every cell of b.
inline bool precedes(const Segment& a, const Segment& b) {
    return a.min_row() > b.max_row() && a.min_col() > b.max_col();
}

inline bool conflicting(const Segment& a, const Segment& b) {
    return !precedes(a, b) && !precedes(b, a);
}

inline Weight segment_score(const Table& t, const Segment& s) {
    if (s.lo < 0 || s.hi >= t.m || s.lo > s.hi || s.line < 0 || s.line >= t.m)
        throw OutOfBoundsError("segment exceeds table of side " +
                               std::to_string(t.m));
    Weight sum = 0;
    if (s.orientation == Orientation::Row) {
        for (int c = s.lo; c <= s.hi; ++c) sum += t.at(s.line, c);
    } else {
        for (int r = s.lo; r <= s.hi; ++r) sum += t.at(r, s.line);
    }
    return sum;
}

struct PathResult {
    Weight score = 0;
    std::vector<std::pair<int, int>> cells;  // (row, col) from bottom-left
};

// Exact maximum over monotone up/right corner-to-corner paths (length 2m-1).
inline PathResult best_path_score(const Table& t) {
    PathResult res;
    const int m = t.m;
    if (m <= 0) return res;
    std::vector<Weight> dp(static_cast<std::size_t>(m) * m, 0);
    auto idx = [m](int r, int c) { return static_cast<std::size_t>(r) * m + c; };
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            Weight best = 0;
            if (r > 0 || c > 0) {
                if (r > 0 && c > 0)
                    best = std::max(dp[idx(r - 1, c)], dp[idx(r, c - 1)]);
                else if (r > 0)
                    best = dp[idx(r - 1, c)];
                else
                    best = dp[idx(r, c - 1)];
            }
            dp[idx(r, c)] = best + t.at(r, c);
        }
    }
    res.score = dp[idx(m - 1, m - 1)];
    int r = m - 1, c = m - 1;
    res.cells.reserve(2 * m - 1);
    while (true) {
        res.cells.push_back({r, c});
        if (r == 0 && c == 0) break;
        if (r > 0 && (c == 0 || dp[idx(r - 1, c)] >= dp[idx(r, c - 1)]))
            --r;
        else
            --c;
    }
    std::reverse(res.cells.begin(), res.cells.end());
    return res;
}

namespace detail {

// Shared hierarchy over an interval [0, m): for every block, the full block
// span plus every child-boundary-aligned prefix and suffix, recursing into
// the children down to single cells. Exact duplicates are removed.
inline std::vector<std::pair<int, int>> build_span_template(int m, int b) {
    std::vector<std::pair<int, int>> spans;
    struct Frame {
        int lo, hi;
    };
    std::vector<Frame> stack{{0, m - 1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        spans.push_back({f.lo, f.hi});
        int len = f.hi - f.lo + 1;
        if (len <= 1) continue;
        int c = std::min(b, len);
        int base = len / c, rem = len % c;
        int cur = f.lo;
        std::vector<int> starts;
        starts.reserve(c);
        for (int i = 0; i < c; ++i) {
            starts.push_back(cur);
            cur += base + (i < rem ? 1 : 0);
        }
        for (int i = 1; i < c; ++i) {
            spans.push_back({f.lo, starts[i] - 1});  // prefix
            spans.push_back({starts[i], f.hi});      // suffix
        }
        for (int i = 0; i < c; ++i) {
            int child_hi = (i + 1 < c) ? starts[i + 1] - 1 : f.hi;
            stack.push_back({starts[i], child_hi});
        }
    }
    std::sort(spans.begin(), spans.end());
    spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
    return spans;
}

}  // namespace detail

// A collection of segments on an m x m table with cover statistics and the
// precomputed event order used by the non-conflicting-chain DP.
//
// Two construction paths share the public surface: build() instantiates the
// same span hierarchy on every row and every column (so cover statistics
// collapse to one per-position profile), while from_segments() carries an
// arbitrary explicit list.
class SegmentFamily {
public:
    static constexpr std::uint32_t npos32 = static_cast<std::uint32_t>(-1);

    // Deterministic hierarchy family for side m and parameter kappa in (0,1).
    static SegmentFamily build(int m, double kappa) {
        if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidKappaError(kappa);
        if (m < 1) throw OutOfBoundsError("table side must be >= 1");
        SegmentFamily f;
        f.m_ = m;
        f.kappa_ = kappa;
        f.templated_ = true;
        int b = std::max(2, static_cast<int>(std::ceil(std::pow(double(m), kappa))));
        f.branch_ = b;
        f.tmpl_ = detail::build_span_template(m, b);
        f.tmpl_cover_.assign(m, 0);
        f.tmpl_covering_.assign(m, {});
        for (std::uint32_t t = 0; t < f.tmpl_.size(); ++t) {
            for (int x = f.tmpl_[t].first; x <= f.tmpl_[t].second; ++x) {
                ++f.tmpl_cover_[x];
                f.tmpl_covering_[x].push_back(t);
            }
        }
        return f;
    }

    static SegmentFamily from_segments(int m, std::vector<Segment> segs) {
        if (m < 1) throw OutOfBoundsError("table side must be >= 1");
        SegmentFamily f;
        f.m_ = m;
        f.templated_ = false;
        for (const Segment& s : segs) {
            if (s.lo < 0 || s.hi >= m || s.lo > s.hi || s.line < 0 || s.line >= m)
                throw OutOfBoundsError("segment exceeds table of side " +
                                       std::to_string(m));
        }
        f.explicit_segs_ = std::move(segs);
        f.cover_grid_.assign(static_cast<std::size_t>(m) * m, 0);
        for (const Segment& s : f.explicit_segs_) {
            if (s.orientation == Orientation::Row)
                for (int c = s.lo; c <= s.hi; ++c)
                    ++f.cover_grid_[static_cast<std::size_t>(s.line) * m + c];
            else
                for (int r = s.lo; r <= s.hi; ++r)
                    ++f.cover_grid_[static_cast<std::size_t>(r) * m + s.line];
        }
        return f;
    }

    int m() const { return m_; }
    double kappa() const { return kappa_; }

    std::size_t size() const {
        return templated_ ? 2 * static_cast<std::size_t>(m_) * tmpl_.size()
                          : explicit_segs_.size();
    }

    Segment segment(std::uint32_t id) const {
        if (!templated_) return explicit_segs_[id];
        const std::size_t per_orient = static_cast<std::size_t>(m_) * tmpl_.size();
        Orientation o = id < per_orient ? Orientation::Row : Orientation::Col;
        std::size_t rest = id < per_orient ? id : id - per_orient;
        int line = static_cast<int>(rest / tmpl_.size());
        const auto& sp = tmpl_[rest % tmpl_.size()];
        return {o, line, sp.first, sp.second};
    }

    int cover_count(int row, int col) const {
        if (templated_) return tmpl_cover_[col] + tmpl_cover_[row];
        return static_cast<int>(cover_grid_[static_cast<std::size_t>(row) * m_ + col]);
    }

    int max_cover() const {
        if (size() == 0) return 0;
        if (templated_) {
            int mx = 0;
            for (int x = 0; x < m_; ++x) mx = std::max(mx, tmpl_cover_[x]);
            return 2 * mx;
        }
        int mx = 0;
        for (int v : cover_grid_) mx = std::max(mx, v);
        return mx;
    }

    // Ids of all segments covering cell (row, col), ascending.
    std::vector<std::uint32_t> covering(int row, int col) const {
        std::vector<std::uint32_t> out;
        if (templated_) {
            const std::size_t per_line = tmpl_.size();
            const std::size_t col_base = static_cast<std::size_t>(m_) * per_line;
            for (std::uint32_t t : tmpl_covering_[col])
                out.push_back(static_cast<std::uint32_t>(row * per_line + t));
            for (std::uint32_t t : tmpl_covering_[row])
                out.push_back(static_cast<std::uint32_t>(col_base + col * per_line + t));
        } else {
            for (std::uint32_t id = 0; id < explicit_segs_.size(); ++id) {
                const Segment& s = explicit_segs_[id];
                bool covers = s.orientation == Orientation::Row
                                  ? (s.line == row && s.lo <= col && col <= s.hi)
                                  : (s.line == col && s.lo <= row && row <= s.hi);
                if (covers) out.push_back(id);
            }
        }
        return out;
    }

    // Event schedule for the chain DP: a segment becomes available as a
    // predecessor once the sweep row exceeds its max_row, and is evaluated
    // at its min_row.
    const std::vector<std::vector<std::uint32_t>>& insert_events() const {
        ensure_events();
        return insert_by_row_;
    }
    const std::vector<std::vector<std::uint32_t>>& query_events() const {
        ensure_events();
        return query_by_row_;
    }

private:
    void ensure_events() const {
        if (events_ready_) return;
        insert_by_row_.assign(m_, {});
        query_by_row_.assign(m_, {});
        const std::uint32_t n = static_cast<std::uint32_t>(size());
        for (std::uint32_t id = 0; id < n; ++id) {
            Segment s = segment(id);
            insert_by_row_[s.max_row()].push_back(id);
            query_by_row_[s.min_row()].push_back(id);
        }
        events_ready_ = true;
    }

    int m_ = 0;
    double kappa_ = 0.0;
    bool templated_ = false;
    int branch_ = 0;

    // template mode
    std::vector<std::pair<int, int>> tmpl_;
    std::vector<int> tmpl_cover_;
    std::vector<std::vector<std::uint32_t>> tmpl_covering_;

    // explicit mode
    std::vector<Segment> explicit_segs_;
    std::vector<std::uint32_t> cover_grid_;

    mutable bool events_ready_ = false;
    mutable std::vector<std::vector<std::uint32_t>> insert_by_row_;
    mutable std::vector<std::vector<std::uint32_t>> query_by_row_;
};

inline SegmentFamily build_family(int m, double kappa) {
    return SegmentFamily::build(m, kappa);
}
inline SegmentFamily family_from_segments(int m, std::vector<Segment> segs) {
    return SegmentFamily::from_segments(m, std::move(segs));
}

struct ChainResult {
    Weight value = 0;
    std::vector<std::uint32_t> chosen;    // ids in chain (bottom-left first)
    std::vector<std::uint32_t> backptrs;  // per segment, npos32 if none
};

// Maximum-value chain of pairwise non-conflicting segments under arbitrary
// per-segment scores. One sweep over rows with a prefix-max Fenwick tree per
// column; ties between equal-value predecessors resolve to the lowest id.
// Reusable across calls: scratch buffers persist and are epoch-reset.
class ChainSolver {
public:
    explicit ChainSolver(const SegmentFamily* family) : fam_(family) {
        const std::size_t n = fam_->size();
        dp_.assign(n, 0);
        bp_.assign(n, SegmentFamily::npos32);
        fen_val_.assign(fam_->m() + 1, 0);
        fen_id_.assign(fam_->m() + 1, SegmentFamily::npos32);
        fen_epoch_.assign(fam_->m() + 1, 0);
    }

    // scores(id) -> Weight, non-negative. Returns chain value; adds the
    // number of segments processed to *dp_cells if given.
    template <class ScoreFn>
    Weight solve(ScoreFn&& scores, std::uint64_t* dp_cells = nullptr) {
        ++epoch_;
        best_value_ = 0;
        best_id_ = SegmentFamily::npos32;
        const auto& ins = fam_->insert_events();
        const auto& qry = fam_->query_events();
        const int m = fam_->m();
        std::uint64_t cells = 0;
        for (int r = 0; r < m; ++r) {
            if (r > 0)
                for (std::uint32_t id : ins[r - 1]) fen_update(fam_->segment(id).max_col(), dp_[id], id);
            for (std::uint32_t id : qry[r]) {
                ++cells;
                Segment s = fam_->segment(id);
                Weight base = 0;
                std::uint32_t pred = SegmentFamily::npos32;
                if (s.min_col() > 0) {
                    auto [v, p] = fen_query(s.min_col() - 1);
                    if (p != SegmentFamily::npos32 && v > 0) {
                        base = v;
                        pred = p;
                    }
                }
                dp_[id] = scores(id) + base;
                bp_[id] = pred;
                if (dp_[id] > best_value_ ||
                    (dp_[id] == best_value_ && dp_[id] > 0 && id < best_id_)) {
                    best_value_ = dp_[id];
                    best_id_ = id;
                }
            }
        }
        if (dp_cells) *dp_cells += cells;
        return best_value_;
    }

    Weight value() const { return best_value_; }
    std::uint32_t best_id() const { return best_id_; }
    std::uint32_t backptr(std::uint32_t id) const { return bp_[id]; }

    // Chosen ids in chain order (bottom-left first). Empty when value is 0.
    std::vector<std::uint32_t> chosen() const {
        std::vector<std::uint32_t> out;
        if (best_value_ <= 0) return out;
        std::uint32_t cur = best_id_;
        while (cur != SegmentFamily::npos32) {
            out.push_back(cur);
            cur = bp_[cur];
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    const std::vector<Weight>& dp_values() const { return dp_; }
    std::vector<std::uint32_t> backptrs_snapshot() const { return bp_; }

private:
    void fen_update(int col, Weight v, std::uint32_t id) {
        for (int i = col + 1; i <= fam_->m(); i += i & (-i)) {
            if (fen_epoch_[i] != epoch_) {
                fen_epoch_[i] = epoch_;
                fen_val_[i] = 0;
                fen_id_[i] = SegmentFamily::npos32;
            }
            if (v > fen_val_[i] || (v == fen_val_[i] && id < fen_id_[i])) {
                fen_val_[i] = v;
                fen_id_[i] = id;
            }
        }
    }

    std::pair<Weight, std::uint32_t> fen_query(int col) const {
        Weight v = 0;
        std::uint32_t id = SegmentFamily::npos32;
        for (int i = col + 1; i > 0; i -= i & (-i)) {
            if (fen_epoch_[i] != epoch_) continue;
            if (fen_val_[i] > v || (fen_val_[i] == v && fen_id_[i] < id)) {
                v = fen_val_[i];
                id = fen_id_[i];
            }
        }
        return {v, id};
    }

    const SegmentFamily* fam_;
    std::vector<Weight> dp_;
    std::vector<std::uint32_t> bp_;
    std::vector<Weight> fen_val_;
    std::vector<std::uint32_t> fen_id_;
    std::vector<std::uint64_t> fen_epoch_;
    std::uint64_t epoch_ = 0;
    Weight best_value_ = 0;
    std::uint32_t best_id_ = SegmentFamily::npos32;
};

// Exact maximum-value non-conflicting chain for a family against a table.
inline ChainResult best_chain(const SegmentFamily& f, const Table& t) {
    if (f.m() != t.m)
        throw OutOfBoundsError("family and table sides differ");
    ChainSolver solver(&f);
    std::vector<Weight> scores(f.size());
    for (std::uint32_t id = 0; id < f.size(); ++id)
        scores[id] = segment_score(t, f.segment(id));
    ChainResult res;
    res.value = solver.solve([&](std::uint32_t id) { return scores[id]; });
    res.chosen = solver.chosen();
    res.backptrs = solver.backptrs_snapshot();
    return res;
}

// Oracle: enumerate all subsets of pairwise non-conflicting segments.
inline Weight brute_force_chain(const SegmentFamily& f, const Table& t) {
    const std::size_t k = f.size();
    if (k > 20)
        throw TooLargeError("brute_force_chain limited to 20 segments, got " +
                            std::to_string(k));
    std::vector<std::uint32_t> conflict_mask(k, 0);
    std::vector<Weight> score(k);
    for (std::size_t i = 0; i < k; ++i) {
        score[i] = segment_score(t, f.segment(static_cast<std::uint32_t>(i)));
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && conflicting(f.segment(static_cast<std::uint32_t>(i)),
                                      f.segment(static_cast<std::uint32_t>(j))))
                conflict_mask[i] |= (1u << j);
    }
    const std::size_t total = std::size_t{1} << k;
    std::vector<char> valid(total, 1);
    std::vector<Weight> sum(total, 0);
    Weight best = 0;
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::size_t rest = mask & (mask - 1);
        valid[mask] = valid[rest] && !(conflict_mask[i] & rest);
        sum[mask] = sum[rest] + score[i];
        if (valid[mask]) best = std::max(best, sum[mask]);
    }
    return best;
}

enum class WeightStrategy { UniformRandom, SinglePath, AntiSegment, SparseSpikes };

inline const char* to_string(WeightStrategy s) {
    switch (s) {
        case WeightStrategy::UniformRandom: return "uniform_random";
        case WeightStrategy::SinglePath: return "single_path";
        case WeightStrategy::AntiSegment: return "anti_segment";
        case WeightStrategy::SparseSpikes: return "sparse_spikes";
    }
    return "?";
}

inline std::vector<std::pair<int, int>> random_monotone_path(int m, Rng& rng) {
    std::vector<int> moves(2 * (m - 1), 0);  // 0 = right, 1 = up
    for (int i = 0; i < m - 1; ++i) moves[i] = 1;
    for (std::size_t i = moves.size(); i > 1; --i)
        std::swap(moves[i - 1], moves[rng.below(i)]);
    std::vector<std::pair<int, int>> cells;
    int r = 0, c = 0;
    cells.push_back({0, 0});
    for (int mv : moves) {
        if (mv) ++r; else ++c;
        cells.push_back({r, c});
    }
    return cells;
}

// Adversarial weight assignments used by measure_ratio.
inline Table make_adversary_table(WeightStrategy strategy, int m, Rng& rng,
                                  const SegmentFamily& family) {
    Table t(m);
    switch (strategy) {
        case WeightStrategy::UniformRandom:
            for (Weight& w : t.w) w = static_cast<Weight>(rng.below(10));
            break;
        case WeightStrategy::SinglePath:
            for (auto [r, c] : random_monotone_path(m, rng)) t.at(r, c) = 100;
            break;
        case WeightStrategy::AntiSegment: {
            // spikes where block boundaries of the hierarchy cross, plus a
            // random path, probing alignment losses of the family
            std::vector<char> boundary(m, 0);
            for (std::uint32_t id = 0; id < family.size(); ++id) {
                Segment s = family.segment(id);
                if (s.lo > 0) boundary[s.lo] = 1;
            }
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    if (boundary[r] && boundary[c]) t.at(r, c) = 50;
            for (auto [r, c] : random_monotone_path(m, rng)) t.at(r, c) += 10;
            break;
        }
        case WeightStrategy::SparseSpikes:
            for (int i = 0; i < m; ++i) {
                int r = static_cast<int>(rng.below(m));
                int c = static_cast<int>(rng.below(m));
                t.at(r, c) = 1000;
            }
            break;
    }
    return t;
}

struct StrategyStats {
    WeightStrategy strategy;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
};

struct RatioTrial {
    WeightStrategy strategy;
    int trial;
    Weight path_score;
    Weight chain_score;
    double ratio;
};

struct RatioReport {
    int m = 0;
    double kappa = 0.0;
    int trials = 0;
    std::vector<StrategyStats> per_strategy;
    std::vector<RatioTrial> rows;
};

// Empirical probe of the (alpha,beta) guarantee: exact table score vs exact
// best chain for adversarial weight strategies. Ratio convention: a zero
// table score counts as ratio 1.
inline RatioReport measure_ratio(int m, double kappa,
                                 const std::vector<WeightStrategy>& adversaries,
                                 int trials, std::uint64_t seed) {
    SegmentFamily family = build_family(m, kappa);
    ChainSolver solver(&family);
    RatioReport rep;
    rep.m = m;
    rep.kappa = kappa;
    rep.trials = trials;
    for (WeightStrategy strat : adversaries) {
        StrategyStats st{strat, 0.0, 0.0};
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(seed ^ (static_cast<std::uint64_t>(strat) << 56) ^
                    (static_cast<std::uint64_t>(trial) * 0x100000001b3ull));
            Table t = make_adversary_table(strat, m, rng, family);
            Weight path = best_path_score(t).score;
            Weight chain = solver.solve([&](std::uint32_t id) {
                return segment_score(t, family.segment(id));
            });
            double ratio = path == 0 ? 1.0
                                     : static_cast<double>(path) /
                                           static_cast<double>(std::max<Weight>(chain, 1));
            st.max_ratio = std::max(st.max_ratio, ratio);
            st.mean_ratio += ratio;
            rep.rows.push_back({strat, trial, path, chain, ratio});
        }
        if (trials > 0) st.mean_ratio /= trials;
        rep.per_strategy.push_back(st);
    }
    return rep;
}

}  // namespace espart
