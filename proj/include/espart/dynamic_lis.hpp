#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "espart/core.hpp"
#include "espart/errors.hpp"
#include "espart/grid.hpp"
#include "espart/order_index.hpp"

namespace espart {

// Stable identifier for a live element, independent of index shifts.
// Ids are never reused.
struct PointKey {
    std::uint64_t id = 0;
    bool operator==(const PointKey& o) const { return id == o.id; }
    bool operator<(const PointKey& o) const { return id < o.id; }
};

struct DynConfig {
    double kappa = 0.5;          // grid-packing parameter
    int depth = 1;               // 1: exact per-segment patience; 2: nested instances
    double rebuild_factor = 2.0; // full rebuild when live size drifts by this factor
};

struct CounterReport {
    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    std::uint64_t substitutes = 0;
    std::uint64_t queries = 0;
    std::uint64_t extracts = 0;
    std::uint64_t segments_touched = 0;  // partial recomputations / nested feeds
    std::uint64_t points_resorted = 0;   // points passed through patience again
    std::uint64_t dp_cells = 0;          // segments processed by the chain DP
    std::uint64_t rebuilds = 0;
    std::uint64_t extract_work = 0;

    std::uint64_t mutations() const { return inserts + deletes + substitutes; }
    std::uint64_t total_work() const {
        return segments_touched + points_resorted + dp_cells;
    }
};

namespace detail {

// Grid side for a live size: a fixed power balancing chain-DP size (grows
// with m^2) against per-update partial recomputation (grows with points per
// grid line, size/m).
inline int grid_side_for(std::size_t size) {
    if (size <= 1) return 1;
    int m = static_cast<int>(std::ceil(std::pow(static_cast<double>(size), 0.4)));
    return std::max(1, std::min<int>(m, static_cast<int>(size)));
}

// Process-wide cache of hierarchy families; instances at the same (m, kappa)
// share one immutable family.
inline std::shared_ptr<const SegmentFamily> cached_family(int m, double kappa) {
    static std::mutex mu;
    static std::map<std::pair<int, long long>, std::shared_ptr<const SegmentFamily>> cache;
    const auto key = std::make_pair(m, static_cast<long long>(kappa * 1e9));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto fam = std::make_shared<SegmentFamily>(build_family(m, kappa));
    fam->insert_events();  // materialize before sharing read-only
    auto res = cache.emplace(key, std::move(fam));
    return res.first->second;
}

}  // namespace detail

// Dynamic approximate-LIS structure. Points live on a quantile grid frozen
// at the last rebuild; every segment of a hierarchy family keeps a partial
// increasing subsequence of the points inside its cells, and a chain DP over
// non-conflicting segments yields the estimate. Mutations recompute exactly
// the partials of segments covering the modified point's cell (depth 1) or
// feed nested instances (depth 2); the chain DP is refreshed at read time.
//
// Single-writer: mutations must be externally serialized and reads must not
// overlap writes.
class DynLisInstance {
public:
    explicit DynLisInstance(DynConfig cfg) : cfg_(cfg) {
        if (!(cfg.kappa > 0.0 && cfg.kappa < 1.0))
            throw InvalidConfigError("kappa must lie in (0,1)");
        if (cfg.depth != 1 && cfg.depth != 2)
            throw InvalidConfigError("depth must be 1 or 2");
        if (!(cfg.rebuild_factor >= 1.5))
            throw InvalidConfigError("rebuild_factor must be >= 1.5");
        do_rebuild();
    }

    const DynConfig& config() const { return cfg_; }
    std::size_t size() const { return order_.size(); }

    PointKey insert(std::size_t pos, Value v) {
        if (pos < 1 || pos > size() + 1)
            throw PositionOutOfRangeError(pos, size());
        auto dup = value_to_key_.find(v);
        if (dup != value_to_key_.end())
            throw DuplicateValueError(v, position_of_key(dup->second), pos);
        carry_.clear();

        std::uint32_t h = order_.insert_at(pos - 1);
        std::uint32_t key = static_cast<std::uint32_t>(pts_.size());
        pts_.push_back(PointRec{});
        PointRec& rec = pts_[key];
        rec.value = v;
        rec.handle = h;
        rec.alive = true;
        if (handle_key_.size() <= h) handle_key_.resize(h + 1);
        handle_key_[h] = key;
        value_to_key_.emplace(v, key);

        std::uint32_t left = order_.prev(h);
        if (left != OrderIndex::npos) {
            rec.gx = pts_[handle_key_[left]].gx;
        } else {
            std::uint32_t right = order_.next(h);
            rec.gx = right != OrderIndex::npos ? pts_[handle_key_[right]].gx : 0;
        }
        rec.gy = band_of_value(v);
        cell_insert(key);
        if (cfg_.depth == 2) nested_feed_insert(key);
        mark_cell_dirty(rec.gy, rec.gx);

        ++ctr_.inserts;
        maybe_rebuild();
        return PointKey{key + 1};
    }

    void erase(PointKey k) {
        std::uint32_t key = check_key(k);
        carry_.clear();
        PointRec& rec = pts_[key];
        if (cfg_.depth == 2) nested_feed_erase(key);
        cell_erase(key);
        mark_cell_dirty(rec.gy, rec.gx);
        value_to_key_.erase(rec.value);
        order_.erase(rec.handle);
        rec.alive = false;
        ++ctr_.deletes;
        maybe_rebuild();
    }

    void substitute(PointKey k, Value v) {
        std::uint32_t key = check_key(k);
        PointRec& rec = pts_[key];
        auto dup = value_to_key_.find(v);
        if (dup != value_to_key_.end() && dup->second != key)
            throw DuplicateValueError(v, position_of_key(dup->second),
                                      position_of_key(key));
        carry_.clear();
        if (v != rec.value) {
            if (cfg_.depth == 2) nested_feed_erase(key);
            cell_erase(key);
            mark_cell_dirty(rec.gy, rec.gx);
            value_to_key_.erase(rec.value);
            rec.value = v;
            rec.gy = band_of_value(v);
            value_to_key_.emplace(v, key);
            cell_insert(key);
            if (cfg_.depth == 2) nested_feed_insert(key);
            mark_cell_dirty(rec.gy, rec.gx);
        }
        ++ctr_.substitutes;
    }

    // Current estimate of the LIS size. Sound: never exceeds the exact LIS,
    // and extract_solution() always produces a witness of exactly this length.
    std::size_t estimate_lis() {
        ++ctr_.queries;
        refresh();
        return current_estimate();
    }

    // Witness of length estimate_lis(): keys in strictly increasing position
    // and value order.
    std::vector<PointKey> extract_solution() {
        ++ctr_.extracts;
        refresh();
        std::vector<PointKey> out;
        if (!carry_.empty() &&
            carry_.size() > static_cast<std::size_t>(chain_value_)) {
            for (std::uint32_t key : carry_) out.push_back(PointKey{key + 1});
            ctr_.extract_work += carry_.size() + 1;
            return out;
        }
        std::vector<std::uint32_t> chain = solver_->chosen();
        for (std::uint32_t id : chain) {
            if (cfg_.depth == 2) {
                NestedState* ns = nested_of(id);
                if (!ns) continue;
                for (PointKey nk : ns->inst->extract_solution())
                    out.push_back(PointKey{ns->rev.at(nk.id) + 1});
            } else {
                for (std::uint32_t key : partials_[id].witness)
                    out.push_back(PointKey{key + 1});
            }
        }
        ctr_.extract_work += chain.size() + out.size() + 1;
        return out;
    }

    CounterReport op_counters() const {
        CounterReport r = ctr_;
        if (cfg_.depth == 2) {
            for (const auto& [id, ns] : nested_) {
                (void)id;
                CounterReport n = ns->inst->op_counters();
                r.segments_touched += n.segments_touched;
                r.points_resorted += n.points_resorted;
                r.dp_cells += n.dp_cells;
            }
        }
        return r;
    }

    Value value_of(PointKey k) const {
        return pts_[check_key(k)].value;
    }
    std::size_t position_of(PointKey k) const {
        return position_of_key(check_key(k));
    }
    std::vector<PointKey> live_keys_in_order() const {
        std::vector<PointKey> out;
        for (std::uint32_t h : order_.to_vector())
            out.push_back(PointKey{handle_key_[h] + 1});
        return out;
    }

    int grid_side() const { return m_; }
    const SegmentFamily& family() const { return *family_; }

    void force_rebuild() { do_rebuild(); }

private:
    struct PointRec {
        Value value = 0;
        std::uint32_t handle = 0;
        std::uint16_t gx = 0, gy = 0;
        bool alive = false;
    };

    struct NestedState {
        std::unique_ptr<DynLisInstance> inst;
        std::unordered_map<std::uint32_t, std::uint64_t> fwd;  // our key -> nested id
        std::unordered_map<std::uint64_t, std::uint32_t> rev;
    };

    struct Partial {
        std::uint32_t len = 0;
        std::vector<std::uint32_t> witness;
    };

    std::uint32_t check_key(PointKey k) const {
        if (k.id == 0 || k.id > pts_.size() || !pts_[k.id - 1].alive)
            throw UnknownKeyError(k.id);
        return static_cast<std::uint32_t>(k.id - 1);
    }

    std::size_t position_of_key(std::uint32_t key) const {
        return order_.rank_of(pts_[key].handle) + 1;
    }

    std::uint16_t band_of_value(Value v) const {
        auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), v);
        return static_cast<std::uint16_t>(it - thresholds_.begin());
    }

    std::vector<std::uint32_t>& cell(int gy, int gx) {
        return cells_[static_cast<std::size_t>(gy) * m_ + gx];
    }

    // Index where `key` sits (or should sit) in its cell's position-sorted
    // list. Ranks are distinct, so this is exact.
    std::size_t cell_spot(const std::vector<std::uint32_t>& list,
                          std::size_t rank) const {
        std::size_t lo = 0, hi = list.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (order_.rank_of(pts_[list[mid]].handle) < rank)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    void cell_insert(std::uint32_t key) {
        PointRec& rec = pts_[key];
        auto& list = cell(rec.gy, rec.gx);
        std::size_t spot = cell_spot(list, order_.rank_of(rec.handle));
        list.insert(list.begin() + spot, key);
    }

    void cell_erase(std::uint32_t key) {
        PointRec& rec = pts_[key];
        auto& list = cell(rec.gy, rec.gx);
        std::size_t spot = cell_spot(list, order_.rank_of(rec.handle));
        // spot points at the first entry with rank >= ours, which is ours
        list.erase(list.begin() + spot);
    }

    void mark_cell_dirty(int gy, int gx) {
        std::uint32_t c = static_cast<std::uint32_t>(gy) * m_ + gx;
        if (cell_dirty_[c]) return;
        cell_dirty_[c] = 1;
        dirty_cells_.push_back(c);
        chain_dirty_ = true;
    }

    // ---- depth-2 nested bookkeeping -------------------------------------

    NestedState* nested_of(std::uint32_t seg_id) {
        auto it = nested_.find(seg_id);
        return it == nested_.end() ? nullptr : it->second.get();
    }

    NestedState& nested_get_or_create(std::uint32_t seg_id) {
        auto it = nested_.find(seg_id);
        if (it != nested_.end()) return *it->second;
        auto ns = std::make_unique<NestedState>();
        DynConfig sub = cfg_;
        sub.depth = 1;
        ns->inst = std::make_unique<DynLisInstance>(sub);
        auto res = nested_.emplace(seg_id, std::move(ns));
        return *res.first->second;
    }

    // Number of points of segment `s` strictly before global rank `rank`.
    std::size_t seg_rank_before(const Segment& s, std::size_t rank) const {
        std::size_t cnt = 0;
        if (s.orientation == Orientation::Row) {
            for (int c = s.lo; c <= s.hi; ++c) {
                const auto& list = cells_[static_cast<std::size_t>(s.line) * m_ + c];
                cnt += cell_spot(list, rank);
            }
        } else {
            for (int r = s.lo; r <= s.hi; ++r) {
                const auto& list = cells_[static_cast<std::size_t>(r) * m_ + s.line];
                cnt += cell_spot(list, rank);
            }
        }
        return cnt;
    }

    void nested_feed_insert(std::uint32_t key) {
        const PointRec& rec = pts_[key];
        std::size_t rank = order_.rank_of(rec.handle);
        for (std::uint32_t id : family_->covering(rec.gy, rec.gx)) {
            NestedState& ns = nested_get_or_create(id);
            Segment s = family_->segment(id);
            std::size_t before = seg_rank_before(s, rank);
            PointKey nk = ns.inst->insert(before + 1, rec.value);
            ns.fwd[key] = nk.id;
            ns.rev[nk.id] = key;
            ++ctr_.segments_touched;
        }
    }

    void nested_feed_erase(std::uint32_t key) {
        const PointRec& rec = pts_[key];
        for (std::uint32_t id : family_->covering(rec.gy, rec.gx)) {
            NestedState* ns = nested_of(id);
            if (!ns) continue;
            auto it = ns->fwd.find(key);
            if (it == ns->fwd.end()) continue;
            ns->inst->erase(PointKey{it->second});
            ns->rev.erase(it->second);
            ns->fwd.erase(it);
            ++ctr_.segments_touched;
        }
    }

    // ---- refresh ---------------------------------------------------------

    std::size_t current_estimate() const {
        return std::max<std::size_t>(static_cast<std::size_t>(chain_value_),
                                     carry_.size());
    }

    void refresh() {
        if (!dirty_cells_.empty()) {
            ++seg_epoch_;
            std::vector<std::uint32_t> dirty_segs;
            for (std::uint32_t c : dirty_cells_) {
                cell_dirty_[c] = 0;
                int gy = static_cast<int>(c / m_), gx = static_cast<int>(c % m_);
                for (std::uint32_t id : family_->covering(gy, gx)) {
                    if (seg_dirty_epoch_[id] == seg_epoch_) continue;
                    seg_dirty_epoch_[id] = seg_epoch_;
                    dirty_segs.push_back(id);
                }
            }
            dirty_cells_.clear();
            for (std::uint32_t id : dirty_segs) recompute_partial(id);
            chain_dirty_ = true;
        }
        if (chain_dirty_) {
            chain_value_ = solver_->solve(
                [&](std::uint32_t id) {
                    return static_cast<Weight>(partials_[id].len);
                },
                &ctr_.dp_cells);
            chain_dirty_ = false;
        }
    }

    void recompute_partial(std::uint32_t id) {
        Partial& p = partials_[id];
        if (cfg_.depth == 2) {
            NestedState* ns = nested_of(id);
            p.len = ns ? static_cast<std::uint32_t>(ns->inst->estimate_lis()) : 0;
            return;
        }
        ++ctr_.segments_touched;
        Segment s = family_->segment(id);
        gather_.clear();
        if (s.orientation == Orientation::Row) {
            for (int c = s.lo; c <= s.hi; ++c)
                for (std::uint32_t key : cells_[static_cast<std::size_t>(s.line) * m_ + c])
                    gather_.push_back(key);
        } else {
            rank_buf_.clear();
            for (int r = s.lo; r <= s.hi; ++r)
                for (std::uint32_t key : cells_[static_cast<std::size_t>(r) * m_ + s.line])
                    rank_buf_.push_back({order_.rank_of(pts_[key].handle), key});
            std::sort(rank_buf_.begin(), rank_buf_.end());
            for (auto& [rk, key] : rank_buf_) {
                (void)rk;
                gather_.push_back(key);
            }
        }
        ctr_.points_resorted += gather_.size();
        patience_into(gather_, p);
    }

    // Patience over the position-ordered keys in `keys`; stores length and
    // the back-pointer witness (first element of the last pile) in `p`.
    void patience_into(const std::vector<std::uint32_t>& keys, Partial& p) {
        tops_val_.clear();
        tops_pos_.clear();
        pile_first_.clear();
        back_.assign(keys.size(), kNone);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            Value v = pts_[keys[i]].value;
            std::size_t lo = 0, hi = tops_val_.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (tops_val_[mid] < v)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo == tops_val_.size()) {
                tops_val_.push_back(v);
                tops_pos_.push_back(i);
                pile_first_.push_back(i);
            } else {
                tops_val_[lo] = v;
                tops_pos_[lo] = i;
            }
            if (lo > 0) back_[i] = tops_pos_[lo - 1];
        }
        p.len = static_cast<std::uint32_t>(tops_val_.size());
        p.witness.clear();
        if (p.len == 0) return;
        std::size_t cur = pile_first_.back();
        while (cur != kNone) {
            p.witness.push_back(keys[cur]);
            cur = back_[cur];
        }
        std::reverse(p.witness.begin(), p.witness.end());
    }

    // ---- rebuild ---------------------------------------------------------

    void maybe_rebuild() {
        const std::size_t s = size();
        const double f = cfg_.rebuild_factor;
        bool drifted =
            last_rebuild_size_ == 0
                ? s > 0
                : (static_cast<double>(s) > f * static_cast<double>(last_rebuild_size_) ||
                   f * static_cast<double>(s) < static_cast<double>(last_rebuild_size_));
        if (drifted) do_rebuild();
    }

    void do_rebuild() {
        const std::size_t n = size();
        const bool initial = family_ == nullptr;
        std::size_t pre_est = 0;
        std::vector<std::uint32_t> pre_wit;
        const bool have_pre = !initial && n > 0;
        if (have_pre) {
            refresh();
            pre_est = current_estimate();
            if (!carry_.empty() && carry_.size() >= static_cast<std::size_t>(chain_value_)) {
                pre_wit = carry_;
            } else {
                for (std::uint32_t id : solver_->chosen())
                    if (cfg_.depth == 2) {
                        NestedState* ns = nested_of(id);
                        if (!ns) continue;
                        for (PointKey nk : ns->inst->extract_solution())
                            pre_wit.push_back(ns->rev.at(nk.id));
                    } else {
                        for (std::uint32_t key : partials_[id].witness)
                            pre_wit.push_back(key);
                    }
            }
        }

        m_ = detail::grid_side_for(n);
        family_ = detail::cached_family(m_, cfg_.kappa);
        solver_ = std::make_unique<ChainSolver>(family_.get());
        partials_.assign(family_->size(), Partial{});
        seg_dirty_epoch_.assign(family_->size(), 0);
        seg_epoch_ = 0;
        cells_.assign(static_cast<std::size_t>(m_) * m_, {});
        cell_dirty_.assign(static_cast<std::size_t>(m_) * m_, 0);
        dirty_cells_.clear();
        nested_.clear();

        std::vector<std::uint32_t> keys_in_order;
        keys_in_order.reserve(n);
        for (std::uint32_t h : order_.to_vector())
            keys_in_order.push_back(handle_key_[h]);
        for (std::size_t r = 0; r < n; ++r)
            pts_[keys_in_order[r]].gx = static_cast<std::uint16_t>(r * m_ / n);

        std::vector<std::uint32_t> by_value = keys_in_order;
        std::sort(by_value.begin(), by_value.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                      return pts_[a].value < pts_[b].value;
                  });
        thresholds_.clear();
        for (int j = 1; j < m_; ++j) {
            std::size_t r0 = (static_cast<std::size_t>(j) * n + m_ - 1) / m_;
            thresholds_.push_back(pts_[by_value[r0]].value);
        }
        for (std::size_t r = 0; r < n; ++r)
            pts_[by_value[r]].gy = static_cast<std::uint16_t>(r * m_ / n);

        for (std::uint32_t key : keys_in_order) {
            const PointRec& rec = pts_[key];
            cell(rec.gy, rec.gx).push_back(key);  // already position-ordered
        }
        if (cfg_.depth == 2) {
            for (std::uint32_t key : keys_in_order) nested_feed_insert(key);
        }
        for (std::uint32_t c = 0; c < cells_.size(); ++c)
            if (!cells_[c].empty()) {
                cell_dirty_[c] = 1;
                dirty_cells_.push_back(c);
            }
        chain_dirty_ = true;
        carry_.clear();
        last_rebuild_size_ = n;
        if (!initial) ++ctr_.rebuilds;

        if (have_pre) {
            refresh();
            if (current_estimate() < pre_est) carry_ = std::move(pre_wit);
        }
    }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    DynConfig cfg_;
    OrderIndex order_;
    std::vector<PointRec> pts_;
    std::vector<std::uint32_t> handle_key_;
    std::unordered_map<Value, std::uint32_t> value_to_key_;

    int m_ = 0;
    std::vector<Value> thresholds_;
    std::shared_ptr<const SegmentFamily> family_;
    std::unique_ptr<ChainSolver> solver_;
    std::vector<std::vector<std::uint32_t>> cells_;

    std::vector<Partial> partials_;
    std::unordered_map<std::uint32_t, std::unique_ptr<NestedState>> nested_;

    std::vector<char> cell_dirty_;
    std::vector<std::uint32_t> dirty_cells_;
    std::vector<std::uint64_t> seg_dirty_epoch_;
    std::uint64_t seg_epoch_ = 0;
    bool chain_dirty_ = true;
    Weight chain_value_ = 0;
    std::vector<std::uint32_t> carry_;  // valid witness kept across one rebuild
    std::size_t last_rebuild_size_ = 0;

    // scratch
    std::vector<std::uint32_t> gather_;
    std::vector<std::pair<std::size_t, std::uint32_t>> rank_buf_;
    std::vector<Value> tops_val_;
    std::vector<std::size_t> tops_pos_, pile_first_, back_;

    CounterReport ctr_;
};

}  // namespace espart
