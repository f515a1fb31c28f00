#pragma once

#include <cstdint>
#include <vector>

namespace espart {

// Order-maintenance treap keyed by implicit position. Supports insert at a
// 0-based rank, erase by handle, rank lookup by handle (via parent pointers)
// and rank -> handle selection, all in expected O(log n). Priorities come
// from a fixed splitmix64 stream, so identical operation sequences produce
// identical shapes.
class OrderIndex {
public:
    static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);

    std::size_t size() const { return root_ == npos ? 0 : nodes_[root_].cnt; }

    // Inserts a new node so that exactly `rank` nodes precede it.
    std::uint32_t insert_at(std::size_t rank) {
        std::uint32_t h = alloc();
        auto [a, b] = split(root_, rank);
        root_ = merge(merge(a, h), b);
        nodes_[root_].parent = npos;
        return h;
    }

    void erase(std::uint32_t h) {
        std::size_t r = rank_of(h);
        auto [a, rest] = split(root_, r);
        auto [mid, b] = split(rest, 1);
        (void)mid;
        root_ = merge(a, b);
        if (root_ != npos) nodes_[root_].parent = npos;
        free_.push_back(h);
    }

    // 0-based number of nodes before h.
    std::size_t rank_of(std::uint32_t h) const {
        const Node& n = nodes_[h];
        std::size_t r = n.left == npos ? 0 : nodes_[n.left].cnt;
        std::uint32_t cur = h;
        std::uint32_t par = n.parent;
        while (par != npos) {
            const Node& p = nodes_[par];
            if (p.right == cur)
                r += 1 + (p.left == npos ? 0 : nodes_[p.left].cnt);
            cur = par;
            par = p.parent;
        }
        return r;
    }

    std::uint32_t at(std::size_t rank) const {
        std::uint32_t cur = root_;
        while (cur != npos) {
            std::size_t lc = nodes_[cur].left == npos ? 0 : nodes_[nodes_[cur].left].cnt;
            if (rank < lc) {
                cur = nodes_[cur].left;
            } else if (rank == lc) {
                return cur;
            } else {
                rank -= lc + 1;
                cur = nodes_[cur].right;
            }
        }
        return npos;
    }

    // Handle immediately before h in order, npos if h is first.
    std::uint32_t prev(std::uint32_t h) const {
        std::size_t r = rank_of(h);
        return r == 0 ? npos : at(r - 1);
    }

    std::uint32_t next(std::uint32_t h) const {
        std::size_t r = rank_of(h);
        return r + 1 >= size() ? npos : at(r + 1);
    }

    // In-order handles, front to back.
    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> out;
        out.reserve(size());
        std::vector<std::uint32_t> stack;
        std::uint32_t cur = root_;
        while (cur != npos || !stack.empty()) {
            while (cur != npos) {
                stack.push_back(cur);
                cur = nodes_[cur].left;
            }
            cur = stack.back();
            stack.pop_back();
            out.push_back(cur);
            cur = nodes_[cur].right;
        }
        return out;
    }

    void clear() {
        nodes_.clear();
        free_.clear();
        root_ = npos;
        prio_counter_ = 0;
    }

private:
    struct Node {
        std::uint32_t left = npos, right = npos, parent = npos;
        std::uint32_t cnt = 1;
        std::uint64_t prio = 0;
    };

    std::uint32_t alloc() {
        std::uint32_t h;
        if (!free_.empty()) {
            h = free_.back();
            free_.pop_back();
            nodes_[h] = Node{};
        } else {
            h = static_cast<std::uint32_t>(nodes_.size());
            nodes_.push_back(Node{});
        }
        std::uint64_t z = (prio_counter_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        nodes_[h].prio = z ^ (z >> 31);
        return h;
    }

    void pull(std::uint32_t h) {
        Node& n = nodes_[h];
        n.cnt = 1;
        if (n.left != npos) {
            n.cnt += nodes_[n.left].cnt;
            nodes_[n.left].parent = h;
        }
        if (n.right != npos) {
            n.cnt += nodes_[n.right].cnt;
            nodes_[n.right].parent = h;
        }
    }

    // Splits t into (first k nodes, rest).
    std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t t, std::size_t k) {
        if (t == npos) return {npos, npos};
        std::size_t lc = nodes_[t].left == npos ? 0 : nodes_[nodes_[t].left].cnt;
        if (k <= lc) {
            auto [a, b] = split(nodes_[t].left, k);
            nodes_[t].left = b;
            pull(t);
            nodes_[t].parent = npos;
            if (a != npos) nodes_[a].parent = npos;
            return {a, t};
        }
        auto [a, b] = split(nodes_[t].right, k - lc - 1);
        nodes_[t].right = a;
        pull(t);
        nodes_[t].parent = npos;
        if (b != npos) nodes_[b].parent = npos;
        return {t, b};
    }

    std::uint32_t merge(std::uint32_t a, std::uint32_t b) {
        if (a == npos) return b;
        if (b == npos) return a;
        if (nodes_[a].prio > nodes_[b].prio) {
            nodes_[a].right = merge(nodes_[a].right, b);
            pull(a);
            nodes_[a].parent = npos;
            return a;
        }
        nodes_[b].left = merge(a, nodes_[b].left);
        pull(b);
        nodes_[b].parent = npos;
        return b;
    }

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
    std::uint32_t root_ = npos;
    std::uint64_t prio_counter_ = 0;
};

}  // namespace espart
