#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blowup/common.hpp"

namespace blowup {

// Result of checking an elimination order: ok, or the index into the order
// of the first violation when scanning in elimination sequence (last
// position first, since the vertex at the last position is eliminated
// first).
struct OrderCheck {
    bool ok = true;
    int violating_position = -1;
};

inline OrderCheck validate_elimination_order(int h,
                                             const std::vector<std::pair<int, int>>& edges,
                                             const std::vector<int>& order) {
    std::vector<std::uint64_t> adj(h, 0);
    for (auto [u, v] : edges) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }
    std::vector<std::uint64_t> earlier(h, 0);
    std::uint64_t seen = 0;
    for (int k = 0; k < h; ++k) {
        earlier[k] = seen;
        seen |= std::uint64_t{1} << order[k];
    }
    for (int k = h - 1; k >= 0; --k) {
        const std::uint64_t nbhd = adj[order[k]] & earlier[k];
        // independence: no edge with both endpoints in nbhd
        std::uint64_t rest = nbhd;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (adj[v] & nbhd) return {false, k};
        }
    }
    return {true, -1};
}

// The fixed graph H together with an elimination order in which every
// eliminated vertex has an independent neighborhood among the vertices
// still present. Triangle-free graphs admit every order; construction
// rejects patterns with no valid order.
class Pattern {
public:
    static Pattern from_edges(int h, std::vector<std::pair<int, int>> edges,
                              std::optional<std::vector<int>> order = std::nullopt,
                              std::string name = "") {
        if (h < 1) throw input_error("pattern needs at least one vertex");
        if (h > 64) throw input_error("pattern too large");
        Pattern p;
        p.h_ = h;
        p.name_ = std::move(name);
        p.adj_.assign(h, 0);
        for (auto& [u, v] : edges) {
            if (u < 0 || u >= h || v < 0 || v >= h)
                throw input_error("pattern edge endpoint out of range");
            if (u == v) throw input_error("pattern loop edge");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        p.edges_ = std::move(edges);
        for (auto [u, v] : p.edges_) {
            p.adj_[u] |= std::uint64_t{1} << v;
            p.adj_[v] |= std::uint64_t{1} << u;
        }
        p.order_ = order ? *order : p.reverse_degeneracy_order();
        if (static_cast<int>(p.order_.size()) != h) throw input_error("order length mismatch");
        std::vector<bool> hit(h, false);
        for (int v : p.order_) {
            if (v < 0 || v >= h || hit[v]) throw input_error("order is not a permutation");
            hit[v] = true;
        }
        auto chk = validate_elimination_order(h, p.edges_, p.order_);
        if (!chk.ok)
            throw input_error("no independent-neighborhood elimination at order position " +
                              std::to_string(chk.violating_position));
        return p;
    }

    int h() const { return h_; }
    const std::string& name() const { return name_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<int>& elim_order() const { return order_; }

    bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1; }
    std::uint64_t neighbor_mask(int v) const { return adj_[v]; }
    int degree(int v) const { return std::popcount(adj_[v]); }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        std::uint64_t m = adj_[v];
        while (m) {
            out.push_back(std::countr_zero(m));
            m &= m - 1;
        }
        return out;
    }

    bool triangle_free() const {
        for (auto [u, v] : edges_)
            if (adj_[u] & adj_[v]) return false;
        return true;
    }

    // Max over the peeling sequence of the degree at removal time.
    int degeneracy() const {
        auto [peel, d] = peel_order();
        (void)peel;
        return d;
    }

    // Remove the vertex at the back of the elimination order (the one
    // eliminated first). Returns the reduced pattern plus, for every new
    // index, the original index it came from.
    struct Reduction {
        Pattern pattern;
        int removed;                  // original index
        std::vector<int> old_index;   // new -> old
    };
    Reduction remove_eliminated() const {
        int gone = order_.back();
        std::vector<int> old_index;
        std::vector<int> new_index(h_, -1);
        for (int v = 0; v < h_; ++v)
            if (v != gone) {
                new_index[v] = static_cast<int>(old_index.size());
                old_index.push_back(v);
            }
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : edges_)
            if (u != gone && v != gone) edges.emplace_back(new_index[u], new_index[v]);
        std::vector<int> order;
        for (int v : order_)
            if (v != gone) order.push_back(new_index[v]);
        Pattern p = from_edges(h_ - 1, std::move(edges), order, name_);
        return {std::move(p), gone, std::move(old_index)};
    }

    // Same file format as graphs, with an optional name token in the header.
    static Pattern load(std::istream& in) {
        std::string line;
        int line_no = 0;
        long long h = -1, m = -1;
        std::string name;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            if (ls >> h >> m) {
                ls >> name;
                break;
            }
            std::string rest;
            std::istringstream probe(line);
            if (probe >> rest)
                throw input_error("line " + std::to_string(line_no) + ": expected header \"h m\"");
        }
        if (h < 0) throw input_error("missing pattern header");
        std::vector<std::pair<int, int>> edges;
        while (static_cast<long long>(edges.size()) < m && std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            long long u, v;
            if (ls >> u >> v) {
                if (u < 0 || u >= h || v < 0 || v >= h)
                    throw input_error("line " + std::to_string(line_no) +
                                      ": vertex index out of range");
                edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
            } else {
                std::string rest;
                std::istringstream probe(line);
                if (probe >> rest)
                    throw input_error("line " + std::to_string(line_no) + ": malformed edge line");
            }
        }
        if (static_cast<long long>(edges.size()) != m)
            throw input_error("edge count mismatch: header says " + std::to_string(m));
        return from_edges(static_cast<int>(h), std::move(edges), std::nullopt, name);
    }

    static Pattern builtin(const std::string& key);

private:
    // Peeling sequence: repeatedly remove a minimum-degree vertex
    // (lowest index on ties). Reversing it puts the first-peeled vertex
    // at the back, where elimination starts.
    std::pair<std::vector<int>, int> peel_order() const {
        std::vector<int> deg(h_);
        std::vector<bool> gone(h_, false);
        for (int v = 0; v < h_; ++v) deg[v] = degree(v);
        std::vector<int> peel;
        int degeneracy = 0;
        for (int step = 0; step < h_; ++step) {
            int best = -1;
            for (int v = 0; v < h_; ++v)
                if (!gone[v] && (best == -1 || deg[v] < deg[best])) best = v;
            degeneracy = std::max(degeneracy, deg[best]);
            gone[best] = true;
            peel.push_back(best);
            std::uint64_t m = adj_[best];
            while (m) {
                int u = std::countr_zero(m);
                m &= m - 1;
                if (!gone[u]) --deg[u];
            }
        }
        return {peel, degeneracy};
    }

    std::vector<int> reverse_degeneracy_order() const {
        auto [peel, d] = peel_order();
        (void)d;
        std::reverse(peel.begin(), peel.end());
        return peel;
    }

    int h_ = 0;
    std::string name_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> order_;
};

inline Pattern path_pattern(int h, std::string name) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < h; ++i) e.emplace_back(i, i + 1);
    return Pattern::from_edges(h, std::move(e), std::nullopt, std::move(name));
}

inline Pattern cycle_pattern(int h, std::string name) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < h; ++i) e.emplace_back(i, (i + 1) % h);
    return Pattern::from_edges(h, std::move(e), std::nullopt, std::move(name));
}

inline Pattern Pattern::builtin(const std::string& key) {
    if (key == "k2") return from_edges(2, {{0, 1}}, std::nullopt, "k2");
    if (key == "p3") return path_pattern(3, "p3");
    if (key == "p4") return path_pattern(4, "p4");
    if (key == "c4") return cycle_pattern(4, "c4");
    if (key == "c5") return cycle_pattern(5, "c5");
    if (key == "petersen") {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < 5; ++i) {
            e.emplace_back(i, (i + 1) % 5);         // outer cycle
            e.emplace_back(i, i + 5);               // spokes
            e.emplace_back(i + 5, (i + 2) % 5 + 5); // inner star
        }
        return from_edges(10, std::move(e), std::nullopt, "petersen");
    }
    throw input_error("unknown builtin pattern: " + key);
}

}  // namespace blowup
