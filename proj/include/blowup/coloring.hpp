#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "blowup/common.hpp"
#include "blowup/graph.hpp"

namespace blowup {

// A q-coloring of the edges of K_N. Stored as one byte per unordered pair;
// per-color adjacency bit rows are materialized lazily on first use.
class Coloring {
public:
    Coloring(int n, int q) : n_(n), q_(q) {
        if (n < 2) throw input_error("coloring needs at least 2 vertices");
        if (q < 1 || q > 255) throw input_error("color count out of range");
        color_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
        cache_ = std::make_shared<Cache>(q);
    }

    int vertex_count() const { return n_; }
    int color_count() const { return q_; }

    int color(int u, int v) const { return color_[pair_index(u, v)]; }

    void set_color(int u, int v, int c) {
        if (c < 0 || c >= q_) throw input_error("color out of range");
        color_[pair_index(u, v)] = static_cast<std::uint8_t>(c);
    }

    long long class_edge_count(int c) const {
        long long m = 0;
        for (auto x : color_)
            if (x == c) ++m;
        return m;
    }

    // Edges of color c inside the induced set.
    long long class_edge_count_within(int c, const std::vector<int>& set) const {
        long long m = 0;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (color(set[i], set[j]) == c) ++m;
        return m;
    }

    const Graph& class_graph(int c) const {
        auto& slot = cache_->graphs[c];
        std::call_once(cache_->flags[c], [&] {
            GraphBuilder b(n_);
            for (int u = 0; u < n_; ++u)
                for (int v = u + 1; v < n_; ++v)
                    if (color(u, v) == c) b.add_edge(u, v);
            slot = std::make_unique<Graph>(b.take());
        });
        return *slot;
    }

    // Format: header "N q", then one line "u v c" per pair. Every pair must
    // appear exactly once.
    static Coloring load(std::istream& in) {
        std::string line;
        int line_no = 0;
        long long n = -1, q = -1;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            if (ls >> n >> q) break;
            std::string probe;
            std::istringstream ps(line);
            if (ps >> probe)
                throw input_error("line " + std::to_string(line_no) + ": expected header \"N q\"");
        }
        if (n < 0) throw input_error("missing coloring header");
        Coloring col(static_cast<int>(n), static_cast<int>(q));
        std::vector<bool> seen(col.color_.size(), false);
        long long needed = n * (n - 1) / 2;
        long long got = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            long long u, v, c;
            if (!(ls >> u)) continue;
            if (!(ls >> v >> c))
                throw input_error("line " + std::to_string(line_no) + ": expected \"u v c\"");
            if (u < 0 || u >= n || v < 0 || v >= n || u == v)
                throw input_error("line " + std::to_string(line_no) + ": bad vertex pair");
            if (c < 0 || c >= q)
                throw input_error("line " + std::to_string(line_no) + ": color out of range");
            auto idx = col.pair_index(static_cast<int>(u), static_cast<int>(v));
            if (seen[idx])
                throw input_error("line " + std::to_string(line_no) + ": duplicate pair");
            seen[idx] = true;
            col.color_[idx] = static_cast<std::uint8_t>(c);
            ++got;
        }
        if (got != needed)
            throw input_error("coloring not total: " + std::to_string(got) + " of " +
                              std::to_string(needed) + " pairs");
        return col;
    }

    void save(std::ostream& out) const {
        out << n_ << " " << q_ << "\n";
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) out << u << " " << v << " " << color(u, v) << "\n";
    }

    std::size_t pair_index(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
            throw input_error("bad vertex pair");
        if (u > v) std::swap(u, v);
        // index into the upper triangle, rows of decreasing length
        return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
    }

private:
    struct Cache {
        explicit Cache(int q) : flags(q), graphs(q) {}
        std::vector<std::once_flag> flags;
        std::vector<std::unique_ptr<Graph>> graphs;
    };

    int n_, q_;
    std::vector<std::uint8_t> color_;
    std::shared_ptr<Cache> cache_;
};

}  // namespace blowup
