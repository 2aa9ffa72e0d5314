#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blowup/bitrow.hpp"
#include "blowup/common.hpp"

namespace blowup {

// Undirected simple graph, adjacency stored as per-vertex bit rows.
// Immutable after construction; all algorithms operate on views.
class Graph {
public:
    Graph() : n_(0), m_(0) {}

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g;
        g.n_ = n;
        g.adj_.assign(n, BitRow(n));
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("edge endpoint out of range");
            if (u == v) throw input_error("loop edge");
            g.add_edge_unchecked(u, v);
        }
        return g;
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }

    bool has_edge(int u, int v) const { return adj_[u].test(v); }
    const BitRow& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].count()); }

    // Text format: header "n m", then m lines "u v"; '#' starts a comment.
    static Graph load(std::istream& in) {
        int line_no = 0;
        long long n = -1, m = -1;
        std::string line;
        auto next_tokens = [&](std::vector<long long>& out) -> bool {
            while (std::getline(in, line)) {
                ++line_no;
                auto hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                std::istringstream ls(line);
                out.clear();
                long long x;
                while (ls >> x) out.push_back(x);
                if (!ls.eof()) {
                    std::string junk;
                    ls.clear();
                    ls >> junk;
                    throw input_error("line " + std::to_string(line_no) +
                                      ": malformed token '" + junk + "'");
                }
                if (!out.empty()) return true;
            }
            return false;
        };

        std::vector<long long> tok;
        if (!next_tokens(tok) || tok.size() < 2)
            throw input_error("line " + std::to_string(line_no ? line_no : 1) +
                              ": expected header \"n m\"");
        n = tok[0];
        m = tok[1];
        if (n < 0 || m < 0)
            throw input_error("line " + std::to_string(line_no) + ": negative header value");

        Graph g;
        g.n_ = static_cast<int>(n);
        g.adj_.assign(g.n_, BitRow(g.n_));
        for (long long e = 0; e < m; ++e) {
            if (!next_tokens(tok))
                throw input_error("line " + std::to_string(line_no + 1) +
                                  ": expected " + std::to_string(m) + " edges, got " +
                                  std::to_string(e));
            if (tok.size() != 2)
                throw input_error("line " + std::to_string(line_no) + ": expected \"u v\"");
            long long u = tok[0], v = tok[1];
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("line " + std::to_string(line_no) +
                                  ": vertex index out of range");
            if (u == v)
                throw input_error("line " + std::to_string(line_no) + ": loop edge");
            g.add_edge_unchecked(static_cast<int>(u), static_cast<int>(v));
        }
        return g;
    }

    void save(std::ostream& out) const {
        out << n_ << " " << m_ << "\n";
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](std::size_t v) {
                if (static_cast<int>(v) > u) out << u << " " << v << "\n";
            });
    }

protected:
    void add_edge_unchecked(int u, int v) {
        if (!adj_[u].test(v)) {
            adj_[u].set(v);
            adj_[v].set(u);
            ++m_;
        }
    }
    friend struct GraphBuilder;

    int n_;
    long long m_;
    std::vector<BitRow> adj_;
};

// Escape hatch for generators; everything downstream still sees an
// immutable Graph.
struct GraphBuilder {
    explicit GraphBuilder(int n) {
        g.n_ = n;
        g.adj_.assign(n, BitRow(n));
    }
    void add_edge(int u, int v) {
        if (u == v) throw input_error("loop edge");
        g.add_edge_unchecked(u, v);
    }
    Graph take() { return std::move(g); }
    Graph g;
};

// Exact intersection of the neighborhoods of all vertices in the set.
inline BitRow common_neighborhood(const Graph& g, std::span<const int> vertices) {
    if (vertices.empty()) throw input_error("common_neighborhood of empty set");
    BitRow acc = g.neighbors(vertices[0]);
    for (std::size_t i = 1; i < vertices.size(); ++i) acc &= g.neighbors(vertices[i]);
    return acc;
}

}  // namespace blowup
