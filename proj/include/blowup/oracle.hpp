#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blowup/bitrow.hpp"
#include "blowup/coloring.hpp"
#include "blowup/common.hpp"
#include "blowup/graph.hpp"
#include "blowup/parts.hpp"
#include "blowup/pattern.hpp"
#include "blowup/rational.hpp"
#include "blowup/rich.hpp"

// Independent brute-force ground truth. Nothing here shares algorithmic
// code with the counting or finder modules; this is the layer every
// accepted output is checked against.
namespace blowup::oracle {

// Plain nested-loop canonical count, no pruning.
inline Int brute_count_canonical(const Graph& g, const Pattern& pat, const PartSystem& parts) {
    if (parts.count() != pat.h()) throw input_error("part count does not match pattern size");
    Int product = parts.product_sizes();
    if (product > 100000000) throw input_error("brute-force guard exceeded (1e8 tuples)");
    const int h = pat.h();
    std::vector<int> pick(h, -1);
    Int count = 0;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == h) {
            ++count;
            return;
        }
        for (int v : parts.part(i)) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (pat.has_edge(j, i) && !g.has_edge(pick[j], v)) ok = false;
            if (!ok) continue;
            pick[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return count;
}

struct VerifyResult {
    bool ok = true;
    std::string violation;
};

// H[k] as a subgraph needs disjoint equal-size classes that are complete
// across every pattern edge; independence inside classes is not required
// of the host graph.
inline VerifyResult verify_blowup(const Graph& g, const Pattern& pat,
                                  const BlowupWitness& w) {
    if (static_cast<int>(w.classes.size()) != pat.h())
        return {false, "class count != pattern size"};
    if (w.k < 1) return {false, "k < 1"};
    std::vector<bool> seen(g.vertex_count(), false);
    for (int i = 0; i < pat.h(); ++i) {
        if (static_cast<int>(w.classes[i].size()) != w.k)
            return {false, "class " + std::to_string(i) + " has wrong size"};
        for (int v : w.classes[i]) {
            if (v < 0 || v >= g.vertex_count())
                return {false, "vertex out of range in class " + std::to_string(i)};
            if (seen[v])
                return {false, "classes overlap at vertex " + std::to_string(v)};
            seen[v] = true;
        }
    }
    for (auto [i, j] : pat.edges())
        for (int u : w.classes[i])
            for (int v : w.classes[j])
                if (!g.has_edge(u, v))
                    return {false, "missing cross edge (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") for pattern edge (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")"};
    return {};
}

struct MaxBlowupResult {
    int k_max = 0;
    BlowupWitness witness;
    long long nodes_explored = 0;
    bool complete = true;  // false when the node budget ran out
};

namespace detail {

struct BlowupSearch {
    const Graph& g;
    const Pattern& pat;
    int k = 0;
    long long budget;
    long long nodes = 0;
    bool aborted = false;

    std::vector<int> fill_order;     // classes, reverse elimination order
    std::vector<int> by_rank;        // vertices by (degree desc, index asc)
    std::vector<int> rank_of;
    std::vector<BitRow> cand;
    BitRow used;
    std::vector<std::vector<int>> chosen;

    BlowupSearch(const Graph& g_, const Pattern& p_, long long budget_)
        : g(g_), pat(p_), budget(budget_), used(g_.vertex_count()) {
        fill_order = pat.elim_order();
        std::reverse(fill_order.begin(), fill_order.end());
        const int n = g.vertex_count();
        by_rank.resize(n);
        for (int v = 0; v < n; ++v) by_rank[v] = v;
        std::stable_sort(by_rank.begin(), by_rank.end(),
                         [&](int a, int b) { return g.degree(a) > g.degree(b); });
        rank_of.resize(n);
        for (int r = 0; r < n; ++r) rank_of[by_rank[r]] = r;
    }

    bool feasible(int pos, int within) const {
        for (int p = pos; p < pat.h(); ++p) {
            const int cls = fill_order[p];
            const int need = k - (p == pos ? within : 0);
            std::size_t avail = 0;
            cand[cls].for_each([&](std::size_t v) {
                if (!used.test(v)) ++avail;
            });
            if (static_cast<int>(avail) < need) return false;
        }
        return true;
    }

    bool fill(int pos, int within, int last_rank) {
        if (aborted) return false;
        if (within == k) {
            ++pos;
            within = 0;
            last_rank = -1;
            if (pos == pat.h()) return true;
        }
        const int cls = fill_order[pos];
        const int n = g.vertex_count();
        for (int r = last_rank + 1; r < n; ++r) {
            const int v = by_rank[r];
            if (!cand[cls].test(v) || used.test(v)) continue;
            if (++nodes > budget) {
                aborted = true;
                return false;
            }
            std::vector<std::pair<int, BitRow>> saved;
            bool dead = false;
            for (int nb = 0; nb < pat.h() && !dead; ++nb) {
                if (!pat.has_edge(cls, nb) || nb == cls) continue;
                saved.emplace_back(nb, cand[nb]);
                cand[nb] &= g.neighbors(v);
            }
            used.set(v);
            chosen[cls].push_back(v);
            if (feasible(pos, within + 1) && fill(pos, within + 1, r)) return true;
            chosen[cls].pop_back();
            used.reset(v);
            for (auto& [nb, row] : saved) cand[nb] = std::move(row);
            if (aborted) return false;
        }
        return false;
    }

    std::optional<BlowupWitness> find(int target_k) {
        k = target_k;
        const int n = g.vertex_count();
        cand.assign(pat.h(), BitRow::full(n));
        used = BitRow(n);
        chosen.assign(pat.h(), {});
        if (!fill(0, 0, -1)) return std::nullopt;
        BlowupWitness w;
        w.k = k;
        w.classes.resize(pat.h());
        for (int i = 0; i < pat.h(); ++i) {
            w.classes[i] = chosen[i];
            std::sort(w.classes[i].begin(), w.classes[i].end());
        }
        return w;
    }
};

}  // namespace detail

// Exact maximum k with H[k] contained in G, by iterative deepening over a
// branch-and-bound class assignment. A result with complete=false is only a
// lower bound (budget ran out while certifying k_max + 1 is impossible).
inline MaxBlowupResult max_blowup_exact(const Graph& g, const Pattern& pat, int k_cap,
                                        long long node_budget = 1000000000LL) {
    MaxBlowupResult res;
    detail::BlowupSearch search(g, pat, node_budget);
    for (int k = 1; k <= k_cap; ++k) {
        auto w = search.find(k);
        res.nodes_explored = search.nodes;
        if (search.aborted) {
            res.complete = false;
            break;
        }
        if (!w) break;
        res.k_max = k;
        res.witness = std::move(*w);
        if (static_cast<long long>(k) * pat.h() > g.vertex_count()) break;  // cannot grow
    }
    return res;
}

struct RichVerifyResult {
    bool ok = true;
    Rat rho_actual;
    Rat gamma_actual;
    std::string violation;
};

// Exact recount of both rich-inflation conditions in the claimed color.
inline RichVerifyResult verify_rich_inflation(const Coloring& col, const RichInflation& rich) {
    RichVerifyResult out;
    const auto& ps = rich.parts();
    const auto& first = ps.part(0);
    const Int pairs = binom2(Int(first.size()));
    const Int inner = col.class_edge_count_within(rich.color, first);
    out.rho_actual = pairs == 0 ? Rat(1) : make_rat(inner, pairs);
    if (Rat(inner) < rich.rho * Rat(pairs)) {
        out.ok = false;
        out.violation = "first-part density below rho";
    }
    // complete pattern on h vertices
    std::vector<std::pair<int, int>> ke;
    for (int i = 0; i < ps.count(); ++i)
        for (int j = i + 1; j < ps.count(); ++j) ke.emplace_back(i, j);
    Pattern kh = Pattern::from_edges(ps.count(), std::move(ke));
    Int cnt = brute_count_canonical(col.class_graph(rich.color), kh, ps);
    out.gamma_actual = make_rat(cnt, ps.product_sizes());
    if (out.gamma_actual < rich.required_gamma()) {
        out.ok = false;
        if (!out.violation.empty()) out.violation += "; ";
        out.violation += "canonical density below ((1-eps)rho)^e(K_h)";
    }
    if (cnt != rich.certificate.canonical_count) {
        out.ok = false;
        if (!out.violation.empty()) out.violation += "; ";
        out.violation += "certificate count does not recount";
    }
    return out;
}

// Fully materialized auxiliary bipartite graph for the product-structure
// checks: A-side tuples vs B-side tuples, edge = canonical copy.
struct ExplicitGamma {
    std::vector<int> a_idx, b_idx;    // pattern indices
    std::vector<std::vector<int>> a_tuples, b_tuples;
    std::vector<bool> b_valid;        // components form a copy of H[B-side]
    std::vector<BitRow> b_neighborhood;  // over a_tuples indices

    BitRow common_neighborhood(const std::vector<int>& b_list) const {
        BitRow acc = BitRow::full(a_tuples.size());
        for (int b : b_list) acc &= b_neighborhood[b];
        return acc;
    }
};

inline ExplicitGamma build_explicit_gamma(const Graph& g, const Pattern& pat,
                                          const PartSystem& parts) {
    ExplicitGamma eg;
    const int elim = pat.elim_order().back();
    for (int v = 0; v < pat.h(); ++v) {
        if (v != elim && pat.has_edge(v, elim))
            eg.a_idx.push_back(v);
        else
            eg.b_idx.push_back(v);
    }
    auto expand = [&](const std::vector<int>& idx) {
        std::vector<std::vector<int>> tuples{{}};
        for (int i : idx) {
            std::vector<std::vector<int>> next;
            next.reserve(tuples.size() * parts.part(i).size());
            for (const auto& t : tuples)
                for (int v : parts.part(i)) {
                    auto t2 = t;
                    t2.push_back(v);
                    next.push_back(std::move(t2));
                }
            tuples = std::move(next);
            if (tuples.size() > 100000) throw input_error("explicit Gamma guard exceeded (1e5)");
        }
        return tuples;
    };
    eg.a_tuples = expand(eg.a_idx);
    eg.b_tuples = expand(eg.b_idx);
    eg.b_valid.assign(eg.b_tuples.size(), true);
    for (std::size_t b = 0; b < eg.b_tuples.size(); ++b) {
        for (std::size_t x = 0; x < eg.b_idx.size() && eg.b_valid[b]; ++x)
            for (std::size_t y = x + 1; y < eg.b_idx.size(); ++y)
                if (pat.has_edge(eg.b_idx[x], eg.b_idx[y]) &&
                    !g.has_edge(eg.b_tuples[b][x], eg.b_tuples[b][y])) {
                    eg.b_valid[b] = false;
                    break;
                }
    }
    eg.b_neighborhood.assign(eg.b_tuples.size(), BitRow(eg.a_tuples.size()));
    for (std::size_t b = 0; b < eg.b_tuples.size(); ++b) {
        if (!eg.b_valid[b]) continue;
        for (std::size_t a = 0; a < eg.a_tuples.size(); ++a) {
            bool edge = true;
            for (std::size_t x = 0; x < eg.a_idx.size() && edge; ++x)
                for (std::size_t y = 0; y < eg.b_idx.size(); ++y)
                    if (pat.has_edge(eg.a_idx[x], eg.b_idx[y]) &&
                        !g.has_edge(eg.a_tuples[a][x], eg.b_tuples[b][y])) {
                        edge = false;
                        break;
                    }
            if (edge) eg.b_neighborhood[b].set(a);
        }
    }
    return eg;
}

}  // namespace blowup::oracle
