#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "blowup/bitrow.hpp"
#include "blowup/common.hpp"
#include "blowup/graph.hpp"
#include "blowup/parts.hpp"
#include "blowup/pattern.hpp"
#include "blowup/rational.hpp"

namespace blowup::counting {

inline std::atomic<int>& worker_slot() {
    static std::atomic<int> w{0};  // 0 = auto
    return w;
}
inline void set_workers(int w) { worker_slot().store(w); }
inline int effective_workers() {
    int w = worker_slot().load();
    if (w > 0) return w;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc > 8 ? 8 : hc);
}

namespace detail {

// Adjacency-only view of a pattern. The counting engine never needs the
// elimination order for correctness, so quotient graphs (which may not be
// orderable) can be counted with the same machinery.
struct StructView {
    int h = 0;
    std::vector<std::uint64_t> adj;
    std::vector<int> tie_pos;  // higher = branched earlier on ties

    static StructView of(const Pattern& p) {
        StructView v;
        v.h = p.h();
        v.adj.resize(p.h());
        v.tie_pos.assign(p.h(), 0);
        for (int i = 0; i < p.h(); ++i) v.adj[i] = p.neighbor_mask(i);
        // backbone: reverse elimination order
        const auto& ord = p.elim_order();
        for (int k = 0; k < p.h(); ++k) v.tie_pos[ord[k]] = p.h() - k;
        return v;
    }

    static StructView raw(int h, const std::vector<std::pair<int, int>>& edges) {
        StructView v;
        v.h = h;
        v.adj.assign(h, 0);
        v.tie_pos.assign(h, 0);
        for (auto [a, b] : edges) {
            v.adj[a] |= std::uint64_t{1} << b;
            v.adj[b] |= std::uint64_t{1} << a;
        }
        for (int i = 0; i < h; ++i) v.tie_pos[i] = h - i;
        return v;
    }
};

// Static recursion plan. Components of the unassigned pattern subgraph are
// counted independently and multiplied; single vertices and single edges
// collapse to popcounts and cross-edge counts.
struct PlanNode {
    enum class Kind { Product, Branch, One, Edge } kind;
    int vertex = -1;              // Branch: pattern vertex enumerated here
    std::vector<int> narrow;      // Branch: unassigned pattern-neighbors
    int depth = 0;                // Branch: scratch slot
    int u = -1, v = -1;           // One/Edge leaves
    std::vector<PlanNode> children;
};

inline std::uint64_t component_of(const StructView& s, std::uint64_t remaining, int start) {
    std::uint64_t comp = std::uint64_t{1} << start;
    std::uint64_t frontier = comp;
    while (frontier) {
        std::uint64_t nxt = 0;
        std::uint64_t f = frontier;
        while (f) {
            int x = std::countr_zero(f);
            f &= f - 1;
            nxt |= s.adj[x] & remaining;
        }
        nxt &= ~comp;
        comp |= nxt;
        frontier = nxt;
    }
    return comp;
}

inline int component_count(const StructView& s, std::uint64_t remaining) {
    int c = 0;
    std::uint64_t rest = remaining;
    while (rest) {
        int x = std::countr_zero(rest);
        rest &= ~component_of(s, rest, x);
        ++c;
    }
    return c;
}

inline PlanNode build_plan(const StructView& s, std::uint64_t remaining, std::uint64_t assigned,
                           int depth) {
    const int size = std::popcount(remaining);
    PlanNode node;
    if (size == 1) {
        node.kind = PlanNode::Kind::One;
        node.u = std::countr_zero(remaining);
        return node;
    }
    // split into components first
    std::vector<std::uint64_t> comps;
    std::uint64_t rest = remaining;
    while (rest) {
        std::uint64_t c = component_of(s, rest, std::countr_zero(rest));
        comps.push_back(c);
        rest &= ~c;
    }
    if (comps.size() > 1) {
        node.kind = PlanNode::Kind::Product;
        for (auto c : comps) node.children.push_back(build_plan(s, c, assigned, depth));
        return node;
    }
    if (size == 2) {
        node.kind = PlanNode::Kind::Edge;
        node.u = std::countr_zero(remaining);
        node.v = std::countr_zero(remaining & (remaining - 1));
        return node;
    }
    // branch vertex: prefer splitting the component, then constrained
    // vertices, then high degree, then the reverse-elimination backbone
    int best = -1;
    long best_key = -1;
    std::uint64_t cand = remaining;
    while (cand) {
        int x = std::countr_zero(cand);
        cand &= cand - 1;
        const int splits = component_count(s, remaining & ~(std::uint64_t{1} << x));
        const int touches = (s.adj[x] & assigned) ? 1 : 0;
        const int deg = std::popcount(s.adj[x] & remaining);
        const long key = ((long)splits << 24) | ((long)touches << 20) | ((long)deg << 12) |
                         s.tie_pos[x];
        if (key > best_key) {
            best_key = key;
            best = x;
        }
    }
    node.kind = PlanNode::Kind::Branch;
    node.vertex = best;
    node.depth = depth;
    std::uint64_t nb = s.adj[best] & remaining;
    while (nb) {
        node.narrow.push_back(std::countr_zero(nb));
        nb &= nb - 1;
    }
    node.children.push_back(
        build_plan(s, remaining & ~(std::uint64_t{1} << best), assigned | (std::uint64_t{1} << best),
                   depth + 1));
    return node;
}

// Executes a plan over candidate rows. T is unsigned __int128 when the
// product of row sizes fits, mpz otherwise.
template <class T>
class Runner {
public:
    Runner(const Graph& g, int h, const std::vector<BitRow>* init) : g_(g) {
        cur_.assign(h, nullptr);
        for (int i = 0; i < h; ++i) cur_[i] = &(*init)[i];
        scratch_.assign(h + 1, std::vector<BitRow>(h, BitRow(g.vertex_count())));
    }

    T run(const PlanNode& node) {
        switch (node.kind) {
            case PlanNode::Kind::One:
                return static_cast<T>(static_cast<unsigned long>(cur_[node.u]->count()));
            case PlanNode::Kind::Edge: {
                const BitRow* a = cur_[node.u];
                const BitRow* b = cur_[node.v];
                if (a->count() > b->count()) std::swap(a, b);
                unsigned long long sum = 0;
                a->for_each([&](std::size_t x) {
                    sum += BitRow::count_and(g_.neighbors(static_cast<int>(x)), *b);
                });
                return static_cast<T>(sum);
            }
            case PlanNode::Kind::Product: {
                T prod = 1;
                for (const auto& c : node.children) {
                    T sub = run(c);
                    if (sub == 0) return 0;
                    prod *= sub;
                }
                return prod;
            }
            case PlanNode::Kind::Branch:
                return run_branch(node, *cur_[node.vertex]);
        }
        return 0;
    }

    // Branch with an explicit candidate row (used for top-level splitting).
    T run_branch(const PlanNode& node, const BitRow& candidates) {
        T total = 0;
        auto& slot = scratch_[node.depth];
        std::vector<const BitRow*> saved(node.narrow.size());
        candidates.for_each([&](std::size_t val) {
            const BitRow& nbr = g_.neighbors(static_cast<int>(val));
            bool dead = false;
            for (std::size_t j = 0; j < node.narrow.size(); ++j) {
                const int pv = node.narrow[j];
                slot[pv].assign_and(*cur_[pv], nbr);
                saved[j] = cur_[pv];
                cur_[pv] = &slot[pv];
                if (!slot[pv].any()) {
                    // restore what we swapped so far, skip this value
                    for (std::size_t r = 0; r <= j; ++r) cur_[node.narrow[r]] = saved[r];
                    dead = true;
                    break;
                }
            }
            if (dead) return;
            total += run(node.children[0]);
            for (std::size_t j = 0; j < node.narrow.size(); ++j) cur_[node.narrow[j]] = saved[j];
        });
        return total;
    }

private:
    const Graph& g_;
    std::vector<const BitRow*> cur_;
    std::vector<std::vector<BitRow>> scratch_;
};

inline Int u128_to_int(unsigned __int128 x) {
    Int hi(static_cast<unsigned long>(x >> 64));
    Int lo(static_cast<unsigned long>(x & ~std::uint64_t{0}));
    return (hi << 64) | lo;
}

// Parallelizes top-level Branch nodes (their rows are still the initial
// ones). Partial counts are summed, so the split does not affect results.
template <class T>
Int exec_top(const Graph& g, const StructView& s, const PlanNode& node,
             const std::vector<BitRow>& rows, int workers) {
    if (node.kind == PlanNode::Kind::Product) {
        Int prod = 1;
        for (const auto& c : node.children) {
            Int sub = exec_top<T>(g, s, c, rows, workers);
            if (sub == 0) return Int(0);
            prod *= sub;
        }
        return prod;
    }
    if (node.kind == PlanNode::Kind::Branch && workers > 1) {
        const BitRow& cand = rows[node.vertex];
        auto vals = cand.to_vector();
        if (vals.size() >= 64) {
            const int parts = workers;
            std::vector<Int> partial(parts, Int(0));
            std::vector<std::thread> threads;
            for (int tix = 0; tix < parts; ++tix) {
                threads.emplace_back([&, tix] {
                    BitRow mine(cand.size());
                    for (std::size_t i = tix; i < vals.size(); i += parts) mine.set(vals[i]);
                    Runner<T> r(g, s.h, &rows);
                    T sub = r.run_branch(node, mine);
                    if constexpr (std::is_same_v<T, Int>)
                        partial[tix] = sub;
                    else
                        partial[tix] = u128_to_int(sub);
                });
            }
            for (auto& t : threads) t.join();
            Int total = 0;
            for (auto& p : partial) total += p;
            return total;
        }
    }
    Runner<T> r(g, s.h, &rows);
    T res = r.run(node);
    if constexpr (std::is_same_v<T, Int>)
        return res;
    else
        return u128_to_int(res);
}

// Tuples (v_0..v_{h-1}) with v_i in rows[i] and every pattern edge mapped
// to a graph edge. Repeats are allowed (homomorphism convention); callers
// needing injectivity pass pairwise-disjoint rows or use the quotient sum.
inline Int count_tuples(const Graph& g, const StructView& s, const std::vector<BitRow>& rows) {
    Int bound = 1;
    for (int i = 0; i < s.h; ++i) {
        const auto c = rows[i].count();
        if (c == 0) return Int(0);
        bound *= static_cast<unsigned long>(c);
    }
    const std::uint64_t all = (s.h == 64) ? ~std::uint64_t{0}
                                          : ((std::uint64_t{1} << s.h) - 1);
    PlanNode plan = build_plan(s, all, 0, 0);
    const int workers = effective_workers();
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 120)
        return exec_top<unsigned __int128>(g, s, plan, rows, workers);
    return exec_top<Int>(g, s, plan, rows, workers);
}

}  // namespace detail

struct CanonicalCountResult {
    Int count;
    std::optional<std::vector<std::vector<Int>>> per_part_degrees;
};

inline std::vector<BitRow> part_rows(const PartSystem& parts) {
    std::vector<BitRow> rows;
    rows.reserve(parts.count());
    for (int i = 0; i < parts.count(); ++i) rows.push_back(parts.row(i));
    return rows;
}

// Exact number of canonical copies: tuples in V_1 x ... x V_h respecting
// every pattern edge. Parts are disjoint, so tuples are automatically
// injective.
inline CanonicalCountResult count_canonical_copies(const Graph& g, const Pattern& pat,
                                                   const PartSystem& parts,
                                                   bool with_degrees = false) {
    if (parts.count() != pat.h())
        throw input_error("part count does not match pattern size");
    auto view = detail::StructView::of(pat);
    auto rows = part_rows(parts);
    CanonicalCountResult res;
    res.count = detail::count_tuples(g, view, rows);
    if (with_degrees) {
        std::vector<std::vector<Int>> deg(parts.count());
        for (int i = 0; i < parts.count(); ++i) {
            deg[i].reserve(parts.part(i).size());
            for (int v : parts.part(i)) {
                BitRow single(g.vertex_count());
                single.set(v);
                std::swap(rows[i], single);
                deg[i].push_back(detail::count_tuples(g, view, rows));
                std::swap(rows[i], single);
            }
        }
        res.per_part_degrees = std::move(deg);
    }
    return res;
}

inline InflationCertificate inflation_density(const Graph& g, const Pattern& pat,
                                              const PartSystem& parts) {
    auto res = count_canonical_copies(g, pat, parts);
    return InflationCertificate::make(parts, std::move(res.count));
}

namespace detail {

// Set partitions of [h] into blocks that are independent in the pattern;
// merging adjacent vertices would force a loop, which no simple graph hosts.
template <class F>
void independent_partitions(const StructView& s, F&& fn) {
    std::vector<std::vector<int>> blocks;
    std::vector<std::uint64_t> block_masks;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == s.h) {
            fn(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (s.adj[v] & block_masks[b]) continue;
            blocks[b].push_back(v);
            block_masks[b] |= std::uint64_t{1} << v;
            self(self, v + 1);
            block_masks[b] &= ~(std::uint64_t{1} << v);
            blocks[b].pop_back();
        }
        blocks.push_back({v});
        block_masks.push_back(std::uint64_t{1} << v);
        self(self, v + 1);
        block_masks.pop_back();
        blocks.pop_back();
    };
    rec(rec, 0);
}

}  // namespace detail

// Injective edge-preserving maps V(H) -> V(G), via the quotient expansion
// inj(H) = sum over independent-block partitions of mu(P) * hom(H/P).
inline Int count_labeled_copies(const Graph& g, const Pattern& pat) {
    auto view = detail::StructView::of(pat);
    std::vector<BitRow> full(1, BitRow::full(g.vertex_count()));
    Int total = 0;
    detail::independent_partitions(view, [&](const std::vector<std::vector<int>>& blocks) {
        const int hq = static_cast<int>(blocks.size());
        std::vector<int> block_of(pat.h());
        for (int b = 0; b < hq; ++b)
            for (int v : blocks[b]) block_of[v] = b;
        std::vector<std::pair<int, int>> qedges;
        for (auto [u, v] : pat.edges()) {
            int a = block_of[u], b = block_of[v];
            if (a != b) qedges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(qedges.begin(), qedges.end());
        qedges.erase(std::unique(qedges.begin(), qedges.end()), qedges.end());
        auto qview = detail::StructView::raw(hq, qedges);
        std::vector<BitRow> rows(hq, full[0]);
        Int hom = detail::count_tuples(g, qview, rows);
        Int mu = 1;
        for (const auto& b : blocks) {
            Int f = 1;
            for (std::size_t i = 2; i < b.size(); ++i) f *= static_cast<unsigned long>(i);
            if ((b.size() - 1) % 2 == 1) f = -f;
            mu *= f;
        }
        total += mu * hom;
    });
    return total;
}

// The auxiliary bipartite graph of the inductive step, materialized
// implicitly: A-side tuples range over the parts of the eliminated vertex's
// pattern neighbors, B-side tuples over the remaining parts (including the
// eliminated vertex's own part); edges are canonical copies.
struct GammaView {
    const Graph* g = nullptr;
    const Pattern* pat = nullptr;
    const PartSystem* parts = nullptr;
    int elim = -1;
    std::vector<int> a_idx;  // pattern indices, ascending
    std::vector<int> b_idx;
    Int a_size, b_size;

    // Number of canonical extensions of a fixed A-side tuple.
    Int degree_of(const std::vector<int>& a_vals) const {
        std::vector<std::pair<int, int>> edges;
        std::vector<int> b_pos(pat->h(), -1);
        for (std::size_t j = 0; j < b_idx.size(); ++j) b_pos[b_idx[j]] = static_cast<int>(j);
        for (auto [u, v] : pat->edges())
            if (b_pos[u] >= 0 && b_pos[v] >= 0) edges.emplace_back(b_pos[u], b_pos[v]);
        auto view = detail::StructView::raw(static_cast<int>(b_idx.size()), edges);
        std::vector<BitRow> rows;
        rows.reserve(b_idx.size());
        for (std::size_t j = 0; j < b_idx.size(); ++j) {
            BitRow row = parts->row(b_idx[j]);
            for (std::size_t i = 0; i < a_idx.size(); ++i)
                if (pat->has_edge(a_idx[i], b_idx[j])) row &= g->neighbors(a_vals[i]);
            if (!row.any()) return Int(0);
            rows.push_back(std::move(row));
        }
        return detail::count_tuples(*g, view, rows);
    }
};

inline GammaView make_gamma_view(const Graph& g, const Pattern& pat, const PartSystem& parts) {
    GammaView gv;
    gv.g = &g;
    gv.pat = &pat;
    gv.parts = &parts;
    gv.elim = pat.elim_order().back();
    for (int v = 0; v < pat.h(); ++v) {
        if (v == gv.elim || !pat.has_edge(v, gv.elim))
            gv.b_idx.push_back(v);
        else
            gv.a_idx.push_back(v);
    }
    gv.a_size = 1;
    for (int i : gv.a_idx) gv.a_size *= static_cast<unsigned long>(parts.part(i).size());
    gv.b_size = 1;
    for (int j : gv.b_idx) gv.b_size *= static_cast<unsigned long>(parts.part(j).size());
    return gv;
}

// Exact E[X] of the dependent-random-choice step: sum over A-side tuples of
// (deg(a)/|B|)^s. Feasible at desk scale only; guarded.
inline Rat expected_common_neighborhood_size(const Graph& g, const Pattern& pat,
                                             const PartSystem& parts, unsigned long s) {
    if (s < 1) throw input_error("s must be at least 1");
    auto gv = make_gamma_view(g, pat, parts);
    if (gv.a_idx.empty()) throw input_error("eliminated vertex has degree 0");
    if (gv.a_size > 10000000) throw input_error("A side exceeds the 1e7 guard");
    Int sum = 0;
    std::vector<int> a_vals(gv.a_idx.size());
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == gv.a_idx.size()) {
            sum += pow_int(gv.degree_of(a_vals), s);
            return;
        }
        for (int v : parts.part(gv.a_idx[pos])) {
            a_vals[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return make_rat(sum, pow_int(gv.b_size, s));
}

// First canonical copy if one exists; most-constrained-first backtracking.
inline std::optional<std::vector<int>> find_canonical_copy(const Graph& g, const Pattern& pat,
                                                           const PartSystem& parts) {
    if (parts.count() != pat.h()) throw input_error("part count does not match pattern size");
    const int h = pat.h();
    std::vector<BitRow> rows = part_rows(parts);
    std::vector<int> assign(h, -1);
    auto rec = [&](auto&& self, std::uint64_t done) -> bool {
        if (std::popcount(done) == h) return true;
        int best = -1;
        std::size_t best_c = 0;
        for (int i = 0; i < h; ++i) {
            if (done & (std::uint64_t{1} << i)) continue;
            std::size_t c = rows[i].count();
            if (c == 0) return false;
            if (best == -1 || c < best_c) {
                best = i;
                best_c = c;
            }
        }
        std::vector<BitRow> saved;
        std::vector<int> touched;
        for (int nb : pat.neighbors(best))
            if (!(done & (std::uint64_t{1} << nb))) touched.push_back(nb);
        bool found = false;
        rows[best].for_each([&](std::size_t val) {
            if (found) return;
            saved.clear();
            for (int nb : touched) {
                saved.push_back(rows[nb]);
                rows[nb] &= g.neighbors(static_cast<int>(val));
            }
            assign[best] = static_cast<int>(val);
            if (self(self, done | (std::uint64_t{1} << best))) found = true;
            if (!found)
                for (std::size_t j = 0; j < touched.size(); ++j) rows[touched[j]] = saved[j];
        });
        return found;
    };
    if (rec(rec, 0)) return assign;
    return std::nullopt;
}

}  // namespace blowup::counting
