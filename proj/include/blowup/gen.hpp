#pragma once

#include <cstdint>

#include "blowup/coloring.hpp"
#include "blowup/common.hpp"
#include "blowup/graph.hpp"
#include "blowup/pattern.hpp"
#include "blowup/rng.hpp"

namespace blowup {

// Erdos-Renyi sample, deterministic per seed. Pairs are drawn in the fixed
// (u < v) order so the stream is reproducible.
inline Graph gen_gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw input_error("edge probability outside [0,1]");
    Rng rng(seed);
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) b.add_edge(u, v);
    return b.take();
}

// H[k] with classes laid out in index blocks: vertex j of class i is i*k+j.
inline Graph gen_blowup(const Pattern& pat, int k) {
    if (k < 1) throw input_error("blowup order must be positive");
    GraphBuilder b(pat.h() * k);
    for (auto [i, j] : pat.edges())
        for (int a = 0; a < k; ++a)
            for (int c = 0; c < k; ++c) b.add_edge(i * k + a, j * k + c);
    return b.take();
}

inline std::vector<std::vector<int>> blowup_classes(const Pattern& pat, int k) {
    std::vector<std::vector<int>> classes(pat.h());
    for (int i = 0; i < pat.h(); ++i)
        for (int j = 0; j < k; ++j) classes[i].push_back(i * k + j);
    return classes;
}

// Uniform independent color per pair, deterministic per seed.
inline Coloring gen_random_coloring(int n, int q, std::uint64_t seed) {
    Coloring col(n, q);
    Rng rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) col.set_color(u, v, rng.index(q));
    return col;
}

}  // namespace blowup
