#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "blowup/bitrow.hpp"
#include "blowup/common.hpp"
#include "blowup/graph.hpp"
#include "blowup/rational.hpp"

namespace blowup {

// Ordered tuple of pairwise-disjoint, nonempty vertex sets inside a graph.
class PartSystem {
public:
    PartSystem() : n_(0) {}

    PartSystem(int graph_size, std::vector<std::vector<int>> parts) : n_(graph_size) {
        BitRow seen(graph_size);
        for (auto& part : parts) {
            if (part.empty()) throw input_error("empty part");
            std::sort(part.begin(), part.end());
            BitRow row(graph_size);
            for (int v : part) {
                if (v < 0 || v >= graph_size) throw input_error("part vertex out of range");
                if (seen.test(v)) throw input_error("parts are not pairwise disjoint");
                seen.set(v);
                row.set(v);
            }
            rows_.push_back(std::move(row));
        }
        parts_ = std::move(parts);
    }

    int graph_size() const { return n_; }
    int count() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& part(int i) const { return parts_[i]; }
    const BitRow& row(int i) const { return rows_[i]; }
    const std::vector<std::vector<int>>& parts() const { return parts_; }

    int min_size() const {
        std::size_t m = parts_[0].size();
        for (auto& p : parts_) m = std::min(m, p.size());
        return static_cast<int>(m);
    }

    Int product_sizes() const {
        Int p = 1;
        for (auto& part : parts_) p *= static_cast<long>(part.size());
        return p;
    }

private:
    int n_;
    std::vector<std::vector<int>> parts_;
    std::vector<BitRow> rows_;
};

// A part system together with its exact canonical-copy count and density.
struct InflationCertificate {
    PartSystem parts;
    Int canonical_count;
    Rat gamma;
    int min_part_size = 0;

    static InflationCertificate make(PartSystem ps, Int count) {
        InflationCertificate c;
        c.min_part_size = ps.min_size();
        c.gamma = make_rat(count, ps.product_sizes());
        c.canonical_count = std::move(count);
        c.parts = std::move(ps);
        return c;
    }
};

// Sets W_1..W_h of equal size k; cross pairs along pattern edges are
// complete in the host graph.
struct BlowupWitness {
    int k = 0;
    std::vector<std::vector<int>> classes;
};

}  // namespace blowup
