#include "ldpcenc/tanner.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ldpcenc {

TannerGraph TannerGraph::from_matrix(const ParityCheckRows& h) {
    TannerGraph g;
    g.bit_adj_.resize(h.n_bits);
    g.check_adj_.resize(h.rows.size());
    for (std::size_t c = 0; c < h.rows.size(); ++c) {
        std::vector<bit_index> row = h.rows[c];
        if (row.empty())
            throw FormatError("row " + std::to_string(c) + " has zero weight");
        std::sort(row.begin(), row.end());
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] >= h.n_bits)
                throw FormatError("row " + std::to_string(c) + ": bit index " +
                                  std::to_string(row[i]) + " out of range");
            if (i > 0 && row[i] == row[i - 1])
                throw FormatError("row " + std::to_string(c) + ": duplicate entry " +
                                  std::to_string(row[i]));
        }
        for (bit_index b : row) g.bit_adj_[b].push_back(check_index(c));
        g.check_adj_[c] = std::move(row);
    }
    return g;
}

TannerGraph TannerGraph::with_extra_checks(const TannerGraph& g,
                                           const std::vector<std::vector<bit_index>>& extra) {
    ParityCheckRows h = g.to_rows();
    for (const auto& row : extra) h.rows.push_back(row);
    return from_matrix(h);
}

std::size_t TannerGraph::max_bit_degree() const {
    std::size_t m = 0;
    for (const auto& adj : bit_adj_) m = std::max(m, adj.size());
    return m;
}

std::size_t TannerGraph::n_edges() const {
    std::size_t e = 0;
    for (const auto& adj : check_adj_) e += adj.size();
    return e;
}

ParityCheckRows TannerGraph::to_rows() const {
    ParityCheckRows h;
    h.n_bits = n_bits();
    h.rows = check_adj_;
    return h;
}

SubgraphMask SubgraphMask::full(const TannerGraph& g) {
    SubgraphMask s(g.n_bits(), g.n_checks());
    std::fill(s.bit_in.begin(), s.bit_in.end(), 1);
    std::fill(s.check_in.begin(), s.check_in.end(), 1);
    return s;
}

std::size_t SubgraphMask::count_bits() const {
    return std::size_t(std::count(bit_in.begin(), bit_in.end(), 1));
}

std::size_t SubgraphMask::count_checks() const {
    return std::size_t(std::count(check_in.begin(), check_in.end(), 1));
}

bool SubgraphMask::empty() const {
    return count_bits() == 0 && count_checks() == 0;
}

std::size_t outsider_count(const TannerGraph& g, const SubgraphMask& s, check_index check) {
    std::size_t n = 0;
    for (bit_index b : g.check_neighbors(check))
        if (!s.bit_in[b]) ++n;
    return n;
}

std::vector<SubgraphMask> connected_components(const TannerGraph& g, const SubgraphMask& s) {
    const std::size_t nb = g.n_bits(), nc = g.n_checks();
    std::vector<char> bit_seen(nb, 0), check_seen(nc, 0);
    std::vector<SubgraphMask> out;

    // BFS over node ids; bits first so components are ordered by their
    // smallest bit, then check-only components by smallest check.
    std::vector<std::uint32_t> stack;
    auto flood = [&](bool seed_is_bit, std::uint32_t seed) {
        SubgraphMask comp(nb, nc);
        stack.clear();
        stack.push_back(seed_is_bit ? seed : (seed | 0x80000000u));
        if (seed_is_bit) bit_seen[seed] = 1; else check_seen[seed] = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (v & 0x80000000u) {
                check_index c = v & 0x7fffffffu;
                comp.check_in[c] = 1;
                for (bit_index b : g.check_neighbors(c))
                    if (s.bit_in[b] && !bit_seen[b]) {
                        bit_seen[b] = 1;
                        stack.push_back(b);
                    }
            } else {
                bit_index b = v;
                comp.bit_in[b] = 1;
                for (check_index c : g.bit_neighbors(b))
                    if (s.check_in[c] && !check_seen[c]) {
                        check_seen[c] = 1;
                        stack.push_back(c | 0x80000000u);
                    }
            }
        }
        out.push_back(std::move(comp));
    };

    for (bit_index b = 0; b < nb; ++b)
        if (s.bit_in[b] && !bit_seen[b]) flood(true, b);
    for (check_index c = 0; c < nc; ++c)
        if (s.check_in[c] && !check_seen[c]) flood(false, c);
    return out;
}

std::vector<GeneralizedCheck> generalize(const TannerGraph& g, const SubgraphMask& piece,
                                         const std::vector<char>& known_bits) {
    if (known_bits.size() != g.n_bits())
        throw UsageError("generalize: known_bits size mismatch");
    for (bit_index b = 0; b < g.n_bits(); ++b)
        if (piece.bit_in[b] && known_bits[b])
            throw UsageError("generalize: bit " + std::to_string(b) +
                             " is both unresolved in the piece and known");
    std::vector<GeneralizedCheck> out;
    for (check_index c = 0; c < g.n_checks(); ++c) {
        if (!piece.check_in[c]) continue;
        GeneralizedCheck gc;
        gc.check = c;
        for (bit_index b : g.check_neighbors(c)) {
            if (known_bits[b]) gc.rhs_sources.push_back(b);
            else gc.live_bits.push_back(b);
        }
        out.push_back(std::move(gc));
    }
    return out;
}

} // namespace ldpcenc
