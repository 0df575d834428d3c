#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ldpcenc {

using bit_index = std::uint32_t;
using check_index = std::uint32_t;

// Sparse parity-check matrix as per-row column lists. The common exchange
// type between parsers, the graph, and the dense oracle.
struct ParityCheckRows {
    std::size_t n_bits = 0;
    std::vector<std::vector<bit_index>> rows;
};

// Immutable bipartite bit/check graph. Adjacency is sorted ascending and
// duplicate-free on both sides.
class TannerGraph {
public:
    TannerGraph() = default;

    // Throws FormatError on out-of-range indices, duplicate row entries, or
    // zero-weight rows. All-zero columns are permitted.
    static TannerGraph from_matrix(const ParityCheckRows& h);

    // Same graph plus extra checks appended after the existing ones.
    static TannerGraph with_extra_checks(const TannerGraph& g,
                                         const std::vector<std::vector<bit_index>>& extra);

    std::size_t n_bits() const { return bit_adj_.size(); }
    std::size_t n_checks() const { return check_adj_.size(); }

    std::span<const bit_index> check_neighbors(check_index c) const { return check_adj_[c]; }
    std::span<const check_index> bit_neighbors(bit_index b) const { return bit_adj_[b]; }

    std::size_t check_degree(check_index c) const { return check_adj_[c].size(); }
    std::size_t bit_degree(bit_index b) const { return bit_adj_[b].size(); }
    std::size_t max_bit_degree() const;
    std::size_t n_edges() const;

    ParityCheckRows to_rows() const;

private:
    std::vector<std::vector<bit_index>> check_adj_;
    std::vector<std::vector<check_index>> bit_adj_;
};

// Subgraph view: membership flags per bit and per check. Closure under the
// check-neighborhood rule is not implied; operations establish it as needed.
struct SubgraphMask {
    std::vector<char> bit_in;
    std::vector<char> check_in;

    SubgraphMask() = default;
    SubgraphMask(std::size_t n_bits, std::size_t n_checks)
        : bit_in(n_bits, 0), check_in(n_checks, 0) {}

    static SubgraphMask full(const TannerGraph& g);

    std::size_t count_bits() const;
    std::size_t count_checks() const;
    bool empty() const;

    friend bool operator==(const SubgraphMask&, const SubgraphMask&) = default;
};

// Parity constraint with already-known bits moved to the right-hand side.
struct GeneralizedCheck {
    check_index check = 0;
    std::vector<bit_index> live_bits;   // still unknown, left-hand side
    std::vector<bit_index> rhs_sources; // known, folded into the constant b
    int rhs_value = -1;                 // filled at encode time
};

// Number of neighbors of `check` outside the mask's bit set.
std::size_t outsider_count(const TannerGraph& g, const SubgraphMask& s, check_index check);

// Maximal connected pieces of the masked subgraph, ordered by smallest
// contained node. Isolated in-mask bits come out as singleton components.
std::vector<SubgraphMask> connected_components(const TannerGraph& g, const SubgraphMask& s);

// Split each in-piece check's neighbors into live (unknown) and rhs (known).
std::vector<GeneralizedCheck> generalize(const TannerGraph& g, const SubgraphMask& piece,
                                         const std::vector<char>& known_bits);

} // namespace ldpcenc
