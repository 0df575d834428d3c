#pragma once

#include "ldpcenc/tanner.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ldpcenc {

// Layered subgraph in which every check has a unique parent bit in the tier
// immediately above it, so parities resolve in one bottom-up pass.
//
// tiers[0], tiers[2], ... hold bit ids; tiers[1], tiers[3], ... hold check
// ids. The final bit tier may be empty. A single-tier tree (one bit tier, no
// checks) is the degenerate form used for check-free regions.
struct PseudoTree {
    std::vector<std::vector<std::uint32_t>> tiers;
    // Bottom-up solving order and the parent bit each check determines.
    std::vector<check_index> checks;
    std::vector<bit_index> parents;
};

// Remove bits of in-mask degree <= 1 (together with their single check, if
// any) until none remain. The fixpoint is independent of removal order.
SubgraphMask peel(const TannerGraph& g, const SubgraphMask& s);

enum class StoppingSetKind { pseudo, genuine };

struct StoppingSetFind {
    SubgraphMask mask;   // the (pseudo) encoding stopping set, one component
    StoppingSetKind kind;
    std::vector<check_index> growth_order;  // every check added to S, in order
    std::vector<check_index> trailing_keys; // zero-outsider tail inside mask
    // For kind == pseudo when the whole-set row sum vanishes: the dependent
    // combination (all mask checks). Empty otherwise.
    std::vector<check_index> dependence;
};

// Greedy growth per the fewest-outsiders rule; seeds with the minimum-degree
// pool check, lowest index on ties. Returns the first (pseudo) encoding
// stopping set reachable in the pool, or nullopt when the pool has none.
// Bits outside the pool are treated as already known and never counted.
//
// Requires max in-pool bit degree <= 3 (checked unless validate == false).
std::optional<StoppingSetFind> find_stopping_set(const TannerGraph& g, const SubgraphMask& pool,
                                                 bool validate = true);

struct StoppingSetInfo {
    SubgraphMask mask;
    int fold = 0;
    std::vector<check_index> key_checks;     // growth-order: [alpha] or [alpha, beta]
    std::vector<bit_index> reevaluated_bits; // aligned with key_checks; filled by selection
    std::vector<PseudoTree> residual_trees;  // over mask minus key_checks, per component
};

// Derive fold and key checks from the growth metadata: the trailing
// zero-outsider checks are the keys; a two-key set is first retried with only
// the final key removed to detect fold 1. Verifies the key-free remainder
// peels to empty and builds its residual pseudo-trees. reevaluated_bits is
// left empty here; see find_reevaluated_bits.
StoppingSetInfo classify_fold(const TannerGraph& g, const StoppingSetFind& found);

// Reduced form of a parity constraint over a peeled region: every parent
// (parity) bit is substituted by its defining check until only non-parent
// region bits remain. Out-of-region bits pass through into rhs_support.
struct ReducedForm {
    std::vector<bit_index> info_support; // in-region non-parent bits, ascending
    std::vector<bit_index> rhs_support;  // out-of-region bits, ascending
    std::vector<check_index> applied;    // tree checks substituted (odd count)
};
ReducedForm reduce_over_trees(const TannerGraph& g, const std::vector<PseudoTree>& trees,
                              const SubgraphMask& region, std::span<const bit_index> adjacency);

// Reevaluated-bit selection for a 2-fold set. info_bit_sets[i] is the reduced
// information-bit support of key_checks[i] (ascending). Scans the first key's
// support for a bit absent from the second; on success pairs it with the last
// support bit of the second key, otherwise takes the last bit of the first
// key and the first bit of the second key absent from the first.
// Returns nullopt when no pair satisfying (D1)-(D3) exists, which certifies
// the key checks are dependent on the rest of the set.
std::optional<std::pair<bit_index, bit_index>> try_find_reevaluated_bits(
    const std::vector<std::vector<bit_index>>& info_bit_sets);

std::pair<bit_index, bit_index> find_reevaluated_bits(
    const StoppingSetInfo& info, const std::vector<std::vector<bit_index>>& info_bit_sets);

// Constructive tier assignment for a connected, stopping-set-free region:
// staged peeling builds the multi-layer structure, then each check keeps one
// bit in its immediate upper tier (lowest index unless pinned) and drags the
// rest two tiers down. Throws StructuralError when the region does not peel
// to empty.
PseudoTree build_pseudo_tree(const TannerGraph& g, const SubgraphMask& region,
                             const std::vector<std::pair<check_index, bit_index>>* pinned_parents = nullptr);

// Independent validator of the tier conditions; throws StructuralError with a
// description of the first violation.
void validate_pseudo_tree(const TannerGraph& g, const SubgraphMask& region, const PseudoTree& t);

} // namespace ldpcenc
