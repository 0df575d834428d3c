#pragma once

#include "ldpcenc/structures.hpp"
#include "ldpcenc/tanner.hpp"

#include <optional>
#include <vector>

namespace ldpcenc {

// Record of the degree-reduction transform. A bit of degree k > 3 becomes a
// chain of k-2 clones of degree <= 3; consecutive clones are tied together by
// degree-2 auxiliary checks. The original bit id serves as the first clone.
struct SplitMap {
    struct AuxCheck {
        check_index id;
        bit_index a, b;
    };

    std::size_t original_n_bits = 0;
    std::size_t original_n_checks = 0;
    // clones[i] lists the full chain for original bit i (starting with i
    // itself) when i was split; empty when untouched.
    std::vector<std::vector<bit_index>> clones;
    std::vector<AuxCheck> aux_checks;
    // for ids >= original_n_bits: the original bit the clone mirrors
    std::vector<bit_index> clone_origin;

    bool identity() const { return aux_checks.empty(); }
};

// Rewires every bit of degree > 3 into a clone chain per the split map.
// Output graph has max bit degree 3. Graphs already within degree 3 come
// back unchanged with an identity map.
std::pair<TannerGraph, SplitMap> split_high_degree(const TannerGraph& g);

// Parity check synthesized while repairing a pseudo encoding stopping set:
// the GF(2) sum of the constituent rows, supported on already-decomposed bits.
struct SynthesizedCheck {
    check_index id; // >= the working graph's pre-synthesis check count
    std::vector<check_index> constituents;
    std::vector<bit_index> support; // before any follow-up bit splitting
};

// Degree repair applied when a synthesized check lands on a bit that already
// carries three checks: the bit is split in place, one of its checks and the
// synthesized edge move to the clone, and a degree-2 check ties the pair.
struct MidSplit {
    bit_index origin = 0;
    bit_index clone = 0;       // == working bit count at creation time
    check_index moved_check = 0;
    check_index aux_check = 0; // == working check count at creation time
    check_index synth_check = 0;
};

struct PlanPiece {
    enum class Kind { pseudo_tree, stopping_set };
    Kind kind = Kind::pseudo_tree;
    std::vector<bit_index> bits;      // every bit the piece determines or reads as live
    std::vector<check_index> checks;  // original and synthesized check ids
    std::vector<PseudoTree> trees;    // the tree(s); for stopping sets, the residual
    StoppingSetInfo info;             // stopping-set pieces only
};

struct DecompositionPlan {
    std::size_t n_bits = 0;   // working bits, mid-split clones included
    std::size_t n_checks = 0; // working checks: input + synthesized + aux
    std::vector<PlanPiece> pieces;
    std::vector<SynthesizedCheck> synthesized;
    std::vector<MidSplit> mid_splits;
    std::vector<check_index> dropped_redundant; // removed up front
    std::vector<check_index> deleted_in_pseudo; // removed by the repair step
    std::vector<bit_index> info_bits;           // ascending
    std::vector<bit_index> parity_bits;         // ascending

    const std::vector<bit_index>* synthesized_support(check_index c) const;
    std::size_t kept_original_checks(std::size_t n_original) const;
    // Replay the synthesized checks and mid-splits onto the input graph,
    // reproducing the working graph the plan was built against.
    TannerGraph working_graph(const TannerGraph& input) const;
};

// Decompose a max-bit-degree-3 Tanner graph into pseudo-trees and 1-/2-fold
// encoding stopping sets, connected component by connected component.
// Dependent rows are consumed by the pseudo-set repair: one check is deleted,
// the row sum joins the latest earlier piece it constrains, and that piece is
// re-decomposed in place.
DecompositionPlan decompose(const TannerGraph& g);

// Assemble a plan from externally chosen pieces (golden decompositions and
// tests). Each piece lists its checks in plan order; stopping-set pieces pin
// their key checks and reevaluated bits, and may pin parent bits of residual
// tree checks. Validates closure, degree, peelability, and (D1)-(D3).
struct PiecePin {
    std::vector<check_index> checks;
    std::vector<check_index> key_checks;            // empty => pseudo-tree piece
    std::vector<bit_index> reevaluated_bits;        // aligned with key_checks
    std::vector<std::pair<check_index, bit_index>> pinned_parents;
};
DecompositionPlan plan_from_pieces(const TannerGraph& g, const std::vector<PiecePin>& pins);

} // namespace ldpcenc
