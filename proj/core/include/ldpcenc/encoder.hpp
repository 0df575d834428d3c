#pragma once

#include "ldpcenc/decompose.hpp"
#include "ldpcenc/gf2.hpp"
#include "ldpcenc/tanner.hpp"

#include <cstdint>
#include <vector>

namespace ldpcenc {

enum class EncodeMode : std::uint8_t { recompute = 0, flip = 1 };

enum class CorrectionCase : std::uint8_t {
    gamma_in_both = 0, // gamma constrained by both key equations
    delta_in_both = 1,
    disjoint = 2,
};

struct Correction {
    int d_gamma = 0;
    int d_delta = 0;
};

// Solve the two key-check equations for the reevaluated-bit adjustments.
Correction solve_correction(CorrectionCase tag, int c_alpha, int c_beta);

enum class StepOp : std::uint8_t {
    compute_parity = 0, // work[a] := xor(list)
    eval_check = 1,     // slot[a] := xor(list)
    recompute = 2,      // work[a] := xor(list), after a correction
    correct_pair = 3,   // apply solve_correction(tag, slot[a], slot[b]) to bits c, d
    correct_single = 4, // work[c] := slot[a]
    flip_if_bit = 5,    // if work[a]: flip every bit in list
    flip_if_xor = 6,    // if work[a] ^ work[b]: flip every bit in list
};

struct Step {
    StepOp op = StepOp::compute_parity;
    CorrectionCase tag = CorrectionCase::disjoint;
    std::uint32_t a = 0, b = 0, c = 0, d = 0;
    std::uint32_t skip = 0; // correction steps: block length to skip when clean
    std::vector<std::uint32_t> list;

    friend bool operator==(const Step&, const Step&) = default;
};

// Immutable executable encoding program. Steps only reference bits already
// determined at their point in the sequence.
struct Schedule {
    std::size_t n_work_bits = 0;
    std::size_t n_out_bits = 0;
    std::size_t n_slots = 0;
    EncodeMode mode = EncodeMode::flip;
    std::vector<bit_index> info_positions; // work ids, ascending
    std::vector<bit_index> clone_origin;   // originals of work ids >= n_out_bits
    std::vector<Step> steps;
    std::uint64_t xor_budget = 0;
    std::uint64_t graph_digest = 0;

    std::size_t n_info() const { return info_positions.size(); }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct CompileOptions {
    std::size_t n_out_bits = 0; // 0: no projection, emit all working bits
    std::vector<bit_index> clone_origin;
    std::uint64_t xor_budget = 0; // 0: derive 2*(sum k - M) from the plan
    std::uint64_t graph_digest = 0;
};

// Turn a decomposition plan into a step sequence: pseudo-tree pieces resolve
// parents bottom-up; stopping-set pieces run their residual trees, evaluate
// the key checks, correct the reevaluated bits, then patch the affected
// parities by recomputation or by precomputed flip lists.
Schedule compile(const DecompositionPlan& plan, const TannerGraph& g, EncodeMode mode,
                 const CompileOptions& opts = {});

struct EncodeReport {
    BitWord codeword;
    std::uint64_t xor_count = 0;
    std::uint64_t flip_ops = 0;
};

EncodeReport encode(const Schedule& s, const BitWord& info);

} // namespace ldpcenc
