#pragma once

#include "ldpcenc/encoder.hpp"
#include "ldpcenc/gf2.hpp"
#include "ldpcenc/tanner.hpp"

#include <random>
#include <vector>

namespace helpers {

using namespace ldpcenc;

inline BitWord random_word(std::mt19937_64& rng, std::size_t len) {
    BitWord w(len);
    for (std::size_t i = 0; i < len; ++i)
        if (rng() & 1) w.set(i, true);
    return w;
}

inline SubgraphMask mask_of(const TannerGraph& g, const std::vector<bit_index>& bits,
                            const std::vector<check_index>& checks) {
    SubgraphMask m(g.n_bits(), g.n_checks());
    for (bit_index b : bits) m.bit_in[b] = 1;
    for (check_index c : checks) m.check_in[c] = 1;
    return m;
}

// Every step must only read bits already known at its position. Reevaluated
// bits count as known from the start (they are zero-assigned before the
// piece's tree pass).
inline bool schedule_topologically_valid(const Schedule& s,
                                         const std::vector<bit_index>& zero_initialized = {}) {
    std::vector<char> known(s.n_work_bits, 0);
    for (bit_index b : s.info_positions) known[b] = 1;
    for (bit_index b : zero_initialized) known[b] = 1;
    std::vector<char> slot_known(s.n_slots, 0);
    for (const Step& st : s.steps) {
        switch (st.op) {
        case StepOp::compute_parity:
            for (std::uint32_t b : st.list)
                if (!known[b]) return false;
            known[st.a] = 1;
            break;
        case StepOp::eval_check:
            for (std::uint32_t b : st.list)
                if (!known[b]) return false;
            slot_known[st.a] = 1;
            break;
        case StepOp::recompute:
            for (std::uint32_t b : st.list)
                if (!known[b]) return false;
            if (!known[st.a]) return false;
            break;
        case StepOp::correct_pair:
            if (!slot_known[st.a] || !slot_known[st.b]) return false;
            if (!known[st.c] || !known[st.d]) return false; // zero-initialized reevaluated bits
            break;
        case StepOp::correct_single:
            if (!slot_known[st.a] || !known[st.c]) return false;
            break;
        case StepOp::flip_if_bit:
            if (!known[st.a]) return false;
            for (std::uint32_t b : st.list)
                if (!known[b]) return false;
            break;
        case StepOp::flip_if_xor:
            if (!known[st.a] || !known[st.b]) return false;
            for (std::uint32_t b : st.list)
                if (!known[b]) return false;
            break;
        }
    }
    return true;
}

} // namespace helpers
