#pragma once

#include "ldpcenc/tanner.hpp"

// Shared hand-checked instances used across the test suites. All indices are
// zero-based.

namespace fixtures {

// (13, 26) code with uniform column weight 3.
inline ldpcenc::ParityCheckRows code_13_26() {
    ldpcenc::ParityCheckRows h;
    h.n_bits = 26;
    h.rows = {
        {0, 8, 12, 20, 21, 22},   // C0
        {3, 7, 11, 15, 17, 22},   // C1
        {2, 10, 14, 19, 24, 25},  // C2
        {6, 7, 9, 13, 20, 23},    // C3
        {5, 14, 18, 19, 24, 25},  // C4
        {4, 6, 11, 12, 16, 22},   // C5
        {4, 8, 12, 13, 15, 17},   // C6
        {2, 5, 10, 18, 23, 24, 25}, // C7
        {1, 3, 6, 15, 21, 23},    // C8
        {1, 8, 9, 11, 13, 17},    // C9
        {2, 5, 10, 14, 18, 19},   // C10
        {0, 1, 7, 16, 20},        // C11
        {0, 3, 4, 9, 16, 21},     // C12
    };
    return h;
}

// Ten-bit tree code: three checks hanging off a shared bit.
inline ldpcenc::ParityCheckRows tree_code() {
    ldpcenc::ParityCheckRows h;
    h.n_bits = 10;
    h.rows = {{0, 1, 2, 3}, {3, 4, 5, 6}, {3, 7, 8, 9}};
    return h;
}

// Seven-tier layered code on 16 bits; encodable in one bottom-up pass with
// 21 XOR operations.
inline ldpcenc::ParityCheckRows layered_16() {
    ldpcenc::ParityCheckRows h;
    h.n_bits = 16;
    h.rows = {
        {0, 4, 6, 9},          // C0
        {1, 4, 5, 8, 11},      // C1
        {2, 4, 6, 7, 10, 13},  // C2
        {3, 5, 7, 8, 9, 12},   // C3
        {5, 9, 10, 12, 14},    // C4
        {8, 10, 11, 12, 15},   // C5
        {10, 13, 14, 15},      // C6
    };
    return h;
}

// layered_16 plus two extra checks over its top-tier bits: a 9-check
// encoding stopping set (every bit has degree >= 2).
inline ldpcenc::ParityCheckRows stopping_16() {
    ldpcenc::ParityCheckRows h = layered_16();
    h.rows.push_back({0, 1, 2, 3});  // C7
    h.rows.push_back({0, 1, 7, 15}); // C8
    return h;
}

} // namespace fixtures
