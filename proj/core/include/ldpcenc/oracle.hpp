#pragma once

#include "ldpcenc/gf2.hpp"

#include <cstdint>
#include <vector>

namespace ldpcenc {
namespace oracle {

// Row-reduced parity-check matrix with pivot (parity) and free (information)
// columns identified. The slow reference encoder; shares nothing with the
// schedule path beyond BitWord.
struct SystematicForm {
    std::size_t n_bits = 0;
    std::vector<std::size_t> pivot_cols; // one per reduced row, ascending
    std::vector<std::size_t> free_cols;  // ascending
    std::vector<BitWord> reduced;        // reduced[i] has pivot pivot_cols[i]
};

SystematicForm systematic_form(const DenseGf2Matrix& h);

// Codeword whose free columns carry `info` and whose pivot columns follow.
BitWord systematic_encode(const SystematicForm& sf, const BitWord& info);

// True iff every row of h has even overlap with x.
bool verify(const DenseGf2Matrix& h, const BitWord& x);

// Exhaustively count vectors x with h*x = 0. Requires h.cols <= limit.
std::uint64_t codeword_census(const DenseGf2Matrix& h, std::size_t limit = 20);

} // namespace oracle
} // namespace ldpcenc
