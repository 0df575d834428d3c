#include "ldpcenc/oracle.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>

namespace ldpcenc {
namespace oracle {

SystematicForm systematic_form(const DenseGf2Matrix& h) {
    SystematicForm sf;
    sf.n_bits = h.cols;
    std::vector<BitWord> rows = h.row;

    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols && r < rows.size(); ++c) {
        std::size_t pivot = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i].get(c)) { pivot = i; break; }
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(c)) xor_into(rows[i], rows[r]);
        sf.pivot_cols.push_back(c);
        ++r;
    }
    rows.resize(r); // drop zero rows
    sf.reduced = std::move(rows);

    std::vector<char> is_pivot(h.cols, 0);
    for (std::size_t c : sf.pivot_cols) is_pivot[c] = 1;
    for (std::size_t c = 0; c < h.cols; ++c)
        if (!is_pivot[c]) sf.free_cols.push_back(c);
    return sf;
}

BitWord systematic_encode(const SystematicForm& sf, const BitWord& info) {
    if (info.size() != sf.free_cols.size())
        throw UsageError("systematic_encode: info length " + std::to_string(info.size()) +
                         " != free column count " + std::to_string(sf.free_cols.size()));
    BitWord x(sf.n_bits);
    for (std::size_t i = 0; i < sf.free_cols.size(); ++i)
        if (info.get(i)) x.set(sf.free_cols[i], true);
    // pivot value = sum of the reduced row's free-column overlap
    for (std::size_t i = 0; i < sf.pivot_cols.size(); ++i) {
        bool v = dot(sf.reduced[i], x);
        if (v) x.set(sf.pivot_cols[i], true); // reduced[i] has a 1 at its own pivot; x pivot was 0
    }
    return x;
}

bool verify(const DenseGf2Matrix& h, const BitWord& x) {
    if (x.size() != h.cols) throw UsageError("verify: codeword length mismatch");
    for (const BitWord& row : h.row)
        if (dot(row, x)) return false;
    return true;
}

std::uint64_t codeword_census(const DenseGf2Matrix& h, std::size_t limit) {
    if (h.cols > limit)
        throw UsageError("codeword_census: " + std::to_string(h.cols) + " bits exceeds limit " +
                         std::to_string(limit));
    std::uint64_t count = 0;
    const std::uint64_t end = std::uint64_t(1) << h.cols;
    for (std::uint64_t v = 0; v < end; ++v) {
        BitWord x(h.cols);
        for (std::size_t b = 0; b < h.cols; ++b)
            if ((v >> b) & 1) x.set(b, true);
        if (verify(h, x)) ++count;
    }
    return count;
}

} // namespace oracle
} // namespace ldpcenc
