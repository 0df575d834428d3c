#include "ldpcenc/gf2.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>
#include <bit>

namespace ldpcenc {

BitWord BitWord::from_bits(const std::vector<int>& bits) {
    BitWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) w.set(i, true);
    return w;
}

void BitWord::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

std::size_t BitWord::popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::size_t(std::popcount(w));
    return n;
}

bool BitWord::none() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

bool BitWord::parity() const {
    std::uint64_t acc = 0;
    for (std::uint64_t w : words_) acc ^= w;
    return std::popcount(acc) & 1;
}

std::string BitWord::to_string01() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitWord::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::size_t ndig = (len_ + 3) / 4;
    std::string s(ndig, '0');
    for (std::size_t d = 0; d < ndig; ++d) {
        unsigned v = 0;
        for (unsigned k = 0; k < 4; ++k) {
            std::size_t i = d * 4 + k;
            if (i < len_ && get(i)) v |= 8u >> k; // bit 4d is the digit's MSB
        }
        s[d] = digits[v];
    }
    return s;
}

BitWord BitWord::from_hex(std::string_view hex, std::size_t length) {
    std::size_t ndig = (length + 3) / 4;
    if (hex.size() != ndig)
        throw FormatError("hex word has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string(ndig));
    BitWord w(length);
    for (std::size_t d = 0; d < ndig; ++d) {
        char c = hex[d];
        unsigned v;
        if (c >= '0' && c <= '9') v = unsigned(c - '0');
        else if (c >= 'a' && c <= 'f') v = unsigned(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = unsigned(c - 'A' + 10);
        else throw FormatError(std::string("bad hex digit '") + c + "'");
        for (unsigned k = 0; k < 4; ++k) {
            std::size_t i = d * 4 + k;
            bool bit = (v >> (3 - k)) & 1u;
            if (i < length) {
                if (bit) w.set(i, true);
            } else if (bit) {
                throw FormatError("hex word has bits past position " + std::to_string(length));
            }
        }
    }
    return w;
}

BitWord& xor_into(BitWord& dst, const BitWord& src) {
    if (dst.len_ != src.len_)
        throw UsageError("xor_into: length mismatch (" + std::to_string(dst.len_) + " vs " +
                         std::to_string(src.len_) + ")");
    for (std::size_t i = 0; i < dst.words_.size(); ++i) dst.words_[i] ^= src.words_[i];
    return dst;
}

bool dot(const BitWord& a, const BitWord& b) {
    if (a.len_ != b.len_) throw UsageError("dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        acc ^= std::uint64_t(std::popcount(a.words_[i] & b.words_[i]));
    return acc & 1;
}

DenseGf2Matrix DenseGf2Matrix::zero(std::size_t rows, std::size_t cols) {
    DenseGf2Matrix m;
    m.rows = rows;
    m.cols = cols;
    m.row.assign(rows, BitWord(cols));
    return m;
}

DenseGf2Matrix DenseGf2Matrix::from_rows(std::size_t cols,
                                         const std::vector<std::vector<std::uint32_t>>& supports) {
    DenseGf2Matrix m = zero(supports.size(), cols);
    for (std::size_t r = 0; r < supports.size(); ++r)
        for (std::uint32_t c : supports[r]) {
            if (c >= cols) throw UsageError("from_rows: column index out of range");
            m.row[r].set(c, true);
        }
    return m;
}

DenseGf2Matrix transpose(const DenseGf2Matrix& m) {
    DenseGf2Matrix t = DenseGf2Matrix::zero(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            if (m.row[r].get(c)) t.row[c].set(r, true);
    return t;
}

namespace {

// Shared greedy elimination: reduces each row in ascending order against the
// basis collected so far; rows that survive are independent.
std::vector<std::size_t> eliminate_greedy(const DenseGf2Matrix& m) {
    std::vector<BitWord> basis;          // reduced rows, one pivot each
    std::vector<std::size_t> pivot_col;  // pivot column of basis[i]
    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < m.rows; ++r) {
        BitWord cur = m.row[r];
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (cur.get(pivot_col[i])) xor_into(cur, basis[i]);
        std::size_t pc = m.cols;
        for (std::size_t c = 0; c < m.cols; ++c)
            if (cur.get(c)) { pc = c; break; }
        if (pc == m.cols) continue; // dependent
        kept.push_back(r);
        basis.push_back(std::move(cur));
        pivot_col.push_back(pc);
    }
    return kept;
}

} // namespace

std::size_t rank(const DenseGf2Matrix& m) {
    return eliminate_greedy(m).size();
}

std::vector<std::size_t> independent_row_set(const DenseGf2Matrix& m) {
    return eliminate_greedy(m);
}

} // namespace ldpcenc
