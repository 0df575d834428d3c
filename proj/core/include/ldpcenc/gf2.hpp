#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ldpcenc {

// Packed binary vector. Bits beyond size() are kept zero in storage so that
// equality and parity can work word-wise.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t length) : len_(length), words_((length + 63) / 64, 0) {}

    static BitWord from_bits(const std::vector<int>& bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void clear();

    std::size_t popcount() const;
    bool none() const;
    // XOR of all bits.
    bool parity() const;

    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t w) const { return words_[w]; }
    std::uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

    std::string to_string01() const;
    std::string to_hex() const;
    static BitWord from_hex(std::string_view hex, std::size_t length);

    friend bool operator==(const BitWord&, const BitWord&) = default;

private:
    friend BitWord& xor_into(BitWord& dst, const BitWord& src);
    friend bool dot(const BitWord& a, const BitWord& b);

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// dst[i] ^= src[i]. Lengths must match.
BitWord& xor_into(BitWord& dst, const BitWord& src);

inline BitWord xored(BitWord a, const BitWord& b) {
    xor_into(a, b);
    return a;
}

// Parity of the AND of two equal-length words (GF(2) inner product).
bool dot(const BitWord& a, const BitWord& b);

struct DenseGf2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BitWord> row;

    static DenseGf2Matrix zero(std::size_t rows, std::size_t cols);
    static DenseGf2Matrix from_rows(std::size_t cols,
                                    const std::vector<std::vector<std::uint32_t>>& supports);
};

DenseGf2Matrix transpose(const DenseGf2Matrix& m);

// GF(2) rank by row reduction on a scratch copy.
std::size_t rank(const DenseGf2Matrix& m);

// Maximal independent row subset, greedy in ascending row order.
std::vector<std::size_t> independent_row_set(const DenseGf2Matrix& m);

} // namespace ldpcenc
