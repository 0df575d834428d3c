#pragma once

#include "ldpcenc/tanner.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

// Deterministic random code generators for tests and the acceptance suite.

namespace gen {

using ldpcenc::ParityCheckRows;
using ldpcenc::bit_index;

// Column-oriented LDPC generator: each bit picks a degree in
// [min_col, max_col] and that many distinct rows. Retries until no row is
// left empty.
inline ParityCheckRows random_code(std::mt19937_64& rng, std::size_t n_bits, std::size_t n_checks,
                                   std::size_t min_col = 2, std::size_t max_col = 3) {
    ParityCheckRows h;
    h.n_bits = n_bits;
    h.rows.assign(n_checks, {});
    std::uniform_int_distribution<std::size_t> col_deg(min_col, max_col);
    std::uniform_int_distribution<std::size_t> row_of(0, n_checks - 1);
    for (bit_index b = 0; b < n_bits; ++b) {
        std::size_t d = std::min(col_deg(rng), n_checks);
        std::vector<std::size_t> picks;
        while (picks.size() < d) {
            std::size_t r = row_of(rng);
            if (std::find(picks.begin(), picks.end(), r) == picks.end()) picks.push_back(r);
        }
        for (std::size_t r : picks) h.rows[r].push_back(b);
    }
    // patch zero-weight rows by moving an edge over from the heaviest row;
    // column degrees are untouched
    for (std::size_t r = 0; r < n_checks; ++r) {
        if (!h.rows[r].empty()) continue;
        std::size_t donor = 0;
        for (std::size_t i = 1; i < n_checks; ++i)
            if (h.rows[i].size() > h.rows[donor].size()) donor = i;
        if (h.rows[donor].size() < 2)
            throw std::runtime_error("random_code: not enough edges to patch empty rows");
        h.rows[r].push_back(h.rows[donor].back());
        h.rows[donor].pop_back();
    }
    return h;
}

// Mean row weight within [4, 8] by sizing the check count from the edge count.
inline ParityCheckRows random_code_mean_row(std::mt19937_64& rng, std::size_t n_bits,
                                            double target_row_weight, std::size_t max_col = 3) {
    double mean_col = max_col <= 2 ? 2.0 : 2.5;
    std::size_t n_checks = std::max<std::size_t>(2,
        std::size_t(double(n_bits) * mean_col / target_row_weight));
    return random_code(rng, n_bits, n_checks, 2, max_col);
}

// Forest-shaped code: every added check brings at least one fresh bit.
// Attachment bits are capped at degree 3.
inline ParityCheckRows random_tree_code(std::mt19937_64& rng, std::size_t n_checks,
                                        std::size_t max_row = 5) {
    ParityCheckRows h;
    std::vector<bit_index> open{0}; // bits still below degree 3
    std::vector<std::size_t> degree{0};
    bit_index next = 1;
    std::uniform_int_distribution<std::size_t> row_deg(2, max_row);
    for (std::size_t c = 0; c < n_checks; ++c) {
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        std::size_t slot = pick(rng);
        bit_index anchor = open[slot];
        if (++degree[anchor] == 3) {
            open[slot] = open.back();
            open.pop_back();
        }
        std::vector<bit_index> row{anchor}; // attach to the existing forest
        std::size_t d = row_deg(rng);
        while (row.size() < d) {
            row.push_back(next);
            open.push_back(next);
            degree.push_back(1);
            ++next;
        }
        h.rows.push_back(std::move(row));
    }
    h.n_bits = next;
    return h;
}

// Uniform column weight 2: every bit joins exactly two distinct rows.
inline ParityCheckRows random_cycle_code(std::mt19937_64& rng, std::size_t n_bits,
                                         std::size_t n_checks) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ParityCheckRows h;
        h.n_bits = n_bits;
        h.rows.assign(n_checks, {});
        std::uniform_int_distribution<std::size_t> row_of(0, n_checks - 1);
        for (bit_index b = 0; b < n_bits; ++b) {
            std::size_t r1 = row_of(rng), r2 = row_of(rng);
            while (r2 == r1) r2 = row_of(rng);
            h.rows[r1].push_back(b);
            h.rows[r2].push_back(b);
        }
        bool ok = true;
        for (const auto& row : h.rows)
            if (row.empty()) { ok = false; break; }
        if (ok) return h;
    }
    throw std::runtime_error("random_cycle_code: could not avoid zero-weight rows");
}

// Upper-triangular with unit diagonal, then row and column permutations.
// Column weights are capped at max_col so the result feeds decompose directly.
inline ParityCheckRows random_permuted_triangular(std::mt19937_64& rng, std::size_t n_bits,
                                                  std::size_t n_checks, std::size_t max_row = 6,
                                                  std::size_t max_col = 3) {
    ParityCheckRows h;
    h.n_bits = n_bits;
    std::vector<bit_index> col_perm(n_bits);
    for (bit_index b = 0; b < n_bits; ++b) col_perm[b] = b;
    std::shuffle(col_perm.begin(), col_perm.end(), rng);
    std::vector<std::size_t> row_order(n_checks);
    for (std::size_t r = 0; r < n_checks; ++r) row_order[r] = r;
    std::shuffle(row_order.begin(), row_order.end(), rng);

    h.rows.assign(n_checks, {});
    std::vector<std::size_t> col_use(n_bits, 0);
    for (std::size_t r = 0; r < n_checks; ++r) ++col_use[col_perm[r]]; // reserve diagonals
    std::uniform_int_distribution<std::size_t> extra(1, max_row - 1);
    for (std::size_t r = 0; r < n_checks; ++r) {
        std::vector<bit_index> row{col_perm[r]}; // diagonal
        std::size_t want = std::min(extra(rng), n_bits - r - 1);
        std::vector<bit_index> pool;
        for (std::size_t c = r + 1; c < n_bits; ++c)
            if (col_use[col_perm[c]] < max_col) pool.push_back(col_perm[c]);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t i = 0; i < std::min(want, pool.size()); ++i) {
            row.push_back(pool[i]);
            ++col_use[pool[i]];
        }
        h.rows[row_order[r]] = std::move(row);
    }
    return h;
}

} // namespace gen
