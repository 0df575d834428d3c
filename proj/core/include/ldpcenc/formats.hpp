#pragma once

#include "ldpcenc/tanner.hpp"

#include <string>
#include <string_view>

namespace ldpcenc {

// MacKay-style alist document: 1-indexed adjacency with per-node degrees.
struct AlistDocument {
    std::size_t n_bits = 0;
    std::size_t n_checks = 0;
    std::size_t max_bit_degree = 0;
    std::size_t max_check_degree = 0;
    std::vector<std::size_t> bit_degrees;
    std::vector<std::size_t> check_degrees;
    std::vector<std::vector<std::size_t>> bit_adj;   // 1-indexed check ids
    std::vector<std::vector<std::size_t>> check_adj; // 1-indexed bit ids

    friend bool operator==(const AlistDocument&, const AlistDocument&) = default;
};

// Throws FormatError (with line numbers) on malformed input. Accepts both
// zero-padded and unpadded adjacency lines.
AlistDocument parse_alist(std::string_view text);

// Zero-padded canonical form; parse_alist(write_alist(d)) == d.
std::string write_alist(const AlistDocument& d);

AlistDocument document_from_rows(const ParityCheckRows& h);
ParityCheckRows rows_from_document(const AlistDocument& d);

// Dense 0/1 text, one row per line.
ParityCheckRows parse_dense(std::string_view text);
std::string write_dense(const ParityCheckRows& h);

// Sniff alist vs dense by the leading lines and parse accordingly.
ParityCheckRows parse_matrix_text(std::string_view text);

ParityCheckRows load_matrix_file(const std::string& path);

} // namespace ldpcenc
