#include "ldpcenc/formats.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ldpcenc {

namespace {

struct Lines {
    std::vector<std::string_view> text; // without trailing \r
    std::vector<int> number;            // 1-based source line
};

Lines split_nonempty_lines(std::string_view text) {
    Lines out;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos) {
            out.text.push_back(line.substr(first));
            out.number.push_back(lineno);
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<long> parse_ints(std::string_view line, int lineno) {
    std::vector<long> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        if (p >= end) break;
        long v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t'))
            throw FormatError(lineno, "expected an integer, got '" + std::string(p, end) + "'");
        out.push_back(v);
        p = next;
    }
    return out;
}

// One adjacency line: `degree` 1-indexed entries, optionally zero-padded out
// to `pad`.
std::vector<std::size_t> parse_adjacency(const Lines& ls, std::size_t idx, std::size_t degree,
                                         std::size_t pad, std::size_t max_id, const char* what) {
    if (idx >= ls.text.size()) throw FormatError("unexpected end of file in adjacency lists");
    int lineno = ls.number[idx];
    std::vector<long> vals = parse_ints(ls.text[idx], lineno);
    if (vals.size() != degree && vals.size() != pad)
        throw FormatError(lineno, std::string(what) + " list has " + std::to_string(vals.size()) +
                                      " entries, expected " + std::to_string(degree));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        long v = vals[i];
        if (i < degree) {
            if (v < 1 || std::size_t(v) > max_id)
                throw FormatError(lineno, std::string(what) + " index " + std::to_string(v) +
                                              " out of range 1.." + std::to_string(max_id));
            out.push_back(std::size_t(v));
        } else if (v != 0) {
            throw FormatError(lineno, "nonzero padding entry " + std::to_string(v));
        }
    }
    return out;
}

} // namespace

AlistDocument parse_alist(std::string_view text) {
    Lines ls = split_nonempty_lines(text);
    if (ls.text.size() < 4) throw FormatError("alist: fewer than 4 header lines");

    auto header = [&](std::size_t idx, std::size_t want) {
        std::vector<long> v = parse_ints(ls.text[idx], ls.number[idx]);
        if (v.size() != want)
            throw FormatError(ls.number[idx], "expected " + std::to_string(want) +
                                                  " integers in the header");
        for (long x : v)
            if (x < 0) throw FormatError(ls.number[idx], "negative header value");
        return v;
    };

    AlistDocument d;
    auto dims = header(0, 2);
    d.n_bits = std::size_t(dims[0]);
    d.n_checks = std::size_t(dims[1]);
    auto maxima = header(1, 2);
    d.max_bit_degree = std::size_t(maxima[0]);
    d.max_check_degree = std::size_t(maxima[1]);

    auto degree_line = [&](std::size_t idx, std::size_t count, std::size_t cap, const char* what) {
        std::vector<long> v = parse_ints(ls.text[idx], ls.number[idx]);
        if (v.size() != count)
            throw FormatError(ls.number[idx], std::string(what) + " degree list has " +
                                                  std::to_string(v.size()) + " entries, expected " +
                                                  std::to_string(count));
        std::vector<std::size_t> out;
        for (long x : v) {
            if (x < 0 || std::size_t(x) > cap)
                throw FormatError(ls.number[idx], std::string(what) + " degree " +
                                                      std::to_string(x) + " exceeds stated maximum");
            out.push_back(std::size_t(x));
        }
        return out;
    };
    d.bit_degrees = degree_line(2, d.n_bits, d.max_bit_degree, "bit");
    d.check_degrees = degree_line(3, d.n_checks, d.max_check_degree, "check");

    std::size_t idx = 4;
    for (std::size_t b = 0; b < d.n_bits; ++b)
        d.bit_adj.push_back(
            parse_adjacency(ls, idx++, d.bit_degrees[b], d.max_bit_degree, d.n_checks, "check"));
    for (std::size_t c = 0; c < d.n_checks; ++c)
        d.check_adj.push_back(
            parse_adjacency(ls, idx++, d.check_degrees[c], d.max_check_degree, d.n_bits, "bit"));
    if (idx < ls.text.size())
        throw FormatError(ls.number[idx], "trailing content after adjacency lists");

    // cross-consistency
    for (std::size_t c = 0; c < d.n_checks; ++c)
        for (std::size_t b1 : d.check_adj[c]) {
            const auto& back = d.bit_adj[b1 - 1];
            if (std::find(back.begin(), back.end(), c + 1) == back.end())
                throw FormatError("alist: edge check " + std::to_string(c + 1) + " - bit " +
                                  std::to_string(b1) + " missing from the bit list");
        }
    std::size_t eb = 0, ec = 0;
    for (auto d1 : d.bit_degrees) eb += d1;
    for (auto d1 : d.check_degrees) ec += d1;
    if (eb != ec) throw FormatError("alist: bit and check degree sums disagree");
    return d;
}

std::string write_alist(const AlistDocument& d) {
    std::ostringstream os;
    os << d.n_bits << ' ' << d.n_checks << '\n';
    os << d.max_bit_degree << ' ' << d.max_check_degree << '\n';
    auto join = [&os](const std::vector<std::size_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << '\n';
    };
    join(d.bit_degrees);
    join(d.check_degrees);
    auto padded = [&](const std::vector<std::size_t>& v, std::size_t pad) {
        std::vector<std::size_t> row = v;
        row.resize(pad, 0);
        join(row);
    };
    for (const auto& v : d.bit_adj) padded(v, d.max_bit_degree);
    for (const auto& v : d.check_adj) padded(v, d.max_check_degree);
    return os.str();
}

AlistDocument document_from_rows(const ParityCheckRows& h) {
    AlistDocument d;
    d.n_bits = h.n_bits;
    d.n_checks = h.rows.size();
    d.bit_adj.resize(h.n_bits);
    for (std::size_t c = 0; c < h.rows.size(); ++c) {
        std::vector<std::size_t> row;
        for (bit_index b : h.rows[c]) {
            row.push_back(b + 1);
            d.bit_adj[b].push_back(c + 1);
        }
        std::sort(row.begin(), row.end());
        d.check_adj.push_back(std::move(row));
    }
    for (auto& v : d.bit_adj) std::sort(v.begin(), v.end());
    for (const auto& v : d.bit_adj) {
        d.bit_degrees.push_back(v.size());
        d.max_bit_degree = std::max(d.max_bit_degree, v.size());
    }
    for (const auto& v : d.check_adj) {
        d.check_degrees.push_back(v.size());
        d.max_check_degree = std::max(d.max_check_degree, v.size());
    }
    return d;
}

ParityCheckRows rows_from_document(const AlistDocument& d) {
    ParityCheckRows h;
    h.n_bits = d.n_bits;
    for (const auto& row : d.check_adj) {
        std::vector<bit_index> r;
        for (std::size_t b : row) r.push_back(bit_index(b - 1));
        h.rows.push_back(std::move(r));
    }
    return h;
}

ParityCheckRows parse_dense(std::string_view text) {
    Lines ls = split_nonempty_lines(text);
    if (ls.text.empty()) throw FormatError("dense matrix: empty input");
    ParityCheckRows h;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < ls.text.size(); ++i) {
        std::vector<long> vals = parse_ints(ls.text[i], ls.number[i]);
        if (i == 0) {
            cols = vals.size();
            h.n_bits = cols;
        } else if (vals.size() != cols) {
            throw FormatError(ls.number[i], "row has " + std::to_string(vals.size()) +
                                                " entries, expected " + std::to_string(cols));
        }
        std::vector<bit_index> row;
        for (std::size_t b = 0; b < vals.size(); ++b) {
            if (vals[b] != 0 && vals[b] != 1)
                throw FormatError(ls.number[i], "dense entries must be 0 or 1");
            if (vals[b]) row.push_back(bit_index(b));
        }
        if (row.empty()) throw FormatError(ls.number[i], "zero-weight row");
        h.rows.push_back(std::move(row));
    }
    return h;
}

std::string write_dense(const ParityCheckRows& h) {
    std::ostringstream os;
    for (const auto& row : h.rows) {
        std::vector<char> bits(h.n_bits, '0');
        for (bit_index b : row) bits[b] = '1';
        for (std::size_t b = 0; b < bits.size(); ++b) os << (b ? " " : "") << bits[b];
        os << '\n';
    }
    return os.str();
}

ParityCheckRows parse_matrix_text(std::string_view text) {
    Lines ls = split_nonempty_lines(text);
    if (ls.text.empty()) throw FormatError("matrix: empty input");
    std::vector<long> first = parse_ints(ls.text[0], ls.number[0]);
    bool maybe_alist = first.size() == 2;
    if (maybe_alist) {
        bool binary_only = true;
        for (long v : first) binary_only = binary_only && (v == 0 || v == 1);
        if (binary_only) {
            // a two-column dense matrix also starts with two small integers;
            // try alist first and fall back
            try {
                return rows_from_document(parse_alist(text));
            } catch (const FormatError&) {
                return parse_dense(text);
            }
        }
        return rows_from_document(parse_alist(text));
    }
    return parse_dense(text);
}

ParityCheckRows load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_text(ss.str());
}

} // namespace ldpcenc
