#include "ldpcenc/decompose.hpp"
#include "ldpcenc/encoder.hpp"
#include "ldpcenc/errors.hpp"
#include "ldpcenc/formats.hpp"
#include "ldpcenc/gf2.hpp"
#include "ldpcenc/oracle.hpp"
#include "ldpcenc/pipeline.hpp"
#include "ldpcenc/schedule_io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

using namespace ldpcenc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

EncodeMode parse_mode(const std::string& s) {
    return s == "recompute" ? EncodeMode::recompute : EncodeMode::flip;
}

BitWord random_word(std::mt19937_64& rng, std::size_t len) {
    BitWord w(len);
    for (std::size_t i = 0; i < len; ++i)
        if (rng() & 1) w.set(i, true);
    return w;
}

int cmd_info(const std::string& matrix_path) {
    ParityCheckRows h = load_matrix_file(matrix_path);
    TannerGraph g = TannerGraph::from_matrix(h);
    std::cout << "bits:   " << g.n_bits() << "\n";
    std::cout << "checks: " << g.n_checks() << "\n";
    std::cout << "edges:  " << g.n_edges() << "\n";
    if (g.n_checks() > 0 && g.n_bits() * g.n_checks() <= (std::size_t(1) << 25)) {
        DenseGf2Matrix m = DenseGf2Matrix::from_rows(h.n_bits, h.rows);
        std::cout << "rank:   " << rank(m) << "\n";
    } else {
        std::cout << "rank:   (skipped, matrix too large for dense elimination)\n";
    }
    std::map<std::size_t, std::size_t> bit_hist, check_hist;
    for (bit_index b = 0; b < g.n_bits(); ++b) ++bit_hist[g.bit_degree(b)];
    for (check_index c = 0; c < g.n_checks(); ++c) ++check_hist[g.check_degree(c)];
    std::cout << "bit degree histogram:";
    for (auto [d, n] : bit_hist) std::cout << " " << d << ":" << n;
    std::cout << "\ncheck degree histogram:";
    for (auto [d, n] : check_hist) std::cout << " " << d << ":" << n;
    std::cout << "\ncomponents: " << connected_components(g, SubgraphMask::full(g)).size() << "\n";
    return 0;
}

int cmd_preprocess(const std::string& matrix_path, const std::string& out_path,
                   const std::string& mode_str) {
    ParityCheckRows h = load_matrix_file(matrix_path);
    PreprocessResult r = preprocess_code(h, parse_mode(mode_str));

    if (!r.split.identity())
        std::cout << "split: " << r.split.original_n_bits << " -> " << r.graph.n_bits()
                  << " bits, " << r.split.aux_checks.size() << " auxiliary checks\n";
    std::size_t trees = 0, fold1 = 0, fold2 = 0;
    for (std::size_t i = 0; i < r.plan.pieces.size(); ++i) {
        const PlanPiece& p = r.plan.pieces[i];
        if (p.kind == PlanPiece::Kind::pseudo_tree) {
            ++trees;
            continue;
        }
        (p.info.fold == 1 ? fold1 : fold2) += 1;
        std::cout << "piece " << i << ": " << p.info.fold << "-fold stopping set, "
                  << p.checks.size() << " checks, " << p.bits.size() << " bits, keys [";
        for (std::size_t k = 0; k < p.info.key_checks.size(); ++k)
            std::cout << (k ? " " : "") << p.info.key_checks[k];
        std::cout << "], reevaluated [";
        for (std::size_t k = 0; k < p.info.reevaluated_bits.size(); ++k)
            std::cout << (k ? " " : "") << p.info.reevaluated_bits[k];
        std::cout << "]\n";
    }
    std::cout << "pieces: " << r.plan.pieces.size() << " (" << trees << " pseudo-trees, " << fold1
              << " 1-fold, " << fold2 << " 2-fold stopping sets)\n";
    if (!r.plan.synthesized.empty())
        std::cout << "synthesized checks: " << r.plan.synthesized.size() << "\n";
    if (!r.plan.dropped_redundant.empty())
        std::cout << "dropped redundant rows: " << r.plan.dropped_redundant.size() << "\n";
    std::cout << "info bits: " << r.schedule.n_info() << "\n";
    std::cout << "parity bits: " << r.plan.parity_bits.size() << "\n";
    std::cout << "xor_budget: " << r.schedule.xor_budget << "\n";
    save_schedule_file(out_path, r.schedule);
    std::cout << "schedule written to " << out_path << "\n";
    return 0;
}

int cmd_encode(const std::string& schedule_path, const std::string& in_path, long random_n,
               std::uint64_t seed, bool stats, const std::string& matrix_path) {
    Schedule s = load_schedule_file(schedule_path);
    if (!matrix_path.empty()) {
        std::uint64_t digest = matrix_digest(load_matrix_file(matrix_path));
        if (digest != s.graph_digest)
            throw FormatError("schedule digest mismatch: schedule was built from a different matrix");
    }
    std::vector<BitWord> words;
    if (!in_path.empty()) {
        for (const std::string& line : read_lines(in_path))
            words.push_back(BitWord::from_hex(line, s.n_info()));
    } else {
        std::mt19937_64 rng(seed);
        for (long i = 0; i < random_n; ++i) words.push_back(random_word(rng, s.n_info()));
    }
    for (const BitWord& w : words) {
        EncodeReport rep = encode(s, w);
        std::cout << rep.codeword.to_hex();
        if (stats) std::cout << " xor=" << rep.xor_count << " flips=" << rep.flip_ops;
        std::cout << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& matrix_path, const std::string& words_path) {
    ParityCheckRows h = load_matrix_file(matrix_path);
    DenseGf2Matrix m = DenseGf2Matrix::from_rows(h.n_bits, h.rows);
    std::size_t bad = 0, total = 0;
    for (const std::string& line : read_lines(words_path)) {
        BitWord x = BitWord::from_hex(line, h.n_bits);
        ++total;
        if (!oracle::verify(m, x)) {
            ++bad;
            std::cout << "FAIL word " << total << "\n";
        }
    }
    std::cout << (bad ? "failed: " : "ok: ") << (total - bad) << "/" << total << " words satisfy H\n";
    return bad ? 1 : 0;
}

int cmd_bench(const std::string& matrix_path, long n_words, unsigned threads,
              const std::string& mode_str, std::uint64_t seed) {
    ParityCheckRows h = load_matrix_file(matrix_path);
    auto t0 = std::chrono::steady_clock::now();
    PreprocessResult r = preprocess_code(h, parse_mode(mode_str));
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "preprocess: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";

    std::vector<std::vector<BitWord>> chunks(threads);
    {
        std::mt19937_64 rng(seed);
        for (long i = 0; i < n_words; ++i)
            chunks[std::size_t(i) % threads].push_back(random_word(rng, r.schedule.n_info()));
    }
    std::atomic<std::uint64_t> total_xor{0};
    auto worker = [&](std::size_t t) {
        std::uint64_t local = 0;
        for (const BitWord& w : chunks[t]) local += encode(r.schedule, w).xor_count;
        total_xor += local;
    };
    auto t2 = std::chrono::steady_clock::now();
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    auto t3 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t3 - t2).count();
    double mean_xor = n_words ? double(total_xor.load()) / double(n_words) : 0.0;
    std::cout << "encoded " << n_words << " words in " << secs << " s ("
              << (secs > 0 ? double(n_words) / secs : 0.0) << " words/s)\n";
    std::cout << "mean xor_count: " << mean_xor << " (budget " << r.schedule.xor_budget << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear-time LDPC encoder via pseudo-tree / stopping-set decomposition"};
    app.require_subcommand(1);

    std::string matrix_path, out_path, schedule_path, in_path, words_path;
    std::string mode_str = "flip";
    long random_n = 0, bench_words = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool stats = false;

    auto* info = app.add_subcommand("info", "print matrix facts");
    info->add_option("matrix", matrix_path, "alist or dense 0/1 matrix file")->required();

    auto* pre = app.add_subcommand("preprocess", "decompose and compile an encoding schedule");
    pre->add_option("matrix", matrix_path)->required();
    pre->add_option("-o,--out", out_path, "schedule output file")->required();
    pre->add_option("--mode", mode_str, "recompute|flip")
        ->check(CLI::IsMember({"recompute", "flip"}));

    auto* enc = app.add_subcommand("encode", "encode info words with a schedule");
    enc->add_option("schedule", schedule_path)->required();
    enc->add_option("--in", in_path, "hex info words, one per line");
    enc->add_option("--random", random_n, "encode N random words");
    enc->add_option("--seed", seed, "seed for --random");
    enc->add_option("--matrix", matrix_path, "verify the schedule digest against this matrix");
    enc->add_flag("--stats", stats, "append per-word xor/flip counts");

    auto* ver = app.add_subcommand("verify", "check codewords against a matrix");
    ver->add_option("matrix", matrix_path)->required();
    ver->add_option("codewords", words_path, "hex codewords, one per line")->required();

    auto* bench = app.add_subcommand("bench", "preprocess + encode throughput");
    bench->add_option("matrix", matrix_path)->required();
    bench->add_option("--words", bench_words, "number of random words");
    bench->add_option("--threads", threads, "encode worker threads");
    bench->add_option("--seed", seed);
    bench->add_option("--mode", mode_str)->check(CLI::IsMember({"recompute", "flip"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_info(matrix_path);
        if (pre->parsed()) return cmd_preprocess(matrix_path, out_path, mode_str);
        if (enc->parsed()) {
            if (in_path.empty() && random_n <= 0)
                throw UsageError("encode: provide --in FILE or --random N");
            return cmd_encode(schedule_path, in_path, random_n, seed, stats, matrix_path);
        }
        if (ver->parsed()) return cmd_verify(matrix_path, words_path);
        if (bench->parsed()) {
            if (threads == 0) threads = 1;
            return cmd_bench(matrix_path, bench_words, threads, mode_str, seed);
        }
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const StructuralError& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
