#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldpcenc/encoder.hpp"
#include "ldpcenc/errors.hpp"
#include "ldpcenc/oracle.hpp"
#include "ldpcenc/pipeline.hpp"

#include "support/fixtures.hpp"
#include "support/helpers.hpp"
#include "support/random_codes.hpp"

#include <random>

using namespace ldpcenc;

namespace {

DenseGf2Matrix dense_of(const ParityCheckRows& h) {
    return DenseGf2Matrix::from_rows(h.n_bits, h.rows);
}

std::vector<bit_index> reevaluated_of(const DecompositionPlan& plan) {
    std::vector<bit_index> out;
    for (const PlanPiece& p : plan.pieces)
        out.insert(out.end(), p.info.reevaluated_bits.begin(), p.info.reevaluated_bits.end());
    return out;
}

BitWord word_at_positions(const Schedule& s, const std::vector<std::pair<bit_index, int>>& kv) {
    BitWord w(s.n_info());
    for (auto [pos, val] : kv) {
        auto it = std::find(s.info_positions.begin(), s.info_positions.end(), pos);
        REQUIRE(it != s.info_positions.end());
        if (val) w.set(std::size_t(it - s.info_positions.begin()), true);
    }
    return w;
}

} // namespace

TEST_CASE("solve_correction cases") {
    // both checks satisfied: nothing moves
    for (auto tag : {CorrectionCase::gamma_in_both, CorrectionCase::delta_in_both,
                     CorrectionCase::disjoint}) {
        Correction c = solve_correction(tag, 0, 0);
        CHECK(c.d_gamma == 0);
        CHECK(c.d_delta == 0);
    }
    // disjoint: each key fixes its own bit
    Correction c = solve_correction(CorrectionCase::disjoint, 1, 1);
    CHECK(c.d_gamma == 1);
    CHECK(c.d_delta == 1);
    // gamma in both: substituting back satisfies both equations
    c = solve_correction(CorrectionCase::gamma_in_both, 1, 0);
    CHECK(c.d_gamma == 1);
    CHECK(c.d_delta == 1);
    CHECK((c.d_gamma) == 1);                 // alpha row: d_gamma = c_alpha
    CHECK((c.d_gamma ^ c.d_delta) == 0);     // beta row: d_gamma ^ d_delta = c_beta
    c = solve_correction(CorrectionCase::delta_in_both, 1, 0);
    CHECK((c.d_gamma ^ c.d_delta) == 1);
    CHECK(c.d_delta == 0);
}

TEST_CASE("tree code compiles to three parity computations") {
    TannerGraph g = TannerGraph::from_matrix(fixtures::tree_code());
    DecompositionPlan plan = decompose(g);
    Schedule s = compile(plan, g, EncodeMode::flip);
    REQUIRE(s.steps.size() == 3);
    std::vector<bit_index> parents;
    for (const Step& st : s.steps) {
        CHECK(st.op == StepOp::compute_parity);
        parents.push_back(st.a);
    }
    std::sort(parents.begin(), parents.end());
    CHECK(parents == std::vector<bit_index>{0, 4, 7});

    std::mt19937_64 rng(3);
    DenseGf2Matrix m = dense_of(fixtures::tree_code());
    for (int t = 0; t < 10; ++t) {
        EncodeReport rep = encode(s, helpers::random_word(rng, s.n_info()));
        CHECK(rep.xor_count == 6);
        CHECK(oracle::verify(m, rep.codeword));
    }
}

TEST_CASE("layered code costs exactly 21 xors per word") {
    // bit 10 has degree 4, so pin the whole graph as one pseudo-tree piece
    // rather than routing through the degree-3 decomposition
    ParityCheckRows h = fixtures::layered_16();
    TannerGraph g = TannerGraph::from_matrix(h);
    std::vector<PiecePin> pins(1);
    pins[0].checks = {0, 1, 2, 3, 4, 5, 6};
    DecompositionPlan plan = plan_from_pieces(g, pins);
    REQUIRE(plan.pieces.size() == 1);
    REQUIRE(plan.pieces[0].kind == PlanPiece::Kind::pseudo_tree);
    Schedule s = compile(plan, g, EncodeMode::flip);
    CHECK(s.n_info() == 9);

    DenseGf2Matrix m = dense_of(h);
    for (std::uint32_t v = 0; v < 512; ++v) {
        BitWord info(9);
        for (int i = 0; i < 9; ++i)
            if ((v >> i) & 1) info.set(i, true);
        EncodeReport rep = encode(s, info);
        CHECK(rep.xor_count == 21);
        CHECK(oracle::verify(m, rep.codeword));
    }
}

TEST_CASE("golden worked example on the (13,26) code") {
    ParityCheckRows h = fixtures::code_13_26();
    TannerGraph g = TannerGraph::from_matrix(h);
    std::vector<PiecePin> pins(2);
    pins[0].checks = {0, 1, 3, 5, 6, 8, 9, 11, 12};
    pins[0].key_checks = {9, 11};
    pins[0].reevaluated_bits = {0, 17};
    pins[1].checks = {2, 4, 7, 10};
    pins[1].key_checks = {2, 4};
    pins[1].reevaluated_bits = {2, 5};
    pins[1].pinned_parents = {{7, 25}, {10, 19}};
    DecompositionPlan plan = plan_from_pieces(g, pins);

    const std::vector<std::pair<bit_index, int>> info_fill = {
        {8, 0}, {12, 1}, {21, 1}, {22, 1}, {4, 0}, {15, 1}, {3, 1}, {11, 0}, {16, 0},
        {10, 1}, {14, 0}, {18, 1}, {24, 1},
    };
    const BitWord expected = BitWord::from_bits({1, 1, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1,
                                                 1, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1});

    for (EncodeMode mode : {EncodeMode::recompute, EncodeMode::flip}) {
        Schedule s = compile(plan, g, mode);
        CHECK(s.info_positions ==
              std::vector<bit_index>{3, 4, 8, 10, 11, 12, 14, 15, 16, 18, 21, 22, 24});
        CHECK(helpers::schedule_topologically_valid(s, reevaluated_of(plan)));
        EncodeReport rep = encode(s, word_at_positions(s, info_fill));
        CHECK(rep.codeword == expected);
        CHECK(rep.xor_count <= s.xor_budget);
        CHECK(oracle::verify(dense_of(h), rep.codeword));
    }
}

TEST_CASE("pinned 16-bit stopping set: correction case and flip lists") {
    ParityCheckRows h = fixtures::stopping_16();
    TannerGraph g = TannerGraph::from_matrix(h);
    std::vector<PiecePin> pins(1);
    pins[0].checks = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    pins[0].key_checks = {7, 8};
    pins[0].reevaluated_bits = {4, 7};
    DecompositionPlan plan = plan_from_pieces(g, pins);

    Schedule s = compile(plan, g, EncodeMode::flip);
    const Step* corr = nullptr;
    const Step *fg = nullptr, *fd = nullptr, *fx = nullptr;
    for (const Step& st : s.steps) {
        if (st.op == StepOp::correct_pair) corr = &st;
        if (st.op == StepOp::flip_if_bit && st.a == 4) fg = &st;
        if (st.op == StepOp::flip_if_bit && st.a == 7) fd = &st;
        if (st.op == StepOp::flip_if_xor) fx = &st;
    }
    REQUIRE(corr);
    CHECK(corr->tag == CorrectionCase::disjoint);
    CHECK(corr->c == 4);
    CHECK(corr->d == 7);
    REQUIRE(fg);
    CHECK(fg->list == std::vector<std::uint32_t>{0, 1});
    REQUIRE(fd);
    CHECK(fd->list == std::vector<std::uint32_t>{3});
    REQUIRE(fx);
    CHECK(fx->a == 4);
    CHECK(fx->b == 7);
    CHECK(fx->list == std::vector<std::uint32_t>{2});

    // exhaustive mode equivalence and validity on all 2^7 inputs
    Schedule sr = compile(plan, g, EncodeMode::recompute);
    DenseGf2Matrix m = dense_of(h);
    REQUIRE(s.n_info() == 7);
    for (std::uint32_t v = 0; v < 128; ++v) {
        BitWord info(7);
        for (int i = 0; i < 7; ++i)
            if ((v >> i) & 1) info.set(i, true);
        EncodeReport a = encode(s, info);
        EncodeReport b = encode(sr, info);
        CHECK(a.codeword == b.codeword);
        CHECK(oracle::verify(m, a.codeword));
        CHECK(a.xor_count <= s.xor_budget);
        CHECK(b.xor_count <= sr.xor_budget);
    }
}

TEST_CASE("natural decomposition of the (13,26) code encodes correctly") {
    ParityCheckRows h = fixtures::code_13_26();
    PreprocessResult r = preprocess_code(h, EncodeMode::flip);
    CHECK(helpers::schedule_topologically_valid(r.schedule, reevaluated_of(r.plan)));
    CHECK(r.schedule.n_info() == 13);

    DenseGf2Matrix m = dense_of(h);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 256; ++t) {
        EncodeReport rep = encode(r.schedule, helpers::random_word(rng, 13));
        CHECK(oracle::verify(m, rep.codeword));
        CHECK(rep.xor_count <= r.schedule.xor_budget);
        CHECK(rep.xor_count <= 2 * (78 - 13)); // the stated bound over H's rows
    }
}

TEST_CASE("plain label-and-decide stalls on an encoding stopping set") {
    // single-unknown propagation resolves three lower parities and then
    // stalls: every remaining check still has two or more unknowns
    ParityCheckRows h = fixtures::stopping_16();
    TannerGraph g = TannerGraph::from_matrix(h);
    std::vector<char> known(16, 1);
    for (bit_index b : {0, 1, 2, 3, 5, 8, 13, 4, 7}) known[b] = 0;
    bool progress = true;
    std::size_t determined = 0;
    while (progress) {
        progress = false;
        for (check_index c = 0; c < g.n_checks(); ++c) {
            std::size_t unknowns = 0;
            bit_index last = 0;
            for (bit_index b : g.check_neighbors(c))
                if (!known[b]) { ++unknowns; last = b; }
            if (unknowns == 1) {
                known[last] = 1;
                ++determined;
                progress = true;
            }
        }
    }
    CHECK(determined == 3);
    CHECK(std::count(known.begin(), known.end(), 0) == 6);
}

TEST_CASE("encode is linear in the info word") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 10; ++t) {
        ParityCheckRows h = gen::random_code(rng, 30 + rng() % 30, 14 + rng() % 10);
        PreprocessResult r = preprocess_code(h, EncodeMode::flip);
        for (int k = 0; k < 5; ++k) {
            BitWord u = helpers::random_word(rng, r.schedule.n_info());
            BitWord v = helpers::random_word(rng, r.schedule.n_info());
            BitWord uv = xored(u, v);
            BitWord lhs = xored(encode(r.schedule, u).codeword, encode(r.schedule, v).codeword);
            CHECK(lhs == encode(r.schedule, uv).codeword);
        }
    }
}

TEST_CASE("encoding is deterministic") {
    std::mt19937_64 rng(25);
    ParityCheckRows h = gen::random_code(rng, 60, 28);
    PreprocessResult r = preprocess_code(h, EncodeMode::recompute);
    BitWord w = helpers::random_word(rng, r.schedule.n_info());
    EncodeReport a = encode(r.schedule, w);
    EncodeReport b = encode(r.schedule, w);
    CHECK(a.codeword == b.codeword);
    CHECK(a.xor_count == b.xor_count);
    CHECK(a.flip_ops == b.flip_ops);
}

TEST_CASE("recompute and flip agree on random codes") {
    std::mt19937_64 rng(35);
    for (int t = 0; t < 15; ++t) {
        ParityCheckRows h = gen::random_code(rng, 24 + rng() % 40, 12 + rng() % 16);
        TannerGraph g = TannerGraph::from_matrix(h);
        DecompositionPlan plan = decompose(g);
        Schedule sf = compile(plan, g, EncodeMode::flip);
        Schedule sr = compile(plan, g, EncodeMode::recompute);
        DenseGf2Matrix m = dense_of(h);
        for (int k = 0; k < 20; ++k) {
            BitWord w = helpers::random_word(rng, sf.n_info());
            EncodeReport a = encode(sf, w);
            EncodeReport b = encode(sr, w);
            CHECK(a.codeword == b.codeword);
            CHECK(oracle::verify(m, a.codeword));
        }
    }
}

TEST_CASE("high-degree codes encode through the split") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 10; ++t) {
        ParityCheckRows h = gen::random_code(rng, 30 + rng() % 40, 12 + rng() % 12, 2, 8);
        PreprocessResult r = preprocess_code(h, EncodeMode::flip);
        CHECK(r.schedule.n_out_bits == h.n_bits);
        DenseGf2Matrix m = dense_of(h);
        for (int k = 0; k < 10; ++k) {
            EncodeReport rep = encode(r.schedule, helpers::random_word(rng, r.schedule.n_info()));
            CHECK(rep.codeword.size() == h.n_bits);
            CHECK(oracle::verify(m, rep.codeword));
            CHECK(rep.xor_count <= r.schedule.xor_budget);
        }
    }
}

TEST_CASE("encode rejects a wrong-length info word") {
    TannerGraph g = TannerGraph::from_matrix(fixtures::tree_code());
    DecompositionPlan plan = decompose(g);
    Schedule s = compile(plan, g, EncodeMode::flip);
    CHECK_THROWS_AS(encode(s, BitWord(s.n_info() + 1)), UsageError);
}

TEST_CASE("all-zero info encodes to the all-zero codeword") {
    ParityCheckRows h = fixtures::code_13_26();
    PreprocessResult r = preprocess_code(h, EncodeMode::flip);
    EncodeReport rep = encode(r.schedule, BitWord(13));
    CHECK(rep.codeword.none());
}
