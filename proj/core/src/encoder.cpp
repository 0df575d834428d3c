#include "ldpcenc/encoder.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>

namespace ldpcenc {

Correction solve_correction(CorrectionCase tag, int c_alpha, int c_beta) {
    Correction r;
    switch (tag) {
    case CorrectionCase::gamma_in_both:
        r.d_gamma = c_alpha;
        r.d_delta = c_alpha ^ c_beta;
        break;
    case CorrectionCase::delta_in_both:
        r.d_delta = c_beta;
        r.d_gamma = c_alpha ^ c_beta;
        break;
    case CorrectionCase::disjoint:
        r.d_gamma = c_alpha;
        r.d_delta = c_beta;
        break;
    }
    return r;
}

namespace {

class Compiler {
public:
    Compiler(const DecompositionPlan& plan, const TannerGraph& g, EncodeMode mode)
        : plan_(plan), mode_(mode), work_(plan.working_graph(g)) {}

    Schedule run(const CompileOptions& opts) {
        Schedule s;
        s.mode = mode_;
        s.n_work_bits = plan_.n_bits;
        s.n_out_bits = opts.n_out_bits ? opts.n_out_bits : plan_.n_bits;
        s.clone_origin = opts.clone_origin;
        s.info_positions = plan_.info_bits;
        s.graph_digest = opts.graph_digest;

        for (const PlanPiece& piece : plan_.pieces) {
            if (piece.kind == PlanPiece::Kind::pseudo_tree) {
                for (const PseudoTree& t : piece.trees) emit_tree(s, t);
            } else {
                emit_stopping(s, piece);
            }
        }

        if (opts.xor_budget) {
            s.xor_budget = opts.xor_budget;
        } else {
            std::uint64_t budget = 0;
            for (const PlanPiece& piece : plan_.pieces)
                for (check_index c : piece.checks)
                    budget += 2 * std::uint64_t(work_.check_degree(c) - 1);
            s.xor_budget = budget;
        }
        return s;
    }

private:
    const DecompositionPlan& plan_;
    EncodeMode mode_;
    TannerGraph work_;

    std::vector<std::uint32_t> sources_of(const PseudoTree& t, std::size_t i) const {
        std::vector<std::uint32_t> src;
        for (bit_index b : work_.check_neighbors(t.checks[i]))
            if (b != t.parents[i]) src.push_back(b);
        return src;
    }

    void emit_tree(Schedule& s, const PseudoTree& t) {
        for (std::size_t i = 0; i < t.checks.size(); ++i) {
            Step st;
            st.op = StepOp::compute_parity;
            st.a = t.parents[i];
            st.list = sources_of(t, i);
            s.steps.push_back(std::move(st));
        }
    }

    void emit_stopping(Schedule& s, const PlanPiece& piece) {
        const StoppingSetInfo& info = piece.info;
        struct TreeStep {
            const PseudoTree* tree;
            std::size_t index;
            bit_index target;
        };
        std::vector<TreeStep> tree_steps;
        for (const PseudoTree& t : info.residual_trees)
            for (std::size_t i = 0; i < t.checks.size(); ++i) {
                tree_steps.push_back({&t, i, t.parents[i]});
                Step st;
                st.op = StepOp::compute_parity;
                st.a = t.parents[i];
                st.list = sources_of(t, i);
                s.steps.push_back(std::move(st));
            }

        // dependency of each bit on the reevaluated pair: bit0 = gamma, bit1 = delta
        std::vector<std::uint8_t> dep(plan_.n_bits, 0);
        const bit_index gamma = info.reevaluated_bits.at(0);
        dep[gamma] = 1;
        bit_index delta = gamma;
        if (info.fold == 2) {
            delta = info.reevaluated_bits.at(1);
            dep[delta] = 2;
        }
        for (const TreeStep& ts : tree_steps) {
            std::uint8_t d = 0;
            for (bit_index b : work_.check_neighbors(ts.tree->checks[ts.index]))
                if (b != ts.target) d ^= dep[b];
            dep[ts.target] = d;
        }

        auto key_coeff = [&](check_index key) {
            std::uint8_t d = 0;
            for (bit_index b : work_.check_neighbors(key)) d ^= dep[b];
            return d;
        };

        std::vector<std::uint32_t> slots;
        for (check_index key : info.key_checks) {
            Step st;
            st.op = StepOp::eval_check;
            st.a = std::uint32_t(s.n_slots++);
            slots.push_back(st.a);
            for (bit_index b : work_.check_neighbors(key)) st.list.push_back(b);
            s.steps.push_back(std::move(st));
        }

        Step corr;
        if (info.fold == 2) {
            std::uint8_t ca = key_coeff(info.key_checks[0]);
            std::uint8_t cb = key_coeff(info.key_checks[1]);
            if (!(ca & 1) || !(cb & 2))
                throw StructuralError("compile: reevaluated bits violate (D1)/(D2)");
            bool gamma_in_beta = cb & 1, delta_in_alpha = ca & 2;
            if (gamma_in_beta && delta_in_alpha)
                throw StructuralError("compile: reevaluated bits violate (D3)");
            corr.op = StepOp::correct_pair;
            corr.tag = gamma_in_beta   ? CorrectionCase::gamma_in_both
                       : delta_in_alpha ? CorrectionCase::delta_in_both
                                        : CorrectionCase::disjoint;
            corr.a = slots[0];
            corr.b = slots[1];
            corr.c = gamma;
            corr.d = delta;
        } else {
            if (!(key_coeff(info.key_checks[0]) & 1))
                throw StructuralError("compile: reevaluated bit not constrained by its key check");
            corr.op = StepOp::correct_single;
            corr.a = slots[0];
            corr.c = gamma;
        }
        std::size_t corr_at = s.steps.size();
        s.steps.push_back(std::move(corr));

        if (mode_ == EncodeMode::recompute) {
            for (const TreeStep& ts : tree_steps) {
                if (!dep[ts.target]) continue;
                Step st;
                st.op = StepOp::recompute;
                st.a = ts.target;
                st.list = sources_of(*ts.tree, ts.index);
                s.steps.push_back(std::move(st));
            }
        } else {
            std::vector<std::uint32_t> only_gamma, only_delta, both;
            for (const TreeStep& ts : tree_steps) {
                switch (dep[ts.target]) {
                case 1: only_gamma.push_back(ts.target); break;
                case 2: only_delta.push_back(ts.target); break;
                case 3: both.push_back(ts.target); break;
                default: break;
                }
            }
            auto flip_bit = [&](bit_index cond, std::vector<std::uint32_t>&& targets) {
                if (targets.empty()) return;
                Step st;
                st.op = StepOp::flip_if_bit;
                st.a = cond;
                st.list = std::move(targets);
                s.steps.push_back(std::move(st));
            };
            flip_bit(gamma, std::move(only_gamma));
            if (info.fold == 2) {
                flip_bit(delta, std::move(only_delta));
                if (!both.empty()) {
                    Step st;
                    st.op = StepOp::flip_if_xor;
                    st.a = gamma;
                    st.b = delta;
                    st.list = std::move(both);
                    s.steps.push_back(std::move(st));
                }
            }
        }
        s.steps[corr_at].skip = std::uint32_t(s.steps.size() - corr_at - 1);
    }
};

} // namespace

Schedule compile(const DecompositionPlan& plan, const TannerGraph& g, EncodeMode mode,
                 const CompileOptions& opts) {
    Compiler c(plan, g, mode);
    return c.run(opts);
}

EncodeReport encode(const Schedule& s, const BitWord& info) {
    if (info.size() != s.n_info())
        throw UsageError("encode: got " + std::to_string(info.size()) + " info bits, schedule wants " +
                         std::to_string(s.n_info()));
    std::vector<std::uint8_t> work(s.n_work_bits, 0);
    std::vector<std::uint8_t> slot(s.n_slots, 0);
    for (std::size_t i = 0; i < s.info_positions.size(); ++i)
        work[s.info_positions[i]] = info.get(i);

    EncodeReport rep;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const Step& st = s.steps[i];
        switch (st.op) {
        case StepOp::compute_parity:
        case StepOp::recompute: {
            std::uint8_t v = 0;
            for (std::uint32_t b : st.list) v ^= work[b];
            work[st.a] = v;
            if (!st.list.empty()) rep.xor_count += st.list.size() - 1;
            break;
        }
        case StepOp::eval_check: {
            std::uint8_t v = 0;
            for (std::uint32_t b : st.list) v ^= work[b];
            slot[st.a] = v;
            if (!st.list.empty()) rep.xor_count += st.list.size() - 1;
            break;
        }
        case StepOp::correct_pair: {
            std::uint8_t ca = slot[st.a], cb = slot[st.b];
            if (!ca && !cb) {
                i += st.skip;
                break;
            }
            Correction corr = solve_correction(st.tag, ca, cb);
            if (st.tag != CorrectionCase::disjoint) ++rep.xor_count;
            work[st.c] = std::uint8_t(corr.d_gamma);
            work[st.d] = std::uint8_t(corr.d_delta);
            break;
        }
        case StepOp::correct_single: {
            if (!slot[st.a]) {
                i += st.skip;
                break;
            }
            work[st.c] = 1;
            break;
        }
        case StepOp::flip_if_bit: {
            if (work[st.a]) {
                for (std::uint32_t b : st.list) work[b] ^= 1;
                ++rep.flip_ops;
            }
            break;
        }
        case StepOp::flip_if_xor: {
            ++rep.xor_count;
            if (work[st.a] ^ work[st.b]) {
                for (std::uint32_t b : st.list) work[b] ^= 1;
                ++rep.flip_ops;
            }
            break;
        }
        }
    }

    std::size_t n_out = s.n_out_bits ? s.n_out_bits : s.n_work_bits;
    rep.codeword = BitWord(n_out);
    for (std::size_t b = 0; b < n_out; ++b)
        if (work[b]) rep.codeword.set(b, true);
    return rep;
}

} // namespace ldpcenc
