#include "ldpcenc/pipeline.hpp"

#include "ldpcenc/schedule_io.hpp"

namespace ldpcenc {

PreprocessResult preprocess_code(const ParityCheckRows& h, EncodeMode mode) {
    PreprocessResult r;
    TannerGraph original = TannerGraph::from_matrix(h);
    auto [split_graph, split_map] = split_high_degree(original);
    r.graph = std::move(split_graph);
    r.split = std::move(split_map);
    r.plan = decompose(r.graph);

    // Encoding bound against the original code: 2*(sum k - M) over the kept
    // original checks, doubled again when degree reduction was applied.
    // Synthesized checks and mid-split repairs run extra steps on top of the
    // original rows, so their worst-case cost is added explicitly.
    TannerGraph work = r.plan.working_graph(r.graph);
    const std::size_t n_orig = r.split.original_n_checks;
    std::uint64_t sum_k = 0, kept = 0, extra = 0;
    for (const PlanPiece& p : r.plan.pieces)
        for (check_index c : p.checks) {
            if (c < n_orig) {
                sum_k += work.check_degree(c); // split preserves check degrees
                ++kept;
            } else if (c >= r.graph.n_checks()) {
                extra += 2 * std::uint64_t(work.check_degree(c) - 1);
            }
        }
    const std::uint64_t factor = r.split.identity() ? 2 : 4;

    // clone origins: set-up splits first, then mid-decomposition repairs
    std::vector<bit_index> origin = r.split.clone_origin;
    for (const MidSplit& ms : r.plan.mid_splits) {
        bit_index o = ms.origin;
        while (o >= r.split.original_n_bits) o = origin[o - r.split.original_n_bits];
        origin.push_back(o);
    }

    CompileOptions opts;
    opts.n_out_bits = r.split.original_n_bits;
    opts.clone_origin = std::move(origin);
    opts.xor_budget = factor * (sum_k - kept) + extra;
    opts.graph_digest = matrix_digest(h);
    r.schedule = compile(r.plan, r.graph, mode, opts);
    return r;
}

} // namespace ldpcenc
