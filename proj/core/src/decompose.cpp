#include "ldpcenc/decompose.hpp"

#include "ldpcenc/errors.hpp"
#include "ldpcenc/gf2.hpp"

#include <algorithm>
#include <list>
#include <unordered_map>

namespace ldpcenc {

std::pair<TannerGraph, SplitMap> split_high_degree(const TannerGraph& g) {
    SplitMap map;
    map.original_n_bits = g.n_bits();
    map.original_n_checks = g.n_checks();
    map.clones.resize(g.n_bits());

    if (g.max_bit_degree() <= 3) return {g, std::move(map)};

    ParityCheckRows rows = g.to_rows();
    bit_index next_bit = bit_index(g.n_bits());

    for (bit_index b = 0; b < g.n_bits(); ++b) {
        const std::size_t k = g.bit_degree(b);
        if (k <= 3) continue;
        const std::size_t m = k - 2; // chain length
        std::vector<bit_index> chain;
        chain.push_back(b);
        for (std::size_t j = 1; j < m; ++j) {
            chain.push_back(next_bit++);
            map.clone_origin.push_back(b);
        }
        // end clones take two of b's checks, middle clones one each
        auto nbrs = g.bit_neighbors(b);
        auto clone_for = [&](std::size_t ci) {
            if (ci <= 1) return chain.front();
            if (ci >= k - 2) return chain.back();
            return chain[ci - 1];
        };
        for (std::size_t ci = 0; ci < k; ++ci) {
            bit_index target = clone_for(ci);
            if (target == b) continue;
            auto& row = rows.rows[nbrs[ci]];
            *std::find(row.begin(), row.end(), b) = target;
        }
        map.clones[b] = std::move(chain);
    }

    rows.n_bits = next_bit;
    for (bit_index b = 0; b < map.original_n_bits; ++b) {
        const auto& chain = map.clones[b];
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            map.aux_checks.push_back({check_index(rows.rows.size()), chain[j], chain[j + 1]});
            rows.rows.push_back({chain[j], chain[j + 1]});
        }
    }
    return {TannerGraph::from_matrix(rows), std::move(map)};
}

const std::vector<bit_index>* DecompositionPlan::synthesized_support(check_index c) const {
    for (const auto& s : synthesized)
        if (s.id == c) return &s.support;
    return nullptr;
}

std::size_t DecompositionPlan::kept_original_checks(std::size_t n_original) const {
    std::size_t n = 0;
    for (const auto& p : pieces)
        for (check_index c : p.checks)
            if (c < n_original) ++n;
    return n;
}

TannerGraph DecompositionPlan::working_graph(const TannerGraph& input) const {
    if (synthesized.empty() && mid_splits.empty()) {
        if (input.n_bits() != n_bits || input.n_checks() != n_checks)
            throw UsageError("working_graph: plan does not match the graph");
        return input;
    }
    ParityCheckRows rows = input.to_rows();
    std::size_t split_at = 0;
    for (const SynthesizedCheck& s : synthesized) {
        if (s.id != rows.rows.size())
            throw UsageError("working_graph: synthesized check ids are not contiguous");
        std::vector<bit_index> support = s.support;
        std::vector<std::pair<bit_index, bit_index>> aux;
        while (split_at < mid_splits.size() && mid_splits[split_at].synth_check == s.id) {
            const MidSplit& ms = mid_splits[split_at++];
            if (ms.clone != rows.n_bits++)
                throw UsageError("working_graph: mid-split clone ids are not contiguous");
            auto& row = rows.rows[ms.moved_check];
            *std::find(row.begin(), row.end(), ms.origin) = ms.clone;
            *std::find(support.begin(), support.end(), ms.origin) = ms.clone;
            aux.push_back({ms.origin, ms.clone});
        }
        rows.rows.push_back(std::move(support));
        for (auto [origin, clone] : aux) rows.rows.push_back({origin, clone});
    }
    TannerGraph g = TannerGraph::from_matrix(rows);
    if (g.n_bits() != n_bits || g.n_checks() != n_checks)
        throw UsageError("working_graph: plan does not match the graph");
    return g;
}

namespace {

constexpr std::size_t kDenseRankBudget = std::size_t(1) << 25; // bits*checks

// Dense elimination over the mask's live columns with combination tracking.
// Returns one dependent combination of mask checks, or nullopt when the
// restricted rows are independent.
std::optional<std::vector<check_index>> restricted_dependence(const TannerGraph& g,
                                                              const SubgraphMask& mask) {
    std::vector<bit_index> bits;
    for (bit_index b = 0; b < g.n_bits(); ++b)
        if (mask.bit_in[b]) bits.push_back(b);
    std::vector<check_index> checks;
    for (check_index c = 0; c < g.n_checks(); ++c)
        if (mask.check_in[c]) checks.push_back(c);
    if (checks.size() > 4096) return std::nullopt; // out of supported range
    std::vector<std::int32_t> col_of(g.n_bits(), -1);
    for (std::size_t i = 0; i < bits.size(); ++i) col_of[bits[i]] = std::int32_t(i);

    std::vector<BitWord> rows, combo;
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < checks.size(); ++r) {
        BitWord cur(bits.size());
        for (bit_index b : g.check_neighbors(checks[r]))
            if (col_of[b] >= 0) cur.flip(std::size_t(col_of[b]));
        BitWord trace(checks.size());
        trace.set(r, true);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (cur.get(pivots[i])) {
                xor_into(cur, rows[i]);
                xor_into(trace, combo[i]);
            }
        std::size_t pc = bits.size();
        for (std::size_t c = 0; c < bits.size(); ++c)
            if (cur.get(c)) { pc = c; break; }
        if (pc == bits.size()) {
            std::vector<check_index> out;
            for (std::size_t i = 0; i < checks.size(); ++i)
                if (trace.get(i)) out.push_back(checks[i]);
            return out;
        }
        rows.push_back(std::move(cur));
        combo.push_back(std::move(trace));
        pivots.push_back(pc);
    }
    return std::nullopt;
}

struct DriverPiece {
    bool is_tree = true;
    std::vector<bit_index> bits;
    std::vector<check_index> checks;
    std::vector<PseudoTree> trees;
    StoppingSetInfo info;
    bool dead = false;
};

class Driver {
public:
    explicit Driver(const TannerGraph& g)
        : work_(g), bit_piece_(g.n_bits(), -1), reopen_cap_(int(g.n_checks()) + 8) {}

    TannerGraph work_;
    std::vector<DriverPiece> pieces_;
    std::list<std::size_t> order_;
    std::vector<std::int32_t> bit_piece_;
    std::vector<SynthesizedCheck> synth_;
    std::vector<MidSplit> mid_splits_;
    std::vector<check_index> deleted_in_pseudo_;
    int reopen_events_ = 0;
    int reopen_cap_;

    using order_iter = std::list<std::size_t>::iterator;

    void sync(SubgraphMask& m) const {
        m.bit_in.resize(work_.n_bits(), 0);
        m.check_in.resize(work_.n_checks(), 0);
    }

    bool pool_has_checks(const SubgraphMask& pool) const {
        for (char c : pool.check_in)
            if (c) return true;
        return false;
    }

    order_iter finalize_piece(DriverPiece&& piece, SubgraphMask& pool, order_iter pos) {
        std::size_t id = pieces_.size();
        for (bit_index b : piece.bits) {
            bit_piece_[b] = std::int32_t(id);
            pool.bit_in[b] = 0;
        }
        for (check_index c : piece.checks) pool.check_in[c] = 0;
        pieces_.push_back(std::move(piece));
        auto it = order_.insert(pos, id);
        return std::next(it);
    }

    static std::vector<bit_index> mask_bits(const SubgraphMask& m) {
        std::vector<bit_index> v;
        for (bit_index b = 0; b < m.bit_in.size(); ++b)
            if (m.bit_in[b]) v.push_back(b);
        return v;
    }
    static std::vector<check_index> mask_checks(const SubgraphMask& m) {
        std::vector<check_index> v;
        for (check_index c = 0; c < m.check_in.size(); ++c)
            if (m.check_in[c]) v.push_back(c);
        return v;
    }

    order_iter tree_pieces_for(const SubgraphMask& region, SubgraphMask& pool, order_iter pos) {
        for (const SubgraphMask& comp : connected_components(work_, region)) {
            DriverPiece p;
            p.is_tree = true;
            p.bits = mask_bits(comp);
            p.checks = mask_checks(comp);
            p.trees.push_back(build_pseudo_tree(work_, comp));
            pos = finalize_piece(std::move(p), pool, pos);
        }
        return pos;
    }

    // Deletes one check of the dependent combination, synthesizes the row sum
    // into the latest earlier piece it constrains, and reopens that piece.
    order_iter handle_pseudo(const StoppingSetFind& found, const std::vector<check_index>& combo,
                             SubgraphMask& pool, order_iter pos) {
        std::unordered_map<check_index, std::size_t> growth_pos;
        for (std::size_t i = 0; i < found.growth_order.size(); ++i)
            growth_pos[found.growth_order[i]] = i;
        check_index deleted = combo.front();
        std::size_t best = 0;
        for (check_index c : combo) {
            auto it = growth_pos.find(c);
            std::size_t p = it == growth_pos.end() ? 0 : it->second;
            if (p >= best) { best = p; deleted = c; }
        }

        std::vector<char> coef(work_.n_bits(), 0);
        for (check_index c : combo)
            for (bit_index b : work_.check_neighbors(c)) coef[b] ^= 1;
        std::vector<bit_index> support;
        for (bit_index b = 0; b < work_.n_bits(); ++b)
            if (coef[b]) support.push_back(b);

        pool.check_in[deleted] = 0;
        deleted_in_pseudo_.push_back(deleted);

        if (!support.empty()) {
            // latest finalized piece holding any support bit
            std::vector<char> hit(pieces_.size(), 0);
            for (bit_index b : support) {
                if (bit_piece_[b] < 0)
                    throw StructuralError("decompose: synthesized support bit " +
                                          std::to_string(b) + " is not in an earlier piece");
                hit[std::size_t(bit_piece_[b])] = 1;
            }
            order_iter target = order_.end();
            for (auto it = order_.begin(); it != order_.end(); ++it)
                if (hit[*it]) target = it;
            if (target == order_.end())
                throw StructuralError("decompose: no finalized piece for the synthesized check");

            synth_.push_back({check_index(work_.n_checks()), combo, support});
            reopen(target, support);
        }

        SubgraphMask remains = found.mask;
        sync(remains);
        remains.check_in[deleted] = 0;
        sync(pool);
        if (peel(work_, remains).empty())
            pos = tree_pieces_for(remains, pool, pos);
        // otherwise leave the remainder in the pool for the next pass
        return pos;
    }

    // Extend the working graph with the synthesized row, splitting any region
    // bit the new edge would lift past degree 3 (one check and the new edge
    // move to a fresh clone tied back by a degree-2 check), then re-run the
    // piece loop over the reopened region.
    void reopen(order_iter target, std::vector<bit_index> support) {
        if (++reopen_events_ > reopen_cap_)
            throw StructuralError("decompose: regeneration cap of " +
                                  std::to_string(reopen_cap_) + " passes exceeded");
        std::size_t id = *target;
        DriverPiece& t = pieces_[id];
        const check_index synth_id = check_index(work_.n_checks());

        std::vector<char> in_region(work_.n_bits(), 0);
        for (bit_index b : t.bits) in_region[b] = 1;
        std::vector<char> in_region_checks(work_.n_checks(), 0);
        for (check_index c : t.checks) in_region_checks[c] = 1;

        ParityCheckRows rows = work_.to_rows();
        std::vector<std::pair<bit_index, bit_index>> new_aux; // (origin, clone)
        for (bit_index& b : support) {
            if (!in_region[b]) continue;
            std::vector<check_index> carried;
            for (check_index c : work_.bit_neighbors(b))
                if (in_region_checks[c]) carried.push_back(c);
            if (carried.size() < 3) continue;
            // all three sit in this region (a fourth elsewhere would already
            // break the degree invariant), so the rewiring stays local
            bit_index clone = bit_index(rows.n_bits++);
            check_index moved = carried.front();
            auto& row = rows.rows[moved];
            *std::find(row.begin(), row.end(), b) = clone;
            check_index aux_id = check_index(rows.rows.size() + 1 + new_aux.size());
            mid_splits_.push_back({b, clone, moved, aux_id, synth_id});
            new_aux.push_back({b, clone});
            b = clone; // the synthesized edge follows the clone
        }
        rows.rows.push_back(support); // synth_id
        for (auto [origin, clone] : new_aux) rows.rows.push_back({origin, clone});
        work_ = TannerGraph::from_matrix(rows);
        bit_piece_.resize(work_.n_bits(), -1);

        SubgraphMask pool_t(work_.n_bits(), work_.n_checks());
        for (bit_index b : t.bits) {
            pool_t.bit_in[b] = 1;
            bit_piece_[b] = -1;
        }
        for (check_index c : t.checks) pool_t.check_in[c] = 1;
        pool_t.check_in[synth_id] = 1;
        for (std::size_t i = 0; i < new_aux.size(); ++i) {
            pool_t.bit_in[new_aux[i].second] = 1;
            pool_t.check_in[synth_id + 1 + i] = 1;
        }
        t.dead = true;
        auto pos = order_.erase(target);
        run_pool(std::move(pool_t), pos);
    }

    void run_pool(SubgraphMask pool, order_iter pos) {
        while (true) {
            sync(pool);
            if (!pool_has_checks(pool)) break;
            auto found = find_stopping_set(work_, pool, /*validate=*/false);
            if (!found) break;

            if (found->kind == StoppingSetKind::pseudo) {
                pos = handle_pseudo(*found, found->dependence, pool, pos);
                continue;
            }

            StoppingSetInfo info;
            try {
                info = classify_fold(work_, *found);
            } catch (const StructuralError&) {
                // Safety net for a hidden partial dependence the fast path
                // missed; repaired like any pseudo set.
                auto dep = restricted_dependence(work_, found->mask);
                if (!dep) throw;
                pos = handle_pseudo(*found, *dep, pool, pos);
                continue;
            }
            SubgraphMask region = info.mask;
            for (check_index k : info.key_checks) region.check_in[k] = 0;

            std::vector<ReducedForm> forms;
            for (check_index k : info.key_checks)
                forms.push_back(reduce_over_trees(work_, info.residual_trees, region,
                                                  work_.check_neighbors(k)));

            std::vector<check_index> combo; // dependent combination on failure
            if (info.fold == 2) {
                auto sel = try_find_reevaluated_bits({forms[0].info_support, forms[1].info_support});
                if (sel) {
                    info.reevaluated_bits = {sel->first, sel->second};
                } else if (forms[0].info_support.empty()) {
                    combo = forms[0].applied;
                    combo.push_back(info.key_checks[0]);
                } else if (forms[1].info_support.empty()) {
                    combo = forms[1].applied;
                    combo.push_back(info.key_checks[1]);
                } else {
                    // identical reduced supports
                    std::set_symmetric_difference(forms[0].applied.begin(), forms[0].applied.end(),
                                                  forms[1].applied.begin(), forms[1].applied.end(),
                                                  std::back_inserter(combo));
                    combo.push_back(info.key_checks[0]);
                    combo.push_back(info.key_checks[1]);
                }
            } else {
                if (forms[0].info_support.empty()) {
                    combo = forms[0].applied;
                    combo.push_back(info.key_checks[0]);
                } else {
                    info.reevaluated_bits = {forms[0].info_support.front()};
                }
            }

            if (!combo.empty()) {
                // the "genuine" set was dependent after all: repair as pseudo
                std::sort(combo.begin(), combo.end());
                pos = handle_pseudo(*found, combo, pool, pos);
                continue;
            }

            DriverPiece p;
            p.is_tree = false;
            p.bits = mask_bits(info.mask);
            p.checks = mask_checks(info.mask);
            p.trees = info.residual_trees;
            p.info = std::move(info);
            pos = finalize_piece(std::move(p), pool, pos);
        }
        // no stopping sets remain: the leftover is a union of pseudo-trees
        if (!pool.empty()) tree_pieces_for(pool, pool, pos);
    }
};

DecompositionPlan assemble(Driver& d, std::vector<check_index> dropped) {
    DecompositionPlan plan;
    plan.n_bits = d.work_.n_bits();
    plan.n_checks = d.work_.n_checks();
    plan.dropped_redundant = std::move(dropped);
    plan.deleted_in_pseudo = std::move(d.deleted_in_pseudo_);
    plan.synthesized = std::move(d.synth_);
    plan.mid_splits = std::move(d.mid_splits_);

    std::vector<char> parity(d.work_.n_bits(), 0), seen(d.work_.n_bits(), 0);
    for (std::size_t id : d.order_) {
        DriverPiece& dp = d.pieces_[id];
        PlanPiece p;
        p.kind = dp.is_tree ? PlanPiece::Kind::pseudo_tree : PlanPiece::Kind::stopping_set;
        p.bits = std::move(dp.bits);
        p.checks = std::move(dp.checks);
        p.trees = std::move(dp.trees);
        p.info = std::move(dp.info);
        for (const PseudoTree& t : p.trees)
            for (bit_index b : t.parents) parity[b] = 1;
        for (bit_index b : p.info.reevaluated_bits) parity[b] = 1;
        for (bit_index b : p.bits) {
            if (seen[b])
                throw StructuralError("decompose: bit " + std::to_string(b) +
                                      " assigned to two pieces");
            seen[b] = 1;
        }
        plan.pieces.push_back(std::move(p));
    }
    for (bit_index b = 0; b < d.work_.n_bits(); ++b) {
        if (!seen[b])
            throw StructuralError("decompose: bit " + std::to_string(b) + " not covered");
        (parity[b] ? plan.parity_bits : plan.info_bits).push_back(b);
    }
    return plan;
}

} // namespace

DecompositionPlan decompose(const TannerGraph& g) {
    if (g.max_bit_degree() > 3)
        throw UsageError("decompose: max bit degree " + std::to_string(g.max_bit_degree()) +
                         " exceeds 3; split the graph first");

    Driver driver(g);
    std::vector<check_index> dropped;
    SubgraphMask pool = SubgraphMask::full(g);

    if (g.n_checks() > 0 && g.n_bits() * g.n_checks() <= kDenseRankBudget) {
        DenseGf2Matrix h = DenseGf2Matrix::from_rows(g.n_bits(), g.to_rows().rows);
        std::vector<char> keep(g.n_checks(), 0);
        for (std::size_t r : independent_row_set(h)) keep[r] = 1;
        for (check_index c = 0; c < g.n_checks(); ++c)
            if (!keep[c]) {
                dropped.push_back(c);
                pool.check_in[c] = 0;
            }
    }
    // Larger graphs skip the up-front reduction; dependent rows surface as
    // pseudo encoding stopping sets and are repaired there.

    for (const SubgraphMask& comp : connected_components(g, pool))
        driver.run_pool(comp, driver.order_.end());
    return assemble(driver, std::move(dropped));
}

DecompositionPlan plan_from_pieces(const TannerGraph& g, const std::vector<PiecePin>& pins) {
    Driver driver(g);
    SubgraphMask pool = SubgraphMask::full(g);
    auto pos = driver.order_.end();

    for (const PiecePin& pin : pins) {
        SubgraphMask mask(g.n_bits(), g.n_checks());
        for (check_index c : pin.checks) {
            if (c >= g.n_checks() || !pool.check_in[c])
                throw UsageError("plan_from_pieces: check " + std::to_string(c) +
                                 " unavailable for a piece");
            mask.check_in[c] = 1;
            for (bit_index b : g.check_neighbors(c))
                if (pool.bit_in[b]) mask.bit_in[b] = 1;
        }
        if (connected_components(g, mask).size() != 1)
            throw StructuralError("plan_from_pieces: piece is not connected");

        DriverPiece p;
        p.bits = Driver::mask_bits(mask);
        p.checks = Driver::mask_checks(mask);

        if (pin.key_checks.empty()) {
            p.is_tree = true;
            p.trees.push_back(build_pseudo_tree(g, mask,
                                                pin.pinned_parents.empty() ? nullptr
                                                                           : &pin.pinned_parents));
        } else {
            if (pin.key_checks.size() > 2 || pin.key_checks.size() != pin.reevaluated_bits.size())
                throw UsageError("plan_from_pieces: bad key/reevaluated pinning");
            for (bit_index b : p.bits) {
                std::size_t d = 0;
                for (check_index c : g.bit_neighbors(b))
                    if (mask.check_in[c]) ++d;
                if (d < 2)
                    throw StructuralError("plan_from_pieces: bit " + std::to_string(b) +
                                          " has in-piece degree below 2");
            }
            StoppingSetInfo info;
            info.mask = mask;
            info.fold = int(pin.key_checks.size());
            info.key_checks = pin.key_checks;
            info.reevaluated_bits = pin.reevaluated_bits;

            SubgraphMask region = mask;
            for (check_index k : pin.key_checks) {
                if (!mask.check_in[k])
                    throw UsageError("plan_from_pieces: key check not inside the piece");
                region.check_in[k] = 0;
            }
            if (!peel(g, region).empty())
                throw StructuralError("plan_from_pieces: piece minus key checks does not peel clean");
            for (const SubgraphMask& comp : connected_components(g, region))
                info.residual_trees.push_back(build_pseudo_tree(
                    g, comp, pin.pinned_parents.empty() ? nullptr : &pin.pinned_parents));

            // (D1)-(D3) on the reduced key equations
            std::vector<ReducedForm> forms;
            for (check_index k : info.key_checks)
                forms.push_back(
                    reduce_over_trees(g, info.residual_trees, region, g.check_neighbors(k)));
            auto in_support = [&](std::size_t fi, bit_index b) {
                const auto& s = forms[fi].info_support;
                return std::binary_search(s.begin(), s.end(), b);
            };
            for (std::size_t i = 0; i < info.key_checks.size(); ++i)
                if (!in_support(i, info.reevaluated_bits[i]))
                    throw StructuralError("plan_from_pieces: reevaluated bit " +
                                          std::to_string(info.reevaluated_bits[i]) +
                                          " is not constrained by its key check");
            if (info.fold == 2 && in_support(1, info.reevaluated_bits[0]) &&
                in_support(0, info.reevaluated_bits[1]))
                throw StructuralError("plan_from_pieces: reevaluated bits violate (D3)");

            p.is_tree = false;
            p.trees = info.residual_trees;
            p.info = std::move(info);
        }
        pos = driver.finalize_piece(std::move(p), pool, pos);
    }

    for (check_index c = 0; c < g.n_checks(); ++c)
        if (pool.check_in[c])
            throw UsageError("plan_from_pieces: check " + std::to_string(c) +
                             " not covered by any piece");
    // leftover bits are check-free: degenerate single-bit trees
    if (!pool.empty()) {
        SubgraphMask rest = pool;
        driver.tree_pieces_for(rest, pool, pos);
    }
    return assemble(driver, {});
}

} // namespace ldpcenc
