#include "ldpcenc/structures.hpp"

#include "ldpcenc/errors.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace ldpcenc {

namespace {

std::string node_str(const char* kind, std::uint32_t id) {
    return std::string(kind) + " " + std::to_string(id);
}

} // namespace

SubgraphMask peel(const TannerGraph& g, const SubgraphMask& s) {
    SubgraphMask r = s;
    std::vector<std::uint32_t> deg(g.n_bits(), 0);
    std::vector<bit_index> queue;
    for (bit_index b = 0; b < g.n_bits(); ++b) {
        if (!r.bit_in[b]) continue;
        std::uint32_t d = 0;
        for (check_index c : g.bit_neighbors(b))
            if (r.check_in[c]) ++d;
        deg[b] = d;
        if (d <= 1) queue.push_back(b);
    }
    while (!queue.empty()) {
        bit_index b = queue.back();
        queue.pop_back();
        if (!r.bit_in[b]) continue;
        r.bit_in[b] = 0;
        if (deg[b] == 0) continue;
        // remove the single remaining check together with the bit
        check_index victim = 0;
        bool found = false;
        for (check_index c : g.bit_neighbors(b))
            if (r.check_in[c]) { victim = c; found = true; break; }
        if (!found) continue;
        r.check_in[victim] = 0;
        for (bit_index nb : g.check_neighbors(victim)) {
            if (!r.bit_in[nb]) continue;
            if (--deg[nb] <= 1) queue.push_back(nb);
        }
    }
    return r;
}

std::optional<StoppingSetFind> find_stopping_set(const TannerGraph& g, const SubgraphMask& pool,
                                                 bool validate) {
    const std::size_t nb = g.n_bits(), nc = g.n_checks();
    if (pool.bit_in.size() != nb || pool.check_in.size() != nc)
        throw UsageError("find_stopping_set: pool mask size mismatch");
    if (validate) {
        for (bit_index b = 0; b < nb; ++b) {
            if (!pool.bit_in[b]) continue;
            std::uint32_t d = 0;
            for (check_index c : g.bit_neighbors(b))
                if (pool.check_in[c]) ++d;
            if (d > 3)
                throw UsageError("find_stopping_set: in-pool bit degree " + std::to_string(d) +
                                 " at bit " + std::to_string(b) + " exceeds 3");
        }
    }

    std::vector<std::uint32_t> live_deg(nc, 0);
    bool any_check = false;
    for (check_index c = 0; c < nc; ++c) {
        if (!pool.check_in[c]) continue;
        any_check = true;
        std::uint32_t d = 0;
        for (bit_index b : g.check_neighbors(c))
            if (pool.bit_in[b]) ++d;
        live_deg[c] = d;
    }
    if (!any_check) return std::nullopt;

    SubgraphMask s(nb, nc);
    std::vector<std::uint32_t> in_s_count(nc, 0);
    // (outsiders, check id), lazily invalidated
    using entry = std::pair<std::uint32_t, check_index>;
    std::priority_queue<entry, std::vector<entry>, std::greater<entry>> pq;
    for (check_index c = 0; c < nc; ++c)
        if (pool.check_in[c]) pq.emplace(live_deg[c], c);

    std::vector<check_index> order;
    std::vector<check_index> pending; // zero-outsider run since the last new bit
    std::vector<bit_index> newbits;

    while (!pq.empty()) {
        auto [o, c] = pq.top();
        pq.pop();
        if (!pool.check_in[c] || s.check_in[c]) continue;
        if (live_deg[c] - in_s_count[c] != o) continue; // stale
        s.check_in[c] = 1;
        order.push_back(c);

        newbits.clear();
        for (bit_index b : g.check_neighbors(c))
            if (pool.bit_in[b] && !s.bit_in[b]) newbits.push_back(b);

        if (!newbits.empty()) {
            pending.clear();
            for (bit_index b : newbits) {
                s.bit_in[b] = 1;
                for (check_index c2 : g.bit_neighbors(b)) {
                    if (!pool.check_in[c2] || s.check_in[c2]) continue;
                    ++in_s_count[c2];
                    pq.emplace(live_deg[c2] - in_s_count[c2], c2);
                }
            }
            continue;
        }

        pending.push_back(c);
        SubgraphMask residue = peel(g, s);
        if (residue.empty()) continue;

        // absorb every remaining zero-outsider pool check before classifying
        for (check_index c2 = 0; c2 < nc; ++c2) {
            if (!pool.check_in[c2] || s.check_in[c2]) continue;
            if (in_s_count[c2] == live_deg[c2]) {
                s.check_in[c2] = 1;
                order.push_back(c2);
                pending.push_back(c2);
            }
        }
        residue = peel(g, s);

        // restrict to the trigger's connected component
        auto comps = connected_components(g, residue);
        const SubgraphMask* comp = nullptr;
        for (const auto& cm : comps)
            if (cm.check_in[c]) { comp = &cm; break; }
        if (!comp)
            throw StructuralError("find_stopping_set: trigger check peeled out of its own residue");

        StoppingSetFind out;
        out.mask = *comp;
        out.growth_order = std::move(order);
        for (check_index k : pending)
            if (out.mask.check_in[k]) out.trailing_keys.push_back(k);

        // Dependence fast path: if the in-pool parts of all residue rows sum
        // to zero, the set is a pseudo encoding stopping set outright.
        {
            std::vector<std::uint32_t> parity(nb, 0);
            std::vector<check_index> members;
            for (check_index cc = 0; cc < nc; ++cc)
                if (out.mask.check_in[cc]) members.push_back(cc);
            bool zero = true;
            for (check_index cc : members)
                for (bit_index b : g.check_neighbors(cc))
                    if (pool.bit_in[b]) parity[b] ^= 1;
            for (bit_index b = 0; b < nb; ++b)
                if (parity[b]) { zero = false; break; }
            if (zero) {
                out.kind = StoppingSetKind::pseudo;
                out.dependence = std::move(members);
                return out;
            }
        }
        out.kind = StoppingSetKind::genuine;
        return out;
    }
    return std::nullopt;
}

StoppingSetInfo classify_fold(const TannerGraph& g, const StoppingSetFind& found) {
    if (found.kind != StoppingSetKind::genuine)
        throw UsageError("classify_fold: expected a genuine encoding stopping set");
    std::vector<check_index> keys = found.trailing_keys;
    if (keys.empty())
        throw StructuralError("classify_fold: stopping set has no trailing key checks");

    auto minus_checks = [&](const std::vector<check_index>& drop) {
        SubgraphMask m = found.mask;
        for (check_index c : drop) m.check_in[c] = 0;
        return m;
    };
    auto clears = [&](const std::vector<check_index>& drop) {
        return peel(g, minus_checks(drop)).empty();
    };

    if (keys.size() == 2) {
        // retry with only the final check removed to detect a 1-fold set
        if (clears({keys.back()})) keys = {keys.back()};
    } else if (keys.size() > 2) {
        // Only reachable when a synthesized check lifted some bit past degree
        // 3, voiding the two-key guarantee of the growth. Any one- or two-key
        // subset whose removal peels clean still yields a valid piece; prefer
        // later keys.
        if (keys.size() > 4)
            throw StructuralError("classify_fold: " + std::to_string(keys.size()) +
                                  " trailing key checks");
        std::vector<check_index> chosen;
        for (std::size_t i = keys.size(); i-- > 0 && chosen.empty();)
            if (clears({keys[i]})) chosen = {keys[i]};
        for (std::size_t j = keys.size(); j-- > 0 && chosen.empty();)
            for (std::size_t i = j; i-- > 0 && chosen.empty();)
                if (clears({keys[i], keys[j]})) chosen = {keys[i], keys[j]};
        if (chosen.empty())
            throw StructuralError("classify_fold: stopping set needs more than two key checks");
        keys = std::move(chosen);
    }

    SubgraphMask residual = minus_checks(keys);
    if (!peel(g, residual).empty())
        throw StructuralError("classify_fold: set minus key checks still contains a stopping set");

    StoppingSetInfo info;
    info.mask = found.mask;
    info.fold = int(keys.size());
    info.key_checks = std::move(keys);
    for (const SubgraphMask& comp : connected_components(g, residual))
        info.residual_trees.push_back(build_pseudo_tree(g, comp));
    return info;
}

ReducedForm reduce_over_trees(const TannerGraph& g, const std::vector<PseudoTree>& trees,
                              const SubgraphMask& region, std::span<const bit_index> adjacency) {
    std::vector<char> coef(g.n_bits(), 0), seen(g.n_bits(), 0);
    std::vector<bit_index> touched;
    auto toggle = [&](bit_index b) {
        if (!seen[b]) {
            seen[b] = 1;
            touched.push_back(b);
        }
        coef[b] ^= 1;
    };
    for (bit_index b : adjacency) toggle(b);

    std::vector<char> is_parent(g.n_bits(), 0);
    for (const PseudoTree& t : trees)
        for (bit_index p : t.parents) is_parent[p] = 1;

    ReducedForm out;
    // Substitute parents in reverse solving order; a check's sources sit in
    // deeper tiers, so they are handled by later sweep positions.
    for (auto t = trees.rbegin(); t != trees.rend(); ++t) {
        for (std::size_t i = t->checks.size(); i-- > 0;) {
            check_index c = t->checks[i];
            bit_index parent = t->parents[i];
            if (!coef[parent]) continue;
            coef[parent] = 0;
            out.applied.push_back(c);
            for (bit_index b : g.check_neighbors(c))
                if (b != parent) toggle(b);
        }
    }
    for (bit_index b : touched) {
        if (!coef[b]) continue;
        if (region.bit_in[b]) {
            if (is_parent[b])
                throw StructuralError("reduce_over_trees: unsubstituted parent bit " +
                                      std::to_string(b));
            out.info_support.push_back(b);
        } else {
            out.rhs_support.push_back(b);
        }
    }
    std::sort(out.info_support.begin(), out.info_support.end());
    std::sort(out.rhs_support.begin(), out.rhs_support.end());
    std::sort(out.applied.begin(), out.applied.end());
    return out;
}

std::optional<std::pair<bit_index, bit_index>> try_find_reevaluated_bits(
    const std::vector<std::vector<bit_index>>& info_bit_sets) {
    if (info_bit_sets.size() != 2)
        throw UsageError("try_find_reevaluated_bits: expected exactly two key supports");
    const auto& sa = info_bit_sets[0];
    const auto& sb = info_bit_sets[1];
    if (sa.empty() || sb.empty()) return std::nullopt;
    auto contains = [](const std::vector<bit_index>& v, bit_index b) {
        return std::binary_search(v.begin(), v.end(), b);
    };
    for (bit_index a : sa)
        if (!contains(sb, a)) return std::make_pair(a, sb.back());
    // every bit of the first support also constrains the second key
    for (bit_index b : sb)
        if (!contains(sa, b)) return std::make_pair(sa.back(), b);
    return std::nullopt; // identical supports: keys are dependent
}

std::pair<bit_index, bit_index> find_reevaluated_bits(
    const StoppingSetInfo& info, const std::vector<std::vector<bit_index>>& info_bit_sets) {
    if (info.fold != 2)
        throw UsageError("find_reevaluated_bits: selection applies to 2-fold sets");
    auto r = try_find_reevaluated_bits(info_bit_sets);
    if (!r)
        throw StructuralError("find_reevaluated_bits: no bit pair satisfies (D1)-(D3); "
                              "key checks are not independent of the set");
    return *r;
}

PseudoTree build_pseudo_tree(const TannerGraph& g, const SubgraphMask& region,
                             const std::vector<std::pair<check_index, bit_index>>* pinned_parents) {
    const std::size_t nb = g.n_bits(), nc = g.n_checks();
    std::vector<char> bit_left(nb, 0), check_left(nc, 0);
    std::vector<std::uint32_t> deg(nb, 0);
    std::size_t bits_left = 0, checks_left = 0;
    for (bit_index b = 0; b < nb; ++b)
        if (region.bit_in[b]) { bit_left[b] = 1; ++bits_left; }
    for (check_index c = 0; c < nc; ++c)
        if (region.check_in[c]) { check_left[c] = 1; ++checks_left; }
    for (bit_index b = 0; b < nb; ++b) {
        if (!bit_left[b]) continue;
        for (check_index c : g.bit_neighbors(b))
            if (check_left[c]) ++deg[b];
    }

    PseudoTree t;
    std::vector<std::int32_t> bit_tier_of(nb, -1);
    while (bits_left || checks_left) {
        std::vector<bit_index> bit_tier;
        for (bit_index b = 0; b < nb; ++b)
            if (bit_left[b] && deg[b] <= 1) bit_tier.push_back(b);
        if (bit_tier.empty())
            throw StructuralError("build_pseudo_tree: region contains an encoding stopping set");
        std::vector<check_index> check_tier;
        for (bit_index b : bit_tier) {
            bit_left[b] = 0;
            --bits_left;
            bit_tier_of[b] = std::int32_t(t.tiers.size());
            for (check_index c : g.bit_neighbors(b))
                if (check_left[c]) check_tier.push_back(c);
        }
        std::sort(check_tier.begin(), check_tier.end());
        check_tier.erase(std::unique(check_tier.begin(), check_tier.end()), check_tier.end());
        t.tiers.push_back(std::move(bit_tier));
        if (check_tier.empty()) {
            if (checks_left)
                throw StructuralError("build_pseudo_tree: region contains an encoding stopping set");
            break;
        }
        for (check_index c : check_tier) {
            check_left[c] = 0;
            --checks_left;
            for (bit_index b : g.check_neighbors(c))
                if (bit_left[b]) --deg[b];
        }
        t.tiers.push_back(std::move(check_tier));
    }

    // Parent selection and the drag step: each check keeps exactly one bit in
    // the tier immediately above, the other upper-tier bits move two tiers
    // down.
    std::vector<std::int32_t> pinned(nc, -1);
    if (pinned_parents)
        for (auto [c, b] : *pinned_parents) pinned[c] = std::int32_t(b);
    std::vector<std::int32_t> parent_of(nc, -1);
    for (std::size_t ti = 1; ti < t.tiers.size(); ti += 2) {
        for (check_index c : t.tiers[ti]) {
            std::vector<bit_index> uppers;
            for (bit_index b : g.check_neighbors(c)) {
                if (!region.bit_in[b]) continue;
                if (bit_tier_of[b] == std::int32_t(ti) - 1) uppers.push_back(b);
            }
            if (uppers.empty())
                throw StructuralError("build_pseudo_tree: check " + std::to_string(c) +
                                      " has no bit in its upper tier");
            bit_index keep = uppers.front();
            if (pinned[c] >= 0) {
                bit_index want = bit_index(pinned[c]);
                if (std::find(uppers.begin(), uppers.end(), want) == uppers.end())
                    throw StructuralError("build_pseudo_tree: pinned parent " + std::to_string(want) +
                                          " is not an upper-tier neighbor of check " +
                                          std::to_string(c));
                keep = want;
            }
            parent_of[c] = std::int32_t(keep);
            if (uppers.size() == 1) continue;
            if (ti + 1 >= t.tiers.size()) t.tiers.emplace_back();
            auto& above = t.tiers[ti - 1];
            auto& below = t.tiers[ti + 1];
            for (bit_index b : uppers) {
                if (b == keep) continue;
                above.erase(std::find(above.begin(), above.end(), b));
                below.push_back(b);
                bit_tier_of[b] = std::int32_t(ti) + 1;
            }
        }
        if (ti + 1 < t.tiers.size()) {
            auto& below = t.tiers[ti + 1];
            std::sort(below.begin(), below.end());
        }
    }

    if (t.tiers.size() == 1) {
        validate_pseudo_tree(g, region, t);
        return t; // degenerate: bits only
    }
    if (t.tiers.size() % 2 == 0) t.tiers.emplace_back(); // end on a bit tier

    // bottom-up solving order
    for (std::size_t ti = t.tiers.size() - 1; ti-- > 0;) {
        if (ti % 2 == 0) continue;
        for (check_index c : t.tiers[ti]) {
            t.checks.push_back(c);
            t.parents.push_back(bit_index(parent_of[c]));
        }
    }
    validate_pseudo_tree(g, region, t);
    return t;
}

void validate_pseudo_tree(const TannerGraph& g, const SubgraphMask& region, const PseudoTree& t) {
    const std::size_t nb = g.n_bits(), nc = g.n_checks();
    if (t.tiers.empty()) throw StructuralError("pseudo-tree: no tiers");

    std::vector<std::int32_t> tier_of_bit(nb, -1), tier_of_check(nc, -1);
    for (std::size_t ti = 0; ti < t.tiers.size(); ++ti) {
        bool is_bit_tier = ti % 2 == 0;
        if (t.tiers[ti].empty() && !(is_bit_tier && ti == t.tiers.size() - 1))
            throw StructuralError("pseudo-tree: empty tier " + std::to_string(ti));
        for (std::uint32_t id : t.tiers[ti]) {
            if (is_bit_tier) {
                if (id >= nb || !region.bit_in[id] || tier_of_bit[id] >= 0)
                    throw StructuralError("pseudo-tree: bad placement of " + node_str("bit", id));
                tier_of_bit[id] = std::int32_t(ti);
            } else {
                if (id >= nc || !region.check_in[id] || tier_of_check[id] >= 0)
                    throw StructuralError("pseudo-tree: bad placement of " + node_str("check", id));
                tier_of_check[id] = std::int32_t(ti);
            }
        }
    }
    for (bit_index b = 0; b < nb; ++b)
        if (region.bit_in[b] && tier_of_bit[b] < 0)
            throw StructuralError("pseudo-tree: " + node_str("bit", b) + " missing from tiers");
    for (check_index c = 0; c < nc; ++c)
        if (region.check_in[c] && tier_of_check[c] < 0)
            throw StructuralError("pseudo-tree: " + node_str("check", c) + " missing from tiers");

    std::size_t region_checks = 0;
    for (check_index c = 0; c < nc; ++c)
        if (region.check_in[c]) ++region_checks;

    if (t.tiers.size() == 1) {
        // degenerate check-free region
        for (bit_index b : t.tiers[0])
            for (check_index c : g.bit_neighbors(b))
                if (region.check_in[c])
                    throw StructuralError("pseudo-tree: single-tier region has checks");
        if (region_checks || !t.checks.empty())
            throw StructuralError("pseudo-tree: single-tier region has checks");
        return;
    }
    if (t.tiers.size() % 2 == 0)
        throw StructuralError("pseudo-tree: even tier count");

    // (A2) first-tier bits have region degree one, neighbor in tier 1
    for (bit_index b : t.tiers[0]) {
        std::size_t d = 0;
        for (check_index c : g.bit_neighbors(b)) {
            if (!region.check_in[c]) continue;
            ++d;
            if (tier_of_check[c] != 1)
                throw StructuralError("pseudo-tree: (A2) " + node_str("bit", b) +
                                      " connects outside tier 2");
        }
        if (d != 1)
            throw StructuralError("pseudo-tree: (A2) " + node_str("bit", b) + " has degree " +
                                  std::to_string(d));
    }

    // (A3) each check: exactly one upper neighbor, in the immediate upper tier
    std::vector<char> parent_used(nb, 0);
    for (check_index c = 0; c < nc; ++c) {
        if (!region.check_in[c]) continue;
        std::int32_t ct = tier_of_check[c];
        std::size_t uppers = 0;
        bit_index parent = 0;
        for (bit_index b : g.check_neighbors(c)) {
            if (!region.bit_in[b]) continue;
            if (tier_of_bit[b] < ct) {
                ++uppers;
                parent = b;
                if (tier_of_bit[b] != ct - 1)
                    throw StructuralError("pseudo-tree: (A3) " + node_str("check", c) +
                                          " has a non-immediate upper neighbor");
            }
        }
        if (uppers != 1)
            throw StructuralError("pseudo-tree: (A3) " + node_str("check", c) + " has " +
                                  std::to_string(uppers) + " upper neighbors");
        if (parent_used[parent])
            throw StructuralError("pseudo-tree: parent " + node_str("bit", parent) + " shared");
        parent_used[parent] = 1;
    }

    // (A4) bits below tier 1: at most one lower check, in the immediate lower tier
    for (bit_index b = 0; b < nb; ++b) {
        if (!region.bit_in[b] || tier_of_bit[b] <= 0) continue;
        std::int32_t bt = tier_of_bit[b];
        std::size_t lowers = 0;
        for (check_index c : g.bit_neighbors(b)) {
            if (!region.check_in[c]) continue;
            if (tier_of_check[c] > bt) {
                ++lowers;
                if (tier_of_check[c] != bt + 1)
                    throw StructuralError("pseudo-tree: (A4) " + node_str("bit", b) +
                                          " has a non-immediate lower check");
            }
        }
        if (lowers > 1)
            throw StructuralError("pseudo-tree: (A4) " + node_str("bit", b) + " has " +
                                  std::to_string(lowers) + " lower checks");
    }

    // solving order covers every check once, parents consistent
    if (t.checks.size() != region_checks || t.parents.size() != t.checks.size())
        throw StructuralError("pseudo-tree: solving order does not cover the checks");
    std::vector<char> seen(nc, 0);
    for (std::size_t i = 0; i < t.checks.size(); ++i) {
        check_index c = t.checks[i];
        if (seen[c]) throw StructuralError("pseudo-tree: duplicate check in solving order");
        seen[c] = 1;
        bit_index p = t.parents[i];
        if (tier_of_bit[p] != tier_of_check[c] - 1)
            throw StructuralError("pseudo-tree: recorded parent not in the upper tier");
        bool adjacent = false;
        for (bit_index b : g.check_neighbors(c))
            if (b == p) { adjacent = true; break; }
        if (!adjacent)
            throw StructuralError("pseudo-tree: recorded parent not adjacent to its check");
    }
    // order must be bottom-up: a check's non-parent region bits may not be
    // parents of later checks
    std::vector<std::int32_t> solve_pos(nb, -1);
    for (std::size_t i = 0; i < t.checks.size(); ++i) solve_pos[t.parents[i]] = std::int32_t(i);
    for (std::size_t i = 0; i < t.checks.size(); ++i)
        for (bit_index b : g.check_neighbors(t.checks[i])) {
            if (b == t.parents[i]) continue;
            if (region.bit_in[b] && solve_pos[b] > std::int32_t(i))
                throw StructuralError("pseudo-tree: solving order uses an undetermined parity");
        }
}

} // namespace ldpcenc
