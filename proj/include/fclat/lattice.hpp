#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fclat/bitset.hpp"
#include "fclat/context.hpp"
#include "fclat/errors.hpp"
#include "fclat/parallel.hpp"

namespace fclat {

struct Concept {
    Bitset extent;
    Bitset intent;
};

struct BuildOptions {
    enum class Algorithm { automatic, next_closure, close_by_one };
    Algorithm algorithm = Algorithm::automatic;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::size_t memory_budget = std::size_t{2} << 30;
    /// Order matrices are only materialized up to this element count.
    std::size_t order_matrix_limit = 50000;
};

inline bool lectic_intent_less(const Concept& a, const Concept& b) {
    return Bitset::lectic_less(a.intent, b.intent);
}

// ---------------------------------------------------------------------------
// Concept enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t concept_bytes(const FormalContext& ctx) {
    return 8 * ((ctx.object_count() + 63) / 64 + (ctx.attribute_count() + 63) / 64) + 64;
}

/// Canonical lectic-order enumeration (NextClosure over intents).
inline std::vector<Concept> next_closure_enumerate(const FormalContext& ctx,
                                                   const BuildOptions& opts) {
    std::size_t ms = ctx.attribute_count();
    std::size_t cap = std::max<std::size_t>(1, opts.memory_budget / concept_bytes(ctx));

    std::vector<Concept> out;
    Bitset extent = ctx.derive(Side::attributes, Bitset(ms));
    Bitset intent = ctx.derive(Side::objects, extent);
    out.push_back({extent, intent});

    Bitset candidate(ms), closed(ms), cand_extent(ctx.object_count());
    while (true) {
        const Bitset& b = out.back().intent;
        bool advanced = false;
        for (std::size_t ii = ms; ii-- > 0;) {
            if (b.test(ii)) continue;
            candidate.clear();
            b.for_each_set([&](std::size_t j) {
                if (j < ii) candidate.set(j);
            });
            candidate.set(ii);
            closed = ctx.attribute_closure(candidate, cand_extent);
            if (closed.equal_prefix(b, ii)) {
                if (out.size() == cap)
                    throw capacity_error("concept enumeration exceeds memory budget", out.size());
                out.push_back({cand_extent, closed});
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

struct CboTask {
    Bitset extent;
    Bitset intent;
    std::size_t next_attr;
};

inline void cbo_expand(const FormalContext& ctx, Bitset extent, Bitset intent,
                       std::size_t next_attr, std::vector<Concept>& out,
                       std::atomic<std::size_t>& produced, std::size_t cap) {
    std::size_t ms = ctx.attribute_count();
    if (produced.fetch_add(1, std::memory_order_relaxed) >= cap)
        throw capacity_error("concept enumeration exceeds memory budget",
                             produced.load(std::memory_order_relaxed));
    out.push_back({extent, intent});
    for (std::size_t j = next_attr; j < ms; ++j) {
        if (intent.test(j)) continue;
        Bitset child_extent = extent & ctx.column(j);
        Bitset child_intent(ms, true);
        child_extent.for_each_set([&](std::size_t g) { child_intent &= ctx.row(g); });
        if (child_intent.equal_prefix(intent, j))  // canonical: no new attribute before j
            cbo_expand(ctx, std::move(child_extent), std::move(child_intent), j + 1, out,
                       produced, cap);
    }
}

/// Close-by-One with a canonicity test; output is re-sorted to lectic order,
/// so the result is identical to next_closure_enumerate.
inline std::vector<Concept> cbo_enumerate(const FormalContext& ctx, const BuildOptions& opts) {
    std::size_t ms = ctx.attribute_count();
    std::size_t cap = std::max<std::size_t>(1, opts.memory_budget / concept_bytes(ctx));
    std::atomic<std::size_t> produced{0};

    Bitset extent(ctx.object_count(), true);
    Bitset intent(ms, true);
    extent.for_each_set([&](std::size_t g) { intent &= ctx.row(g); });

    // Top-level branches become tasks; subtrees run independently per worker.
    std::vector<CboTask> tasks;
    for (std::size_t j = 0; j < ms; ++j) {
        if (intent.test(j)) continue;
        Bitset child_extent = extent & ctx.column(j);
        Bitset child_intent(ms, true);
        child_extent.for_each_set([&](std::size_t g) { child_intent &= ctx.row(g); });
        if (child_intent.equal_prefix(intent, j))
            tasks.push_back({std::move(child_extent), std::move(child_intent), j + 1});
    }

    unsigned threads = resolve_threads(opts.threads);
    std::vector<std::vector<Concept>> partial(std::max<std::size_t>(1, threads));
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    parallel_chunks(tasks.size(), threads, [&](unsigned worker, std::size_t b, std::size_t e) {
        try {
            for (std::size_t t = b; t < e && !failed.load(std::memory_order_relaxed); ++t)
                cbo_expand(ctx, tasks[t].extent, tasks[t].intent, tasks[t].next_attr,
                           partial[worker], produced, cap);
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    std::vector<Concept> out;
    out.reserve(produced.load() + 1);
    out.push_back({std::move(extent), std::move(intent)});
    for (auto& p : partial)
        for (auto& c : p) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), lectic_intent_less);
    return out;
}

}  // namespace detail

/// Every formal concept of the context, exactly once, sorted in the lectic
/// order of intents (top first, bottom last).
inline std::vector<Concept> enumerate_concepts(const FormalContext& ctx,
                                               const BuildOptions& opts = {}) {
    switch (opts.algorithm) {
        case BuildOptions::Algorithm::next_closure:
            return detail::next_closure_enumerate(ctx, opts);
        case BuildOptions::Algorithm::close_by_one:
        case BuildOptions::Algorithm::automatic:
            return detail::cbo_enumerate(ctx, opts);
    }
    return {};
}

// ---------------------------------------------------------------------------
// ConceptLattice
// ---------------------------------------------------------------------------

/// Concept lattice: indexed concepts in lectic intent order (index 0 is the
/// top), covering pairs, irreducibility flags and an optional order matrix.
class ConceptLattice {
public:
    std::vector<Concept> concepts;
    /// Covering pairs (lower, upper), sorted lexicographically.
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    std::vector<std::vector<std::size_t>> upper_covers;
    std::vector<std::vector<std::size_t>> lower_covers;
    std::size_t top_index = 0;
    std::size_t bottom_index = 0;
    Bitset join_irreducible;  // over concept indices
    Bitset meet_irreducible;
    /// Row x = set of y with x <= y; materialized only within budget.
    std::optional<std::vector<Bitset>> leq_rows;

    std::size_t size() const { return concepts.size(); }
    std::size_t object_universe() const { return concepts.empty() ? 0 : concepts[0].extent.size(); }
    std::size_t attribute_universe() const {
        return concepts.empty() ? 0 : concepts[0].intent.size();
    }

    const Bitset& extent(std::size_t i) const { return concepts[i].extent; }
    const Bitset& intent(std::size_t i) const { return concepts[i].intent; }

    bool leq(std::size_t x, std::size_t y) const {
        if (leq_rows) return (*leq_rows)[x].test(y);
        return concepts[y].intent.is_subset_of(concepts[x].intent);
    }
    bool lt(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }

    bool is_cover(std::size_t lower, std::size_t upper) const {
        const auto& ups = upper_covers[lower];
        return std::binary_search(ups.begin(), ups.end(), upper);
    }

    std::size_t index_of_intent(const Bitset& intent) const {
        auto it = std::lower_bound(concepts.begin(), concepts.end(), intent,
                                   [](const Concept& c, const Bitset& b) {
                                       return Bitset::lectic_less(c.intent, b);
                                   });
        if (it == concepts.end() || !(it->intent == intent))
            throw std::invalid_argument("no concept with the given intent");
        return static_cast<std::size_t>(it - concepts.begin());
    }

    std::size_t index_of_extent(const Bitset& extent) const {
        auto it = std::lower_bound(by_extent_.begin(), by_extent_.end(), extent,
                                   [this](std::size_t i, const Bitset& b) {
                                       return Bitset::lectic_less(concepts[i].extent, b);
                                   });
        if (it == by_extent_.end() || !(concepts[*it].extent == extent))
            throw std::invalid_argument("no concept with the given extent");
        return *it;
    }

    /// Least upper bound: the concept whose intent is the intersection of the
    /// operand intents.
    std::size_t join(std::size_t x, std::size_t y) const {
        return index_of_intent(concepts[x].intent & concepts[y].intent);
    }

    std::size_t meet(std::size_t x, std::size_t y) const {
        return index_of_extent(concepts[x].extent & concepts[y].extent);
    }

    std::size_t join_all(const std::vector<std::size_t>& xs) const {
        if (xs.empty()) return bottom_index;
        std::size_t acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) acc = join(acc, xs[i]);
        return acc;
    }

    std::size_t meet_all(const std::vector<std::size_t>& xs) const {
        if (xs.empty()) return top_index;
        std::size_t acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) acc = meet(acc, xs[i]);
        return acc;
    }

    /// Join of x with all of x's upper covers (x itself when x is the top).
    std::size_t cover_join(std::size_t x) const {
        std::size_t acc = x;
        for (std::size_t u : upper_covers[x]) acc = join(acc, u);
        return acc;
    }

    std::vector<std::size_t> atoms() const { return upper_covers[bottom_index]; }
    std::vector<std::size_t> coatoms() const { return lower_covers[top_index]; }

    void set_extent_order(std::vector<std::size_t> order) { by_extent_ = std::move(order); }

private:
    std::vector<std::size_t> by_extent_;  // concept indices sorted lectically by extent
};

namespace detail {

/// Covers via the materialized order matrix: for each x, scan its strict
/// upper bounds in ascending extent size; an element is a cover unless it is
/// above an already-found cover.
inline void covers_from_matrix(ConceptLattice& lat, unsigned threads) {
    std::size_t n = lat.size();
    const std::vector<Bitset>& leq = *lat.leq_rows;

    std::vector<std::size_t> size_rank(n);
    {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            std::size_t ca = lat.concepts[a].extent.count(), cb = lat.concepts[b].extent.count();
            return ca != cb ? ca < cb : a < b;
        });
        for (std::size_t k = 0; k < n; ++k) size_rank[order[k]] = k;
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> partial(
        std::max<std::size_t>(1, resolve_threads(threads)));
    parallel_chunks(n, threads, [&](unsigned worker, std::size_t b, std::size_t e) {
        Bitset seen(n);
        std::vector<std::size_t> ups;
        for (std::size_t x = b; x < e; ++x) {
            ups.clear();
            leq[x].for_each_set([&](std::size_t y) {
                if (y != x) ups.push_back(y);
            });
            std::sort(ups.begin(), ups.end(),
                      [&](std::size_t a, std::size_t c) { return size_rank[a] < size_rank[c]; });
            seen.clear();
            for (std::size_t y : ups) {
                if (seen.test(y)) continue;
                partial[worker].emplace_back(x, y);
                seen |= leq[y];
            }
        }
    });
    for (auto& p : partial)
        for (auto& c : p) lat.covers.push_back(c);
}

/// Covers via the attribute-driven counting sweep (no order matrix): the
/// concept generated by B + {m} is a lower cover of (A, B) iff every
/// attribute it adds generates it.
inline void covers_from_counting(ConceptLattice& lat, unsigned threads) {
    std::size_t n = lat.size();
    std::size_t gs = lat.object_universe(), ms = lat.attribute_universe();

    // Virtual context rows/columns recovered from the concept set.
    std::vector<Bitset> col(ms, Bitset(gs));
    {
        std::vector<std::size_t> best(ms, Bitset::npos);
        for (std::size_t i = 0; i < n; ++i) {
            lat.concepts[i].intent.for_each_set([&](std::size_t m) {
                if (best[m] == Bitset::npos ||
                    lat.concepts[i].extent.count() > lat.concepts[best[m]].extent.count())
                    best[m] = i;
            });
        }
        for (std::size_t m = 0; m < ms; ++m)
            if (best[m] != Bitset::npos) col[m] = lat.concepts[best[m]].extent;
    }
    std::vector<Bitset> row(gs, Bitset(ms));
    {
        std::vector<std::size_t> best(gs, Bitset::npos);
        for (std::size_t i = 0; i < n; ++i) {
            lat.concepts[i].extent.for_each_set([&](std::size_t g) {
                if (best[g] == Bitset::npos ||
                    lat.concepts[i].intent.count() > lat.concepts[best[g]].intent.count())
                    best[g] = i;
            });
        }
        for (std::size_t g = 0; g < gs; ++g)
            if (best[g] != Bitset::npos) row[g] = lat.concepts[best[g]].intent;
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> partial(
        std::max<std::size_t>(1, resolve_threads(threads)));
    parallel_chunks(n, threads, [&](unsigned worker, std::size_t b, std::size_t e) {
        std::vector<std::pair<Bitset, std::size_t>> cand;  // (intent, generator count)
        for (std::size_t c = b; c < e; ++c) {
            const Bitset& A = lat.concepts[c].extent;
            const Bitset& B = lat.concepts[c].intent;
            cand.clear();
            for (std::size_t m = 0; m < ms; ++m) {
                if (B.test(m)) continue;
                Bitset ext = A & col[m];
                Bitset in(ms, true);
                ext.for_each_set([&](std::size_t g) { in &= row[g]; });
                bool found = false;
                for (auto& [intent, count] : cand)
                    if (intent == in) {
                        ++count;
                        found = true;
                        break;
                    }
                if (!found) cand.emplace_back(std::move(in), 1);
            }
            std::size_t bsz = B.count();
            for (auto& [intent, count] : cand)
                if (count == intent.count() - bsz)
                    partial[worker].emplace_back(lat.index_of_intent(intent), c);
        }
    });
    for (auto& p : partial)
        for (auto& c : p) lat.covers.push_back(c);
}

}  // namespace detail

/// Builds the lattice from a complete concept set: order by extent inclusion,
/// covers as the transitive reduction, irreducibles from cover counts.
inline ConceptLattice build_lattice(std::vector<Concept> concepts, const BuildOptions& opts = {}) {
    if (concepts.empty()) throw std::invalid_argument("empty concept set");
    std::sort(concepts.begin(), concepts.end(), lectic_intent_less);
    for (std::size_t i = 1; i < concepts.size(); ++i)
        if (concepts[i].intent == concepts[i - 1].intent)
            throw std::invalid_argument("duplicate concepts in input");

    ConceptLattice lat;
    lat.concepts = std::move(concepts);
    std::size_t n = lat.size();

    // A complete concept set contains (G, G') and (M', M).
    if (lat.concepts.front().extent.count() != lat.object_universe())
        throw std::invalid_argument("concept set has no top (full-extent) concept");
    if (lat.concepts.back().intent.count() != lat.attribute_universe())
        throw std::invalid_argument("concept set has no bottom (full-intent) concept");
    lat.top_index = 0;
    lat.bottom_index = n - 1;

    {
        std::vector<std::size_t> by_extent(n);
        for (std::size_t i = 0; i < n; ++i) by_extent[i] = i;
        std::sort(by_extent.begin(), by_extent.end(), [&](std::size_t a, std::size_t b) {
            return Bitset::lectic_less(lat.concepts[a].extent, lat.concepts[b].extent);
        });
        lat.set_extent_order(std::move(by_extent));
    }

    bool matrix_fits = n <= opts.order_matrix_limit && n * n / 8 <= opts.memory_budget;
    if (matrix_fits) {
        bool by_intent = lat.attribute_universe() <= lat.object_universe();
        std::vector<Bitset> rows(n, Bitset(n));
        parallel_chunks(n, opts.threads, [&](unsigned, std::size_t b, std::size_t e) {
            for (std::size_t x = b; x < e; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    bool le = by_intent
                                  ? lat.concepts[y].intent.is_subset_of(lat.concepts[x].intent)
                                  : lat.concepts[x].extent.is_subset_of(lat.concepts[y].extent);
                    if (le) rows[x].set(y);
                }
        });
        lat.leq_rows = std::move(rows);
        detail::covers_from_matrix(lat, opts.threads);
    } else {
        detail::covers_from_counting(lat, opts.threads);
    }

    std::sort(lat.covers.begin(), lat.covers.end());
    lat.upper_covers.assign(n, {});
    lat.lower_covers.assign(n, {});
    for (auto [lo, up] : lat.covers) {
        lat.upper_covers[lo].push_back(up);
        lat.lower_covers[up].push_back(lo);
    }
    for (auto& v : lat.upper_covers) std::sort(v.begin(), v.end());
    for (auto& v : lat.lower_covers) std::sort(v.begin(), v.end());

    lat.join_irreducible = Bitset(n);
    lat.meet_irreducible = Bitset(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != lat.bottom_index && lat.lower_covers[i].size() == 1) lat.join_irreducible.set(i);
        if (i != lat.top_index && lat.upper_covers[i].size() == 1) lat.meet_irreducible.set(i);
    }
    return lat;
}

inline ConceptLattice build_lattice(const FormalContext& ctx, const BuildOptions& opts = {}) {
    return build_lattice(enumerate_concepts(ctx, opts), opts);
}

// ---------------------------------------------------------------------------
// Element statistics
// ---------------------------------------------------------------------------

struct LatticeElementStats {
    std::vector<std::size_t> j;       // join-irreducibles below
    std::vector<std::size_t> m;       // meet-irreducibles above
    std::vector<std::size_t> height;  // elements of a longest chain strictly below
    std::vector<std::size_t> rank_candidate;  // |{m in M(L) : m not >= x}|
    std::size_t join_irreducible_count = 0;
    std::size_t meet_irreducible_count = 0;
};

/// One pass per element. j and m are evaluated through representative
/// generators: a join-irreducible concept c with unique lower cover d is the
/// object concept of any object in extent(c) - extent(d), so counting
/// representatives inside an extent counts the irreducibles below.
inline LatticeElementStats element_stats(const ConceptLattice& lat) {
    std::size_t n = lat.size();
    LatticeElementStats st;
    st.j.assign(n, 0);
    st.m.assign(n, 0);
    st.height.assign(n, 0);
    st.rank_candidate.assign(n, 0);
    st.join_irreducible_count = lat.join_irreducible.count();
    st.meet_irreducible_count = lat.meet_irreducible.count();

    Bitset obj_reps(lat.object_universe());
    lat.join_irreducible.for_each_set([&](std::size_t c) {
        std::size_t d = lat.lower_covers[c][0];
        Bitset fresh = lat.extent(c) & lat.extent(d).complement();
        obj_reps.set(fresh.find_first());
    });
    Bitset attr_reps(lat.attribute_universe());
    lat.meet_irreducible.for_each_set([&](std::size_t c) {
        std::size_t e = lat.upper_covers[c][0];
        Bitset fresh = lat.intent(c) & lat.intent(e).complement();
        attr_reps.set(fresh.find_first());
    });

    for (std::size_t i = 0; i < n; ++i) {
        st.j[i] = lat.extent(i).intersection_count(obj_reps);
        st.m[i] = lat.intent(i).intersection_count(attr_reps);
        st.rank_candidate[i] = st.meet_irreducible_count - st.m[i];
    }

    // Lectic index order is a linear extension of the dual order, so lower
    // covers always have larger indices.
    for (std::size_t i = n; i-- > 0;) {
        std::size_t h = 0;
        for (std::size_t lo : lat.lower_covers[i]) h = std::max(h, st.height[lo] + 1);
        st.height[i] = h;
    }
    return st;
}

// ---------------------------------------------------------------------------
// Standard context, intervals, dual
// ---------------------------------------------------------------------------

/// (J(L), M(L), <=): its concept lattice is isomorphic to the input.
inline FormalContext standard_context(const ConceptLattice& lat) {
    std::vector<std::size_t> js = lat.join_irreducible.to_indices();
    std::vector<std::size_t> ms = lat.meet_irreducible.to_indices();
    std::vector<std::string> on, an;
    for (std::size_t c : js) on.push_back("c" + std::to_string(c));
    for (std::size_t c : ms) an.push_back("c" + std::to_string(c));
    std::vector<Bitset> rows;
    rows.reserve(js.size());
    for (std::size_t c : js) {
        Bitset r(ms.size());
        for (std::size_t k = 0; k < ms.size(); ++k)
            if (lat.leq(c, ms[k])) r.set(k);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// A restriction of the lattice order to a subset of elements. `elements`
/// are global concept indices in ascending index order (so the first entry
/// is the top of the interval and the last is its bottom); `leq` is over
/// local positions.
struct SubOrder {
    std::vector<std::size_t> elements;
    std::vector<Bitset> leq;
};

inline SubOrder restrict_order(const ConceptLattice& lat, std::vector<std::size_t> elements) {
    SubOrder s;
    s.elements = std::move(elements);
    std::size_t k = s.elements.size();
    s.leq.assign(k, Bitset(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (lat.leq(s.elements[a], s.elements[b])) s.leq[a].set(b);
    return s;
}

inline SubOrder interval(const ConceptLattice& lat, std::size_t x, std::size_t y) {
    if (!lat.leq(x, y)) throw std::invalid_argument("interval endpoints are not ordered");
    std::vector<std::size_t> elems;
    for (std::size_t z = 0; z < lat.size(); ++z)
        if (lat.leq(x, z) && lat.leq(z, y)) elems.push_back(z);
    return restrict_order(lat, std::move(elems));
}

/// [x, x^top] where x^top is the join of x's upper covers.
inline SubOrder upper_interval(const ConceptLattice& lat, std::size_t x) {
    return interval(lat, x, lat.cover_join(x));
}

/// The order-reversed lattice, i.e. the concept lattice of the transposed
/// context: extents and intents swap roles.
inline ConceptLattice dual_lattice(const ConceptLattice& lat, const BuildOptions& opts = {}) {
    std::vector<Concept> dual;
    dual.reserve(lat.size());
    for (const Concept& c : lat.concepts) dual.push_back({c.intent, c.extent});
    return build_lattice(std::move(dual), opts);
}

// ---------------------------------------------------------------------------
// Isomorphism search (backtracking over cover structure)
// ---------------------------------------------------------------------------

inline bool lattice_isomorphic(const ConceptLattice& a, const ConceptLattice& b) {
    std::size_t n = a.size();
    if (n != b.size() || a.covers.size() != b.covers.size()) return false;
    LatticeElementStats sa = element_stats(a), sb = element_stats(b);

    auto key = [](const ConceptLattice& l, const LatticeElementStats& s, std::size_t i) {
        return std::tuple(s.height[i], l.lower_covers[i].size(), l.upper_covers[i].size(), s.j[i],
                          s.m[i]);
    };
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>,
             std::pair<std::size_t, std::size_t>>
        tally;
    for (std::size_t i = 0; i < n; ++i) {
        ++tally[key(a, sa, i)].first;
        ++tally[key(b, sb, i)].second;
    }
    for (auto& [k, c] : tally)
        if (c.first != c.second) return false;

    std::vector<std::size_t> map_ab(n, Bitset::npos), used_b(n, 0);
    // Assign in ascending height so lower covers of each element are mapped
    // before the element itself.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return sa.height[x] < sa.height[y]; });

    auto compatible = [&](std::size_t x, std::size_t y) {
        if (key(a, sa, x) != key(b, sb, y)) return false;
        for (std::size_t lo : a.lower_covers[x]) {
            if (map_ab[lo] == Bitset::npos) return false;
            if (!b.is_cover(map_ab[lo], y)) return false;
        }
        // All assigned pairs must agree on comparability.
        for (std::size_t z = 0; z < n; ++z) {
            if (map_ab[z] == Bitset::npos || z == x) continue;
            if (a.leq(z, x) != b.leq(map_ab[z], y)) return false;
            if (a.leq(x, z) != b.leq(y, map_ab[z])) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == n) return true;
        std::size_t x = order[pos];
        for (std::size_t y = 0; y < n; ++y) {
            if (used_b[y] || !compatible(x, y)) continue;
            map_ab[x] = y;
            used_b[y] = 1;
            if (self(self, pos + 1)) return true;
            map_ab[x] = Bitset::npos;
            used_b[y] = 0;
        }
        return false;
    };
    return dfs(dfs, 0);
}

}  // namespace fclat
