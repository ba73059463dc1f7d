#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fclat/context.hpp"
#include "fclat/errors.hpp"
#include "fclat/lattice.hpp"
#include "fclat/parallel.hpp"
#include "fclat/rises.hpp"

namespace fclat {

// ---------------------------------------------------------------------------
// Semimodularity
// ---------------------------------------------------------------------------

/// x /\ y -< y implies x -< x \/ y, over all pairs.
inline bool is_semimodular(const ConceptLattice& lat, unsigned threads = 0) {
    std::size_t n = lat.size();
    std::atomic<bool> ok{true};
    parallel_chunks(n, threads, [&](unsigned, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e && ok.load(std::memory_order_relaxed); ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (lat.is_cover(lat.meet(x, y), y) && !lat.is_cover(x, lat.join(x, y))) {
                    ok.store(false, std::memory_order_relaxed);
                    return;
                }
    });
    return ok.load();
}

/// y -< x \/ y implies x /\ y -< x, over all pairs.
inline bool is_dually_semimodular(const ConceptLattice& lat, unsigned threads = 0) {
    std::size_t n = lat.size();
    std::atomic<bool> ok{true};
    parallel_chunks(n, threads, [&](unsigned, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e && ok.load(std::memory_order_relaxed); ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (lat.is_cover(y, lat.join(x, y)) && !lat.is_cover(lat.meet(x, y), x)) {
                    ok.store(false, std::memory_order_relaxed);
                    return;
                }
    });
    return ok.load();
}

// ---------------------------------------------------------------------------
// Join-distributivity via five independent routes
// ---------------------------------------------------------------------------

enum class JdMethod { rises, unique_meet_irreducible, rank, boolean_interval, arrows };

inline const char* jd_method_name(JdMethod m) {
    switch (m) {
        case JdMethod::rises: return "rises";
        case JdMethod::unique_meet_irreducible: return "unique_meet_irreducible";
        case JdMethod::rank: return "rank";
        case JdMethod::boolean_interval: return "boolean_interval";
        case JdMethod::arrows: return "arrows";
    }
    return "?";
}

constexpr std::array<JdMethod, 5> all_jd_methods = {
    JdMethod::rises, JdMethod::unique_meet_irreducible, JdMethod::rank,
    JdMethod::boolean_interval, JdMethod::arrows};

/// The arrow criterion on a context: down-arrows from one object row onto
/// irreducible attributes must all hit attributes with the same column.
/// The context is clarified and reduced first (its lattice is unchanged),
/// which makes every attribute irreducible.
inline bool arrows_join_distributive(const FormalContext& raw) {
    FormalContext ctx = reduce(raw).context;
    ArrowRelations a = arrows(ctx);
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        std::size_t first = Bitset::npos;
        bool ok = true;
        a.down[g].for_each_set([&](std::size_t m) {
            if (first == Bitset::npos)
                first = m;
            else if (!(ctx.column(m) == ctx.column(first)))
                ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

namespace detail {

inline bool jd_by_rises(const ConceptLattice& lat, const LatticeElementStats& stats) {
    for (auto [lo, up] : lat.covers)
        if (stats.m[lo] - stats.m[up] != 1) return false;
    return true;
}

inline bool jd_by_unique_meet_irreducible(const ConceptLattice& lat) {
    std::vector<std::size_t> mi = lat.meet_irreducible.to_indices();
    for (auto [lo, up] : lat.covers) {
        std::size_t hits = 0;
        for (std::size_t z : mi)
            if (lat.leq(lo, z) && !lat.leq(up, z) && ++hits > 1) break;
        if (hits != 1) return false;
    }
    return true;
}

inline bool jd_by_rank(const ConceptLattice& lat) {
    std::vector<std::size_t> mi = lat.meet_irreducible.to_indices();
    std::vector<std::size_t> r(lat.size(), 0);
    for (std::size_t x = 0; x < lat.size(); ++x)
        for (std::size_t z : mi)
            if (!lat.leq(x, z)) ++r[x];
    if (r[lat.bottom_index] != 0) return false;
    for (auto [lo, up] : lat.covers)
        if (r[up] != r[lo] + 1) return false;
    return true;
}

inline bool jd_by_boolean_interval(const ConceptLattice& lat) {
    std::size_t n = lat.size();
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t top = lat.cover_join(x);
        std::vector<std::size_t> elems;
        for (std::size_t z = 0; z < n; ++z)
            if (lat.leq(x, z) && lat.leq(z, top)) elems.push_back(z);
        std::size_t k = lat.upper_covers[x].size();
        if (k >= 63 || elems.size() != (std::size_t{1} << k)) return false;
        for (std::size_t z : elems) {
            std::size_t acc = x;
            for (std::size_t a : lat.upper_covers[x])
                if (lat.leq(a, z)) acc = lat.join(acc, a);
            if (acc != z) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Decides join-distributivity with the chosen route. The arrow route uses
/// the originating context when supplied and the standard context otherwise.
inline bool is_join_distributive(const ConceptLattice& lat, const LatticeElementStats& stats,
                                 JdMethod method, const FormalContext* ctx = nullptr) {
    switch (method) {
        case JdMethod::rises: return detail::jd_by_rises(lat, stats);
        case JdMethod::unique_meet_irreducible: return detail::jd_by_unique_meet_irreducible(lat);
        case JdMethod::rank: return detail::jd_by_rank(lat);
        case JdMethod::boolean_interval: return detail::jd_by_boolean_interval(lat);
        case JdMethod::arrows:
            return ctx ? arrows_join_distributive(*ctx)
                       : arrows_join_distributive(standard_context(lat));
    }
    return false;
}

/// Join-distributivity of the order-reversed lattice. The supplied context,
/// if any, is transposed to stay the origin of the dual.
inline bool is_meet_distributive(const ConceptLattice& lat, JdMethod method,
                                 const FormalContext* ctx = nullptr,
                                 const BuildOptions& opts = {}) {
    ConceptLattice dual = dual_lattice(lat, opts);
    LatticeElementStats dstats = element_stats(dual);
    if (ctx) {
        FormalContext t = ctx->transpose();
        return is_join_distributive(dual, dstats, method, &t);
    }
    return is_join_distributive(dual, dstats, method, nullptr);
}

// ---------------------------------------------------------------------------
// Forbidden sublattices
// ---------------------------------------------------------------------------

enum class SublatticePattern { M3, N5, S7 };

inline const char* pattern_name(SublatticePattern p) {
    switch (p) {
        case SublatticePattern::M3: return "M3";
        case SublatticePattern::N5: return "N5";
        case SublatticePattern::S7: return "S7";
    }
    return "?";
}

struct SublatticeWitness {
    SublatticePattern pattern;
    /// Lattice indices in the pattern's role order.
    std::vector<std::size_t> elements;
    std::vector<std::string> role_names;
};

namespace detail {

struct PatternTable {
    std::vector<std::string> roles;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<std::size_t>> join;
    std::vector<std::vector<std::size_t>> meet;
};

/// Derives order and operation tables from a cover list; keeps the pattern
/// definitions typo-proof.
inline PatternTable make_pattern(std::vector<std::string> roles,
                                 std::vector<std::pair<std::size_t, std::size_t>> covers) {
    std::size_t k = roles.size();
    PatternTable t;
    t.roles = std::move(roles);
    t.leq.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) t.leq[i][i] = true;
    for (auto [lo, up] : covers) t.leq[lo][up] = true;
    for (std::size_t w = 0; w < k; ++w)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (t.leq[i][w] && t.leq[w][j]) t.leq[i][j] = true;

    auto bound = [&](std::size_t i, std::size_t j, bool upper) {
        std::vector<std::size_t> cands;
        for (std::size_t z = 0; z < k; ++z) {
            bool ok = upper ? t.leq[i][z] && t.leq[j][z] : t.leq[z][i] && t.leq[z][j];
            if (ok) cands.push_back(z);
        }
        for (std::size_t z : cands) {
            bool least = true;
            for (std::size_t w : cands)
                if (upper ? !t.leq[z][w] : !t.leq[w][z]) {
                    least = false;
                    break;
                }
            if (least) return z;
        }
        throw std::logic_error("pattern is not a lattice");
    };
    t.join.assign(k, std::vector<std::size_t>(k));
    t.meet.assign(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            t.join[i][j] = bound(i, j, true);
            t.meet[i][j] = bound(i, j, false);
        }
    return t;
}

inline const PatternTable& pattern_table(SublatticePattern p) {
    static const PatternTable m3 = make_pattern({"bottom", "a", "b", "c", "top"},
                                                {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
    static const PatternTable n5 =
        make_pattern({"bottom", "x", "z", "y", "top"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
    static const PatternTable s7 =
        make_pattern({"meet_ab", "a_hat", "b_hat", "x", "a", "b", "join_ab"},
                     {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}});
    switch (p) {
        case SublatticePattern::M3: return m3;
        case SublatticePattern::N5: return n5;
        case SublatticePattern::S7: return s7;
    }
    throw std::logic_error("unknown pattern");
}

}  // namespace detail

/// Independent check of a candidate witness: elements must be pairwise
/// distinct, induce the pattern's order, and close under join and meet
/// exactly as the pattern's tables prescribe.
inline bool verify_witness(const ConceptLattice& lat, const SublatticeWitness& w) {
    const detail::PatternTable& t = detail::pattern_table(w.pattern);
    std::size_t k = t.roles.size();
    if (w.elements.size() != k) return false;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && w.elements[i] == w.elements[j]) return false;
            if (lat.leq(w.elements[i], w.elements[j]) != t.leq[i][j]) return false;
            if (lat.join(w.elements[i], w.elements[j]) != w.elements[t.join[i][j]]) return false;
            if (lat.meet(w.elements[i], w.elements[j]) != w.elements[t.meet[i][j]]) return false;
        }
    return true;
}

namespace detail {

inline std::optional<SublatticeWitness> find_m3(const ConceptLattice& lat) {
    std::size_t n = lat.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (lat.leq(a, b) || lat.leq(b, a)) continue;
            std::size_t top = lat.join(a, b), bot = lat.meet(a, b);
            for (std::size_t c = b + 1; c < n; ++c) {
                if (lat.leq(a, c) || lat.leq(c, a) || lat.leq(b, c) || lat.leq(c, b)) continue;
                if (lat.join(a, c) != top || lat.join(b, c) != top) continue;
                if (lat.meet(a, c) != bot || lat.meet(b, c) != bot) continue;
                SublatticeWitness w{SublatticePattern::M3,
                                    {bot, a, b, c, top},
                                    pattern_table(SublatticePattern::M3).roles};
                if (verify_witness(lat, w)) return w;
            }
        }
    return std::nullopt;
}

inline std::optional<SublatticeWitness> find_n5(const ConceptLattice& lat) {
    std::size_t n = lat.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            if (!lat.lt(x, z)) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (lat.leq(y, z) || lat.leq(x, y)) continue;  // y incomparable to both
                std::size_t top = lat.join(x, y), bot = lat.meet(z, y);
                if (lat.join(z, y) != top || lat.meet(x, y) != bot) continue;
                SublatticeWitness w{SublatticePattern::N5,
                                    {bot, x, z, y, top},
                                    pattern_table(SublatticePattern::N5).roles};
                if (verify_witness(lat, w)) return w;
            }
        }
    return std::nullopt;
}

inline std::optional<SublatticeWitness> find_s7(const ConceptLattice& lat) {
    std::size_t n = lat.size();
    std::vector<std::size_t> a_mid, b_mid;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (lat.leq(a, b) || lat.leq(b, a)) continue;
            std::size_t top = lat.join(a, b), bot = lat.meet(a, b);
            a_mid.clear();
            b_mid.clear();
            for (std::size_t z = 0; z < n; ++z) {
                if (lat.lt(bot, z) && lat.lt(z, a)) a_mid.push_back(z);
                if (lat.lt(bot, z) && lat.lt(z, b)) b_mid.push_back(z);
            }
            for (std::size_t ah : a_mid)
                for (std::size_t bh : b_mid) {
                    std::size_t x = lat.join(ah, bh);
                    SublatticeWitness w{SublatticePattern::S7,
                                        {bot, ah, bh, x, a, b, top},
                                        pattern_table(SublatticePattern::S7).roles};
                    if (verify_witness(lat, w)) return w;
                }
        }
    return std::nullopt;
}

}  // namespace detail

/// Exhaustive search for an induced sublattice isomorphic to the pattern.
inline std::optional<SublatticeWitness> find_sublattice(const ConceptLattice& lat,
                                                        SublatticePattern pattern,
                                                        std::size_t bound = 500) {
    if (lat.size() > bound)
        throw capacity_error("lattice too large for exhaustive sublattice search", lat.size());
    switch (pattern) {
        case SublatticePattern::M3: return detail::find_m3(lat);
        case SublatticePattern::N5: return detail::find_n5(lat);
        case SublatticePattern::S7: return detail::find_s7(lat);
    }
    return std::nullopt;
}

/// Extracts an S7 sublattice from a join-distributive lattice that is not
/// meet-distributive, following the constructive proof: a failure of dual
/// semimodularity yields incomparable a, b with a -< a|b, b -< a|b and
/// a&b not -< a; then a_hat, b_hat are covers of a&b strictly below a and b,
/// and x = a_hat | b_hat completes the pattern.
inline SublatticeWitness s7_witness_constructive(const ConceptLattice& lat,
                                                 const LatticeElementStats& stats) {
    if (!detail::jd_by_rises(lat, stats))
        throw std::invalid_argument("s7_witness_constructive: lattice is not join-distributive");
    bool md = true;
    for (auto [lo, up] : lat.covers)
        if (stats.j[up] - stats.j[lo] != 1) {
            md = false;
            break;
        }
    if (md) throw std::invalid_argument("s7_witness_constructive: lattice is meet-distributive");

    // Any two lower covers a, b of an element u satisfy a -< a|b = u.
    for (std::size_t u = 0; u < lat.size(); ++u) {
        const auto& lows = lat.lower_covers[u];
        for (std::size_t i = 0; i < lows.size(); ++i)
            for (std::size_t k = i + 1; k < lows.size(); ++k) {
                std::size_t a = lows[i], b = lows[k];
                std::size_t bot = lat.meet(a, b);
                if (lat.is_cover(bot, a)) continue;  // need a&b not -< a
                std::size_t ah = Bitset::npos, bh = Bitset::npos;
                for (std::size_t c : lat.upper_covers[bot]) {
                    if (ah == Bitset::npos && lat.lt(c, a)) ah = c;
                    if (bh == Bitset::npos && lat.lt(c, b)) bh = c;
                }
                if (ah == Bitset::npos || bh == Bitset::npos) continue;
                std::size_t x = lat.join(ah, bh);
                SublatticeWitness w{SublatticePattern::S7,
                                    {bot, ah, bh, x, a, b, u},
                                    detail::pattern_table(SublatticePattern::S7).roles};
                if (verify_witness(lat, w)) return w;
            }
    }
    throw std::logic_error("s7_witness_constructive: construction failed unexpectedly");
}

// ---------------------------------------------------------------------------
// Distributivity and the brute-force violation count
// ---------------------------------------------------------------------------

struct DistributivityOptions {
    std::size_t violation_bound = 200;   // brute-force triples
    std::size_t modular_bound = 200;     // direct modular-law check
    std::size_t sublattice_bound = 500;  // exhaustive pattern search
    std::size_t method_bound = 5000;     // run all five routes below this size
    unsigned threads = 0;
};

/// Number of ordered triples violating x | (y & z) = (x | y) & (x | z).
inline std::size_t count_distributivity_violations(const ConceptLattice& lat,
                                                   std::size_t bound = 200) {
    std::size_t n = lat.size();
    if (n > bound)
        throw capacity_error("lattice too large for brute-force violation count", n);
    std::vector<std::size_t> jt(n * n), mt(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            jt[x * n + y] = lat.join(x, y);
            mt[x * n + y] = lat.meet(x, y);
        }
    std::size_t count = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (jt[x * n + mt[y * n + z]] != mt[jt[x * n + y] * n + jt[x * n + z]]) ++count;
    return count;
}

/// Unit rises on both sides; cross-checked against M3/N5 absence while the
/// lattice is within the exhaustive search bound.
inline bool is_distributive(const ConceptLattice& lat, const LatticeElementStats& stats,
                            const DistributivityOptions& opts = {}) {
    bool by_rises = true;
    for (auto [lo, up] : lat.covers) {
        if (stats.j[up] - stats.j[lo] != 1 || stats.m[lo] - stats.m[up] != 1) {
            by_rises = false;
            break;
        }
    }
    if (lat.size() <= opts.sublattice_bound) {
        bool no_forbidden = !find_sublattice(lat, SublatticePattern::M3, opts.sublattice_bound) &&
                            !find_sublattice(lat, SublatticePattern::N5, opts.sublattice_bound);
        if (no_forbidden != by_rises)
            throw checker_disagreement("distributivity: rise criterion and forbidden-sublattice "
                                       "search disagree");
    }
    return by_rises;
}

/// Direct modular-law check over all triples (z <= x implies
/// x & (y | z) = (x & y) | z).
inline bool is_modular_direct(const ConceptLattice& lat, std::size_t bound = 200) {
    std::size_t n = lat.size();
    if (n > bound) throw capacity_error("lattice too large for direct modularity check", n);
    std::vector<std::size_t> jt(n * n), mt(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            jt[x * n + y] = lat.join(x, y);
            mt[x * n + y] = lat.meet(x, y);
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (lat.leq(z, x) && mt[x * n + jt[y * n + z]] != jt[mt[x * n + y] * n + z])
                    return false;
    return true;
}

// ---------------------------------------------------------------------------
// Verdict
// ---------------------------------------------------------------------------

struct DistributivityVerdict {
    bool distributive = false;
    bool join_distributive = false;
    bool meet_distributive = false;
    bool modular = false;
    bool semimodular = false;
    bool dually_semimodular = false;
    /// "join:<method>" / "meet:<method>" -> result. Entries for the same
    /// property always agree; decide_verdict throws otherwise.
    std::map<std::string, bool> method_agreement;
    /// "triples" when the modular law was brute-forced, otherwise
    /// "semimodular_pair" (modular = semimodular and dually semimodular).
    std::string modular_method;
    std::optional<SublatticeWitness> witness;
};

/// Runs every feasible checker, insists they agree, and attaches a witness
/// when one explains the verdict.
inline DistributivityVerdict decide_verdict(const ConceptLattice& lat,
                                            const LatticeElementStats& stats,
                                            const FormalContext* ctx = nullptr,
                                            const DistributivityOptions& opts = {}) {
    DistributivityVerdict v;
    bool small = lat.size() <= opts.method_bound;

    if (small) {
        for (JdMethod m : all_jd_methods)
            v.method_agreement["join:" + std::string(jd_method_name(m))] =
                is_join_distributive(lat, stats, m, ctx);
        BuildOptions bopts;
        bopts.threads = opts.threads;
        ConceptLattice dual = dual_lattice(lat, bopts);
        LatticeElementStats dstats = element_stats(dual);
        std::optional<FormalContext> tctx;
        if (ctx) tctx = ctx->transpose();
        for (JdMethod m : all_jd_methods)
            v.method_agreement["meet:" + std::string(jd_method_name(m))] =
                is_join_distributive(dual, dstats, m, tctx ? &*tctx : nullptr);
    } else {
        v.method_agreement["join:rises"] = detail::jd_by_rises(lat, stats);
        bool meet_rises = true;
        for (auto [lo, up] : lat.covers)
            if (stats.j[up] - stats.j[lo] != 1) {
                meet_rises = false;
                break;
            }
        v.method_agreement["meet:rises"] = meet_rises;
    }

    auto agreed = [&](const std::string& prefix) {
        std::optional<bool> val;
        for (auto& [k, b] : v.method_agreement) {
            if (k.rfind(prefix, 0) != 0) continue;
            if (val && *val != b)
                throw checker_disagreement("join/meet-distributivity checkers disagree on " + k);
            val = b;
        }
        return *val;
    };
    v.join_distributive = agreed("join:");
    v.meet_distributive = agreed("meet:");
    v.distributive = is_distributive(lat, stats, opts);
    if (v.distributive != (v.join_distributive && v.meet_distributive))
        throw checker_disagreement("distributive verdict contradicts one-sided verdicts");

    v.semimodular = is_semimodular(lat, opts.threads);
    v.dually_semimodular = is_dually_semimodular(lat, opts.threads);
    if (lat.size() <= opts.modular_bound) {
        v.modular = is_modular_direct(lat, opts.modular_bound);
        v.modular_method = "triples";
        if (v.modular != (v.semimodular && v.dually_semimodular))
            throw checker_disagreement("modularity disagrees with semimodularity pair");
    } else {
        v.modular = v.semimodular && v.dually_semimodular;
        v.modular_method = "semimodular_pair";
    }

    if (v.join_distributive && !v.meet_distributive) {
        v.witness = s7_witness_constructive(lat, stats);
    } else if (!v.distributive && lat.size() <= opts.sublattice_bound) {
        v.witness = find_sublattice(lat, SublatticePattern::M3, opts.sublattice_bound);
        if (!v.witness) v.witness = find_sublattice(lat, SublatticePattern::N5, opts.sublattice_bound);
    }
    return v;
}

}  // namespace fclat
