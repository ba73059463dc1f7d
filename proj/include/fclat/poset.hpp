#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fclat/bitset.hpp"
#include "fclat/context.hpp"
#include "fclat/distributivity.hpp"
#include "fclat/errors.hpp"
#include "fclat/lattice.hpp"

namespace fclat {

/// Finite partially ordered set over named elements. Order axioms are
/// validated at construction.
class Poset {
public:
    Poset() = default;

    /// `up_rows[i]` is the up-set of element i (including i). Must already be
    /// reflexive and transitive; antisymmetry is checked here.
    Poset(std::vector<std::string> names, std::vector<Bitset> up_rows)
        : names_(std::move(names)), up_(std::move(up_rows)) {
        std::size_t n = names_.size();
        if (up_.size() != n) throw std::invalid_argument("order matrix size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (up_[i].size() != n) throw std::invalid_argument("order matrix row size mismatch");
            if (!up_[i].test(i)) throw std::invalid_argument("order must be reflexive");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && up_[i].test(j) && up_[j].test(i))
                    throw std::invalid_argument("cycle detected: " + names_[i] + " and " +
                                                names_[j] + " are mutually comparable");
                if (up_[i].test(j) && !up_[j].is_subset_of(up_[i]))
                    throw std::invalid_argument("order must be transitive");
            }
        down_.assign(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i)
            up_[i].for_each_set([&](std::size_t j) { down_[j].set(i); });
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
    bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
    const Bitset& up(std::size_t a) const { return up_[a]; }
    const Bitset& down(std::size_t a) const { return down_[a]; }

    bool is_cover(std::size_t a, std::size_t b) const {
        return lt(a, b) && (up_[a] & down_[b]).count() == 2;
    }

    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                if (is_cover(a, b)) out.emplace_back(a, b);
        return out;
    }

    Poset dual() const {
        std::vector<Bitset> rows = down_;
        return Poset(names_, std::move(rows));
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (names_[i] == name) return i;
        throw std::invalid_argument("unknown element name: " + name);
    }

private:
    std::vector<std::string> names_;
    std::vector<Bitset> up_;    // row a = {b : a <= b}
    std::vector<Bitset> down_;  // row a = {b : b <= a}
};

/// Builds the reflexive-transitive closure of the given pairs (a <= b).
inline Poset poset_from_relation(std::vector<std::string> names,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::size_t n = names.size();
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) up[i].set(i);
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) throw std::invalid_argument("relation index out of range");
        up[a].set(b);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (up[i].test(k)) up[i] |= up[k];
    return Poset(std::move(names), std::move(up));
}

inline Poset poset_from_relation(std::vector<std::string> names,
                                 const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!idx.emplace(names[i], i).second)
            throw std::invalid_argument("duplicate element name: " + names[i]);
    std::vector<std::pair<std::size_t, std::size_t>> ipairs;
    ipairs.reserve(pairs.size());
    for (auto& [a, b] : pairs) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw std::invalid_argument("unknown element name: " + a);
        if (ib == idx.end()) throw std::invalid_argument("unknown element name: " + b);
        ipairs.emplace_back(ia->second, ib->second);
    }
    return poset_from_relation(std::move(names), ipairs);
}

struct PosetIrreducibles {
    Bitset join_irreducible;
    Bitset meet_irreducible;
};

/// x is join-reducible iff x is the supremum of its strict down-set, i.e.
/// every common upper bound of the strict down-set is above x. (With an
/// empty strict down-set this makes a unique minimum reducible, the supremum
/// of the empty set, while each of several minimal elements stays
/// irreducible.) Meet-irreducibility is dual.
inline PosetIrreducibles poset_irreducibles(const Poset& p) {
    std::size_t n = p.size();
    PosetIrreducibles res{Bitset(n), Bitset(n)};
    for (std::size_t x = 0; x < n; ++x) {
        Bitset cub(n, true);
        p.down(x).for_each_set([&](std::size_t d) {
            if (d != x) cub &= p.up(d);
        });
        if (!cub.is_subset_of(p.up(x))) res.join_irreducible.set(x);

        Bitset clb(n, true);
        p.up(x).for_each_set([&](std::size_t u) {
            if (u != x) clb &= p.down(u);
        });
        if (!clb.is_subset_of(p.down(x))) res.meet_irreducible.set(x);
    }
    return res;
}

/// Meet-irreducibles of the poset that lie above each element.
inline std::vector<std::size_t> poset_m_values(const Poset& p) {
    PosetIrreducibles irr = poset_irreducibles(p);
    std::vector<std::size_t> m(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        m[x] = p.up(x).intersection_count(irr.meet_irreducible);
    return m;
}

inline std::vector<std::size_t> poset_j_values(const Poset& p) {
    PosetIrreducibles irr = poset_irreducibles(p);
    std::vector<std::size_t> j(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        j[x] = p.down(x).intersection_count(irr.join_irreducible);
    return j;
}

/// The order context (P, P, <=) whose concept lattice is the
/// Dedekind-MacNeille completion.
inline FormalContext order_context(const Poset& p) {
    std::vector<Bitset> rows;
    rows.reserve(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) rows.push_back(p.up(a));
    return FormalContext(p.names(), p.names(), std::move(rows));
}

struct DmCompletion {
    ConceptLattice lattice;
    /// Element index -> lattice index of (down-set, up-set).
    std::vector<std::size_t> iota;
    /// Lattice indices outside the image of iota.
    std::vector<std::size_t> added;
};

/// Materializes DM(P) as the concept lattice of (P, P, <=) and locates the
/// canonical embedding. The embedding property is re-verified; a failure
/// would indicate a broken lattice construction.
inline DmCompletion dm_completion(const Poset& p, const BuildOptions& opts = {}) {
    DmCompletion res;
    res.lattice = build_lattice(order_context(p), opts);
    res.iota.resize(p.size());
    Bitset image(res.lattice.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        std::size_t idx = res.lattice.index_of_intent(p.up(x));
        if (!(res.lattice.extent(idx) == p.down(x)))
            throw std::logic_error("dm_completion: embedding image mismatch");
        res.iota[x] = idx;
        image.set(idx);
    }
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < p.size(); ++y)
            if (p.leq(x, y) != res.lattice.leq(res.iota[x], res.iota[y]))
                throw std::logic_error("dm_completion: iota is not an order embedding");
    for (std::size_t i = 0; i < res.lattice.size(); ++i)
        if (!image.test(i)) res.added.push_back(i);
    return res;
}

/// The standard context (J, M, <=|) of the completion, built directly from
/// the poset's irreducibles.
inline FormalContext poset_irreducible_context(const Poset& p) {
    PosetIrreducibles irr = poset_irreducibles(p);
    std::vector<std::size_t> js = irr.join_irreducible.to_indices();
    std::vector<std::size_t> ms = irr.meet_irreducible.to_indices();
    std::vector<std::string> on, an;
    for (std::size_t j : js) on.push_back(p.names()[j]);
    for (std::size_t m : ms) an.push_back(p.names()[m]);
    std::vector<Bitset> rows;
    rows.reserve(js.size());
    for (std::size_t j : js) {
        Bitset r(ms.size());
        for (std::size_t k = 0; k < ms.size(); ++k)
            if (p.leq(j, ms[k])) r.set(k);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// Polynomial check: applies the arrow criterion to (J, M, <=|), whose
/// concept lattice is isomorphic to DM(P). The completion itself is never
/// materialized.
inline bool poset_join_distributive(const Poset& p) {
    return arrows_join_distributive(poset_irreducible_context(p));
}

inline bool poset_meet_distributive(const Poset& p) {
    return poset_join_distributive(p.dual());
}

}  // namespace fclat
