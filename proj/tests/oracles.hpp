#pragma once

// Test-only brute-force oracles. Everything here is deliberately written
// against the definitions (subset enumeration, order scans) rather than the
// library's optimized paths, so the two can be compared.

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fclat/context.hpp"
#include "fclat/context_io.hpp"
#include "fclat/lattice.hpp"
#include "fclat/poset.hpp"

namespace oracle {

using fclat::Bitset;
using fclat::Concept;
using fclat::ConceptLattice;
using fclat::FormalContext;

inline std::string data_path(const std::string& rel) {
    return std::string(FCLAT_TEST_DATA_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FormalContext load_context(const std::string& rel) {
    return fclat::parse_context(slurp(data_path(rel)), fclat::ContextFormat::burmeister);
}

inline ConceptLattice load_lattice(const std::string& rel) {
    return fclat::build_lattice(load_context(rel));
}

/// All closures of all attribute subsets; usable up to ~14 attributes.
inline std::size_t brute_concept_count(const FormalContext& ctx) {
    std::size_t ms = ctx.attribute_count();
    std::set<std::vector<std::size_t>> intents;
    for (std::size_t mask = 0; mask < (std::size_t{1} << ms); ++mask) {
        Bitset s(ms);
        for (std::size_t m = 0; m < ms; ++m)
            if (mask >> m & 1) s.set(m);
        intents.insert(ctx.closure(fclat::Side::attributes, s).to_indices());
    }
    return intents.size();
}

/// Order scans on extents only; independent of the library's join/meet.
struct BruteLattice {
    const ConceptLattice* lat;

    bool leq(std::size_t x, std::size_t y) const {
        return lat->extent(x).is_subset_of(lat->extent(y));
    }

    std::size_t join(std::size_t x, std::size_t y) const {
        std::size_t best = fclat::Bitset::npos;
        for (std::size_t z = 0; z < lat->size(); ++z) {
            if (!leq(x, z) || !leq(y, z)) continue;
            if (best == fclat::Bitset::npos || leq(z, best)) best = z;
        }
        return best;
    }

    std::size_t meet(std::size_t x, std::size_t y) const {
        std::size_t best = fclat::Bitset::npos;
        for (std::size_t z = 0; z < lat->size(); ++z) {
            if (!leq(z, x) || !leq(z, y)) continue;
            if (best == fclat::Bitset::npos || leq(best, z)) best = z;
        }
        return best;
    }

    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        std::size_t n = lat->size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (x == y || !leq(x, y)) continue;
                bool gap = true;
                for (std::size_t z = 0; z < n && gap; ++z)
                    if (z != x && z != y && leq(x, z) && leq(z, y)) gap = false;
                if (gap) out.emplace_back(x, y);
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Join-irreducible by definition: not the join of the strict down-set.
    bool join_irreducible(std::size_t x) const {
        std::vector<std::size_t> below;
        for (std::size_t z = 0; z < lat->size(); ++z)
            if (z != x && leq(z, x)) below.push_back(z);
        if (below.empty()) return false;  // the bottom is the empty join
        std::size_t acc = below[0];
        for (std::size_t i = 1; i < below.size(); ++i) acc = join(acc, below[i]);
        return acc != x;
    }

    bool meet_irreducible(std::size_t x) const {
        std::vector<std::size_t> above;
        for (std::size_t z = 0; z < lat->size(); ++z)
            if (z != x && leq(x, z)) above.push_back(z);
        if (above.empty()) return false;
        std::size_t acc = above[0];
        for (std::size_t i = 1; i < above.size(); ++i) acc = meet(acc, above[i]);
        return acc != x;
    }

    std::size_t j_value(std::size_t x) const {
        std::size_t c = 0;
        for (std::size_t z = 0; z < lat->size(); ++z)
            if (join_irreducible(z) && leq(z, x)) ++c;
        return c;
    }

    std::size_t m_value(std::size_t x) const {
        std::size_t c = 0;
        for (std::size_t z = 0; z < lat->size(); ++z)
            if (meet_irreducible(z) && leq(x, z)) ++c;
        return c;
    }

    bool distributive() const {
        std::size_t n = lat->size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
                    if (join(x, meet(y, z)) != meet(join(x, y), join(x, z))) return false;
                }
        return true;
    }

    bool modular() const {
        std::size_t n = lat->size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (leq(z, x) && meet(x, join(y, z)) != join(meet(x, y), z)) return false;
        return true;
    }
};

inline FormalContext random_context(std::mt19937_64& rng, std::size_t max_objects = 8,
                                    std::size_t max_attributes = 8) {
    std::uniform_int_distribution<std::size_t> gd(0, max_objects), md(0, max_attributes);
    std::uniform_real_distribution<double> pd(0.2, 0.8);
    std::size_t gs = gd(rng), ms = md(rng);
    double p = pd(rng);
    std::bernoulli_distribution cell(p);
    std::vector<std::string> on, an;
    for (std::size_t g = 0; g < gs; ++g) on.push_back("g" + std::to_string(g));
    for (std::size_t m = 0; m < ms; ++m) an.push_back("m" + std::to_string(m));
    std::vector<Bitset> rows;
    for (std::size_t g = 0; g < gs; ++g) {
        Bitset r(ms);
        for (std::size_t m = 0; m < ms; ++m)
            if (cell(rng)) r.set(m);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// Random DAG on {0..n-1} with edges i < j taken with probability p, then
/// the reflexive-transitive closure.
inline fclat::Poset random_poset(std::mt19937_64& rng, std::size_t max_elements = 12) {
    std::uniform_int_distribution<std::size_t> nd(0, max_elements);
    std::size_t n = nd(rng);
    double ps[] = {0.1, 0.3, 0.5};
    std::bernoulli_distribution edge(ps[rng() % 3]);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (edge(rng)) pairs.emplace_back(i, j);
    return fclat::poset_from_relation(std::move(names), pairs);
}

/// Context whose concept lattice is the direct product of the operands'
/// lattices: disjoint union of objects/attributes with full cross incidence.
inline FormalContext context_sum(const FormalContext& a, const FormalContext& b) {
    std::vector<std::string> on, an;
    for (const auto& s : a.objects()) on.push_back("a_" + s);
    for (const auto& s : b.objects()) on.push_back("b_" + s);
    for (const auto& s : a.attributes()) an.push_back("a_" + s);
    for (const auto& s : b.attributes()) an.push_back("b_" + s);
    std::size_t ms = a.attribute_count() + b.attribute_count();
    std::vector<Bitset> rows;
    for (std::size_t g = 0; g < a.object_count(); ++g) {
        Bitset r(ms);
        for (std::size_t m = 0; m < a.attribute_count(); ++m)
            if (a.incident(g, m)) r.set(m);
        for (std::size_t m = 0; m < b.attribute_count(); ++m) r.set(a.attribute_count() + m);
        rows.push_back(std::move(r));
    }
    for (std::size_t g = 0; g < b.object_count(); ++g) {
        Bitset r(ms);
        for (std::size_t m = 0; m < a.attribute_count(); ++m) r.set(m);
        for (std::size_t m = 0; m < b.attribute_count(); ++m)
            if (b.incident(g, m)) r.set(a.attribute_count() + m);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// Fixed-density random context of a given shape (for scale tests).
inline FormalContext synth_context(std::size_t gs, std::size_t ms, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution cell(p);
    std::vector<std::string> on, an;
    for (std::size_t g = 0; g < gs; ++g) on.push_back("g" + std::to_string(g));
    for (std::size_t m = 0; m < ms; ++m) an.push_back("m" + std::to_string(m));
    std::vector<Bitset> rows;
    for (std::size_t g = 0; g < gs; ++g) {
        Bitset r(ms);
        for (std::size_t m = 0; m < ms; ++m)
            if (cell(rng)) r.set(m);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// Context of an n-element chain lattice: (n-1)x(n-1) strict upper triangle.
inline FormalContext chain_context(std::size_t n) {
    if (n < 1) throw std::invalid_argument("chain needs at least one element");
    std::size_t k = n - 1;
    std::vector<std::string> on, an;
    for (std::size_t i = 0; i < k; ++i) {
        on.push_back("g" + std::to_string(i));
        an.push_back("m" + std::to_string(i));
    }
    std::vector<Bitset> rows;
    for (std::size_t i = 0; i < k; ++i) {
        Bitset r(k);
        for (std::size_t j = i + 1; j < k; ++j) r.set(j);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

/// Contranominal scale: g_i has every attribute except m_i; lattice is the
/// Boolean lattice 2^n.
inline FormalContext contranominal_context(std::size_t n) {
    std::vector<std::string> on, an;
    for (std::size_t i = 0; i < n; ++i) {
        on.push_back("g" + std::to_string(i));
        an.push_back("m" + std::to_string(i));
    }
    std::vector<Bitset> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Bitset r(n, true);
        r.reset(i);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

}  // namespace oracle
