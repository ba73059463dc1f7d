#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fclat/lattice.hpp"
#include "fclat/parallel.hpp"

namespace fclat {

struct Rise {
    std::size_t delta_j;
    std::size_t delta_m;
};

/// Rise of a comparable pair x < y: delta_j = j(y) - j(x), delta_m = m(x) - m(y).
/// Both are at least 1 on covering pairs.
inline Rise rise(const ConceptLattice& lat, const LatticeElementStats& stats, std::size_t x,
                 std::size_t y) {
    if (!lat.lt(x, y)) throw std::invalid_argument("rise requires a comparable pair x < y");
    return {stats.j[y] - stats.j[x], stats.m[x] - stats.m[y]};
}

struct CoverRise {
    std::size_t lower;
    std::size_t upper;
    std::size_t delta_j;
    std::size_t delta_m;
};

struct HeightBucket {
    std::size_t nonunit = 0;
    std::size_t total = 0;
};

struct RiseReport {
    std::size_t lattice_size = 0;
    std::size_t cover_count = 0;
    std::size_t nur_join_abs = 0;
    std::size_t nur_meet_abs = 0;
    double nur_join_rel = 0.0;
    double nur_meet_rel = 0.0;
    std::vector<CoverRise> per_cover_rises;  // in cover-list order
    /// Keyed by the height of the lower element of the covering pair.
    std::map<std::size_t, HeightBucket> by_height_meet;
    std::map<std::size_t, HeightBucket> by_height_join;
    std::size_t atoms_nonunit_meet = 0;
    std::size_t atom_count = 0;
    std::size_t coatoms_nonunit_join = 0;
    std::size_t coatom_count = 0;
};

/// Aggregates rises over all covering pairs. The parallel fold is a
/// commutative count, so the report does not depend on the worker count.
inline RiseReport rise_report(const ConceptLattice& lat, const LatticeElementStats& stats,
                              unsigned threads = 0) {
    RiseReport rep;
    rep.lattice_size = lat.size();
    rep.cover_count = lat.covers.size();
    rep.per_cover_rises.resize(rep.cover_count);
    rep.atom_count = lat.atoms().size();
    rep.coatom_count = lat.coatoms().size();

    struct Partial {
        std::size_t nur_join = 0, nur_meet = 0, atoms_meet = 0, coatoms_join = 0;
        std::map<std::size_t, HeightBucket> meet, join;
    };
    std::vector<Partial> parts(std::max<std::size_t>(1, resolve_threads(threads)));

    parallel_chunks(rep.cover_count, threads, [&](unsigned worker, std::size_t b, std::size_t e) {
        Partial& p = parts[worker];
        for (std::size_t i = b; i < e; ++i) {
            auto [lo, up] = lat.covers[i];
            std::size_t dj = stats.j[up] - stats.j[lo];
            std::size_t dm = stats.m[lo] - stats.m[up];
            rep.per_cover_rises[i] = {lo, up, dj, dm};
            std::size_t h = stats.height[lo];
            auto& bm = p.meet[h];
            auto& bj = p.join[h];
            ++bm.total;
            ++bj.total;
            if (dm > 1) {
                ++p.nur_meet;
                ++bm.nonunit;
                if (lo == lat.bottom_index) ++p.atoms_meet;
            }
            if (dj > 1) {
                ++p.nur_join;
                ++bj.nonunit;
                if (up == lat.top_index) ++p.coatoms_join;
            }
        }
    });

    for (const Partial& p : parts) {
        rep.nur_join_abs += p.nur_join;
        rep.nur_meet_abs += p.nur_meet;
        rep.atoms_nonunit_meet += p.atoms_meet;
        rep.coatoms_nonunit_join += p.coatoms_join;
        for (auto& [h, b] : p.meet) {
            rep.by_height_meet[h].nonunit += b.nonunit;
            rep.by_height_meet[h].total += b.total;
        }
        for (auto& [h, b] : p.join) {
            rep.by_height_join[h].nonunit += b.nonunit;
            rep.by_height_join[h].total += b.total;
        }
    }
    if (rep.cover_count) {
        rep.nur_join_rel = double(rep.nur_join_abs) / double(rep.cover_count);
        rep.nur_meet_rel = double(rep.nur_meet_abs) / double(rep.cover_count);
    }
    return rep;
}

struct AtomCoatomSummary {
    std::size_t atoms_nonunit_meet;
    std::size_t atom_count;
    std::size_t coatoms_nonunit_join;
    std::size_t coatom_count;
};

inline AtomCoatomSummary atom_coatom_summary(const RiseReport& rep) {
    return {rep.atoms_nonunit_meet, rep.atom_count, rep.coatoms_nonunit_join, rep.coatom_count};
}

/// Exact half-up rounding of abs/total to two decimals, as a string.
inline std::string relative_2dec(std::size_t abs, std::size_t total) {
    std::size_t hundredths = total == 0 ? 0 : (200 * abs + total) / (2 * total);
    std::string s = std::to_string(hundredths / 100) + ".";
    std::size_t frac = hundredths % 100;
    if (frac < 10) s += '0';
    s += std::to_string(frac);
    return s;
}

/// covers.csv: one line per covering pair.
inline std::string covers_csv(const RiseReport& rep, const LatticeElementStats& stats) {
    std::ostringstream out;
    out << "lower,upper,delta_j,delta_m,lower_height\n";
    for (const CoverRise& c : rep.per_cover_rises)
        out << c.lower << ',' << c.upper << ',' << c.delta_j << ',' << c.delta_m << ','
            << stats.height[c.lower] << '\n';
    return out.str();
}

/// summary.csv: one row shaped like the headline statistics table.
inline std::string summary_csv(const std::string& name, const RiseReport& rep) {
    std::ostringstream out;
    out << "dataset,lattice,covers,nur_join_abs,nur_join_rel,nur_meet_abs,nur_meet_rel\n";
    out << name << ',' << rep.lattice_size << ',' << rep.cover_count << ',' << rep.nur_join_abs
        << ',' << relative_2dec(rep.nur_join_abs, rep.cover_count) << ',' << rep.nur_meet_abs
        << ',' << relative_2dec(rep.nur_meet_abs, rep.cover_count) << '\n';
    return out.str();
}

}  // namespace fclat
