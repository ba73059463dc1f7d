#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fclat/rises.hpp"
#include "oracles.hpp"

using namespace fclat;

TEST_CASE("rises on covering pairs of the figures") {
    ConceptLattice m3 = oracle::load_lattice("figures/m3.cxt");
    LatticeElementStats m3st = element_stats(m3);
    for (std::size_t a : m3.atoms()) {
        Rise r = rise(m3, m3st, a, m3.top_index);
        REQUIRE(r.delta_j == 2);
        Rise rb = rise(m3, m3st, m3.bottom_index, a);
        REQUIRE(rb.delta_m == 2);
    }

    ConceptLattice cube = build_lattice(oracle::contranominal_context(3));
    LatticeElementStats cst = element_stats(cube);
    for (auto [lo, up] : cube.covers) {
        Rise r = rise(cube, cst, lo, up);
        REQUIRE(r.delta_j == 1);
        REQUIRE(r.delta_m == 1);
    }

    // N5: the atom not below the middle element covers the top directly and
    // its join-rise there is two.
    ConceptLattice n5 = oracle::load_lattice("figures/n5.cxt");
    LatticeElementStats n5st = element_stats(n5);
    std::size_t lone_atom = Bitset::npos;
    for (std::size_t a : n5.atoms())
        if (n5.is_cover(a, n5.top_index)) lone_atom = a;
    REQUIRE(lone_atom != Bitset::npos);
    REQUIRE(rise(n5, n5st, lone_atom, n5.top_index).delta_j == 2);
}

TEST_CASE("rise accepts any comparable pair and rejects the rest") {
    ConceptLattice s7 = oracle::load_lattice("figures/s7.cxt");
    LatticeElementStats st = element_stats(s7);
    Rise whole = rise(s7, st, s7.bottom_index, s7.top_index);
    REQUIRE(whole.delta_j == 4);
    REQUIRE(whole.delta_m == 3);
    REQUIRE_THROWS_AS(rise(s7, st, s7.top_index, s7.bottom_index), std::invalid_argument);
    REQUIRE_THROWS_AS(rise(s7, st, s7.top_index, s7.top_index), std::invalid_argument);
    auto atoms = s7.atoms();
    REQUIRE_THROWS_AS(rise(s7, st, atoms[0], atoms[1]), std::invalid_argument);
}

static RiseReport report_of(const char* name, unsigned threads = 0) {
    ConceptLattice lat = oracle::load_lattice(name);
    LatticeElementStats st = element_stats(lat);
    return rise_report(lat, st, threads);
}

TEST_CASE("reports for the figure lattices") {
    RiseReport m3 = report_of("figures/m3.cxt");
    REQUIRE(m3.cover_count == 6);
    REQUIRE(m3.nur_join_abs == 3);
    REQUIRE(m3.nur_meet_abs == 3);
    REQUIRE(m3.nur_join_rel == 0.5);
    REQUIRE(m3.nur_meet_rel == 0.5);

    RiseReport s7 = report_of("figures/s7.cxt");
    REQUIRE(s7.nur_meet_abs == 0);  // join-distributive
    REQUIRE(s7.nur_join_abs == 3);

    RiseReport n5 = report_of("figures/n5.cxt");
    REQUIRE(n5.nur_join_abs == 1);
    REQUIRE(n5.nur_meet_abs == 1);

    RiseReport m3m3 = report_of("figures/m3m3.cxt");
    REQUIRE(m3m3.nur_join_abs > 0);
    REQUIRE(m3m3.nur_meet_abs > 0);

    RiseReport c2 = report_of("figures/c2.cxt");
    REQUIRE(c2.nur_join_abs == 0);
    REQUIRE(c2.nur_meet_abs == 0);
    REQUIRE(c2.lattice_size == 12);

    // single-element lattice: no covers, both measures read fully distributive
    FormalContext empty;
    ConceptLattice one = build_lattice(empty);
    LatticeElementStats ost = element_stats(one);
    RiseReport orep = rise_report(one, ost);
    REQUIRE(orep.cover_count == 0);
    REQUIRE(orep.nur_join_rel == 0.0);
    REQUIRE(orep.nur_meet_rel == 0.0);
}

TEST_CASE("atom and coatom summaries") {
    RiseReport s7 = report_of("figures/s7.cxt");
    AtomCoatomSummary s = atom_coatom_summary(s7);
    REQUIRE(s.atom_count == 2);
    REQUIRE(s.atoms_nonunit_meet == 0);
    REQUIRE(s.coatom_count == 3);
    REQUIRE(s.coatoms_nonunit_join == 3);

    AtomCoatomSummary m3 = atom_coatom_summary(report_of("figures/m3.cxt"));
    REQUIRE(m3.atom_count == 3);
    REQUIRE(m3.atoms_nonunit_meet == 3);
    REQUIRE(m3.coatoms_nonunit_join == 3);
}

TEST_CASE("report invariants on random lattices") {
    std::mt19937_64 rng(211);
    for (int it = 0; it < 80; ++it) {
        ConceptLattice lat = build_lattice(oracle::random_context(rng));
        LatticeElementStats st = element_stats(lat);
        RiseReport rep = rise_report(lat, st);

        REQUIRE(rep.per_cover_rises.size() == rep.cover_count);
        std::size_t meet_total = 0, join_total = 0;
        for (const CoverRise& c : rep.per_cover_rises) {
            REQUIRE(c.delta_j >= 1);
            REQUIRE(c.delta_m >= 1);
        }
        for (auto& [h, b] : rep.by_height_meet) meet_total += b.total;
        for (auto& [h, b] : rep.by_height_join) join_total += b.total;
        REQUIRE(meet_total == rep.cover_count);
        REQUIRE(join_total == rep.cover_count);
        REQUIRE(rep.nur_join_abs <= rep.cover_count);
        if (rep.cover_count) {
            // bucket 0 is exactly the atom covers
            REQUIRE(rep.by_height_meet.at(0).total == rep.atom_count);
            REQUIRE(rep.by_height_meet.at(0).nonunit == rep.atoms_nonunit_meet);
        }
        REQUIRE(rep.nur_meet_abs <= rep.cover_count);
        if (rep.cover_count) {
            REQUIRE(rep.nur_join_rel == double(rep.nur_join_abs) / double(rep.cover_count));
            REQUIRE(rep.nur_meet_rel == double(rep.nur_meet_abs) / double(rep.cover_count));
        }
    }
}

TEST_CASE("telescoping along maximal chains") {
    std::mt19937_64 rng(223);
    for (int it = 0; it < 60; ++it) {
        ConceptLattice lat = build_lattice(oracle::random_context(rng));
        LatticeElementStats st = element_stats(lat);
        for (int walk = 0; walk < 10; ++walk) {
            std::size_t x = lat.bottom_index;
            std::size_t sum_j = 0, sum_m = 0;
            while (!lat.upper_covers[x].empty()) {
                const auto& ups = lat.upper_covers[x];
                std::size_t y = ups[rng() % ups.size()];
                sum_j += st.j[y] - st.j[x];
                sum_m += st.m[x] - st.m[y];
                x = y;
            }
            REQUIRE(x == lat.top_index);
            REQUIRE(sum_j == st.join_irreducible_count);
            REQUIRE(sum_m == st.meet_irreducible_count);
        }
    }
}

TEST_CASE("duality: transposed context swaps the report sides") {
    std::mt19937_64 rng(227);
    for (int it = 0; it < 60; ++it) {
        FormalContext ctx = oracle::random_context(rng);
        RiseReport a = [&] {
            ConceptLattice lat = build_lattice(ctx);
            LatticeElementStats st = element_stats(lat);
            return rise_report(lat, st);
        }();
        RiseReport b = [&] {
            ConceptLattice lat = build_lattice(ctx.transpose());
            LatticeElementStats st = element_stats(lat);
            return rise_report(lat, st);
        }();
        REQUIRE(a.lattice_size == b.lattice_size);
        REQUIRE(a.cover_count == b.cover_count);
        REQUIRE(a.nur_join_abs == b.nur_meet_abs);
        REQUIRE(a.nur_meet_abs == b.nur_join_abs);
        REQUIRE(a.atom_count == b.coatom_count);
        REQUIRE(a.atoms_nonunit_meet == b.coatoms_nonunit_join);
    }
}

TEST_CASE("reports are identical for any worker count") {
    for (const char* name : {"figures/s7.cxt", "figures/m3m3.cxt", "figures/c2.cxt"}) {
        RiseReport a = report_of(name, 1);
        RiseReport b = report_of(name, 4);
        REQUIRE(a.nur_join_abs == b.nur_join_abs);
        REQUIRE(a.nur_meet_abs == b.nur_meet_abs);
        REQUIRE(a.per_cover_rises.size() == b.per_cover_rises.size());
        for (std::size_t i = 0; i < a.per_cover_rises.size(); ++i) {
            REQUIRE(a.per_cover_rises[i].lower == b.per_cover_rises[i].lower);
            REQUIRE(a.per_cover_rises[i].delta_j == b.per_cover_rises[i].delta_j);
        }
        REQUIRE(a.by_height_meet.size() == b.by_height_meet.size());
    }
}

TEST_CASE("half-up rounding to two decimals") {
    REQUIRE(relative_2dec(5, 18) == "0.28");   // 0.2777...
    REQUIRE(relative_2dec(1, 5) == "0.20");
    REQUIRE(relative_2dec(0, 0) == "0.00");
    REQUIRE(relative_2dec(1, 8) == "0.13");    // 0.125 rounds up
    REQUIRE(relative_2dec(3, 3) == "1.00");
    REQUIRE(relative_2dec(1, 200) == "0.01");  // 0.005 rounds up
    REQUIRE(relative_2dec(1, 400) == "0.00");  // 0.0025 rounds down
}
