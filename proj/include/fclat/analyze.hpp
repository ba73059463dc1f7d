#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fclat/context_io.hpp"
#include "fclat/distributivity.hpp"
#include "fclat/json_io.hpp"
#include "fclat/poset.hpp"
#include "fclat/rises.hpp"
#include "fclat/svg.hpp"

namespace fclat {

struct AnalyzeOptions {
    unsigned threads = 0;
    std::size_t memory_budget = std::size_t{2} << 30;
    bool large = false;    // lifts the default budget to 16 GiB
    bool check = false;    // attach distributivity verdicts
    bool timings = false;  // attach wall-clock ms (non-deterministic by nature)
    BuildOptions::Algorithm algorithm = BuildOptions::Algorithm::automatic;

    BuildOptions build_options() const {
        BuildOptions b;
        b.algorithm = algorithm;
        b.threads = threads;
        b.memory_budget = large && memory_budget == (std::size_t{2} << 30)
                              ? std::size_t{16} << 30
                              : memory_budget;
        return b;
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write " + path);
    out << content;
}

enum class InputKind { context, poset };

inline InputKind input_kind(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".cxt" || ext == ".csv") return InputKind::context;
    if (ext == ".json") return InputKind::poset;
    throw parse_error("unrecognized input extension '" + ext + "' (expect .cxt, .csv or .json)");
}

inline FormalContext load_context_file(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    ContextFormat fmt = ext == ".csv" ? ContextFormat::csv : ContextFormat::burmeister;
    return parse_context(read_file(path), fmt);
}

struct AnalysisRecord {
    std::string name;
    InputKind kind = InputKind::context;
    FormalContext context;  // the analyzed context (order context of a poset input)
    ConceptLattice lattice;
    LatticeElementStats stats;
    RiseReport report;
    std::optional<DistributivityVerdict> verdict;
    long long wall_ms = 0;
};

/// Runs the whole pipeline on a .cxt/.csv context or a .json poset (a poset
/// is analyzed through its completion).
inline AnalysisRecord analyze_path(const std::string& path, const AnalyzeOptions& opts = {}) {
    auto start = std::chrono::steady_clock::now();
    AnalysisRecord rec;
    rec.name = std::filesystem::path(path).stem().string();
    rec.kind = input_kind(path);
    if (rec.kind == InputKind::context) {
        rec.context = load_context_file(path);
    } else {
        Poset p = parse_poset_json(read_file(path));
        rec.context = order_context(p);
    }
    BuildOptions bopts = opts.build_options();
    rec.lattice = build_lattice(rec.context, bopts);
    rec.stats = element_stats(rec.lattice);
    rec.report = rise_report(rec.lattice, rec.stats, opts.threads);
    if (opts.check) {
        DistributivityOptions dopts;
        dopts.threads = opts.threads;
        rec.verdict = decide_verdict(rec.lattice, rec.stats, &rec.context, dopts);
    }
    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return rec;
}

inline ordered_json record_to_json(const AnalysisRecord& rec, const AnalyzeOptions& opts = {}) {
    ordered_json j;
    j["dataset"] = rec.name;
    j["source"] = rec.kind == InputKind::context ? "context" : "poset";
    j["objects"] = rec.context.object_count();
    j["attributes"] = rec.context.attribute_count();
    j["lattice_size"] = rec.report.lattice_size;
    j["cover_count"] = rec.report.cover_count;
    j["height"] = rec.stats.height[rec.lattice.top_index];
    j["nur_join"] = {{"abs", rec.report.nur_join_abs},
                     {"rel", rec.report.nur_join_rel},
                     {"rel_2dec", relative_2dec(rec.report.nur_join_abs, rec.report.cover_count)}};
    j["nur_meet"] = {{"abs", rec.report.nur_meet_abs},
                     {"rel", rec.report.nur_meet_rel},
                     {"rel_2dec", relative_2dec(rec.report.nur_meet_abs, rec.report.cover_count)}};
    j["atoms"] = {{"nonunit_meet", rec.report.atoms_nonunit_meet},
                  {"count", rec.report.atom_count}};
    j["coatoms"] = {{"nonunit_join", rec.report.coatoms_nonunit_join},
                    {"count", rec.report.coatom_count}};
    if (opts.timings) j["wall_ms"] = rec.wall_ms;
    if (rec.verdict)
        j["verdicts"] = verdict_to_json(*rec.verdict, rec.lattice, &rec.context.objects(),
                                        &rec.context.attributes());
    return j;
}

inline std::string by_height_csv(const RiseReport& rep) {
    std::ostringstream out;
    out << "height,meet_nonunit,meet_total,join_nonunit,join_total\n";
    for (auto& [h, b] : rep.by_height_meet) {
        HeightBucket join{};
        auto it = rep.by_height_join.find(h);
        if (it != rep.by_height_join.end()) join = it->second;
        out << h << ',' << b.nonunit << ',' << b.total << ',' << join.nonunit << ','
            << join.total << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Directory batch (table / plots)
// ---------------------------------------------------------------------------

struct TableRow {
    std::string name;
    bool ok = false;
    std::string error;
    AnalysisRecord rec;
};

inline std::vector<std::string> context_files_in(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto ext = e.path().extension().string();
        if (ext == ".cxt" || ext == ".csv") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

inline std::vector<TableRow> analyze_directory(const std::string& dir,
                                               const AnalyzeOptions& opts = {}) {
    std::vector<TableRow> rows;
    for (const std::string& path : context_files_in(dir)) {
        TableRow row;
        row.name = std::filesystem::path(path).stem().string();
        try {
            row.rec = analyze_path(path, opts);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// One CSV row per dataset, sorted by lattice size (failed files go last,
/// by name, with the error in the last column).
inline std::string table_csv(std::vector<TableRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
        if (a.ok != b.ok) return a.ok;
        if (!a.ok) return a.name < b.name;
        if (a.rec.report.lattice_size != b.rec.report.lattice_size)
            return a.rec.report.lattice_size < b.rec.report.lattice_size;
        return a.name < b.name;
    });
    std::ostringstream out;
    out << "dataset,lattice,covers,nur_join_abs,nur_join_rel,nur_meet_abs,nur_meet_rel,"
           "atoms_nonunit,atoms,coatoms_nonunit,coatoms,errors\n";
    for (const TableRow& r : rows) {
        if (r.ok) {
            const RiseReport& rep = r.rec.report;
            out << r.name << ',' << rep.lattice_size << ',' << rep.cover_count << ','
                << rep.nur_join_abs << ',' << relative_2dec(rep.nur_join_abs, rep.cover_count)
                << ',' << rep.nur_meet_abs << ','
                << relative_2dec(rep.nur_meet_abs, rep.cover_count) << ','
                << rep.atoms_nonunit_meet << ',' << rep.atom_count << ','
                << rep.coatoms_nonunit_join << ',' << rep.coatom_count << ",\n";
        } else {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << r.name << ",,,,,,,,,,," << msg << "\n";
        }
    }
    return out.str();
}

/// Writes scatter.svg plus one height-distribution polyline per dataset.
inline std::vector<std::string> write_plots(const std::vector<TableRow>& rows,
                                            const std::string& out_dir) {
    std::vector<const TableRow*> ok;
    for (const TableRow& r : rows)
        if (r.ok) ok.push_back(&r);
    if (ok.empty()) throw parse_error("no analyzable datasets for plots");
    std::sort(ok.begin(), ok.end(),
              [](const TableRow* a, const TableRow* b) { return a->name < b->name; });

    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    std::vector<ScatterPoint> pts;
    for (const TableRow* r : ok)
        pts.push_back({r->name, r->rec.report.cover_count, r->rec.report.nur_join_rel,
                       r->rec.report.nur_meet_rel});
    std::string scatter_path = out_dir + "/scatter.svg";
    write_file(scatter_path, scatter_svg(pts));
    written.push_back(scatter_path);
    for (const TableRow* r : ok) {
        std::string path = out_dir + "/" + r->name + "_height.svg";
        write_file(path, height_distribution_svg(r->name, r->rec.report));
        written.push_back(path);
    }
    return written;
}

// ---------------------------------------------------------------------------
// check / dm / convert
// ---------------------------------------------------------------------------

inline ordered_json check_json(const std::string& path, const AnalyzeOptions& opts = {}) {
    if (input_kind(path) == InputKind::context) {
        FormalContext ctx = load_context_file(path);
        ConceptLattice lat = build_lattice(ctx, opts.build_options());
        LatticeElementStats st = element_stats(lat);
        DistributivityOptions dopts;
        dopts.threads = opts.threads;
        DistributivityVerdict v = decide_verdict(lat, st, &ctx, dopts);
        return verdict_to_json(v, lat, &ctx.objects(), &ctx.attributes());
    }
    Poset p = parse_poset_json(read_file(path));
    ordered_json j;
    bool jd = poset_join_distributive(p);
    bool md = poset_meet_distributive(p);
    j["join_distributive"] = jd;
    j["meet_distributive"] = md;
    j["distributive"] = jd && md;
    j["method"] = "irreducible_context_arrows";
    return j;
}

inline ordered_json dm_json(const std::string& path, const AnalyzeOptions& opts = {}) {
    Poset p = parse_poset_json(read_file(path));
    DmCompletion dm = dm_completion(p, opts.build_options());
    return dm_to_json(dm, p);
}

inline void convert_context(const std::string& in_path, const std::string& out_path) {
    FormalContext ctx = load_context_file(in_path);
    auto ext = std::filesystem::path(out_path).extension().string();
    if (ext == ".cxt")
        write_file(out_path, write_burmeister(ctx));
    else if (ext == ".csv")
        write_file(out_path, write_csv(ctx));
    else
        throw parse_error("convert target must end in .cxt or .csv");
}

}  // namespace fclat
