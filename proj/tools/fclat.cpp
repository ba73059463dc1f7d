// fclat: concept lattices, rises and local distributivity from the command line.

#include <cstdio>
#include <exception>
#include <iostream>
#include <new>
#include <string>

#include <CLI11.hpp>

#include "fclat/analyze.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        fclat::write_file(out_path, text);
}

std::string dump(const fclat::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concept lattices, rises and local distributivity"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    fclat::AnalyzeOptions opts;
    unsigned long long seed = 0;  // reserved for randomized tooling; analyses are deterministic
    std::string format = "json";
    app.add_option("--threads", opts.threads, "worker threads (0 = hardware)");
    app.add_option("--memory-budget", opts.memory_budget, "memory budget in bytes");
    app.add_option("--seed", seed, "seed for randomized tooling (analyses are deterministic)");
    app.add_option("--format", format, "record output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string path, out, covers_csv_path, by_height_path, svg_path, dump_lattice_path;
    std::string report_json_path, dir, out_dir = "plots", convert_in, convert_out;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one context or poset file");
    analyze->add_option("path", path, "input .cxt/.csv context or .json poset")->required();
    analyze->add_flag("--check", opts.check, "attach distributivity verdicts");
    analyze->add_flag("--large", opts.large, "allow large runs (16 GiB default budget)");
    analyze->add_flag("--timings", opts.timings, "attach wall-clock milliseconds");
    analyze->add_option("--covers-csv", covers_csv_path, "write per-cover rises CSV");
    analyze->add_option("--report-json", report_json_path, "write the full rise report as JSON");
    analyze->add_option("--by-height-csv", by_height_path, "write height-distribution CSV");
    analyze->add_option("--svg", svg_path, "write height-distribution SVG");
    analyze->add_option("--dump-lattice", dump_lattice_path, "write the lattice as JSON");
    analyze->add_option("-o,--output", out, "write the record here instead of stdout");

    CLI::App* table = app.add_subcommand("table", "summary CSV for a directory of contexts");
    table->add_option("dir", dir, "directory with .cxt/.csv files")->required();
    table->add_flag("--large", opts.large, "allow large runs");
    table->add_option("-o,--output", out, "write the CSV here instead of stdout");

    CLI::App* plots = app.add_subcommand("plots", "scatter and height-distribution SVGs");
    plots->add_option("dir", dir, "directory with .cxt/.csv files")->required();
    plots->add_option("--out-dir", out_dir, "output directory (default: plots)");
    plots->add_flag("--large", opts.large, "allow large runs");

    CLI::App* dm = app.add_subcommand("dm", "Dedekind-MacNeille completion of a poset");
    dm->add_option("path", path, "input .json poset")->required();
    dm->add_option("-o,--output", out, "write the completion JSON here");

    CLI::App* check = app.add_subcommand("check", "distributivity verdict only");
    check->add_option("path", path, "input .cxt/.csv context or .json poset")->required();
    check->add_option("-o,--output", out, "write the verdict JSON here");

    CLI::App* convert = app.add_subcommand("convert", "convert between .cxt and .csv");
    convert->add_option("input", convert_in, "input context file")->required();
    convert->add_option("output", convert_out, "output context file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            fclat::AnalysisRecord rec = fclat::analyze_path(path, opts);
            if (!covers_csv_path.empty())
                fclat::write_file(covers_csv_path, fclat::covers_csv(rec.report, rec.stats));
            if (!report_json_path.empty())
                fclat::write_file(report_json_path,
                                  dump(fclat::report_to_json(rec.report, rec.stats)));
            if (!by_height_path.empty())
                fclat::write_file(by_height_path, fclat::by_height_csv(rec.report));
            if (!svg_path.empty())
                fclat::write_file(svg_path,
                                  fclat::height_distribution_svg(rec.name, rec.report));
            if (!dump_lattice_path.empty())
                fclat::write_file(dump_lattice_path,
                                  dump(fclat::lattice_to_json(rec.lattice, rec.context.objects(),
                                                              rec.context.attributes())));
            if (format == "csv")
                emit(fclat::summary_csv(rec.name, rec.report), out);
            else
                emit(dump(fclat::record_to_json(rec, opts)), out);
        } else if (*table) {
            auto rows = fclat::analyze_directory(dir, opts);
            emit(fclat::table_csv(std::move(rows)), out);
        } else if (*plots) {
            auto rows = fclat::analyze_directory(dir, opts);
            for (const std::string& f : fclat::write_plots(rows, out_dir))
                std::printf("%s\n", f.c_str());
        } else if (*dm) {
            emit(dump(fclat::dm_json(path, opts)), out);
        } else if (*check) {
            emit(dump(fclat::check_json(path, opts)), out);
        } else if (*convert) {
            fclat::convert_context(convert_in, convert_out);
        }
    } catch (const fclat::capacity_error& e) {
        std::fprintf(stderr, "fclat: resource limit: %s\n", e.what());
        return 3;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "fclat: out of memory\n");
        return 3;
    } catch (const fclat::parse_error& e) {
        std::fprintf(stderr, "fclat: input error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "fclat: input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fclat: %s\n", e.what());
        return 1;
    }
    return 0;
}
