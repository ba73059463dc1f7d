#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "fclat/analyze.hpp"
#include "oracles.hpp"

using namespace fclat;
namespace fs = std::filesystem;

namespace {

std::string figure(const char* name) { return oracle::data_path(std::string("figures/") + name); }
std::string dataset(const char* name) { return oracle::data_path(std::string("contexts/") + name); }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fclat_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("analyze_path produces the published planets numbers") {
    AnalysisRecord rec = analyze_path(dataset("planets.cxt"));
    REQUIRE(rec.report.lattice_size == 12);
    REQUIRE(rec.report.cover_count == 18);
    REQUIRE(rec.report.nur_join_abs == 5);
    REQUIRE(rec.report.nur_meet_abs == 5);
    ordered_json j = record_to_json(rec);
    REQUIRE(j["dataset"] == "planets");
    REQUIRE(j["nur_join"]["rel_2dec"] == "0.28");
    REQUIRE(j["atoms"]["nonunit_meet"] == 5);
    REQUIRE(j["atoms"]["count"] == 5);
    REQUIRE(j["coatoms"]["nonunit_join"] == 1);
    REQUIRE(j["coatoms"]["count"] == 2);
    REQUIRE(!j.contains("wall_ms"));  // deterministic by default
}

TEST_CASE("analyzing an empty context yields the one-concept lattice") {
    TempDir tmp;
    std::string p = (tmp.path / "empty.cxt").string();
    write_file(p, "B\n0\n0\n");
    AnalysisRecord rec = analyze_path(p);
    REQUIRE(rec.report.lattice_size == 1);
    REQUIRE(rec.report.cover_count == 0);
    ordered_json j = record_to_json(rec);
    REQUIRE(j["nur_join"]["rel"] == 0.0);
    REQUIRE(j["nur_meet"]["rel_2dec"] == "0.00");
}

TEST_CASE("the memory budget surfaces as a capacity error") {
    AnalyzeOptions opts;
    opts.memory_budget = 256;
    REQUIRE_THROWS_AS(analyze_path(dataset("tealady.cxt"), opts), capacity_error);
}

TEST_CASE("analyze accepts posets through their completion") {
    TempDir tmp;
    std::string p = (tmp.path / "chain.json").string();
    write_file(p, R"({"elements": ["a", "b", "c"], "relation": [["a","b"], ["b","c"]]})");
    AnalysisRecord rec = analyze_path(p);
    REQUIRE(rec.kind == InputKind::poset);
    REQUIRE(rec.report.lattice_size == 3);  // a chain completes to itself
    REQUIRE(rec.report.nur_join_abs == 0);
}

TEST_CASE("records are byte-identical across runs and thread counts") {
    for (const char* name : {"tealady.cxt", "planets.cxt"}) {
        AnalyzeOptions t1, t4;
        t1.threads = 1;
        t4.threads = 4;
        std::string a = record_to_json(analyze_path(dataset(name), t1), t1).dump(2);
        std::string b = record_to_json(analyze_path(dataset(name), t4), t4).dump(2);
        std::string c = record_to_json(analyze_path(dataset(name), t4), t4).dump(2);
        REQUIRE(a == b);
        REQUIRE(b == c);
    }
}

TEST_CASE("record JSON round-trips") {
    AnalysisRecord rec = analyze_path(figure("s7.cxt"));
    ordered_json j = record_to_json(rec);
    ordered_json back = ordered_json::parse(j.dump(2));
    REQUIRE(back == j);
}

TEST_CASE("covers and by-height CSV artifacts") {
    AnalysisRecord rec = analyze_path(figure("s7.cxt"));
    std::string cov = covers_csv(rec.report, rec.stats);
    REQUIRE(cov.rfind("lower,upper,delta_j,delta_m,lower_height\n", 0) == 0);
    REQUIRE(std::count(cov.begin(), cov.end(), '\n') == 10);  // header + 9 covers

    std::string bh = by_height_csv(rec.report);
    REQUIRE(bh.rfind("height,meet_nonunit,meet_total,join_nonunit,join_total\n", 0) == 0);
    // S7 has covers at lower heights 0, 1, 2
    REQUIRE(std::count(bh.begin(), bh.end(), '\n') == 4);

    std::string sum = summary_csv("s7", rec.report);
    REQUIRE(sum.find("s7,7,9,3,0.33,0,0.00") != std::string::npos);
}

TEST_CASE("table runs a directory, tolerating broken files") {
    TempDir tmp;
    fs::copy_file(dataset("planets.cxt"), tmp.path / "planets.cxt");
    fs::copy_file(dataset("newzealand.cxt"), tmp.path / "newzealand.cxt");
    write_file((tmp.path / "broken.cxt").string(), "B\n5\n5\nnot a context\n");

    auto rows = analyze_directory(tmp.path.string());
    REQUIRE(rows.size() == 3);
    std::string csv = table_csv(rows);
    std::istringstream in(csv);
    std::string header, l1, l2, l3;
    std::getline(in, header);
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    REQUIRE(l1.rfind("newzealand,8,10,0,0.00,0,0.00,0,2,0,2,", 0) == 0);  // sorted by |L|
    REQUIRE(l2.rfind("planets,12,18,", 0) == 0);
    REQUIRE(l3.rfind("broken,", 0) == 0);
    REQUIRE(l3.find("expected") != std::string::npos);  // parse error recorded
}

TEST_CASE("plots write a scatter and one height file per dataset") {
    TempDir tmp;
    fs::copy_file(dataset("planets.cxt"), tmp.path / "planets.cxt");
    fs::copy_file(dataset("tealady.cxt"), tmp.path / "tealady.cxt");
    auto rows = analyze_directory(tmp.path.string());
    std::string out_dir = (tmp.path / "plots").string();
    auto files = write_plots(rows, out_dir);
    REQUIRE(files.size() == 3);
    REQUIRE(fs::exists(out_dir + "/scatter.svg"));
    REQUIRE(fs::exists(out_dir + "/planets_height.svg"));
    REQUIRE(fs::exists(out_dir + "/tealady_height.svg"));
    std::string svg = read_file(out_dir + "/scatter.svg");
    REQUIRE(svg.find("<svg") != std::string::npos);
    REQUIRE(svg.find("fill=\"red\"") != std::string::npos);
    REQUIRE(svg.find("fill=\"blue\"") != std::string::npos);

    REQUIRE_THROWS_AS(write_plots({}, out_dir), parse_error);
}

TEST_CASE("check verdicts through the front end") {
    ordered_json s7 = check_json(figure("s7.cxt"));
    REQUIRE(s7["join_distributive"] == true);
    REQUIRE(s7["meet_distributive"] == false);
    REQUIRE(s7["semimodular"] == true);
    REQUIRE(s7["modular"] == false);
    REQUIRE(s7["witness"]["pattern"] == "S7");

    ordered_json nz = check_json(dataset("newzealand.cxt"));
    REQUIRE(nz["distributive"] == true);

    TempDir tmp;
    std::string p = (tmp.path / "v.json").string();
    write_file(p, R"({"elements": ["a", "b", "t"], "relation": [["a","t"], ["b","t"]]})");
    ordered_json pv = check_json(p);
    REQUIRE(pv["method"] == "irreducible_context_arrows");
    REQUIRE(pv["distributive"] == true);
}

TEST_CASE("dm dump and poset JSON round trip") {
    TempDir tmp;
    std::string p = (tmp.path / "anti.json").string();
    write_file(p, R"({"elements": ["a", "b"], "relation": []})");
    ordered_json dm = dm_json(p);
    REQUIRE(dm["lattice"]["size"] == 4);
    REQUIRE(dm["added"].size() == 2);
    REQUIRE(dm["iota"].size() == 2);

    Poset q = parse_poset_json(poset_to_json(parse_poset_json(read_file(p))).dump());
    REQUIRE(q.size() == 2);
    REQUIRE(!q.leq(0, 1));

    REQUIRE_THROWS_AS(parse_poset_json("[1,2]"), parse_error);
    REQUIRE_THROWS_AS(parse_poset_json("{\"elements\": [1]}"), parse_error);
    REQUIRE_THROWS_AS(parse_poset_json(R"({"elements":["a"],"relation":[["a","z"]]})"),
                      parse_error);
    REQUIRE_THROWS_AS(parse_poset_json(R"({"elements":["a","b"],"relation":[["a","b"],["b","a"]]})"),
                      parse_error);
}

TEST_CASE("convert between formats preserves the context") {
    TempDir tmp;
    std::string csv_path = (tmp.path / "s7.csv").string();
    convert_context(figure("s7.cxt"), csv_path);
    FormalContext a = load_context_file(figure("s7.cxt"));
    FormalContext b = load_context_file(csv_path);
    REQUIRE(a.objects() == b.objects());
    REQUIRE(a.attributes() == b.attributes());
    REQUIRE(a.rows() == b.rows());

    std::string back = (tmp.path / "s7.cxt").string();
    convert_context(csv_path, back);
    REQUIRE(read_file(back) == read_file(figure("s7.cxt")));

    REQUIRE_THROWS_AS(convert_context(figure("s7.cxt"), (tmp.path / "x.txt").string()),
                      parse_error);
    REQUIRE_THROWS_AS(input_kind("foo.xyz"), parse_error);
}
