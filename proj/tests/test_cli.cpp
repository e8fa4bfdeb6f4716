#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coopsim/cli.hpp"
#include "coopsim/errors.hpp"

using namespace coopsim;
using namespace coopsim::cli;
namespace fs = std::filesystem;

namespace {

std::optional<RunSpec> parse(std::vector<std::string> args) {
    args.insert(args.begin(), "coopsim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / "coopsim_cli_tests" / leaf;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_range handles grids and single values") {
    CHECK(parse_range("0:2:20") ==
          std::vector<double>{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20});
    CHECK(parse_range("5") == std::vector<double>{5});
    CHECK(parse_range("3:0.5:4") == std::vector<double>{3, 3.5, 4});
    CHECK(parse_range("2:3:4") == std::vector<double>{2});  // stop short of the next step
    CHECK_THROWS_AS(parse_range(""), Usage);
    CHECK_THROWS_AS(parse_range("abc"), Usage);
    CHECK_THROWS_AS(parse_range("0:2"), Usage);
    CHECK_THROWS_AS(parse_range("0:-1:5"), Usage);
    CHECK_THROWS_AS(parse_range("0:0:5"), Usage);
    CHECK_THROWS_AS(parse_range("5:1:4"), Usage);
}

TEST_CASE("preset fig2 builds the four-curve grid and applies flags") {
    const auto spec = parse({"--preset", "fig2", "--seed", "42", "--packets", "2000",
                             "--out", "outdir"});
    REQUIRE(spec.has_value());
    CHECK(spec->preset == "fig2");
    CHECK(spec->out_dir == "outdir");
    CHECK(spec->base.seed == 42);
    CHECK(spec->base.packets == 2000);
    CHECK(spec->ebn0.size() == 11);  // default 0:2:20
    REQUIRE(spec->curves.size() == 4);
    CHECK(spec->curves[0].alloc == engine::Alloc::Jpa);
    CHECK(spec->curves[0].n_relays == 1);
    CHECK(spec->curves[3].alloc == engine::Alloc::Epa);
    CHECK(spec->curves[3].n_relays == 2);
    for (const auto& c : spec->curves) CHECK(c.scheme == dstc::CodeScheme::DAlamouti);
}

TEST_CASE("preset fig3 compares deterministic and randomised codes at one relay") {
    const auto spec = parse({"--preset", "fig3", "--out", "o"});
    REQUIRE(spec.has_value());
    REQUIRE(spec->curves.size() == 4);
    CHECK(spec->curves[0].scheme == dstc::CodeScheme::DAlamouti);
    CHECK(spec->curves[2].scheme == dstc::CodeScheme::RAlamouti);
    for (const auto& c : spec->curves) CHECK(c.n_relays == 1);
}

TEST_CASE("custom runs build one curve from the base fields") {
    const auto spec = parse({"--scheme", "ralamouti", "--alloc", "epa", "--n-relays", "2",
                             "--ebn0", "4:2:8", "--out", "o"});
    REQUIRE(spec.has_value());
    CHECK(spec->preset == "custom");
    CHECK(spec->ebn0 == std::vector<double>{4, 6, 8});
    REQUIRE(spec->curves.size() == 1);
    CHECK(spec->curves[0].scheme == dstc::CodeScheme::RAlamouti);
    CHECK(spec->curves[0].alloc == engine::Alloc::Epa);
    CHECK(spec->curves[0].n_relays == 2);
}

TEST_CASE("bad invocations raise Usage") {
    CHECK_THROWS_AS(parse({"--preset", "fig2"}), Usage);                 // no --out
    CHECK_THROWS_AS(parse({"--bogus", "1", "--out", "o"}), Usage);       // unknown flag
    CHECK_THROWS_AS(parse({"--preset", "nope", "--out", "o"}), Usage);   // unknown preset
    CHECK_THROWS_AS(parse({"--scheme", "qam", "--out", "o"}), Usage);    // bad enum
    CHECK_THROWS_AS(parse({"--ebn0", "9:1:2", "--out", "o"}), Usage);    // bad range
    // Grid presets own the curve grid.
    CHECK_THROWS_AS(parse({"--preset", "fig2", "--scheme", "ralamouti", "--out", "o"}), Usage);
    CHECK_THROWS_AS(parse({"--preset", "fig3", "--alloc", "epa", "--out", "o"}), Usage);
    CHECK_THROWS_AS(parse({"--preset", "fig2", "--n-relays", "3", "--out", "o"}), Usage);
}

TEST_CASE("help prints without producing a spec") {
    CHECK_FALSE(parse({"--help"}).has_value());
}

TEST_CASE("awgn flag configures the single-antenna baseline") {
    const fs::path dir = fresh_dir("awgn");
    fs::create_directories(dir);
    const fs::path file = dir / "awgn.cfg";
    {
        std::ofstream out(file);
        out << "n_tx = 1\nn_slots = 1\n";
    }
    const auto spec = parse({"--awgn", "--config", file.string(), "--out", "o"});
    REQUIRE(spec.has_value());
    CHECK(spec->base.awgn_only);
    CHECK(spec->base.n_relays == 0);
    CHECK(spec->base.n_tx == 1);
    CHECK(spec->base.n_slots == 1);
    REQUIRE(spec->curves.size() == 1);
    CHECK(spec->curves[0].n_relays == 0);
}

TEST_CASE("config file values apply under flags") {
    const fs::path dir = fresh_dir("config");
    fs::create_directories(dir);
    const fs::path file = dir / "run.cfg";
    {
        std::ofstream out(file);
        out << "# comment\n"
            << "packets = 100\n"
            << "seed=9\n"
            << "receiver = sg\n";
    }
    const auto spec = parse({"--config", file.string(), "--packets", "200", "--out", "o"});
    REQUIRE(spec.has_value());
    CHECK(spec->base.packets == 200);  // flag wins
    CHECK(spec->base.seed == 9);       // file applies
    CHECK(spec->base.receiver == engine::ReceiverMode::Sg);

    {
        std::ofstream out(file);
        out << "no_such_key = 1\n";
    }
    CHECK_THROWS_AS(parse({"--config", file.string(), "--out", "o"}), Usage);
    CHECK_THROWS_AS(parse({"--config", (dir / "missing.cfg").string(), "--out", "o"}), Usage);
}

TEST_CASE("manifest text round-trips") {
    auto spec = parse({"--preset", "fig3", "--ebn0", "0:5:10", "--seed", "77", "--packets", "12",
                       "--train", "16", "--data", "8", "--kernels", "scalar", "--out", "mdir"});
    REQUIRE(spec.has_value());
    const std::string text = manifest_text(*spec);
    const RunSpec back = parse_manifest(text);
    CHECK(manifest_text(back) == text);
    CHECK(back.preset == "fig3");
    CHECK(back.base.seed == 77);
    CHECK(back.base.train_len == 16);
    CHECK(back.curves.size() == 4);
    CHECK(back.base.scheme == back.curves[0].scheme);

    CHECK_THROWS_AS(parse_manifest("not json"), Usage);
    CHECK_THROWS_AS(parse_manifest("{}"), Usage);
}

TEST_CASE("curve filenames are stable") {
    CHECK(curve_filename({dstc::CodeScheme::DAlamouti, engine::Alloc::Jpa, 1}) ==
          "dalamouti_jpa_nr1.csv");
    CHECK(curve_filename({dstc::CodeScheme::RAlamouti, engine::Alloc::Epa, 2}) ==
          "ralamouti_epa_nr2.csv");
}

TEST_CASE("plot script references every curve file") {
    const auto spec = parse({"--preset", "fig2", "--out", "o"});
    REQUIRE(spec.has_value());
    const std::string gp = plot_script_text(*spec);
    CHECK(gp.find("set logscale y") != std::string::npos);
    for (const auto& c : spec->curves) {
        CHECK(gp.find(curve_filename(c)) != std::string::npos);
    }
}

TEST_CASE("run writes curves, manifest, and plot script; manifest reruns are byte-identical") {
    const fs::path dir1 = fresh_dir("run1");
    const fs::path dir2 = fresh_dir("run2");

    auto spec = parse({"--preset", "fig2", "--ebn0", "0:10:10", "--packets", "2",
                       "--train", "8", "--data", "8", "--seed", "5", "--threads", "1",
                       "--out", dir1.string()});
    REQUIRE(spec.has_value());
    run(*spec);

    REQUIRE(fs::exists(dir1 / "manifest.json"));
    CHECK(fs::exists(dir1 / "plot.gp"));
    std::vector<std::string> names;
    for (const auto& c : spec->curves) names.push_back(curve_filename(c));
    for (const auto& n : names) REQUIRE(fs::exists(dir1 / n));

    // Each CSV holds the header plus one line per sweep point.
    const std::string csv = slurp(dir1 / names[0]);
    CHECK(csv.rfind(engine::csv_header() + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    auto rerun = parse({"--from-manifest", (dir1 / "manifest.json").string(),
                        "--out", dir2.string()});
    REQUIRE(rerun.has_value());
    CHECK(rerun->base.packets == 2);
    CHECK(rerun->base.seed == 5);
    run(*rerun);
    for (const auto& n : names) {
        CHECK(slurp(dir1 / n) == slurp(dir2 / n));
    }
}

}  // TEST_SUITE
