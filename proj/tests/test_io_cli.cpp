#include <doctest.h>

#include "forcycle/errors.hpp"
#include "forcycle/io/csv.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace forcycle;
namespace fs = std::filesystem;

namespace {

const fs::path& temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("forcycle_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n')
            ++n;
    return n;
}

/// Run the command-line tool; stdout+stderr land in `capture`.
int run_cli(const std::string& args, std::string& capture,
            const std::string& env_prefix = "") {
    const fs::path out = temp_dir() / "cli_capture.txt";
    const std::string cmd = env_prefix + "\"" + FORCYCLE_CLI_PATH + "\" " + args +
                            " > \"" + out.string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    capture = slurp(out);
    return WEXITSTATUS(rc);
}

} // namespace

TEST_SUITE("io_cli") {

TEST_CASE("deterministic float formatting") {
    CHECK(io::format_g17(0.1) == "0.10000000000000001");
    CHECK(io::format_g17(1.0 / 3.0) == "0.33333333333333331");
    CHECK(io::format_g17(1.0) == "1");
    CHECK(io::format_g17(0.0) == "0");
    CHECK(io::format_g17(-2.5) == "-2.5");
    CHECK(io::format_g17(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::format_g17(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("CSV writers: headers, row counts, trailing newline") {
    const MapParams mp(2.0, 0.5, 0.5, 0.5625);

    const auto folds = find_folds(mp);
    const fs::path fp = temp_dir() / "folds.csv";
    io::write_folds_csv(folds, fp.string());
    std::string text = slurp(fp);
    CHECK(text.rfind("tau,s,eps,criticality,level\n", 0) == 0);
    CHECK(line_count(text) == 1 + folds.size());
    CHECK(text.back() == '\n');

    // unbounded windows serialize with the "inf" literal
    const auto wins = lock_windows(MapParams(1.5, 0.6, 2.0, 1.0), 2);
    const fs::path wp = temp_dir() / "windows.csv";
    io::write_windows_csv(wins, wp.string());
    text = slurp(wp);
    CHECK(text.rfind("n,omega_lo,omega_hi,source,stability_note\n", 0) == 0);
    CHECK(line_count(text) == 1 + wins.size());
    CHECK(text.find(",inf,") != std::string::npos);

    const Diagram dia = trace_diagram(mp, 512);
    const fs::path dp = temp_dir() / "diagram.csv";
    io::write_diagram_csv(dia, dp.string());
    text = slurp(dp);
    CHECK(text.rfind("curve_id,tau,s,is_fold,criticality\n", 0) == 0);
    std::size_t n_points = 0;
    for (const auto& c : dia.curves)
        n_points += c.points.size();
    CHECK(line_count(text) == 1 + n_points);

    const std::vector<io::AtlasCell> cells = {
        {1.5, 0.2, 0.5, RegionTag::Y},
        {1.5, 0.6, 0.5, RegionTag::X},
    };
    const fs::path ap = temp_dir() / "atlas.csv";
    io::write_atlas_csv(cells, ap.string());
    text = slurp(ap);
    CHECK(text.rfind("delta,gamma,k,region\n", 0) == 0);
    CHECK(line_count(text) == 3);
    CHECK(text.find(",Y\n") != std::string::npos);

    const auto bts = find_bt_points(1.5, 0.5);
    const fs::path bp = temp_dir() / "bt.csv";
    io::write_bt_csv(bts, bp.string());
    text = slurp(bp);
    CHECK(text.rfind("delta,k,gamma,tau,s,residual\n", 0) == 0);
    CHECK(line_count(text) == 1 + bts.size());
}

TEST_CASE("writers raise IoError with the offending path") {
    const std::string bad = "/nonexistent_dir_forcycle/x.csv";
    bool threw = false;
    try {
        io::write_folds_csv({}, bad);
    } catch (const IoError& e) {
        threw = true;
        CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
    CHECK(threw);
    CHECK_THROWS_AS(io::write_atlas_csv({}, bad), IoError);
}

TEST_CASE("command line: classify and exit codes") {
    std::string out;
    CHECK(run_cli("classify --delta 2 --gamma 0.5 --k 0.5", out) == 0);
    CHECK(out.find("region=Z\n") != std::string::npos);

    CHECK(run_cli("classify --delta 1.5 --gamma 0.6 --k 0.5", out) == 0);
    CHECK(out.find("region=X\n") != std::string::npos);
    CHECK(out.find("gamma_plus=0.38823728820643") != std::string::npos);
    CHECK(out.find("gamma_minus=1.1647118646192") != std::string::npos);

    // usage errors exit 2
    CHECK(run_cli("classify --delta 2 --gamma 0.5", out) == 2);      // missing --k
    CHECK(run_cli("classify --bogus 1", out) == 2);                  // unknown flag
    CHECK(run_cli("nonsense", out) == 2);                            // unknown command
    // the delta group conflicts with the alpha/beta group
    CHECK(run_cli("classify --delta 2 --alpha 2 --beta -0.5 --gamma 0.5 --k 0.5",
                  out) == 2);
    // domain errors exit 2 as well
    CHECK(run_cli("classify --delta 0.5 --gamma 0.5 --k 0.5", out) == 2);

    // runtime (numerical) failures exit 1: off-diagram fixed point
    CHECK(run_cli("stability --delta 2 --gamma 0.5 --k 0.5 --K 0.5625 "
                  "--tau 0.8 --s 0.3",
                  out) == 1);
    const bool mentions_failure =
        out.find("not a fixed point") != std::string::npos ||
        out.find("error") != std::string::npos;
    CHECK(mentions_failure);
}

TEST_CASE("command line: physical parameters map to delta and K") {
    std::string flow, reduced;
    CHECK(run_cli("classify --alpha 2 --beta -0.5 --gamma 0.5 --k 0.5", flow) == 0);
    CHECK(run_cli("classify --delta 1.6666666666666667 --gamma 0.5 --k 0.5",
                  reduced) == 0);
    CHECK(flow.substr(0, flow.find('\n')) == reduced.substr(0, reduced.find('\n')));
}

TEST_CASE("command line: byte-identical reruns") {
    const fs::path c1 = temp_dir() / "trace1.csv";
    const fs::path c2 = temp_dir() / "trace2.csv";
    const fs::path s1 = temp_dir() / "trace1.svg";
    const fs::path s2 = temp_dir() / "trace2.svg";
    std::string out;
    const std::string base =
        "trace --delta 2 --gamma 0.5 --k 0.5 --K 0.5625 --n-tau 512 ";
    CHECK(run_cli(base + "--out \"" + c1.string() + "\" --svg \"" + s1.string() +
                      "\"",
                  out) == 0);
    CHECK(run_cli(base + "--out \"" + c2.string() + "\" --svg \"" + s2.string() +
                      "\"",
                  out) == 0);
    const std::string csv1 = slurp(c1);
    CHECK(!csv1.empty());
    CHECK(csv1 == slurp(c2));
    const std::string svg1 = slurp(s1);
    CHECK(!svg1.empty());
    CHECK(svg1 == slurp(s2));
    CHECK(svg1.find("<svg") != std::string::npos);
}

TEST_CASE("command line: config file with flag precedence") {
    const fs::path cfg = temp_dir() / "opts.cfg";
    {
        std::ofstream f(cfg);
        f << "# worked instance\n"
          << "delta = 2\n"
          << "gamma = 1.5\n"   // would be overridden below
          << "k = 0.5\n";
    }
    std::string from_cfg, mixed, plain;
    CHECK(run_cli("classify --config \"" + cfg.string() + "\"", from_cfg) == 0);
    CHECK(from_cfg.find("region=Z\n") != std::string::npos);

    // command-line flags win over file values
    CHECK(run_cli("classify --config \"" + cfg.string() + "\" --gamma 0.5",
                  mixed) == 0);
    CHECK(run_cli("classify --delta 2 --gamma 0.5 --k 0.5", plain) == 0);
    CHECK(mixed == plain);

    // a missing config file is a usage error
    std::string err;
    CHECK(run_cli("classify --config /no/such/file.cfg", err) == 2);
}

TEST_CASE("command line: output directory redirection") {
    const fs::path dir = temp_dir() / "outdir";
    fs::create_directories(dir);
    std::string out;
    const std::string env = "FORCYCLE_OUT_DIR=\"" + dir.string() + "\" ";
    CHECK(run_cli("folds --delta 2 --gamma 0.5 --k 0.5 --out rel_folds.csv", out,
                  env) == 0);
    CHECK(fs::exists(dir / "rel_folds.csv"));
    // absolute paths are left alone
    const fs::path abs = temp_dir() / "abs_folds.csv";
    CHECK(run_cli("folds --delta 2 --gamma 0.5 --k 0.5 --out \"" + abs.string() +
                      "\"",
                  out, env) == 0);
    CHECK(fs::exists(abs));
    CHECK_FALSE(fs::exists(dir / abs.filename()));
}

} // TEST_SUITE
