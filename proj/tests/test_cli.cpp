#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CRITLINE_BIN) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.stdout_text.append(buf, n);
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("critline_cli_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("eval-epstein prints the classical value") {
    const RunResult r = run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 2 --t 0 --method direct");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.substr(0, 9) == "6.0268120");
}

TEST_CASE("eval-eisenstein picard value") {
    const RunResult r =
        run_cli("eval-eisenstein --lattice picard --x1 0 --x2 0 --y 1 --sigma 3 --t 0");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.substr(0, 7) == "12.7323");
}

TEST_CASE("exit codes") {
    CHECK(run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 2 --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("eval-epstein --gram \"1,0;0;1\" --sigma 2").exit_code == 2);     // bad form
    CHECK(run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 2 --t 0 "
                  "--form-file /dev/null").exit_code == 2);                        // two sources
    CHECK(run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 0.5 --t 31 --method theta")
              .exit_code == 3);                                                    // envelope
    CHECK(run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 0.5 --t 0.2 --method afe")
              .exit_code == 3);                                                    // |t| < 1
    CHECK(run_cli("fit --in /nonexistent/file.csv").exit_code == 4);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("eval-epstein --help").exit_code == 0);
}

TEST_CASE("help text lists validity domains") {
    const RunResult r = run_cli("eval-epstein --help");
    CHECK(r.stdout_text.find("m/2 + 1/4") != std::string::npos);
    CHECK(r.stdout_text.find("|t| <= 30") != std::string::npos);
    const RunResult r2 = run_cli("meansquare --help");
    CHECK(r2.stdout_text.find("T >= 64") != std::string::npos);
}

TEST_CASE("values subcommand: build, idempotence, extension, corruption") {
    TempDir tmp;
    const std::string base =
        "values --gram \"1,0;0,1\" --cache-dir " + tmp.path.string() + " --cutoff ";
    const RunResult first = run_cli(base + "10");
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text.find("primal built") != std::string::npos);

    const RunResult again = run_cli(base + "10");
    CHECK(again.stdout_text.find("primal up_to_date") != std::string::npos);

    const RunResult extended = run_cli(base + "20");
    CHECK(extended.stdout_text.find("primal extended") != std::string::npos);

    // entry count strictly increases between cutoff 10 and 20
    auto entries_of = [](const std::string& line_blob) {
        const size_t pos = line_blob.find("entries=");
        return std::stoll(line_blob.substr(pos + 8));
    };
    CHECK(entries_of(extended.stdout_text) > entries_of(again.stdout_text));

    // corrupt one byte of the cache file -> exit 4 on the next cached use
    fs::path file;
    for (const auto& e : fs::directory_iterator(tmp.path))
        if (e.path().extension() == ".txt") file = e.path();
    REQUIRE(!file.empty());
    std::string text;
    {
        std::ifstream in(file);
        std::getline(in, text, '\0');
    }
    const size_t pos = text.find(' ') + 1;
    text[pos] = text[pos] == 'f' ? '0' : 'f';
    std::ofstream(file) << text;
    const RunResult corrupt =
        run_cli("eval-epstein --gram \"1,0;0,1\" --sigma 0.5 --t 5 --method afe --cache-dir " +
                tmp.path.string());
    CHECK(corrupt.exit_code == 4);
}

TEST_CASE("determinism: identical argv and cache give byte-identical stdout") {
    TempDir tmp;
    const std::string cmd = "meansquare --kind epstein --gram \"1,0;0,1\" --T 64 "
                            "--step 0.0625 --cache-dir " + tmp.path.string();
    const RunResult a = run_cli(cmd + " --threads 1");
    const RunResult b = run_cli(cmd + " --threads 3");
    const RunResult c = run_cli(cmd + " --threads 1");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(a.stdout_text == c.stdout_text);
    CHECK(a.stdout_text.find("\"integral\":") != std::string::npos);
}

TEST_CASE("count and dyadic-table") {
    const RunResult r = run_cli("count --gram \"1,0,0,0;0,1,0,0;0,0,-1,0;0,0,0,-1\" "
                                "--A 2 --B 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("count=33") != std::string::npos);

    const RunResult d = run_cli("count --difference --gram \"1,0;0,1\" --A 2 --B 0.5");
    CHECK(d.stdout_text.find("count=49") != std::string::npos);

    const RunResult t = run_cli("dyadic-table --difference --gram \"1,0;0,1\" "
                                "--A-list 4,8 --B-list 1,2");
    CHECK(t.exit_code == 0);
    CHECK(t.stdout_text.rfind("A,B,count,count_no_origin,normalized,normalized_log,p,q,seconds\n", 0) == 0);
    // 1 header + 4 rows
    int lines = 0;
    for (char ch : t.stdout_text)
        if (ch == '\n') ++lines;
    CHECK(lines == 5);
}

TEST_CASE("fit round-trip on emitted CSV") {
    TempDir tmp;
    const fs::path csv = tmp.path / "pts.csv";
    std::ofstream(csv) << "X,Y\n2,4\n4,16\n8,64\n";
    const RunResult f = run_cli("fit --in " + csv.string());
    CHECK(f.exit_code == 0);
    CHECK(f.stdout_text.substr(0, 8) == "slope=2 ");

    // sweep CSV: 17-digit numbers re-read losslessly
    const fs::path out = tmp.path / "sweep.csv";
    const RunResult s = run_cli("sweep --kind epstein --gram \"2,1;1,3\" --sigma 2.5 "
                                "--t0 1 --t1 3 --step 0.5 --method direct --out " + out.string());
    CHECK(s.exit_code == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,re,im,abs2");
    double t, re, im, abs2;
    char comma;
    int rows = 0;
    std::string line;
    while (std::getline(in, line) && line[0] != '#') {
        std::istringstream row(line);
        row >> t >> comma >> re >> comma >> im >> comma >> abs2;
        CHECK(abs2 == doctest::Approx(re * re + im * im).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("growth subcommand emits a fit") {
    const RunResult r = run_cli("growth --T-list 100,200,400,800 --format plain");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.substr(0, 6) == "slope=");
}
