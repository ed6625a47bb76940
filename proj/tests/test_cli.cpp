#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/dirac_scatter.h"
#include "json.hpp"
#include "oracles.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path dir = fs::temp_directory_path() / "dirac_cli_test";

int run(const std::string& args)
{
    std::string cmd = std::string(DIRAC_CLI_PATH) + " " + args + " >" + (dir / "stdout.txt").string() +
                      " 2>" + (dir / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::string make_potential(const std::string& name, const char* kind, int n,
                           std::vector<std::pair<const char*, double>> params = {})
{
    fs::create_directories(dir);
    std::vector<const char*> keys;
    std::vector<double> vals;
    for (auto& [k, v] : params) {
        keys.push_back(k);
        vals.push_back(v);
    }
    ds_potential* q = nullptr;
    REQUIRE(ds_potential_generate(kind, 1.0, n, keys.data(), vals.data(), static_cast<int>(keys.size()), 0,
                                  &q) == DS_OK);
    std::string path = (dir / name).string();
    REQUIRE(ds_potential_write(q, path.c_str()) == DS_OK);
    ds_potential_free(q);
    return path;
}

struct Table {
    std::vector<double> k, ar, ai, br, bi;
};

Table read_table(const std::string& path)
{
    ds_table* t = nullptr;
    REQUIRE(ds_table_read(path.c_str(), &t) == DS_OK);
    int n = ds_table_size(t);
    Table r{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
            std::vector<double>(n)};
    REQUIRE(ds_table_get(t, r.k.data(), r.ar.data(), r.ai.data(), r.br.data(), r.bi.data()) == DS_OK);
    ds_table_free(t);
    return r;
}

}  // namespace

TEST_CASE("forward on the zero potential")
{
    std::string q = make_potential("zero.txt", "zero", 32);
    std::string out = (dir / "zero_scat.txt").string();
    REQUIRE(run("forward --potential " + q + " --kmax 5 --nk 21 --out " + out) == 0);
    Table t = read_table(out);
    REQUIRE(t.k.size() == 21);
    for (std::size_t j = 0; j < t.k.size(); ++j) {
        CHECK(t.ar[j] == doctest::Approx(1.0));
        CHECK(std::abs(t.ai[j]) < 1e-14);
        CHECK(std::abs(t.br[j]) < 1e-14);
        CHECK(std::abs(t.bi[j]) < 1e-14);
    }
    // Sidecar with the tool version.
    auto meta = nlohmann::json::parse(slurp(out + ".meta"));
    CHECK(meta["tool"].get<std::string>().find("dirac-scatter") == 0);
}

TEST_CASE("forward output is byte-identical across runs")
{
    std::string q = make_potential("bump.txt", "bump", 128, {{"amplitude", 2.0}});
    std::string o1 = (dir / "det1.txt").string(), o2 = (dir / "det2.txt").string();
    REQUIRE(run("forward --potential " + q + " --kmax 10 --nk 201 --out " + o1) == 0);
    REQUIRE(run("forward --potential " + q + " --kmax 10 --nk 201 --out " + o2) == 0);
    CHECK(slurp(o1) == slurp(o2));
}

TEST_CASE("resonances of the constant potential")
{
    std::string q = make_potential("const.txt", "constant", 128, {{"c_re", 1.0}});
    std::string out = (dir / "res.json").string();
    REQUIRE(run("resonances --potential " + q + " --rect -10.0173 10.0119 -6 0 --out " + out) == 0);
    auto arr = nlohmann::json::parse(slurp(out));
    auto expected = oracle::const_resonances(1.0, 1.0, -10.0173, 10.0119, -6.0, -1e-9);
    CHECK(arr.size() == expected.size());
    for (const auto& z : arr) {
        CHECK(z["mult"].get<int>() == 1);
        CHECK(oracle::nearest(expected, {z["re"].get<double>(), z["im"].get<double>()}) < 1e-6);
    }
}

TEST_CASE("zeros of b and sign data")
{
    std::string q = make_potential("const.txt", "constant", 128, {{"c_re", 1.0}});
    std::string out = (dir / "bz.json").string(), xi = (dir / "xi.json").string();
    REQUIRE(run("resonances --potential " + q + " --of b --radius 12 --out " + out + " --xi-out " + xi) == 0);
    auto arr = nlohmann::json::parse(slurp(out));
    CHECK(arr.size() == oracle::b_const_zeros(1.0, 1.0, 12.0).size());
    auto x = nlohmann::json::parse(slurp(xi));
    CHECK(x["p"].get<int>() == 0);
    CHECK(x["xi0_re"].get<double>() == doctest::Approx(-1.0));
    for (const auto& s : x["signs"])
        CHECK(s.get<int>() == 0);
}

TEST_CASE("invert from b round trip")
{
    std::string q = make_potential("bump256.txt", "bump", 256, {{"amplitude", 2.0}});
    std::string scat = (dir / "bump_scat.txt").string(), back = (dir / "bump_back.txt").string();
    REQUIRE(run("forward --potential " + q + " --out " + scat) == 0);
    REQUIRE(run("invert --in " + scat + " --from b --side left --gamma 1 --n 256 --out " + back) == 0);
    ds_potential *p0 = nullptr, *p1 = nullptr;
    REQUIRE(ds_potential_read(q.c_str(), &p0) == DS_OK);
    REQUIRE(ds_potential_read(back.c_str(), &p1) == DS_OK);
    double d = 1.0;
    REQUIRE(ds_potential_distance(p0, p1, &d) == DS_OK);
    // ||q|| is about 2 sqrt(width) for the bump; relative error well below 1e-2.
    CHECK(d < 1e-2);
    ds_potential_free(p0);
    ds_potential_free(p1);
}

TEST_CASE("symmetry report")
{
    std::string q = make_potential("const.txt", "constant", 128, {{"c_re", 1.0}});
    std::string rep = (dir / "sym.json").string();
    REQUIRE(run("symmetry --potential " + q + " --report " + rep) == 0);
    auto j = nlohmann::json::parse(slurp(rep));
    CHECK(j.dump().find("even") != std::string::npos);
}

TEST_CASE("exit codes")
{
    std::string q = make_potential("const.txt", "constant", 128, {{"c_re", 1.0}});
    // I/O: missing input, missing output directory.
    CHECK(run("forward --potential /nonexistent/q.txt --out " + (dir / "x.txt").string()) == 2);
    CHECK(run("forward --potential " + q + " --out /nonexistent/dir/x.txt") == 2);
    CHECK_FALSE(slurp(dir / "stderr.txt").empty());
    // Parse errors and bad parameters.
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("invert --in " + q + " --side up --out " + (dir / "x.txt").string()) == 1);
    CHECK(run("forward --potential \"\" --out " + (dir / "x.txt").string()) == 1);
    // Precondition: 2 is not a zero of b.
    CHECK(run("shift-zero --potential " + q + " --from 2 0 --to 1 0.5 --out " + (dir / "x.txt").string()) == 1);
    // Class violation: evolve needs decaying reflection data.
    CHECK(run("nls --potential " + q + " --t 0.01 --out " + (dir / "x.txt").string()) == 1);
}

TEST_CASE("canonical verbs and plot data")
{
    std::string q = make_potential("smooth_bump.txt", "bump", 129, {{"amplitude", 1.0}});
    std::string h = (dir / "h.txt").string(), back = (dir / "h_back.txt").string();
    REQUIRE(run("canonical to-hamiltonian --potential " + q + " --out " + h) == 0);
    CHECK(slurp(h).rfind("# canonical-hamiltonian v1 n=129", 0) == 0);
    REQUIRE(run("canonical to-potential --in " + h + " --out " + back) == 0);
    std::string plot = (dir / "plot.txt").string();
    REQUIRE(run("plotdata --potential " + q + " --quantity abs --out " + plot) == 0);
    std::istringstream in(slurp(plot));
    double x, y;
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && std::istringstream(line) >> x >> y)
            ++rows;
    CHECK(rows == 129);
}
