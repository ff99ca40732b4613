#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fbsplit/pgm.hpp"
#include "fbsplit/rng.hpp"

using namespace fbsplit;
namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(FBSPLIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "fbsplit_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

Image test_image() {
    Image img(16, 16, 0.0);
    Rng rng(5);
    for (auto& p : img.pixels) p = rng.next_uniform();
    return img;
}

}  // namespace

TEST_CASE("degrade") {
    TempDir dir;
    save_pgm(test_image(), dir.file("in.pgm"));

    SUBCASE("delta kernel with zero noise only quantizes") {
        REQUIRE(cli("degrade --input " + dir.file("in.pgm") + " --output " +
                    dir.file("out.pgm") + " --kernel motion:1,0 --noise-sigma 0") == 0);
        const Image in = load_pgm(dir.file("in.pgm"));
        const Image out = load_pgm(dir.file("out.pgm"));
        for (std::size_t i = 0; i < in.pixels.size(); ++i)
            CHECK(std::abs(in.pixels[i] - out.pixels[i]) <= 1.0 / 510.0 + 1e-12);
        CHECK(fs::exists(dir.file("out.pgm") + ".json"));
    }
    SUBCASE("even gaussian size is an argument error") {
        CHECK(cli("degrade --input " + dir.file("in.pgm") + " --output " +
                  dir.file("out.pgm") + " --kernel gaussian:4,2") == 2);
    }
    SUBCASE("unreadable input is an I/O error") {
        CHECK(cli("degrade --input " + dir.file("missing.pgm") + " --output " +
                  dir.file("out.pgm") + " --kernel gaussian:3,1") == 3);
    }
}

TEST_CASE("restore") {
    TempDir dir;
    save_pgm(test_image(), dir.file("orig.pgm"));
    REQUIRE(cli("degrade --input " + dir.file("orig.pgm") + " --output " +
                dir.file("deg.pgm") + " --kernel gaussian:3,1 --noise-sigma 0.001 "
                "--seed 7") == 0);

    SUBCASE("zero iterations returns the degraded input") {
        REQUIRE(cli("restore --input " + dir.file("deg.pgm") + " --original " +
                    dir.file("orig.pgm") +
                    " --kernel gaussian:3,1 --iters 0 --output " + dir.file("res.pgm")) == 0);
        const Image deg = load_pgm(dir.file("deg.pgm"));
        const Image res = load_pgm(dir.file("res.pgm"));
        for (std::size_t i = 0; i < deg.pixels.size(); ++i)
            CHECK(std::abs(deg.pixels[i] - res.pixels[i]) <= 1.0 / 510.0 + 1e-12);
    }
    SUBCASE("missing original flag is rejected up front") {
        CHECK(cli("restore --input " + dir.file("deg.pgm") + " --kernel gaussian:3,1") == 2);
    }
    SUBCASE("trace has the documented header and checkpoint rows") {
        REQUIRE(cli("restore --input " + dir.file("deg.pgm") + " --original " +
                    dir.file("orig.pgm") + " --kernel gaussian:3,1 --iters 20 "
                    "--checkpoints 1,5,10 --trace " + dir.file("trace.csv")) == 0);
        std::ifstream in(dir.file("trace.csv"));
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "iter,snr_db,objective,residual_m_norm,elapsed_s");
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 3);
    }
    SUBCASE("bad lambda is a config error") {
        CHECK(cli("restore --input " + dir.file("deg.pgm") + " --original " +
                  dir.file("orig.pgm") +
                  " --kernel gaussian:3,1 --lambda 1.5 --iters 5") == 2);
    }
}

TEST_CASE("compare") {
    TempDir dir;
    save_pgm(test_image(), dir.file("orig.pgm"));
    REQUIRE(cli("degrade --input " + dir.file("orig.pgm") + " --output " +
                dir.file("deg.pgm") + " --kernel gaussian:3,1 --seed 7") == 0);

    SUBCASE("a single algorithm is rejected") {
        CHECK(cli("compare --input " + dir.file("deg.pgm") + " --original " +
                  dir.file("orig.pgm") + " --kernel gaussian:3,1 --algorithms new "
                  "--table " + dir.file("t.csv")) == 2);
    }
    SUBCASE("table schema follows the algorithm list") {
        REQUIRE(cli("compare --input " + dir.file("deg.pgm") + " --original " +
                    dir.file("orig.pgm") +
                    " --kernel gaussian:3,1 --iters 10 --checkpoints 1,5,10 "
                    "--algorithms apfbnsm,new --table " + dir.file("t.csv")) == 0);
        std::ifstream in(dir.file("t.csv"));
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "iter,apfbnsm,new");
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 3);
    }
}

TEST_CASE("lasso-demo edge cases") {
    SUBCASE("large rho drives the solution to zero") {
        CHECK(cli("lasso-demo --dimension 2 --sparsity 1 --seed 3 --rho 100 "
                  "--iters 200 --kkt-tol 1e-8") == 0);
    }
    SUBCASE("zero ground truth with zero noise") {
        CHECK(cli("lasso-demo --dimension 5 --sparsity 0 --noise-sigma 0 --seed 3 "
                  "--iters 10") == 0);
    }
    SUBCASE("dimension below 2 is rejected") {
        CHECK(cli("lasso-demo --dimension 1") == 2);
    }
}
