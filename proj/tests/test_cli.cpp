#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "elab/cli.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path("/tmp/elab_test_" + p) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(elab::cli_main({"no-such-command"}) == 1);
    CHECK(elab::cli_main({}) == 1);
}

TEST_CASE("enumerate writes the expected members") {
    TempFile out("enum.csv");
    CHECK(elab::cli_main({"enumerate", "--b", "3", "--k", "2", "--n", "2", "--d1", "1", "--d2",
                          "2", "--out", out.path}) == 0);
    CHECK(slurp(out.path) == "value,count\n4,1\n5,1\n7,1\n8,1\n");
}

TEST_CASE("moment prints the exact rational") {
    TempFile out("moment.csv");
    CHECK(elab::cli_main({"moment", "--b", "3", "--k", "2", "--n", "1", "--t", "1", "--out",
                          out.path}) == 0);
    std::string s = slurp(out.path);
    CHECK(s.find("1/2,") != std::string::npos);
}

TEST_CASE("scan output is byte-identical across runs and thread counts") {
    TempFile a("scan_a.csv"), b("scan_b.csv");
    std::vector<std::string> base{"scan", "--b", "3", "--k", "2", "--n", "3", "--grid", "4096",
                                  "--delta", "0.7"};
    auto run = [&](const std::string& out, const std::string& threads) {
        auto args = base;
        args.insert(args.end(), {"--threads", threads, "--out", out});
        return elab::cli_main(args);
    };
    CHECK(run(a.path, "1") == 0);
    CHECK(run(b.path, "2") == 0);
    std::string sa = slurp(a.path), sb = slurp(b.path);
    CHECK(!sa.empty());
    CHECK(sa == sb);
}

TEST_CASE("config file supplies defaults, flags override") {
    TempFile cfg("cfg.json"), out1("cfg1.csv"), out2("cfg2.csv");
    {
        std::ofstream f(cfg.path);
        f << R"({"b": 3, "k": 2, "n": 2, "d1": 1, "d2": 2})";
    }
    CHECK(elab::cli_main({"--config", cfg.path, "enumerate", "--out", out1.path}) == 0);
    CHECK(slurp(out1.path) == "value,count\n4,1\n5,1\n7,1\n8,1\n");
    // explicit --n wins over the config value
    CHECK(elab::cli_main({"--config", cfg.path, "enumerate", "--n", "1", "--out", out2.path}) ==
          0);
    CHECK(slurp(out2.path) == "value,count\n1,1\n2,1\n");
}

TEST_CASE("hypothesis violations exit with 2, budget with 3") {
    CHECK(elab::cli_main({"enumerate", "--b", "2", "--k", "2", "--n", "2", "--d1", "0", "--d2",
                          "1"}) == 2);
    CHECK(elab::cli_main({"enumerate", "--b", "3", "--k", "2", "--n", "40", "--d1", "1", "--d2",
                          "2"}) == 3);
}

TEST_CASE("verify-lemma --list names every registered check") {
    TempFile out("list.txt");
    CHECK(elab::cli_main({"verify-lemma", "--list", "--out", out.path}) == 0);
    std::string s = slurp(out.path);
    for (const char* name :
         {"centered-roundtrip", "word-map", "ns-progression", "interval-sum", "moment-parseval",
          "support-chain", "very-large-values", "decoupling", "multisection", "bilinear-count",
          "common-diffs", "product-expansion", "ww-tilde", "digit-gap", "hamming-energy",
          "quad-energy", "psi-truncation", "almost-hom", "dioph-pipeline", "box-norm", "box-cs",
          "cube-density", "real-var", "vinogradov"})
        CHECK(s.find(name) != std::string::npos);
}

TEST_CASE("verify-lemma runs a named check") {
    TempFile out("ww.txt");
    CHECK(elab::cli_main({"verify-lemma", "ww-tilde", "--trials", "500", "--seed", "7", "--out",
                          out.path}) == 0);
    CHECK(slurp(out.path).find("[PASS] ww-tilde") != std::string::npos);
    CHECK(elab::cli_main({"verify-lemma", "definitely-not-a-check"}) == 1);
}

TEST_CASE("dioph emits a JSON trace") {
    TempFile out("dioph.json");
    CHECK(elab::cli_main({"dioph", "--theta", "1/729", "--b", "3", "--n", "6", "--M", "243",
                          "--r", "1", "--out", out.path}) == 0);
    std::string s = slurp(out.path);
    CHECK(s.find("\"census_size\": 13") != std::string::npos);
    CHECK(s.find("dirichlet-fallback") != std::string::npos);
}

TEST_CASE("counts CSV, bitmap sidecar and energy report exports") {
    TempFile counts("counts.csv"), bitmap("bm.bin"), report("rep.json");
    TempFile bitmap_side("bm.bin.json");
    CHECK(elab::cli_main({"moment", "--b", "3", "--k", "2", "--n", "1", "--t", "2",
                          "--counts-out", counts.path, "--out", "/dev/null"}) == 0);
    CHECK(slurp(counts.path) == "value,count\n2,1\n5,2\n8,1\n");

    CHECK(elab::cli_main({"enumerate", "--b", "3", "--k", "2", "--n", "2", "--bitmap",
                          bitmap.path, "--out", "/dev/null"}) == 0);
    std::string side = slurp(bitmap.path + ".json");
    CHECK(side.find("\"offset\":0") != std::string::npos);
    CHECK(side.find("\"popcount\":4") != std::string::npos);
    std::string raw = slurp(bitmap.path);
    REQUIRE(raw.size() == 2);  // 9 positions -> 2 bytes
    // members 4,5,7,8: bits 4,5,7 in byte 0 and bit 0 in byte 1
    CHECK(static_cast<unsigned char>(raw[0]) == 0xb0);
    CHECK(static_cast<unsigned char>(raw[1]) == 0x01);

    CHECK(elab::cli_main({"energy", "--ball", "--b", "3", "--r", "1", "--m", "3",
                          "--check-bound", "--out", report.path}) == 0);
    std::string rep = slurp(report.path);
    CHECK(rep.find("\"value\": \"143\"") != std::string::npos);
    CHECK(rep.find("\"bound\": \"63504\"") != std::string::npos);
}

TEST_CASE("manifest embeds the run configuration") {
    TempFile out("m.csv"), man("m.json");
    CHECK(elab::cli_main({"moment", "--b", "3", "--k", "2", "--n", "1", "--t", "1", "--out",
                          out.path, "--manifest", man.path, "--seed", "99"}) == 0);
    std::string s = slurp(man.path);
    CHECK(s.find("\"command\": \"moment\"") != std::string::npos);
    CHECK(s.find("\"seed\": 99") != std::string::npos);
    CHECK(s.find("splitmix64") != std::string::npos);
}
