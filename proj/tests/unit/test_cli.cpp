#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohtrap/cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cohtrap::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "cohtrap_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("stationary anchor") {
    const auto r = call({"stationary", "--alpha", "0.2", "--mu", "1.46", "--lambda", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "ups_inf,c_stationary,l1_stationary\n0.492390357,0.182746884,0.492390357\n");
}

TEST_CASE("flags work before and after the subcommand") {
    const auto a = call({"--mu", "2", "tc"});
    const auto b = call({"tc", "--mu", "2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("eval at t = 0 is fully coherent") {
    const auto r = call({"eval", "--t", "0", "--lambda", "0", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["ups_re"] == 1.0);
    CHECK(j["ups_im"] == 0.0);
    CHECK(j["c_rel_entropy"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j["c_l1"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qsl modes") {
    const auto paper = call({"qsl", "--mu", "1", "--upsilon", "2"});
    CHECK(paper.code == 0);
    CHECK(paper.out.find("paper_literal") != std::string::npos);
    const auto purity = call({"qsl", "--mode", "purity", "--mu", "2", "--lambda", "0.3", "--upsilon", "2"});
    CHECK(purity.code == 0);
    CHECK(purity.out.find("relative_purity") != std::string::npos);
    CHECK(call({"qsl", "--mode", "fast"}).code == 2);
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"stationary", "--lambda", "2"}).code == 2);
    CHECK(call({"stationary", "--alpha", "abc"}).code == 2);
    CHECK(call({"sweep", "--axis", "mu=-2:4:10"}).code == 2);
    CHECK(call({"tc", "--mu", "-0.5"}).code == 2);
    CHECK(call({"tc", "--mu", "1.46", "--lambda", "0.1", "--t-max", "5", "--grid-n", "500"}).code == 3);
    CHECK(call({"figure", "fig9", "--out", scratch_dir().string()}).code == 2);
    CHECK(call({"optimize", "--target", "nothing"}).code == 2);
    CHECK(call({"eval"}).code == 2);
    const auto help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("sweep") != std::string::npos);
    const auto msg = call({"stationary", "--lambda", "2"});
    CHECK(msg.err.find("lambda") != std::string::npos);
}

TEST_CASE("sweep to stdout and to a file with a manifest") {
    const auto r = call({"sweep", "--axis", "mu=0.5:2:4", "--axis", "lambda=0:1:2", "--outputs", "stationary,qsl"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("mu,lambda,c_stationary,l1_stationary,t_c,qsl_ratio,error_code\n", 0) == 0);
    const auto path = scratch_dir() / "s.csv";
    const std::vector<std::string> args{"sweep", "--axis", "alpha=0.1:1:5", "--mu", "2", "--lambda", "0.4",
                                        "--out", path.string(), "--threads", "2"};
    REQUIRE(call(args).code == 0);
    const std::string first = slurp(path);
    REQUIRE(call(args).code == 0);
    CHECK(slurp(path) == first);
    const auto m = json::parse(slurp(scratch_dir() / "s.manifest.json"));
    CHECK(m["config"]["model"]["bath"]["mu"] == 2.0);
    CHECK(m["config"]["model"]["correlation"]["lambda"] == 0.4);
    CHECK(call({"sweep", "--axis", "mu=1:2:3", "--outputs", "bogus"}).code == 2);
}

TEST_CASE("config file with flag overrides") {
    const auto path = scratch_dir() / "config.json";
    {
        std::ofstream out(path);
        out << R"({"model":{"bath":{"alpha":0.2,"mu":1.46},"correlation":{"lambda":1.0}}})";
    }
    const auto from_config = call({"stationary", "--config", path.string()});
    CHECK(from_config.out.find("0.387815388") != std::string::npos);
    const auto overridden = call({"stationary", "--config", path.string(), "--lambda", "0"});
    CHECK(overridden.out.find("0.182746884") != std::string::npos);
    CHECK(call({"stationary", "--config", (scratch_dir() / "none.json").string()}).code == 2);
}

TEST_CASE("manifest replays as a config") {
    const auto path = scratch_dir() / "replay.csv";
    REQUIRE(call({"sweep", "--axis", "mu=0.5:2:3", "--lambda", "0.7", "--upsilon", "2.5", "--out", path.string()})
                .code == 0);
    const std::string first = slurp(path);
    const auto manifest = scratch_dir() / "replay.manifest.json";
    const auto copy = scratch_dir() / "replay.config.json";
    std::filesystem::copy_file(manifest, copy, std::filesystem::copy_options::overwrite_existing);
    std::filesystem::remove(path);
    // the echoed output_path sends the replay back to the same file
    REQUIRE(call({"sweep", "--axis", "mu=0.5:2:3", "--config", copy.string()}).code == 0);
    CHECK(slurp(path) == first);
    CHECK(slurp(manifest) == slurp(copy));
}

TEST_CASE("optimize commands") {
    const auto s = call({"optimize", "--target", "stationary", "--alpha", "0.5"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("1.4616") != std::string::npos);
    const auto q = call({"optimize", "--target", "qsl", "--vars", "mu", "--lambda", "0.3", "--upsilon", "2",
                         "--coarse-n", "12", "--format", "json"});
    REQUIRE(q.code == 0);
    const auto j = json::parse(q.out);
    CHECK(j["vars"] == "mu");
    CHECK(j["ratio"].get<double>() <= j["coarse_min"].get<double>());
    CHECK(call({"optimize", "--target", "stationary", "--vars", "joint"}).code == 2);
    CHECK(call({"optimize", "--target", "stationary", "--mu-range", "0:5"}).code == 2);
}

TEST_CASE("ce-cg sets real amplitudes") {
    const auto r = call({"eval", "--t", "0", "--ce-cg", "0.6", "0.8", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["c_l1"].get<double>() == doctest::Approx(0.96));
    CHECK(call({"eval", "--t", "0", "--ce-cg", "1", "1"}).code == 2);
}

TEST_CASE("figure command writes CSV and manifest") {
    const auto dir = scratch_dir() / "figs";
    const auto r = call({"figure", "fig1c", "--out", dir.string(), "--resolution", "10"});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "fig1c.csv"));
    const auto m = json::parse(slurp(dir / "fig1c.manifest.json"));
    CHECK(m["figure"] == "fig1c");
    CHECK(m["rows"] == 40);
}

} // TEST_SUITE
