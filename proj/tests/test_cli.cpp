#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "genusbound/cli.hpp"
#include "genusbound/json_io.hpp"

using namespace genusbound;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("genusbound_test_" + name);
}

} // namespace

TEST_CASE("genus and forms subcommands")
{
    const auto r = run({"genus", "-d", "-23"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "{\"d\":-23,\"h\":3,\"ambiguous\":1,\"genera\":1,\"ocpg\":false,\"forms\":[[1,1,6],[2,-1,3],[2,1,3]]}\n");
    CHECK(r.err.empty());

    const auto f = run({"forms", "-d", "-15"});
    CHECK(f.out == "{\"d\":-15,\"h\":2,\"forms\":[[1,1,4],[2,1,2]]}\n");
    const auto c = run({"classnum", "-d", "-56"});
    CHECK(c.out == "{\"d\":-56,\"h\":4,\"fundamental\":true}\n");
}

TEST_CASE("ci-exponent")
{
    CHECK(run({"ci-exponent", "--a", "12"}).out == "66\n");
    CHECK(run({"ci-exponent", "--a", "0"}).out == "18\n");
}

TEST_CASE("search output formats")
{
    const auto csv = run({"search", "--limit", "20", "--mode", "fundamental", "--csv"});
    CHECK(csv.code == cli::kOk);
    CHECK(csv.out.rfind("d,h,ambiguous,genera,ocpg\n-3,1,1,1,true\n-4,1,1,1,true\n", 0) == 0);

    const auto jsonl = run({"search", "--limit", "10000", "--mode", "idoneal", "--jsonl"});
    std::istringstream lines(jsonl.out);
    std::string line;
    long count = 0, largest = 0;
    while (std::getline(lines, line)) {
        const auto j = Json::parse(line);
        CHECK(j["ocpg"] == true);
        largest = -j["d"].get<long>() / 4;
        ++count;
    }
    CHECK(count == 65);
    CHECK(largest == 1848);

    const auto array = Json::parse(run({"search", "--limit", "4"}).out);
    REQUIRE(array.size() == 2);
    CHECK(array[0]["d"] == -3);
    CHECK(array[1]["d"] == -4);
}

TEST_CASE("lvalue and boundcheck")
{
    const auto lv = run({"lvalue", "-d", "4", "--digits", "20"});
    CHECK(lv.code == cli::kOk);
    const auto j = Json::parse(lv.out);
    const std::vector<std::string> keys = {"d", "S", "h", "w", "l1_lo", "l1_hi", "bound_lo", "bound_hi", "verdict"};
    std::vector<std::string> got;
    for (auto it = j.begin(); it != j.end(); ++it)
        got.push_back(it.key());
    CHECK(got == keys);
    CHECK(j["S"] == -2);
    CHECK(j["w"] == 4);
    CHECK(j["verdict"].is_null());

    const auto holds = run({"boundcheck", "-d", "3", "--coeff", "1", "--exponent", "18"});
    CHECK(holds.code == cli::kOk);
    CHECK(Json::parse(holds.out)["verdict"] == "Holds");

    const auto fails = run({"boundcheck", "-d", "4", "--coeff", "1000", "--exponent", "0"});
    CHECK(fails.code == cli::kVerificationFailed);
    CHECK(Json::parse(fails.out)["verdict"] == "Fails");

    const auto undecided =
        run({"boundcheck", "-d", "4", "--coeff", "0.7853981633974483096156608458198757210492", "--exponent", "0", "--digits", "1", "--refinements", "1"});
    CHECK(undecided.code == cli::kIndeterminate);

    const auto tatuzawa = run({"boundcheck", "-d", "3", "--preset", "tatuzawa"});
    CHECK(tatuzawa.code == cli::kOk);
}

TEST_CASE("invalid input exits with 2 and writes only diagnostics")
{
    for (const std::vector<std::string> &args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"genus", "-d", "-5"},
             {"genus", "-d", "banana"},
             {"genus"},
             {"search", "--limit", "2"},
             {"search", "--limit", "10", "--mode", "weird"},
             {"lvalue", "-d", "12"},
             {"cutoff", "--coeff", "0"},
             {"cutoff", "--coeff", "x/y"},
             {"verify", "--cert", "/nonexistent/cert.json"},
         }) {
        const auto r = run(args);
        CHECK_MESSAGE(r.code == cli::kInvalidInput, "args size " << args.size());
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("cutoff and verify round trip with deterministic output")
{
    const auto path = temp_file("c18.json");
    const auto first = run({"cutoff", "--coeff", "1", "--exponent", "18", "--out", path.string()});
    REQUIRE(first.code == cli::kOk);
    const auto j = Json::parse(first.out);
    CHECK(j["g_star"] == 66);
    CHECK(j["min_genus"] == 68);
    CHECK(j["d_g_star"].get<std::string>().size() == 131);

    const auto second = run({"cutoff", "--coeff", "1", "--exponent", "18"});
    CHECK(second.out == first.out);
    CHECK(run({"cutoff", "--preset", "conrey-iwaniec"}).out == first.out);

    const auto ok = run({"verify", "--cert", path.string()});
    CHECK(ok.code == cli::kOk);
    CHECK(Json::parse(ok.out)["verified"] == true);

    // Flip a verdict and re-verify.
    auto tampered = Json::parse(first.out);
    tampered["checks"][3]["verdict"] = "Overlap";
    {
        std::ofstream file(path);
        file << tampered.dump();
    }
    const auto bad = run({"verify", "--cert", path.string()});
    CHECK(bad.code == cli::kVerificationFailed);
    CHECK(Json::parse(bad.out)["verified"] == false);
    CHECK_FALSE(bad.err.empty());

    {
        std::ofstream file(path);
        file << "{not json";
    }
    CHECK(run({"verify", "--cert", path.string()}).code == cli::kInvalidInput);
    std::filesystem::remove(path);
}

TEST_CASE("cutoff with an exhausted search range")
{
    const auto r = run({"cutoff", "--exponent", "18", "--gmax", "20"});
    CHECK(r.code == cli::kVerificationFailed);
    CHECK(r.out.empty());
}

TEST_CASE("help goes to standard output")
{
    const auto r = run({"--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("cutoff") != std::string::npos);
}
