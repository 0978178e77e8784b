#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "fracmoment/cli.hpp"
#include "fracmoment/report.hpp"

using namespace fracmoment;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "fracmoment");
    return run_cli(args);
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fracmoment_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("documented verify invocations pass") {
    CHECK(run({"verify", "convolution", "--s", "3", "--nmax", "10000", "-o", scratch("conv.json").string()}) ==
          kExitPass);
    CHECK(run({"verify", "orthogonality", "--qmax", "101", "-o", scratch("orth.json").string()}) == kExitPass);
    const auto doc = Json::parse(slurp(scratch("orth.json")));
    CHECK(doc.contains("pass"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"moments", "--q", "4"}) == kExitUsage);
    CHECK(run({"moments", "--q", "1009", "--k", "3/2"}) == kExitUsage);
    CHECK(run({"moments", "--q", "1009", "--k", "0/3"}) == kExitUsage);
    CHECK(run({"moments", "--method", "guess"}) == kExitUsage);
    CHECK(run({"contour", "perron", "--order", "2", "--x", "1"}) == kExitUsage);
    CHECK(run({"verify", "nothing"}) == kExitUsage);
    CHECK(run({}) == kExitUsage);
}

TEST_CASE("unwritable output exits 3") {
    CHECK(run({"moments", "--q", "101", "-o", "/nonexistent-dir/sub/report.json"}) == kExitIo);
}

TEST_CASE("holder report schema and config echo") {
    const auto path = scratch("holder.json");
    REQUIRE(run({"holder", "--q", "1009", "-o", path.string()}) == kExitPass);
    const auto doc = Json::parse(slurp(path));
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"params", "moment", "s_lower", "s_upper", "p4", "holder", "regime_flag"});
    for (const char* k : {"q", "r", "s", "x", "y", "a", "method"}) CHECK(doc["params"].contains(k));
    CHECK(doc["params"]["q"] == 1009);
    CHECK(doc["holder"]["pass"] == true);
    CHECK(doc["regime_flag"] == false);
    CHECK(doc["s_lower"].contains("re"));
    CHECK(doc["p4"].contains("rhs"));
}

TEST_CASE("reports are byte-identical across runs") {
    const auto a = scratch("m1.json"), b = scratch("m2.json");
    REQUIRE(run({"moments", "--q", "1009", "--k", "1/3", "-o", a.string()}) == kExitPass);
    REQUIRE(run({"moments", "--q", "1009", "--k", "1/3", "-o", b.string()}) == kExitPass);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("\"moment\"") != std::string::npos);
}

TEST_CASE("survey csv header") {
    const auto path = scratch("survey.csv");
    REQUIRE(run({"survey", "--k", "1/2", "--primes", "101", "1009", "-o", path.string()}) == kExitPass);
    const auto text = slurp(path);
    CHECK(text.rfind("q,moment_over_phi,logq_pow_k2,ratio\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("dump-coeffs writes n,value rows") {
    const auto path = scratch("d.csv");
    REQUIRE(run({"dump-coeffs", "--kind", "divisor", "--alpha", "1/2", "--n", "4", "-o", path.string()}) == kExitPass);
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,value");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1] == "2,0.5");
    CHECK(rows[3] == "4,0.375");
}

TEST_CASE("contour subcommands write reports") {
    const auto path = scratch("perron.json");
    CHECK(run({"contour", "perron", "--order", "3", "--x", "100", "-o", path.string()}) == kExitPass);
    CHECK(!slurp(path).empty());
    const auto sweep = scratch("sweep.csv");
    CHECK(run({"contour", "sweep", "--ys", "1000", "10000", "-o", sweep.string()}) == kExitPass);
    CHECK(slurp(sweep).rfind("y,value,oracle,ratio\n", 0) == 0);
}

TEST_CASE("json floats use 17 significant digits and nulls for non-finite values") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(4.0) == "4");
    Json j = Json::object();
    j["bad"] = std::nan("");
    CHECK(dump_json(j).find("null") != std::string::npos);
}
