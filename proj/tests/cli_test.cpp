#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polymatroid/cli.hpp"

using namespace polymatroid;

namespace {

const std::filesystem::path kGolden = GOLDEN_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& input = "") {
    for (auto& a : args)
        if (a.size() > 5 && a.ends_with(".json") && a.front() != '-') a = (kGolden / "data" / a).string();
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

io::Json parse(const Outcome& o) { return io::Json::parse(o.out); }

}  // namespace

TEST(Cli, GoldenFilesReplay) {
    std::size_t cases = 0;
    for (const auto& e : std::filesystem::directory_iterator(kGolden)) cases += e.path().extension() == ".cmd";
    const auto report = cli::golden_check(kGolden);
    std::string failed;
    for (const auto& f : report.failures) failed += f + " ";
    EXPECT_TRUE(report.failures.empty()) << failed;
    EXPECT_EQ(static_cast<std::size_t>(report.passed), cases);
    EXPECT_GT(cases, 100u);
}

TEST(Cli, ReadsStandardInput) {
    const auto o = invoke({"dual"}, R"({"type":[2,1],"rank":[0,2,1,2]})");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(parse(o)["rank"], io::Json::parse("[0,1,1,1]"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"validate", "p0.json"}).code, 0);
    const auto domain = invoke({"validate", "submodular_bad.json"});
    EXPECT_EQ(domain.code, 1);
    EXPECT_EQ(parse(domain)["error"], "Submodularity");
    EXPECT_EQ(parse(domain)["witness"], io::Json::parse(R"(["{1}","{2}"])"));
    EXPECT_EQ(invoke({"nonsense"}).code, 2);
    EXPECT_EQ(invoke({"validate"}, "{not json").code, 2);
    EXPECT_EQ(invoke({"--format", "xml", "validate", "p0.json"}).code, 2);
    EXPECT_EQ(invoke({"validate", "no_such_file.json"}).code, 2);
}

TEST(Cli, EveryCommandHasHelp) {
    EXPECT_EQ(cli::command_names().size(), 21u);
    for (const auto& name : cli::command_names()) {
        const auto o = invoke({name, "--help"});
        EXPECT_EQ(o.code, 0) << name;
        EXPECT_NE(o.out.find(name), std::string::npos) << name;
    }
}

TEST(Cli, CsvOutput) {
    const auto o = invoke({"--format", "csv", "dual", "p0.json"});
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(o.out.rfind("key,value\n", 0), 0u);
}

TEST(Cli, SampledOutputIsDeterministic) {
    const std::vector<std::string> args{"--seed", "5", "--trials", "50", "fan", "p0.json", "--support"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto r1 = invoke({"--seed", "3", "realize", "--random", "2", "--type", "2,1"});
    const auto r2 = invoke({"--seed", "3", "realize", "--random", "2", "--type", "2,1"});
    ASSERT_EQ(r1.code, 0);
    EXPECT_EQ(r1.out, r2.out);
}

TEST(Cli, WritesOutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "polymatroid_cli_test.json";
    std::filesystem::remove(path);
    const auto o = invoke({"--out", path.string(), "dual", "p0.json"});
    ASSERT_EQ(o.code, 0);
    EXPECT_TRUE(o.out.empty());
    std::ifstream f(path);
    EXPECT_EQ(io::Json::parse(f)["rank"], io::Json::parse("[0,1,1,1]"));
    std::filesystem::remove(path);
}

TEST(Cli, SuiteWithoutGoldens) {
    const auto o = invoke({"--trials", "20", "suite"});
    ASSERT_EQ(o.code, 0) << o.out;
    const auto doc = parse(o);
    EXPECT_TRUE(doc["pass"].get<bool>());
}
