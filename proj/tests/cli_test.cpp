#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;  // stdout and stderr, interleaved
};

Result bdp(const std::string& args) {
    const std::string cmd = std::string("\"") + BDP_CLI_PATH + "\" " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("bdp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
                std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name), std::ios::binary) << content;
        return path(name);
    }

    std::string read(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ParseDecodeVerifyRoundTrip) {
    const std::string in = write("t.txt", "ababbab");
    for (const char* algo : {"lz77", "lzp", "lzor", "lex", "lzrr"}) {
        for (const char* extra : {"", "-r", "-f json"}) {
            Result r = bdp("parse " + in + " -a " + algo + " " + extra + " -o " + path("t.bdp"));
            ASSERT_EQ(r.code, 0) << r.out;
            EXPECT_NE(r.out.find("n=7"), std::string::npos) << r.out;
            r = bdp("decode " + path("t.bdp") + " -o " + path("back.txt"));
            ASSERT_EQ(r.code, 0) << r.out;
            EXPECT_EQ(read("back.txt"), "ababbab");
            r = bdp("verify " + path("t.bdp") + " " + in);
            EXPECT_EQ(r.code, 0) << r.out;
            EXPECT_NE(r.out.find("ok phrases="), std::string::npos);
        }
    }
    const Result to_stdout = bdp("decode " + path("t.bdp"));
    EXPECT_EQ(to_stdout.out, "ababbab");
}

TEST_F(Cli, UsageErrors) {
    const std::string in = write("t.txt", "ab");
    const Result r = bdp("parse " + in + " -a lz78 -o " + path("t.bdp"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("unknown algorithm"), std::string::npos) << r.out;
    EXPECT_EQ(bdp("").code, 1);
    EXPECT_EQ(bdp("parse").code, 1);
    EXPECT_EQ(bdp("frobnicate").code, 1);
    EXPECT_EQ(bdp("--help").code, 0);
}

TEST_F(Cli, IoErrors) {
    EXPECT_EQ(bdp("parse " + path("missing.txt") + " -o " + path("t.bdp")).code, 2);
    EXPECT_EQ(bdp("decode " + path("missing.bdp")).code, 2);
}

TEST_F(Cli, EmptyFile) {
    const std::string in = write("empty.txt", "");
    Result r = bdp("parse " + in + " -o " + path("e.bdp"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("phrases=0"), std::string::npos);
    r = bdp("decode " + path("e.bdp") + " -o " + path("e.out"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(read("e.out"), "");
    EXPECT_EQ(bdp("verify " + path("e.bdp") + " " + in).code, 0);
}

TEST_F(Cli, VerifyHandWrittenParses) {
    const std::string text = write("t.txt", "ababbab");
    write("b.json", R"({"format":"BDP1","version":1,"reversed":false,"n":7,"phrases":[)"
                    R"({"ref":3,"len":2},{"literal":97},{"literal":98},{"ref":2,"len":3}]})");
    write("bp.json", R"({"format":"BDP1","version":1,"reversed":false,"n":7,"phrases":[)"
                     R"({"ref":3,"len":2},{"ref":1,"len":2},{"literal":98},{"literal":97},{"literal":98}]})");
    Result r = bdp("verify " + path("b.json") + " " + text);
    EXPECT_EQ(r.code, 0) << r.out;
    r = bdp("verify " + path("bp.json") + " " + text);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("verification failed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("cyclic reference"), std::string::npos) << r.out;
    r = bdp("decode " + path("bp.json"));
    EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, CorruptParseFile) {
    const std::string in = write("t.txt", "abracadabra");
    ASSERT_EQ(bdp("parse " + in + " -o " + path("t.bdp")).code, 0);
    std::string bin = read("t.bdp");
    bin[0] ^= 0x01;
    write("bad.bdp", bin);
    Result r = bdp("decode " + path("bad.bdp"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("magic"), std::string::npos) << r.out;
    write("short.bdp", read("t.bdp").substr(0, 20));
    EXPECT_EQ(bdp("verify " + path("short.bdp") + " " + in).code, 3);
}

TEST_F(Cli, StatsCsvAndJson) {
    const std::string run = write("run.txt", std::string(1000, 'a'));
    const std::string fib = write("fib.txt", "abaababaabaab");
    Result r = bdp("stats " + run + " " + fib + " -o " + path("report.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("|LZRR|/|LZ77|="), std::string::npos) << r.out;
    std::istringstream csv(read("report.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "file,n,algo,direction,phrases,seconds");
    int rows = 0;
    bool saw_run_lz77 = false;
    while (std::getline(csv, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5) << line;
        if (line.rfind("run.txt,1000,lz77,", 0) == 0) {
            saw_run_lz77 = true;
            EXPECT_NE(line.find(",2,"), std::string::npos) << line;
        }
    }
    EXPECT_EQ(rows, 6);
    EXPECT_TRUE(saw_run_lz77);

    r = bdp("stats " + run + " -a lz77,lzrr -f json --forward-only -o " + path("report.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(read("report.json"));
    EXPECT_EQ(j["timing"], "wall");
    EXPECT_EQ(j["best_of_reverse"], false);
    ASSERT_EQ(j["rows"].size(), 2u);
    EXPECT_EQ(j["rows"][0]["phrases"], 2);
}

TEST_F(Cli, Generators) {
    ASSERT_EQ(bdp("gen fibonacci --order 7 -o " + path("f.txt")).code, 0);
    EXPECT_EQ(read("f.txt"), "abaababaabaab");
    ASSERT_EQ(bdp("gen thue-morse --order 3 -o " + path("tm.txt")).code, 0);
    EXPECT_EQ(read("tm.txt"), "abbabaab");
    ASSERT_EQ(bdp("gen run -n 5 -o " + path("r.txt")).code, 0);
    EXPECT_EQ(read("r.txt"), "aaaaa");
    ASSERT_EQ(bdp("gen random -n 200 --sigma 4 --seed 3 -o " + path("x.txt")).code, 0);
    ASSERT_EQ(bdp("gen random -n 200 --sigma 4 --seed 3 -o " + path("y.txt")).code, 0);
    EXPECT_EQ(read("x.txt").size(), 200u);
    EXPECT_EQ(read("x.txt"), read("y.txt"));
    EXPECT_EQ(bdp("gen fibonacci -o " + path("z.txt")).code, 1);
}
