#include <gtest/gtest.h>

#include <msurf/io.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using namespace msurf;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("msurf_cli_" + std::to_string(::getpid()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args) const
    {
        std::string cmd = std::string(MSURF_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " + path("stderr.txt");
        int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }

    std::string stderr_text() const { return read_file(path("stderr.txt")); }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help"), 0); }

TEST_F(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run(""), 2); }

TEST_F(Cli, MissingOutIsUsageError) { EXPECT_EQ(run("generate --name catenoid"), 2); }

TEST_F(Cli, GenerateWritesMeshAndSidecar)
{
    ASSERT_EQ(run("generate --name catenoid --resolution 8 --out " + path("c.obj")), 0) << stderr_text();
    auto mesh = import_obj(read_file(path("c.obj")));
    auto side = Json::parse(read_file(path("c.obj.json")));
    EXPECT_EQ(side["mesh"]["vertices"], mesh.vertices.size());
    EXPECT_EQ(side["mesh"]["faces"], mesh.faces.size());
    EXPECT_EQ(side["spec"]["name"], "catenoid");
    EXPECT_EQ(side["runConfig"]["meshResolution"], 8);
    EXPECT_EQ(side["verification"]["ends"], 2);
}

TEST_F(Cli, GenerateIsDeterministic)
{
    ASSERT_EQ(run("generate --name noid3 --resolution 8 --out " + path("a.ply")), 0);
    ASSERT_EQ(run("generate --name noid3 --resolution 8 --out " + path("b.ply")), 0);
    EXPECT_EQ(read_file(path("a.ply")), read_file(path("b.ply")));
    auto a = Json::parse(read_file(path("a.ply.json"))), b = Json::parse(read_file(path("b.ply.json")));
    a["mesh"].erase("file");
    b["mesh"].erase("file");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, GenerateThetaGivesHelicoid)
{
    ASSERT_EQ(run("generate --name catenoid --theta 1.5707963267948966 --resolution 8 --out " + path("h.obj")), 0);
    auto side = Json::parse(read_file(path("h.obj.json")));
    EXPECT_NEAR(side["spec"]["associatePhase"].get<double>(), M_PI / 2, 1e-15);
}

TEST_F(Cli, GenerateFromSpecFile)
{
    write_file_atomic(path("s.json"), R"({"kind": "catalog-name", "name": "enneper"})");
    EXPECT_EQ(run("generate --spec " + path("s.json") + " --resolution 8 --out " + path("e.obj")), 0) << stderr_text();
    write_file_atomic(path("bad.json"), R"({"kind": "catalog-name"})");
    EXPECT_EQ(run("generate --spec " + path("bad.json") + " --out " + path("x.obj")), 1);
    EXPECT_NE(stderr_text().find("SchemaError"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("x.obj")));
}

TEST_F(Cli, GenerateTrinoidClosesUp)
{
    ASSERT_EQ(run("generate --name trinoid-genus1 --resolution 8 --out " + path("t.obj")), 0) << stderr_text();
    auto side = Json::parse(read_file(path("t.obj.json")));
    EXPECT_EQ(side["verification"]["copies"], 4);
    EXPECT_EQ(side["verification"]["boundaryLoops"], 3);
}

TEST_F(Cli, BadExtensionFails) { EXPECT_EQ(run("generate --name catenoid --out " + path("c.stl")), 1); }

TEST_F(Cli, SolveDefaultStartConverges)
{
    ASSERT_EQ(run("solve-trinoid --out " + path("r.json")), 0) << stderr_text();
    auto r = Json::parse(read_file(path("r.json")));
    EXPECT_TRUE(r["result"]["converged"].get<bool>());
    EXPECT_LT(r["result"]["residualNorm"].get<double>(), 1e-8);
}

TEST_F(Cli, SolveTargetAnglesNeedFreeC)
{
    EXPECT_EQ(run("solve-trinoid --target-angles 1,2,3 --out " + path("r.json")), 2);
    EXPECT_EQ(run("solve-trinoid --start -0.5,-1.5 --out " + path("r.json")), 2);
}

TEST_F(Cli, SolveInfeasibleStartReportsAndFails)
{
    EXPECT_EQ(run("solve-trinoid --start -1,-0.5,-3 --out " + path("r.json")), 1);
    auto r = Json::parse(read_file(path("r.json")));
    EXPECT_NE(r["error"].get<std::string>().find("InfeasibleStart"), std::string::npos);
}

TEST_F(Cli, SolveIterationCapIsFailure)
{
    write_file_atomic(path("cfg.json"), R"({"simplex": {"maxIterations": 5}})");
    EXPECT_EQ(run("solve-trinoid --config " + path("cfg.json") + " --out " + path("r.json")), 1);
    auto r = Json::parse(read_file(path("r.json")));
    EXPECT_FALSE(r["result"]["converged"].get<bool>());
    EXPECT_EQ(r["runConfig"]["simplex"]["maxIterations"], 5);
}

TEST_F(Cli, VerifyPassesOnCatenoid)
{
    EXPECT_EQ(run("verify --name catenoid --checks total-curvature,symmetry,end-angles --resolution 16 --out " +
                  path("v.json")),
              0)
        << stderr_text();
    auto v = Json::parse(read_file(path("v.json")));
    EXPECT_TRUE(v["pass"].get<bool>());
    EXPECT_EQ(v["checks"].size(), 3u);
}

TEST_F(Cli, VerifyFailingCheckExitsOne)
{
    write_file_atomic(path("s.json"),
                      R"({"kind": "catalog-name", "name": "trinoid-genus1",
                          "trinoidParams": {"lambda1": -0.5, "lambda2": -1.5, "lambda3": -3, "symmetricC": true}})");
    EXPECT_EQ(run("verify --spec " + path("s.json") + " --checks end-angles --out " + path("v.json")), 1);
    auto v = Json::parse(read_file(path("v.json")));
    EXPECT_FALSE(v["pass"].get<bool>());
}

TEST_F(Cli, VerifyUnknownOrEmptyChecksIsUsageError)
{
    EXPECT_EQ(run("verify --name catenoid --checks flatness --out " + path("v.json")), 2);
    EXPECT_EQ(run("verify --name catenoid --checks , --out " + path("v.json")), 2);
    EXPECT_FALSE(fs::exists(path("v.json")));
}

TEST_F(Cli, ConflictingSurfaceSourcesIsUsageError)
{
    write_file_atomic(path("s.json"), R"({"kind": "catalog-name", "name": "enneper"})");
    EXPECT_EQ(run("verify --name catenoid --spec " + path("s.json") + " --checks symmetry --out " + path("v.json")), 2);
}
