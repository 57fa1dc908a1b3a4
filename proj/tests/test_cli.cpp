#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "symcap/constructions.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SYMCAP_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string& f) { return std::string(SYMCAP_DATA) + "/" + f; }

int lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

} // namespace

TEST(Cli, Orbits) {
    const auto r = run("orbits " + data("q.json") + " --action-bound 5/2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 5);
    EXPECT_NE(r.out.find("g^2_{1,1}\t5/2\t11/2"), std::string::npos);
    const auto j = run("--format json orbits " + data("q.json") + " --action-bound 5/2");
    EXPECT_EQ(symcap::Json::parse(j.out).size(), 5u);
}

TEST(Cli, Cz) {
    EXPECT_EQ(run("cz " + data("q.json") + " 'g^2_{1,1}'").code, 0);
    EXPECT_EQ(run("cz " + data("q.json") + " 'H(2,1,1)'").code, 3);
}

TEST(Cli, InlineDomain) {
    const auto r = run("capacity '{\"type\":\"ellipsoid\",\"coeffs\":[\"2\",\"4\"]}' -k 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\t2\n2\t4\n3\t4\n");
}

TEST(Cli, Curves) {
    const auto r = run("curves enumerate " + data("q.json") + " -R 31/10 --area-max 1 --index-min -1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 2);
}

TEST(Cli, VerifyLemma) {
    EXPECT_EQ(run("verify lemma con2 --params " + data("con2_grid.json")).code, 0);
    const auto bad = run("verify lemma con2 --params " + data("bad_rows.json"));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("HypothesisViolated"), std::string::npos);
    EXPECT_EQ(run("verify lemma ellipsoid-ends --params '{\"coeffs\":[\"2\",\"5\",\"13\"]}'").code, 0);
    EXPECT_EQ(run("verify lemma ellipsoid-ends --params '{\"coeffs\":[\"2\",\"4\",\"13\"]}'").code, 2);
    EXPECT_EQ(run("verify lemma nope --params " + data("con2_grid.json")).code, 3);
}

TEST(Cli, EmbedCheck) {
    EXPECT_EQ(run("embed check --obstruct " + data("e24.json") + " " + data("bp.json")).code, 1);
    EXPECT_EQ(run("embed check --obstruct " + data("e24.json") + " '{\"type\":\"ball_product\",\"R\":\"4\",\"n\":3}'").code, 2);
    EXPECT_EQ(run("embed check --obstruct " + data("e24.json") + " '{\"type\":\"ball_product\",\"R\":\"41/10\",\"n\":3}'").code, 0);
}

TEST(Cli, DeriveAndVerify) {
    const auto d = run("embed derive " + data("te.json") + " " + data("ball72.json"));
    ASSERT_EQ(d.code, 0);
    const std::string path = testing::TempDir() + "symcap_cert.json";
    std::ofstream(path) << d.out;
    const auto v = run("embed verify " + path);
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out.rfind("OK", 0), 0u);

    auto j = symcap::Json::parse(d.out);
    j["slack"] = "1";
    std::ofstream(path) << j.dump();
    EXPECT_EQ(run("embed verify " + path).code, 1);

    EXPECT_EQ(run("embed derive " + data("te.json") + " " + data("ball72.json") + " --no-axiom E14").code, 1);
}

TEST(Cli, Suite) {
    const auto r = run("suite paper");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("NOT-VERIFIED"), std::string::npos);
    EXPECT_EQ(run("suite paper --no-axiom E14").code, 1);
}

TEST(Cli, Errors) {
    EXPECT_EQ(run("orbits " + data("broken.json") + " --action-bound 2").code, 3);
    EXPECT_EQ(run("orbits " + data("missing.json") + " --action-bound 2").code, 3);
    EXPECT_EQ(run("").code, 3);
    EXPECT_EQ(run("orbits " + data("q.json") + " --action-bound x/0").code, 3);
}
