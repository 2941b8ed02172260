#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded, capturing stdout and the exit code.
Run cli(const std::string& args) {
    std::string cmd = std::string(LIMCA_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(LIMCA_DATA_DIR) + "/" + name; }

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "limca_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("usage and errors") {
    CHECK(cli("--help").code == 0);
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("surj").code == 2);
    CHECK(cli("surj /nonexistent/rule").code == 2);
    CHECK(cli("verify preinv0 --samples many").code == 2);
    CHECK(cli("verify no-such-suite").code == 2);
    CHECK(cli("verify preinv0 --mutate bogus").code == 2);
    CHECK(cli("verify squad --squad-variant odd").code == 2);
    CHECK(cli("delta build " + data("reference.delta") + " --which 2").code == 2);
}

TEST_CASE("surj and orphan") {
    Run s = cli("surj " + data("eca128.rule"));
    CHECK(s.code == 0);
    CHECK(s.out == "not surjective\n");
    Run o = cli("orphan " + data("eca128.rule"));
    CHECK(o.code == 0);
    CHECK(o.out == "101\n");
    CHECK(cli("orphan " + data("eca4.rule")).out == "11\n");
    CHECK(cli("orphan " + data("eca0.rule")).out == "1\n");
}

TEST_CASE("code build and toy") {
    auto dir = scratch();
    Run b = cli("code build --u 011 --a 1 --b 1 --out " + (dir / "f.code").string());
    CHECK(b.code == 0);
    CHECK(b.out == "m: 37\nn: 104\nk: 222\n");
    CHECK(std::filesystem::exists(dir / "f.code"));
    Run t = cli("code toy --u 11111 --a 2 --b 29 --k 14");
    CHECK(t.code == 0);
    CHECK(t.out == slurp(data("toy.code")));
    CHECK(cli("code build --u 012").code == 2);
}

TEST_CASE("squad validate") {
    Run r = cli("squad validate --max-n 10");
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: pass\n") != std::string::npos);
}

TEST_CASE("delta build round trip through sim") {
    auto dir = scratch();
    auto rule = dir / "f1.rule";
    Run b = cli("delta build " + data("reference.delta") + " --which 1 --out " + rule.string());
    CHECK(b.code == 0);
    std::string text = slurp(rule);
    CHECK(text.find("proc: delta\n") != std::string::npos);
    CHECK(text.find("which: 1\n") != std::string::npos);
    CHECK(text.find("radius: 27\n") != std::string::npos);
    std::string zeros(60, '0');
    Run s = cli("sim --rule " + rule.string() + " --config " + zeros + " --steps 2");
    CHECK(s.code == 0);
    CHECK(s.out == zeros + "\n" + zeros + "\n" + zeros + "\n");
    Run shipped = cli("sim --rule " + data("f0.rule") + " --config " + zeros + " --steps 1 --render pbm");
    CHECK(shipped.code == 0);
    CHECK(shipped.out.rfind("P1\n60 2\n", 0) == 0);
}

TEST_CASE("sim renders elementary rules") {
    Run r = cli("sim --rule " + data("eca128.rule") + " --config 01110 --steps 2");
    CHECK(r.code == 0);
    CHECK(r.out == "01110\n00100\n00000\n");
    CHECK(cli("sim --rule " + data("eca128.rule") + " --config 01110 --render gif").code == 2);
}

TEST_CASE("verify exit codes and determinism") {
    Run a = cli("verify preinv0 --samples 100000 --seed 7");
    CHECK(a.code == 0);
    CHECK(a.out.find("seed: 7\nsamples: 100000\n") != std::string::npos);
    CHECK(a.out.find("verdict: pass\n") != std::string::npos);
    Run b = cli("verify preinv0 --samples 100000 --seed 7");
    CHECK(a.out == b.out);
    Run m = cli("verify preinv0 --samples 5000 --mutate kill-is-identity");
    CHECK(m.code == 1);
    CHECK(m.out.find("verdict: fail\n") != std::string::npos);
    CHECK(m.out.find("violation: input=") != std::string::npos);
    auto out = scratch() / "report.txt";
    Run w = cli("verify surjectivity --out " + out.string());
    CHECK(w.code == 0);
    CHECK(slurp(out) == w.out);
    CHECK(cli("verify fire --period 14 --squad-variant no-isolation").code == 1);
}

TEST_CASE("nilprobe") {
    Run z = cli("nilprobe --rule " + data("eca0.rule"));
    CHECK(z.code == 0);
    CHECK(z.out == "nilpotent(1)\n");
    Run n = cli("nilprobe --rule " + data("eca128.rule"));
    CHECK(n.code == 0);
    CHECK(n.out.rfind("non_nilpotent(", 0) == 0);
    CHECK(cli("nilprobe --rule " + data("eca0.rule") + " --theta 5").code == 2);
}
