#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "qcoeff/expand.hpp"
#include "qcoeff/output.hpp"

using namespace qcoeff;

namespace {

struct CliResult {
    int code;
    std::string out;
};

// Runs the binary under test (path in QCOEFF_CLI) through the shell.
CliResult run_cli(const std::string& args, const std::string& redirect = " 2>/dev/null") {
    const char* bin = std::getenv("QCOEFF_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "QCOEFF_CLI must point at the CLI binary");
    const std::string cmd = "'" + std::string(bin) + "' " + args + redirect;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

CliResult run_cli_stderr(const std::string& args) {
    return run_cli(args, " 2>&1 1>/dev/null");
}

} // namespace

TEST_CASE("expand prints the partition numbers") {
    const CliResult res = run_cli("expand --r 1 --order 9 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 10);
    CHECK(dump.rows.back() == std::vector<std::string>{"9", "30"});
}

TEST_CASE("expand at order zero prints the single constant row") {
    const CliResult res = run_cli("expand --r -24 --order 0 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 1);
    CHECK(dump.rows[0] == std::vector<std::string>{"0", "1"});
}

TEST_CASE("expand at r=1/2 prints exact rationals") {
    const CliResult res = run_cli("expand --r 1/2 --order 2 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 3);
    CHECK(dump.rows[0] == std::vector<std::string>{"0", "1"});
    CHECK(dump.rows[1] == std::vector<std::string>{"1", "1/2"});
    CHECK(dump.rows[2] == std::vector<std::string>{"2", "7/8"});
}

TEST_CASE("csv and jsonl output is byte-identical across runs") {
    for (const char* format : {"csv", "jsonl"}) {
        const std::string args =
            std::string("expand --r 7/3 --order 20 --no-timestamp --format ") + format;
        const CliResult first = run_cli(args);
        const CliResult second = run_cli(args);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
        CHECK_FALSE(first.out.empty());
    }
}

TEST_CASE("timestamp appears unless suppressed") {
    const CliResult with = run_cli("expand --r 1 --order 2");
    CHECK(with.out.find("# timestamp=") != std::string::npos);
    const CliResult without = run_cli("expand --r 1 --order 2 --no-timestamp");
    CHECK(without.out.find("timestamp") == std::string::npos);
}

TEST_CASE("dump round-trip reproduces the library table") {
    const SeriesExpansion expected = expand_sparse(make_rational(7, 3), 25);
    for (const char* format : {"csv", "jsonl"}) {
        const CliResult res = run_cli(
            std::string("expand --r 7/3 --order 25 --no-timestamp --format ") + format);
        CHECK(res.code == 0);
        const ParsedDump dump = parse_dump(res.out, parse_format(format));
        CHECK(coefficients_from_dump(dump) == expected.coefficients);
    }
}

TEST_CASE("expand reduces mod m on request") {
    const CliResult res = run_cli("expand --r 1 --order 30 --mod 5 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    const SeriesExpansion exp = expand_sparse(Rat(1), 30);
    REQUIRE(dump.rows.size() == 31);
    for (std::size_t n = 0; n <= 30; ++n) {
        CHECK(dump.rows[n][1] == std::to_string(reduce_mod(exp.coefficients[n], 5).value));
    }
    // the classical congruence is visible in the dump: rows 4, 9, 14, ... are 0
    CHECK(dump.rows[4][1] == "0");
    CHECK(dump.rows[9][1] == "0");
    CHECK(dump.rows[24][1] == "0");
}

TEST_CASE("engines are selectable and agree") {
    const CliResult sparse = run_cli("expand --r -3 --order 15 --format csv --no-timestamp");
    CliResult lemma = run_cli("expand --r -3 --order 15 --engine lemma --format csv --no-timestamp");
    CliResult oracle =
        run_cli("expand --r -3 --order 15 --engine oracle --format csv --no-timestamp");
    CHECK(sparse.code == 0);
    CHECK(lemma.code == 0);
    CHECK(oracle.code == 0);
    CHECK(parse_dump(sparse.out, Format::csv).rows == parse_dump(lemma.out, Format::csv).rows);
    CHECK(parse_dump(sparse.out, Format::csv).rows == parse_dump(oracle.out, Format::csv).rows);
}

TEST_CASE("oracle engine rejects fractional exponents") {
    CHECK(run_cli("expand --r 1/2 --order 5 --engine oracle").code == 2);
}

TEST_CASE("verify passes on the classical family") {
    const CliResult res = run_cli("verify --family 5m+4 --r 1 --m-max 50 --format csv --no-timestamp");
    CHECK(res.code == 0);
    CHECK(res.out.find("# result=pass") != std::string::npos);
    CHECK(parse_dump(res.out, Format::csv).rows.empty()); // no counterexamples
}

TEST_CASE("verify picks the family from r when asked for all") {
    const CliResult res = run_cli("verify --r 10/3 --m-max 40 --format csv --no-timestamp");
    CHECK(res.code == 0);
    CHECK(res.out.find("# family=5m+1") != std::string::npos);
}

TEST_CASE("verify exits 4 on a residue mismatch") {
    CHECK(run_cli("verify --family 5m+4 --r 2 --m-max 10").code == 4);
    CHECK(run_cli("verify --r 3 --m-max 10").code == 4); // no family covers residue 3
    const CliResult err = run_cli_stderr("verify --family 5m+4 --r 2 --m-max 10");
    CHECK(err.out.find("residue 2") != std::string::npos);
    CHECK(err.out.find("residue 1") != std::string::npos);
}

TEST_CASE("expand exits 3 when a denominator is not invertible") {
    const CliResult res = run_cli("expand --r 1/5 --order 3 --mod 5");
    CHECK(res.code == 3);
    const CliResult err = run_cli_stderr("expand --r 1/5 --order 3 --mod 5");
    CHECK(err.out.find("index 1") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("expand --r 1.5 --order 3").code == 2);
    CHECK(run_cli("expand --order 3").code == 2);           // missing --r
    CHECK(run_cli("expand --r 1").code == 2);               // missing --order
    CHECK(run_cli("nonsense").code == 2);                   // unknown subcommand
    CHECK(run_cli("").code == 2);                           // subcommand required
    CHECK(run_cli("expand --r 1 --order 3 --format xml").code == 2);
    CHECK(run_cli("expand --r 1 --order 3 --engine fast").code == 2);
    CHECK(run_cli("verify --family 5m+0 --r 1 --m-max 1").code == 2);
    CHECK(run_cli("expand --r 1 --order 3 --mod 1").code == 2);
}

TEST_CASE("QCOEFF_MAX_ORDER caps the accepted order") {
    const char* bin = std::getenv("QCOEFF_CLI");
    REQUIRE(bin != nullptr);
    const std::string prefixed =
        "QCOEFF_MAX_ORDER=10 '" + std::string(bin) + "' expand --r 1 --order 11 2>/dev/null";
    FILE* pipe = popen(prefixed.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[256];
    while (fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    CHECK(WEXITSTATUS(pclose(pipe)) == 2);

    CHECK(run_cli("expand --r 1 --order 11").code == 0); // default cap is far higher
}

TEST_CASE("tau prints the frozen values") {
    const CliResult res = run_cli("tau --n-max 6 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 6);
    CHECK(dump.rows[0] == std::vector<std::string>{"1", "1"});
    CHECK(dump.rows[1] == std::vector<std::string>{"2", "-24"});
    CHECK(dump.rows[5] == std::vector<std::string>{"6", "-6048"});
}

TEST_CASE("trace shows the base case rows and the verdict") {
    const CliResult res = run_cli("trace --n 4 --r 1 --format csv --no-timestamp");
    CHECK(res.code == 0);
    CHECK(res.out.find("# reconstruction=ok") != std::string::npos);
    CHECK(res.out.find("# classification=ok") != std::string::npos);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 2);
    CHECK(dump.rows[0] == std::vector<std::string>{"1", "1", "+1", "10", "0", "J1", "3"});
    CHECK(dump.rows[1] == std::vector<std::string>{"2", "3", "-1", "10", "0", "J2", "1"});
}

TEST_CASE("trace labels the j=3 term at n=9") {
    const CliResult res = run_cli("trace --n 9 --r 1 --format csv --no-timestamp");
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 3);
    CHECK(dump.rows[2][5] == "J3");
    CHECK(dump.rows[2][4] == "0");
}

TEST_CASE("trace exits 3 for exponents with denominator divisible by 5") {
    CHECK(run_cli("trace --n 4 --r 1/5").code == 3);
}

TEST_CASE("check-identities reports per-identity status") {
    const CliResult res = run_cli("check-identities --which all --order 30 --format csv --no-timestamp");
    CHECK(res.code == 0);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 6); // three lemma pairs, sigma, taup, jacobi
    for (const auto& row : dump.rows) CHECK(row[2] == "pass");
    CHECK(res.out.find("# result=pass") != std::string::npos);

    CHECK(run_cli("check-identities --which sigma --order 40").code == 0);
    CHECK(run_cli("check-identities --which jacobi --order 100").code == 0);
    CHECK(run_cli("check-identities --which taup --order 60").code == 0);
    CHECK(run_cli("check-identities --which primes --order 10").code == 2);
}

TEST_CASE("bench agrees across engines and reports stable term counts") {
    const std::string args = "bench --order 60 --format csv --no-timestamp";
    const CliResult res = run_cli(args);
    CHECK(res.code == 0);
    CHECK(res.out.find("# agreement=ok") != std::string::npos);
    const ParsedDump dump = parse_dump(res.out, Format::csv);
    REQUIRE(dump.rows.size() == 3);
    CHECK(dump.rows[0][0] == "sparse");
    CHECK(dump.rows[1][0] == "lemma");
    CHECK(dump.rows[1][1] == std::to_string(60 * 61 / 2));
    CHECK(dump.rows[2][0] == "oracle");
    for (const auto& row : dump.rows) CHECK(row[2] == "-"); // seconds suppressed

    const CliResult again = run_cli(args);
    CHECK(res.out == again.out);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("expand --help").code == 0);
}
