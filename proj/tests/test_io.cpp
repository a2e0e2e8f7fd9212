#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qcoeff/output.hpp"

using namespace qcoeff;

namespace {

OutputRecord sample_record() {
    OutputRecord record;
    record.add_meta("command", "expand");
    record.add_meta("engine", "sparse");
    record.add_meta("r", "1/2");
    record.add_meta("order", "3");
    record.columns = {"n", "value"};
    record.rows = {{"0", "1"}, {"1", "1/2"}, {"2", "7/8"}, {"3", "17/16"}};
    record.footer = {"footer lines appear in human output only"};
    return record;
}

std::string render(const OutputRecord& record, Format format) {
    std::ostringstream out;
    record.emit(out, format);
    return out.str();
}

} // namespace

TEST_CASE("parse_format accepts the three names") {
    CHECK(parse_format("human") == Format::human);
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("jsonl") == Format::jsonl);
    CHECK_THROWS_AS(parse_format("json"), ParseError);
    CHECK_THROWS_AS(parse_format(""), ParseError);
}

TEST_CASE("csv output round-trips") {
    const OutputRecord record = sample_record();
    const std::string text = render(record, Format::csv);
    const ParsedDump dump = parse_dump(text, Format::csv);
    CHECK(dump.meta == record.meta);
    CHECK(dump.columns == record.columns);
    CHECK(dump.rows == record.rows);
}

TEST_CASE("jsonl output round-trips") {
    const OutputRecord record = sample_record();
    const std::string text = render(record, Format::jsonl);
    const ParsedDump dump = parse_dump(text, Format::jsonl);
    CHECK(dump.meta == record.meta);
    CHECK(dump.columns == record.columns);
    CHECK(dump.rows == record.rows);
}

TEST_CASE("csv quoting handles commas, quotes and newlines") {
    OutputRecord record;
    record.columns = {"n", "value"};
    record.rows = {{"0", "plain"}, {"1", "with,comma"}, {"2", "with\"quote"}, {"3", "a,b\"c"}};
    const ParsedDump dump = parse_dump(render(record, Format::csv), Format::csv);
    CHECK(dump.rows == record.rows);
}

TEST_CASE("emission is deterministic") {
    const OutputRecord record = sample_record();
    for (Format format : {Format::human, Format::csv, Format::jsonl}) {
        CHECK(render(record, format) == render(record, format));
    }
}

TEST_CASE("human output is not machine-parseable") {
    CHECK_THROWS_AS(parse_dump("anything", Format::human), ParseError);
}

TEST_CASE("human output aligns columns and keeps the footer") {
    const std::string text = render(sample_record(), Format::human);
    CHECK(text.find("# command=expand\n") != std::string::npos);
    CHECK(text.find("n  value") != std::string::npos);
    CHECK(text.find("footer lines appear in human output only\n") != std::string::npos);
}

TEST_CASE("csv footer is omitted") {
    const std::string text = render(sample_record(), Format::csv);
    CHECK(text.find("footer") == std::string::npos);
}

TEST_CASE("coefficients_from_dump recovers the exact table") {
    const ParsedDump dump = parse_dump(render(sample_record(), Format::csv), Format::csv);
    const std::vector<Rat> coeff = coefficients_from_dump(dump);
    REQUIRE(coeff.size() == 4);
    CHECK(coeff[0] == 1);
    CHECK(coeff[1] == make_rational(1, 2));
    CHECK(coeff[2] == make_rational(7, 8));
    CHECK(coeff[3] == make_rational(17, 16));
}

TEST_CASE("coefficients_from_dump validates the index column") {
    ParsedDump dump;
    dump.columns = {"n", "value"};

    dump.rows = {{"0", "1"}, {"2", "3"}}; // gap at 1
    CHECK_THROWS_AS(coefficients_from_dump(dump), ParseError);

    dump.rows = {{"0", "1"}, {"0", "2"}}; // repeat
    CHECK_THROWS_AS(coefficients_from_dump(dump), ParseError);

    dump.rows = {{"x", "1"}};
    CHECK_THROWS_AS(coefficients_from_dump(dump), ParseError);

    dump.columns = {"m", "value"};
    dump.rows = {{"0", "1"}};
    CHECK_THROWS_AS(coefficients_from_dump(dump), ParseError);
}

TEST_CASE("parse_dump rejects malformed csv") {
    CHECK_THROWS_AS(parse_dump("# oops\nn,value\n0,1\n", Format::csv), ParseError);
    CHECK_THROWS_AS(parse_dump("n,value\n0,1,extra\n", Format::csv), ParseError);
}

TEST_CASE("parse_dump rejects malformed jsonl") {
    CHECK_THROWS_AS(parse_dump("{not json}\n", Format::jsonl), ParseError);
    CHECK_THROWS_AS(parse_dump("{\"n\":\"0\"}\n{\"m\":\"1\"}\n", Format::jsonl), ParseError);
}

TEST_CASE("jsonl meta line comes first and rows follow column order") {
    const std::string text = render(sample_record(), Format::jsonl);
    std::istringstream in(text);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("{\"meta\":", 0) == 0);
    std::string second;
    std::getline(in, second);
    CHECK(second == "{\"n\":\"0\",\"value\":\"1\"}");
}

TEST_CASE("empty row set emits header only") {
    OutputRecord record;
    record.add_meta("result", "pass");
    record.columns = {"m", "n", "residue"};
    const ParsedDump dump = parse_dump(render(record, Format::csv), Format::csv);
    CHECK(dump.columns == record.columns);
    CHECK(dump.rows.empty());
}
