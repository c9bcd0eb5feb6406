#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fuzzyts/series.hpp"
#include "testutil.hpp"

using namespace fuzzyts;
namespace fs = std::filesystem;

namespace {

struct TempCsv {
    fs::path path;
    explicit TempCsv(const std::string& content) {
        path = fs::temp_directory_path() /
               ("fuzzyts_series_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempCsv() { std::error_code ec; fs::remove(path, ec); }
};

} // namespace

TEST_CASE("loadCsv reads a minimal three-row file") {
    TempCsv file("1971,13055\n1972,13563\n1973,13867\n");
    const TimeSeries series = loadCsv(file.path.string());
    CHECK(series.size() == 3);
    CHECK(series.firstTime() == 1971);
    CHECK(series.valueAt(1973) == 13867);
    CHECK(series.integerValued());
}

TEST_CASE("loadCsv accepts a header row and CRLF endings") {
    TempCsv file("t,value\r\n1971,13055\r\n1972,13563\r\n1973,13867\r\n");
    const TimeSeries series = loadCsv(file.path.string());
    CHECK(series.size() == 3);
}

TEST_CASE("loadCsv normalizes row order to ascending t") {
    TempCsv file("1973,3\n1971,1\n1972,2\n");
    const TimeSeries series = loadCsv(file.path.string());
    CHECK(series.observations().front().t == 1971);
    CHECK(series.observations().back().t == 1973);
}

TEST_CASE("loadCsv rejects a gap in the time index") {
    TempCsv file("1971,13055\n1973,13867\n1974,14696\n");
    CHECK_THROWS_AS(loadCsv(file.path.string()), GapError);
}

TEST_CASE("loadCsv rejects a duplicated time index") {
    TempCsv file("1971,1\n1971,2\n1972,3\n");
    CHECK_THROWS_AS(loadCsv(file.path.string()), GapError);
}

TEST_CASE("loadCsv rejects fewer than three rows") {
    TempCsv file("1971,13055\n1972,13563\n");
    CHECK_THROWS_AS(loadCsv(file.path.string()), TooShortError);
}

TEST_CASE("loadCsv reports the offending row on malformed input") {
    TempCsv file("1971,13055\n1972;13563\n1973,13867\n");
    try {
        loadCsv(file.path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("loadCsv flags non-numeric fields after the header") {
    TempCsv file("t,value\n1971,13055\nabc,13563\n1973,13867\n");
    CHECK_THROWS_AS(loadCsv(file.path.string()), ParseError);
}

TEST_CASE("loadCsv rejects non-finite values") {
    TempCsv file("1971,13055\n1972,nan\n1973,13867\n");
    CHECK_THROWS_AS(loadCsv(file.path.string()), NonFiniteError);
}

TEST_CASE("loadCsv rejects a missing file") {
    CHECK_THROWS_AS(loadCsv("/nonexistent/anywhere.csv"), ParseError);
}

TEST_CASE("loadCsv is idempotent") {
    const TimeSeries a = loadCsv(testutil::enrollmentCsvPath());
    const TimeSeries b = loadCsv(testutil::enrollmentCsvPath());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.observations()[i].t == b.observations()[i].t);
        CHECK(a.observations()[i].value == b.observations()[i].value);
    }
}

TEST_CASE("the enrollment file loads with 22 observations") {
    const TimeSeries series = loadCsv(testutil::enrollmentCsvPath());
    REQUIRE(series.size() == 22);
    CHECK(series.valueAt(1973) == 13867);
    CHECK(series.valueAt(1992) == 18876);
    CHECK_THROWS_AS(series.valueAt(1970), OutOfRangeError);
    CHECK_THROWS_AS(series.valueAt(1993), OutOfRangeError);
}

TEST_CASE("observations iterate with strictly consecutive time indices") {
    const TimeSeries series = loadCsv(testutil::enrollmentCsvPath());
    for (std::size_t i = 1; i < series.size(); ++i) {
        CHECK(series.observations()[i].t == series.observations()[i - 1].t + 1);
    }
}

TEST_CASE("fromObservations rejects non-finite values") {
    std::vector<Observation> obs = {{1, 1.0}, {2, std::numeric_limits<double>::infinity()}, {3, 3.0}};
    CHECK_THROWS_AS(TimeSeries::fromObservations(std::move(obs)), NonFiniteError);
}

TEST_CASE("integerValued is false once any value is fractional") {
    const TimeSeries series =
        TimeSeries::fromObservations({{1, 1.0}, {2, 2.5}, {3, 3.0}});
    CHECK_FALSE(series.integerValued());
}
