#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "qshape/io.hpp"

using namespace qshape;

TEST_CASE("format_double keeps 12 significant digits") {
  CHECK(format_double(8) == "8");
  CHECK(format_double(std::sqrt(32.0)) == "5.65685424949");
  CHECK(format_double(1e-20) == "1e-20");
}

TEST_CASE("i128 text round trip") {
  for (i128 v : {i128{0}, i128{-2048}, i128{1} << 100, -(i128{1} << 90) + 7}) CHECK(parse_i128(to_string(v)) == v);
  CHECK_THROWS_AS(parse_i128("12x"), QuarticError);
}

TEST_CASE("CSV round trip") {
  const Enumeration e = enumerate_fields(60.0, EnumerationFilter{});
  REQUIRE(e.fields.size() > 100);
  std::stringstream ss;
  write_fields_csv(ss, e);
  const std::string text = ss.str();
  CHECK(text.rfind(kCsvHeader, 0) == 0);
  std::stringstream in(text);
  const ParsedCsv back = parse_fields_csv(in);
  CHECK(back.fields == e.fields);
  CHECK(back.summary.find("excluded_8divm=" + std::to_string(e.excluded_8divm)) != std::string::npos);
}

TEST_CASE("CSV for an empty result is header plus summary") {
  EnumerationFilter f;
  f.rect = Rect{1, 1, 1, 1};
  const Enumeration e = enumerate_fields(1.0, f);
  std::stringstream ss;
  write_fields_csv(ss, e);
  CHECK(ss.str() == std::string(kCsvHeader) + "\n#summary,total=0,excluded_8divm=0,excluded_reducible=0\n");
}

TEST_CASE("CSV parser rejects malformed rows") {
  std::stringstream bad(std::string(kCsvHeader) + "\n2,2,1,1,+,II,-2048,1,2\n");
  CHECK_THROWS_AS(parse_fields_csv(bad), QuarticError);
  std::stringstream wrong_header("m,a\n");
  CHECK_THROWS_AS(parse_fields_csv(wrong_header), QuarticError);
}

TEST_CASE("JSON report fields") {
  const std::vector<CheckResult> checks{{"one", true, "1", "1", "exact"}, {"two", false, "2", "3", "0"}};
  const auto j = nlohmann::json::parse(report_json(checks));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["status"] == "pass");
  CHECK(j[1]["status"] == "fail");
  for (const auto& c : j)
    for (const char* k : {"check", "status", "observed", "expected", "tolerance"}) CHECK(c.contains(k));
  CHECK_FALSE(all_passed(checks));
}
