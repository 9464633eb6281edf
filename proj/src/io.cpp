#include "qshape/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qshape {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 parse_i128(const std::string& s) {
  if (s.empty()) throw QuarticError(ErrorCode::InvalidArgument, "empty integer field");
  std::size_t i = 0;
  const bool neg = s[0] == '-';
  if (neg || s[0] == '+') i = 1;
  if (i == s.size()) throw QuarticError(ErrorCode::InvalidArgument, "bad integer '" + s + "'");
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw QuarticError(ErrorCode::InvalidArgument, "bad integer '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

void write_fields_csv(std::ostream& os, const Enumeration& e) {
  os << kCsvHeader << '\n';
  for (const auto& f : e.fields) {
    os << f.m << ',' << f.a << ',' << f.b << ',' << f.c << ',' << sign_char(f.sign) << ',' << to_string(f.type)
       << ',' << to_string(f.disc) << ',' << f.lambda1_sq.get_num().get_str() << ','
       << f.lambda1_sq.get_den().get_str() << ',' << f.b << '\n';
  }
  os << "#summary,total=" << e.fields.size() << ",excluded_8divm=" << e.excluded_8divm
     << ",excluded_reducible=" << e.excluded_reducible << '\n';
}

ParsedCsv parse_fields_csv(std::istream& is) {
  ParsedCsv out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#summary", 0) == 0) out.summary = line;
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw QuarticError(ErrorCode::InvalidArgument, "unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() != 10) throw QuarticError(ErrorCode::InvalidArgument, "CSV row needs 10 columns: " + line);
    FieldRecord f;
    f.m = static_cast<std::int64_t>(parse_i128(cols[0]));
    f.a = static_cast<std::int64_t>(parse_i128(cols[1]));
    f.b = static_cast<std::int64_t>(parse_i128(cols[2]));
    f.c = static_cast<std::int64_t>(parse_i128(cols[3]));
    if (cols[4] != "+" && cols[4] != "-") throw QuarticError(ErrorCode::InvalidArgument, "bad sign " + cols[4]);
    f.sign = cols[4] == "+" ? Sign::Plus : Sign::Minus;
    f.type = parse_field_type(cols[5]);
    f.disc = parse_i128(cols[6]);
    f.lambda1_sq = Rational(cols[7] + "/" + cols[8]);
    f.lambda1_sq.canonicalize();
    if (cols[9] != cols[2]) throw QuarticError(ErrorCode::InvalidArgument, "b_param disagrees with b: " + line);
    out.fields.push_back(std::move(f));
  }
  return out;
}

std::string report_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"check", c.check},
                   {"status", c.pass ? "pass" : "fail"},
                   {"observed", c.observed},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance}});
  return arr.dump(2);
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace qshape
