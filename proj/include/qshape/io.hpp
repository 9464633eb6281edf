#ifndef QSHAPE_IO_HPP
#define QSHAPE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qshape/counting.hpp"

namespace qshape {

/// Twelve significant digits.
std::string format_double(double v);
std::string to_string(i128 v);
i128 parse_i128(const std::string& s);

inline constexpr const char* kCsvHeader = "m,a,b,c,sign,type,disc,lambda1_sq_num,lambda1_sq_den,b_param";

void write_fields_csv(std::ostream& os, const Enumeration& e);

struct ParsedCsv {
  std::vector<FieldRecord> fields;
  std::string summary;  // the trailing '#summary' line, if present
};

/// Lines starting with '#' are skipped (the summary is kept aside).
ParsedCsv parse_fields_csv(std::istream& is);

/// One entry of a verification report.
struct CheckResult {
  std::string check;
  bool pass = false;
  std::string observed;
  std::string expected;
  std::string tolerance;
};

std::string report_json(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace qshape

#endif  // QSHAPE_IO_HPP
