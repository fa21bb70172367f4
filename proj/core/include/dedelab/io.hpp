#pragma once

#include <string>

#include "dedelab/moments.hpp"
#include "dedelab/scan.hpp"

namespace dedelab {

const char* formula_name(Formula f);
const char* nkind_name(NKind k);

/// JSON renderings; rationals appear as "num/den" strings.
std::string to_json_string(const MomentResult& m, int indent = -1);
std::string to_json_string(const NValue& n, int indent = -1);
std::string to_json_string(const ScanSummary& s, int indent = -1);
std::string to_json_string(const MersenneFitReport& r, int indent = -1);

/// Oracle check report {name, lhs, rhs, abs_err, rel_err, pass}.
std::string check_report_json(const std::string& name, double lhs, double rhs, bool pass,
                              int indent = -1);

/// CSV: p,d,h,s_num,s_den,q_ratio (ratio to 6 significant digits).
std::string scan_csv_header();
std::string scan_csv_line(const ScanRecord& r);

} // namespace dedelab
