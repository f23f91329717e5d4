#pragma once

// Serialization: the matrix JSON object {n, re, im} with row-major entry
// arrays, certificate JSON for violations and counterexamples, and the
// CSV / plain-text writers for suite reports.  All output is a pure
// function of its inputs (no timestamps, fixed number formatting) so
// reruns with the same seed are byte-identical.

#include <string>

#include <json.hpp>

#include "dtf/scanner.hpp"
#include "dtf/suites.hpp"
#include "dtf/young.hpp"

namespace dtf {

using json = nlohmann::ordered_json;

json matrix_to_json(const cmat& A);
cmat matrix_from_json(const nlohmann::json& j);

json counterexample_to_json(const PsiCounterexample& cert);
PsiCounterexample counterexample_from_json(const nlohmann::json& j);

json young_report_to_json(const YoungReport& report);
std::string young_report_to_csv(const YoungReport& report);

json scan_report_to_json(const RegionScanReport& report);
std::string scan_report_to_csv(const RegionScanReport& report);
/// plain-text verdict grid, q (or s) rows from high to low
std::string scan_report_to_grid(const RegionScanReport& report);
json cell_certificate_to_json(const ConvexityVerdict& cell, ScanTarget target);

json identity_report_to_json(const IdentitySuiteReport& report);
json variational_report_to_json(const VariationalSuiteReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dtf
