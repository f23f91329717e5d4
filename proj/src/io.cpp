#include "dtf/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dtf {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

char verdict_char(Verdict v) {
  switch (v) {
    case Verdict::convex: return '+';
    case Verdict::concave: return '-';
    case Verdict::neither: return 'X';
    case Verdict::indeterminate: return '?';
  }
  return '?';
}

}  // namespace

json matrix_to_json(const cmat& A) {
  json j;
  j["n"] = A.rows();
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      re.push_back(A(i, k).real());
      im.push_back(A(i, k).imag());
    }
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

cmat matrix_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (n < 1 || re.size() != static_cast<std::size_t>(n * n) ||
      im.size() != static_cast<std::size_t>(n * n)) {
    throw std::invalid_argument("matrix_from_json: inconsistent dimensions");
  }
  cmat A(n, n);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k, ++idx) {
      A(i, k) = cdouble(re[idx].get<double>(), im[idx].get<double>());
    }
  }
  return A;
}

json counterexample_to_json(const PsiCounterexample& cert) {
  json j;
  j["p"] = cert.p;
  j["s"] = cert.s;
  j["seed"] = cert.seed;
  j["sample_index"] = cert.sample_index;
  j["defect"] = cert.defect;
  j["scale"] = cert.scale;
  j["H"] = matrix_to_json(cert.H);
  j["L"] = matrix_to_json(cert.L);
  j["A1"] = matrix_to_json(cert.A1);
  j["A2"] = matrix_to_json(cert.A2);
  return j;
}

PsiCounterexample counterexample_from_json(const nlohmann::json& j) {
  PsiCounterexample cert;
  cert.p = j.at("p").get<double>();
  cert.s = j.at("s").get<double>();
  cert.seed = j.at("seed").get<std::uint64_t>();
  cert.sample_index = j.at("sample_index").get<long>();
  cert.defect = j.at("defect").get<double>();
  cert.scale = j.at("scale").get<double>();
  cert.H = matrix_from_json(j.at("H"));
  cert.L = matrix_from_json(j.at("L"));
  cert.A1 = matrix_from_json(j.at("A1"));
  cert.A2 = matrix_from_json(j.at("A2"));
  return cert;
}

json young_report_to_json(const YoungReport& report) {
  json j;
  j["suite"] = "tracial_young";
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  j["max_equal_pair_defect"] = report.max_equal_pair_defect;
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"p", c.p},
                     {"dim", c.dim},
                     {"trials", c.trials},
                     {"worst_defect", c.worst_defect},
                     {"verdict", c.pass ? "pass" : "violated"}});
  }
  j["cells"] = std::move(cells);
  if (report.certificate) {
    const auto& v = *report.certificate;
    j["certificate"] = {{"p", v.p},
                        {"trial", v.trial},
                        {"defect", v.defect},
                        {"A", matrix_to_json(v.A)},
                        {"B", matrix_to_json(v.B)}};
  }
  return j;
}

std::string young_report_to_csv(const YoungReport& report) {
  std::string out = "p,dim,trials,worst_defect,verdict\n";
  for (const auto& c : report.cells) {
    out += fmt(c.p, "%.10g");
    out += ',';
    out += std::to_string(c.dim);
    out += ',';
    out += std::to_string(c.trials);
    out += ',';
    out += fmt(c.worst_defect, "%.6e");
    out += ',';
    out += c.pass ? "pass" : "violated";
    out += '\n';
  }
  return out;
}

json scan_report_to_json(const RegionScanReport& report) {
  json j;
  j["suite"] = "region_scan";
  j["target"] = to_string(report.target);
  j["seed"] = report.config.seed;
  j["trials_per_cell"] = report.config.trials;
  j["dims"] = report.config.dims;
  j["verdict_tol"] = report.config.verdict_tol;
  j["upsilon_random_K"] = report.config.upsilon_random_K;
  j["grid"] = {{"pmin", report.grid.pmin}, {"pmax", report.grid.pmax},
               {"psteps", report.grid.psteps}, {"qmin", report.grid.qmin},
               {"qmax", report.grid.qmax}, {"qsteps", report.grid.qsteps}};
  json cells = json::array();
  for (const auto& c : report.cells) {
    json cj = {{"p", c.p},
               {"q", c.q},
               {"verdict", to_string(c.verdict)},
               {"max_convexity_defect", c.max_convexity_defect},
               {"max_concavity_defect", c.max_concavity_defect},
               {"second_diff_min", c.second_diff_min},
               {"second_diff_max", c.second_diff_max},
               {"trials", c.trials}};
    if (!c.reason.empty()) cj["reason"] = c.reason;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

std::string scan_report_to_csv(const RegionScanReport& report) {
  std::string out = "p,q,verdict,max_convexity_defect,max_concavity_defect,trials\n";
  for (const auto& c : report.cells) {
    out += fmt(c.p, "%.10g");
    out += ',';
    out += fmt(c.q, "%.10g");
    out += ',';
    out += to_string(c.verdict);
    out += ',';
    out += fmt(c.max_convexity_defect, "%.6e");
    out += ',';
    out += fmt(c.max_concavity_defect, "%.6e");
    out += ',';
    out += std::to_string(c.trials);
    out += '\n';
  }
  return out;
}

std::string scan_report_to_grid(const RegionScanReport& report) {
  const int np = report.grid.psteps;
  const int nq = report.grid.qsteps;
  std::string out;
  out += "verdict grid for ";
  out += to_string(report.target);
  out += " ( '+' convex, '-' concave, 'X' neither, '?' indeterminate )\n";
  out += "columns: p = " + fmt(report.grid.pmin, "%.4g") + " .. " +
         fmt(report.grid.pmax, "%.4g");
  out += ", rows: " + std::string(report.target == ScanTarget::phi ? "q" : "s") + " = " +
         fmt(report.grid.qmax, "%.4g") + " (top) .. " + fmt(report.grid.qmin, "%.4g") +
         " (bottom)\n";
  for (int iq = nq - 1; iq >= 0; --iq) {
    for (int ip = 0; ip < np; ++ip) {
      out += verdict_char(report.cells[static_cast<std::size_t>(ip) * nq + iq].verdict);
    }
    out += '\n';
  }
  return out;
}

json cell_certificate_to_json(const ConvexityVerdict& cell, ScanTarget target) {
  json j;
  j["target"] = to_string(target);
  j["p"] = cell.p;
  j["q"] = cell.q;
  j["verdict"] = to_string(cell.verdict);
  j["max_convexity_defect"] = cell.max_convexity_defect;
  j["max_concavity_defect"] = cell.max_concavity_defect;
  j["tol"] = cell.tol;
  j["trials"] = cell.trials;
  if (!cell.reason.empty()) j["reason"] = cell.reason;
  if (cell.worst) {
    j["worst_instance"] = {{"dim", cell.worst->dim},
                           {"defect", cell.worst->defect},
                           {"A1", matrix_to_json(cell.worst->A1)},
                           {"A2", matrix_to_json(cell.worst->A2)},
                           {"H", matrix_to_json(cell.worst->H)},
                           {"L", matrix_to_json(cell.worst->L)}};
  }
  return j;
}

json identity_report_to_json(const IdentitySuiteReport& report) {
  json j;
  j["suite"] = "identities";
  j["seed"] = report.seed;
  j["pass"] = report.pass;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json cj = {{"name", c.name},
               {"trials", c.trials},
               {"worst_error", c.worst_error},
               {"tol", c.tol},
               {"pass", c.pass}};
    if (!c.first_failure.empty()) cj["first_failure"] = c.first_failure;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

json variational_report_to_json(const VariationalSuiteReport& report) {
  json j;
  j["suite"] = "variational";
  j["seed"] = report.seed;
  j["pass"] = report.pass;
  j["trace_instances"] = report.trace_instances;
  j["phi_instances"] = report.phi_instances;
  j["entropy_pairs"] = report.entropy_pairs;
  j["worst_equality_error"] = report.worst_equality_error;
  j["worst_bound_violation"] = report.worst_bound_violation;
  j["min_entropy_gap"] = report.min_entropy_gap;
  j["equality_tol"] = report.equality_tol;
  j["bound_tol"] = report.bound_tol;
  j["entropy_tol"] = report.entropy_tol;
  if (!report.first_failure.empty()) j["first_failure"] = report.first_failure;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dtf
