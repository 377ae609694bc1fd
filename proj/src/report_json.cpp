#include "radcurv/report_json.hpp"

#include <charconv>
#include <cmath>
#include <ctime>

#include "radcurv/errors.hpp"

namespace radcurv {

std::string shortest_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no inf/nan; extents and residuals can be unbounded
ojson finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ojson grid_array(const std::vector<double>& g) {
  ojson a = ojson::array();
  for (double v : g) a.push_back(v);
  return a;
}

ojson string_array(const std::vector<std::string>& v) {
  ojson a = ojson::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

ojson to_json(const VerificationReport& rep) {
  ojson j;
  j["theorem"] = theorem_id_name(rep.theorem_id);
  j["satisfied"] = satisfied_name(rep.satisfied);
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["slack"] = rep.slack;
  j["tol_slack"] = rep.tol_slack;
  ojson inputs = ojson::array();
  for (const auto& kv : rep.inputs)
    inputs.push_back(ojson::array({kv.first, kv.second}));
  j["inputs"] = std::move(inputs);
  ojson checks = ojson::array();
  for (const auto& c : rep.hypothesis_checks) {
    ojson cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["hypothesis_checks"] = std::move(checks);
  j["grid_label"] = rep.grid_label;
  j["grid"] = grid_array(rep.grid);
  j["notes"] = string_array(rep.notes);
  return j;
}

ojson to_json(const CurvatureNorm& cn) {
  ojson j;
  j["kind"] = curv_kind_name(cn.kind);
  j["base"] = cn.base;
  j["p"] = cn.p;
  j["R"] = cn.R;
  j["averaged"] = cn.averaged;
  j["p_in_range"] = cn.p_in_range;
  j["value"] = cn.value;
  return j;
}

ojson to_json(const SpectralEstimate& est) {
  ojson j;
  j["value"] = est.value;
  j["op"] = est.op;
  j["flat"] = est.flat;
  j["R"] = est.R;
  j["grid_size"] = est.grid_size;
  j["method"] = est.method;
  j["residual"] = est.residual;
  return j;
}

ojson to_json(const SpectralChain& chain) {
  ojson j;
  j["ladder"] = grid_array(chain.ladder);
  j["eigenvalues"] = grid_array(chain.eigenvalues);
  j["lambda_estimate"] = chain.lambda_estimate;
  j["uncertainty"] = chain.uncertainty;
  ojson bounds;
  bounds["middle"] = chain.middle;
  bounds["right"] = chain.right;
  if (chain.alpha > 0.0) {
    bounds["alpha"] = chain.alpha;
    bounds["alpha_right"] = chain.alpha_right;
    bounds["alpha_norm"] = chain.alpha_norm;
  }
  j["bounds"] = std::move(bounds);
  j["chain_ok"] = chain.chain_ok;
  j["converged"] = chain.converged;
  return j;
}

ojson to_json(const PlapChain& chain) {
  ojson j;
  j["ladder"] = grid_array(chain.ladder);
  j["eigenvalues"] = grid_array(chain.eigenvalues);
  j["lambda_estimate"] = chain.lambda_estimate;
  j["uncertainty"] = chain.uncertainty;
  ojson bounds;
  bounds["middle"] = chain.middle;
  bounds["right"] = chain.right;
  bounds["lower"] = chain.lower;
  bounds["upper"] = chain.upper;
  bounds["alpha"] = chain.alpha;
  bounds["alpha_norm"] = chain.alpha_norm;
  j["bounds"] = std::move(bounds);
  j["chain_ok"] = chain.chain_ok;
  j["converged"] = chain.converged;
  return j;
}

ojson to_json(const HeatSolution& sol) {
  ojson j;
  j["n"] = sol.n;
  j["bc"] = heat_bc_name(sol.bc);
  j["R"] = sol.grid.R;
  j["cells"] = sol.grid.m;
  j["h"] = sol.grid.h;
  j["times"] = grid_array(sol.times);
  j["mass"] = grid_array(sol.mass);
  return j;
}

ojson to_json(const ModelSpace& ms) {
  ojson j;
  j["n"] = ms.n;
  j["lambda"] = ms.lambda.source();
  j["warp"] = ms.f.source();
  j["first_warp_zero"] = ms.l.bounded ? ojson(ms.l.value) : ojson(nullptr);
  j["first_slope_zero"] = ms.t0.bounded ? ojson(ms.t0.value) : ojson(nullptr);
  j["horizon"] = finite_or_null(ms.horizon);
  j["max_residual"] = ms.grid ? ojson(ms.grid->max_residual()) : ojson(nullptr);
  j["closed_form"] = !ms.grid;
  return j;
}

ojson to_json(const Manifest& m) {
  ojson j;
  j["n"] = m.n;
  if (!m.builtin.empty())
    j["builtin"] = m.builtin;
  else
    j["g"] = m.g_source;
  j["lambda"] = m.lambda_source;
  if (m.L > 0.0) j["L"] = m.L;
  j["T"] = m.T;
  j["p"] = grid_array(m.p_grid);
  j["R"] = grid_array(m.R_grid);
  if (!m.r_grid.empty()) j["r"] = grid_array(m.r_grid);
  if (!m.theorems.empty()) j["theorems"] = string_array(m.theorems);
  j["tol"] = m.tol;
  j["seed"] = m.seed;
  return j;
}

ojson report_document(const std::vector<VerificationReport>& reports,
                      const ojson& manifest_echo, bool timestamp) {
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = "radcurv";
  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    doc["generated_at"] = buf;
  }
  if (!manifest_echo.is_null()) doc["manifest"] = manifest_echo;
  ojson arr = ojson::array();
  int n_yes = 0, n_no = 0, n_ind = 0;
  for (const auto& rep : reports) {
    arr.push_back(to_json(rep));
    switch (rep.satisfied) {
      case Satisfied::yes: ++n_yes; break;
      case Satisfied::no: ++n_no; break;
      case Satisfied::indeterminate: ++n_ind; break;
    }
  }
  doc["reports"] = std::move(arr);
  ojson summary;
  summary["total"] = static_cast<int>(reports.size());
  summary["satisfied"] = n_yes;
  summary["violated"] = n_no;
  summary["indeterminate"] = n_ind;
  doc["summary"] = std::move(summary);
  return doc;
}

namespace {

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

std::string num_cell(const ojson& v) {
  return v.is_number() ? v.dump() : std::string("-");
}

}  // namespace

std::string render_markdown(const ojson& doc) {
  if (!doc.is_object() || !doc.contains("reports") ||
      !doc["reports"].is_array())
    fail(ErrorKind::config_error, "not a report document (missing reports[])");
  std::string md = "# verification report\n\n";
  if (doc.contains("generated_at"))
    md += "generated: " + doc["generated_at"].get<std::string>() + "\n\n";
  if (doc.contains("summary")) {
    const auto& s = doc["summary"];
    md += "**" + s["satisfied"].dump() + " satisfied, " +
          s["violated"].dump() + " violated, " + s["indeterminate"].dump() +
          " indeterminate** of " + s["total"].dump() + "\n\n";
  }
  md += "| theorem | satisfied | lhs | rhs | slack |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& r : doc["reports"]) {
    md += "| " + md_escape(r.value("theorem", std::string("?"))) + " | " +
          r.value("satisfied", std::string("?")) + " | " +
          num_cell(r.contains("lhs") ? r["lhs"] : ojson()) + " | " +
          num_cell(r.contains("rhs") ? r["rhs"] : ojson()) + " | " +
          num_cell(r.contains("slack") ? r["slack"] : ojson()) + " |\n";
  }
  // spell out failed hypotheses and notes after the table
  bool any_detail = false;
  for (const auto& r : doc["reports"]) {
    std::string section;
    if (r.contains("hypothesis_checks"))
      for (const auto& c : r["hypothesis_checks"])
        if (!c.value("passed", true)) {
          section += "- hypothesis not met: " +
                     md_escape(c.value("name", std::string("?")));
          std::string detail = c.value("detail", std::string());
          if (!detail.empty()) section += " (" + md_escape(detail) + ")";
          section += "\n";
        }
    if (r.contains("notes"))
      for (const auto& n : r["notes"])
        section += "- " + md_escape(n.get<std::string>()) + "\n";
    if (!section.empty()) {
      if (!any_detail) {
        md += "\n## details\n";
        any_detail = true;
      }
      md += "\n### " + md_escape(r.value("theorem", std::string("?"))) + "\n" +
            section;
    }
  }
  return md;
}

}  // namespace radcurv
