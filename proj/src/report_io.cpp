#include "ghzst/report_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ghzst {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json form_json(const npa::SdpProblem& problem, const npa::SparseForm& form) {
  Json terms = Json::array();
  for (const auto& [i, c] : form.terms) terms.push_back({{"word", problem.moments[i].to_string()}, {"coef", c}});
  return terms;
}

}  // namespace

Json make_report(const std::string& kind) { return Json{{"schema", 1}, {"kind", kind}}; }

Json to_json(const CorrelationReport& rep) {
  Json records = Json::array();
  for (const auto& r : rep.records)
    records.push_back({{"id", r.id}, {"lhs", r.lhs}, {"target", r.target}, {"deviation", r.deviation}});
  return {{"r", rep.r}, {"max_deviation", rep.max_deviation}, {"records", records}};
}

Json to_json(const Theorem1Report& rep) {
  return {{"probabilities", rep.probabilities},
          {"distances", rep.distances},
          {"unitality_residuals", rep.unitality_residuals},
          {"max_distance", rep.max_distance},
          {"max_unitality", rep.max_unitality},
          {"povm_residual", rep.povm_residual}};
}

Json to_json(const npa::GCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points)
    points.push_back({{"epsilon", p.epsilon},
                      {"G", p.g},
                      {"status", npa::to_string(p.status)},
                      {"iterations", p.iterations},
                      {"psd_residual", p.psd_residual},
                      {"primal_residual", p.primal_residual}});
  return {{"threshold", optional_number(curve.threshold)}, {"all_converged", curve.all_converged()}, {"points", points}};
}

Json to_json(const QualityCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) {
    Json pt{{"epsilon", p.epsilon}, {"q", p.q}};
    if (p.bound) {
      pt["bound"] = p.bound->value;
      pt["argmin_u"] = p.bound->argmin_u;
    } else {
      pt["bound"] = "nobound";
    }
    points.push_back(pt);
  }
  return {{"threshold", optional_number(curve.threshold)}, {"points", points}};
}

Json problem_json(const npa::SdpProblem& problem) {
  Json j = make_report("moment-relaxation");
  j["epsilon"] = problem.epsilon;
  Json basis = Json::array();
  for (const auto& w : problem.basis) basis.push_back(w.to_string());
  Json moments = Json::array();
  for (const auto& w : problem.moments) moments.push_back(w.to_string());
  j["basis"] = basis;
  j["moments"] = moments;
  Json table = Json::array();
  for (std::size_t u = 0; u < problem.dim(); ++u) {
    Json row = Json::array();
    for (std::size_t v = 0; v < problem.dim(); ++v) row.push_back(problem.entry(u, v).moment);
    table.push_back(row);
  }
  j["entry_moment"] = table;
  Json constraints = Json::array();
  for (const auto& c : problem.constraints)
    constraints.push_back({{"label", c.label}, {"target", c.target}, {"terms", form_json(problem, c.form)}});
  j["constraints"] = constraints;
  j["objective"] = form_json(problem, problem.objective);
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ghzst
