#include "hookext/serialize.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace hookext::serialize {

using ordered_json = nlohmann::ordered_json;
using combinatorics::HookParams;

namespace {

ordered_json matrix_rows(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Quote a CSV field only when it needs it (labels like "w(2,3):1" do).
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string factor_list(const intlin::ExtGroup& g) {
  if (g.orders.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.orders.size(); ++i) {
    if (i) out += ",";
    out += to_string(g.orders[i]);
  }
  return out;
}

ordered_json cell_json(const ext::VerifyCell& c) {
  ordered_json o;
  HookParams p(c.a, c.b);
  o["a"] = c.a;
  o["b"] = c.b;
  o["s"] = p.s();
  o["t"] = p.t();
  o["invariant_factor"] = factor_list(c.computed);
  o["predicted"] = c.predicted.to_string();
  o["computed"] = c.computed.to_string();
  o["match"] = c.match;
  if (c.oracle) o["oracle"] = c.oracle->to_string();
  if (c.pipeline) o["pipeline"] = c.pipeline->to_string();
  return o;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace

std::string matrix_json(const presentation::LabeledIntMatrix& m) {
  ordered_json o;
  o["a"] = m.params.a;
  o["b"] = m.params.b;
  o["s"] = m.params.s();
  o["t"] = m.params.t();
  ordered_json rl = ordered_json::array();
  for (const auto& r : m.row_ids) rl.push_back(r.to_string());
  o["row_labels"] = std::move(rl);
  ordered_json cl = ordered_json::array();
  for (const auto& c : m.col_ids) cl.push_back(c.to_string());
  o["col_labels"] = std::move(cl);
  o["rows"] = matrix_rows(m.m);
  return o.dump(2) + "\n";
}

std::string matrix_csv(const presentation::LabeledIntMatrix& m) {
  std::ostringstream os;
  for (std::size_t j = 0; j < m.col_ids.size(); ++j) {
    if (j) os << ',';
    os << csv_field(m.col_ids[j].to_string());
  }
  os << '\n';
  for (std::size_t i = 0; i < m.m.rows(); ++i) {
    for (std::size_t j = 0; j < m.m.cols(); ++j) {
      if (j) os << ',';
      os << to_string(m.m.at(i, j));
    }
    os << '\n';
  }
  return os.str();
}

std::string matrix_pretty(const presentation::LabeledIntMatrix& m) {
  const std::size_t nr = m.m.rows(), nc = m.m.cols();
  std::vector<std::string> rlab(nr);
  std::size_t rw = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    rlab[i] = m.row_ids[i].to_string();
    rw = std::max(rw, rlab[i].size());
  }
  std::vector<std::size_t> cw(nc);
  std::vector<std::string> clab(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    clab[j] = m.col_ids[j].to_string();
    cw[j] = clab[j].size();
  }
  std::vector<std::vector<std::string>> cells(nr, std::vector<std::string>(nc));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      cells[i][j] = to_string(m.m.at(i, j));
      cw[j] = std::max(cw[j], cells[i][j].size());
    }
  std::ostringstream os;
  os << "M(a=" << m.params.a << ", b=" << m.params.b << ")  " << nr << " x " << nc << "\n";
  os << std::string(rw, ' ');
  for (std::size_t j = 0; j < nc; ++j)
    os << "  " << std::setw(static_cast<int>(cw[j])) << clab[j];
  os << '\n';
  for (std::size_t i = 0; i < nr; ++i) {
    os << std::left << std::setw(static_cast<int>(rw)) << rlab[i] << std::right;
    for (std::size_t j = 0; j < nc; ++j)
      os << "  " << std::setw(static_cast<int>(cw[j])) << cells[i][j];
    os << '\n';
  }
  return os.str();
}

std::string sweep_json(const ext::VerifyReport& r) {
  ordered_json o;
  ordered_json cells = ordered_json::array();
  for (const auto& c : r.cells) cells.push_back(cell_json(c));
  o["cells"] = std::move(cells);
  o["all_match"] = r.all_match;
  o["mismatches"] = r.mismatches;
  return o.dump(2) + "\n";
}

std::string sweep_csv(const ext::VerifyReport& r) {
  const bool with_oracle =
      std::any_of(r.cells.begin(), r.cells.end(), [](const auto& c) { return c.oracle.has_value(); });
  const bool with_pipeline = std::any_of(r.cells.begin(), r.cells.end(),
                                         [](const auto& c) { return c.pipeline.has_value(); });
  std::ostringstream os;
  os << "a,b,s,t,invariant_factor,predicted,computed,match";
  if (with_oracle) os << ",oracle";
  if (with_pipeline) os << ",pipeline";
  os << '\n';
  for (const auto& c : r.cells) {
    HookParams p(c.a, c.b);
    os << c.a << ',' << c.b << ',' << p.s() << ',' << p.t() << ','
       << csv_field(factor_list(c.computed)) << ',' << csv_field(c.predicted.to_string()) << ','
       << csv_field(c.computed.to_string()) << ',' << (c.match ? "true" : "false");
    if (with_oracle) os << ',' << (c.oracle ? csv_field(c.oracle->to_string()) : std::string());
    if (with_pipeline) os << ',' << (c.pipeline ? csv_field(c.pipeline->to_string()) : std::string());
    os << '\n';
  }
  return os.str();
}

std::string sweep_pretty(const ext::VerifyReport& r) {
  std::ostringstream os;
  for (const auto& c : r.cells) {
    os << "a=" << std::setw(2) << c.a << "  b=" << std::setw(2) << c.b << "  predicted "
       << std::setw(10) << c.predicted.to_string() << "  computed " << std::setw(10)
       << c.computed.to_string();
    if (c.oracle) os << "  oracle " << std::setw(10) << c.oracle->to_string();
    if (c.pipeline) os << "  pipeline " << std::setw(10) << c.pipeline->to_string();
    os << "  " << (c.match ? "ok" : "MISMATCH") << '\n';
  }
  os << r.cells.size() << " cells, " << r.mismatches << " mismatches: "
     << (r.all_match ? "all match" : "FAILED") << '\n';
  return os.str();
}

std::string trace_json(const pipeline::PipelineTrace& t, bool full) {
  ordered_json o;
  o["a"] = t.params.a;
  o["b"] = t.params.b;
  o["s"] = t.params.s();
  o["t"] = t.params.t();
  ordered_json stages = ordered_json::array();
  for (const auto& st : t.stages) {
    ordered_json so;
    so["id"] = st.id;
    so["pass"] = st.pass;
    so["content_hash"] = hash_hex(st.content_hash);
    ordered_json checks = ordered_json::array();
    for (const auto& c : st.checks) {
      ordered_json co;
      co["id"] = c.id;
      co["pass"] = c.pass;
      if (!c.detail.empty()) co["detail"] = c.detail;
      checks.push_back(std::move(co));
    }
    so["checks"] = std::move(checks);
    if (full && st.after.rows() > 0) so["matrix"] = matrix_rows(st.after);
    stages.push_back(std::move(so));
  }
  o["stages"] = std::move(stages);
  o["r"] = t.r;
  o["final_block"] = matrix_rows(t.final_block);
  ordered_json factors = ordered_json::array();
  for (const auto& f : t.snf_factors) factors.push_back(to_string(f));
  o["snf_factors"] = std::move(factors);
  o["all_checks_pass"] = t.all_checks_pass;
  if (full) {
    ordered_json rl = ordered_json::array();
    for (const auto& rid : t.final.row_ids) rl.push_back(rid.to_string());
    o["final_row_labels"] = std::move(rl);
    ordered_json cl = ordered_json::array();
    for (const auto& cid : t.final.col_ids) cl.push_back(cid.to_string());
    o["final_col_labels"] = std::move(cl);
    o["final_matrix"] = matrix_rows(t.final.m);
  }
  return o.dump(2) + "\n";
}

std::string trace_pretty(const pipeline::PipelineTrace& t) {
  std::ostringstream os;
  os << "reduction trace a=" << t.params.a << " b=" << t.params.b << "\n";
  if (t.stages.size() == 1 && t.stages.front().id == "SNF")
    os << "  direct SNF, no pipeline\n";
  for (const auto& st : t.stages) {
    os << "  stage " << std::left << std::setw(6) << st.id << std::right
       << (st.pass ? " pass " : " FAIL ") << st.checks.size() << " checks";
    std::size_t failed = 0;
    for (const auto& c : st.checks)
      if (!c.pass) ++failed;
    if (failed) os << " (" << failed << " failed)";
    os << '\n';
    for (const auto& c : st.checks)
      if (!c.pass) os << "      " << c.id << ": " << c.detail << '\n';
  }
  os << "  r=" << t.r << "  snf=[";
  for (std::size_t i = 0; i < t.snf_factors.size(); ++i) {
    if (i) os << ',';
    os << to_string(t.snf_factors[i]);
  }
  os << "]  " << (t.all_checks_pass ? "all checks pass" : "CHECK FAILURES") << '\n';
  return os.str();
}

}  // namespace hookext::serialize
