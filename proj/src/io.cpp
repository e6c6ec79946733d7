#include "vgic/io.hpp"

#include "vgic/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace vgic::io {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json mat_to_json(const Mat& m) { return mat_to_rows(m); }

Mat mat_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(field) + ": expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw InputError(std::string(field) + ": each row must be a non-empty array");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw InputError(std::string(field) + ": entries must be numbers");
      r.push_back(x.get<double>());
    }
    if (!rows.empty() && r.size() != rows.front().size()) throw InputError(std::string(field) + ": ragged rows");
    rows.push_back(std::move(r));
  }
  return mat_from_rows(rows);
}

json to_json(const ChannelMimo& ch) {
  return {{"h1", mat_to_json(ch.h1)}, {"f1", mat_to_json(ch.f1)}, {"h2", mat_to_json(ch.h2)},
          {"f2", mat_to_json(ch.f2)}, {"p1", ch.p1},                {"p2", ch.p2}};
}

ChannelMimo channel_from_json(const json& j) {
  if (!j.is_object()) throw InputError("channel: expected a JSON object");
  for (const char* k : {"h1", "f1", "h2", "f2", "p1", "p2"})
    if (!j.contains(k)) throw InputError(std::string("channel: missing field \"") + k + "\"");
  ChannelMimo ch;
  ch.h1 = mat_from_json(j["h1"], "h1");
  ch.f1 = mat_from_json(j["f1"], "f1");
  ch.h2 = mat_from_json(j["h2"], "h2");
  ch.f2 = mat_from_json(j["f2"], "f2");
  for (const char* k : {"p1", "p2"})
    if (!j[k].is_number()) throw InputError(std::string(k) + ": expected a number");
  ch.p1 = j["p1"].get<double>();
  ch.p2 = j["p2"].get<double>();
  return ch;
}

ChannelMimo parse_channel(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < upto; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // drop the library's own prefix and position, keep the reason
    std::string msg = e.what();
    const auto pos = msg.find(": ", msg.find("parse error"));
    if (pos != std::string::npos) msg = msg.substr(pos + 2);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  return channel_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

ChannelMimo load_channel(const std::string& path) { return parse_channel(read_file(path)); }

json to_json(const KktCertificate& c) {
  return {{"gamma_or_alpha", c.gamma_or_alpha},
          {"lambdas_or_betas", c.lambdas_or_betas},
          {"etas_or_nus", c.etas_or_nus},
          {"w_or_k", {mat_to_json(c.w_or_k[0].mat()), mat_to_json(c.w_or_k[1].mat())}},
          {"multipliers", c.multipliers},
          {"residuals",
           {{"stationarity", c.residuals.stationarity},
            {"complementarity", c.residuals.complementarity},
            {"min_eig_w", c.residuals.min_eig_w},
            {"simplex", c.residuals.simplex}}},
          {"non_unique", c.non_unique}};
}

json to_json(const GsiVerdict& v) {
  json checks = json::array();
  for (const auto& d : v.details)
    checks.push_back({{"name", d.name}, {"passed", d.passed}, {"margin", d.margin}, {"note", d.note}});
  json genie = json::object();
  if (v.genie.a1) genie["a1"] = mat_to_json(*v.genie.a1);
  if (v.genie.a2) genie["a2"] = mat_to_json(*v.genie.a2);
  return {{"status", to_string(v.status)}, {"checks", checks}, {"r1", v.r1}, {"r2", v.r2}, {"genie", genie}};
}

namespace {
// JSON has no nan; keep it as null
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace

json to_json(const RegionPolyline& p) {
  json rows = json::array();
  for (const auto& pt : p.points) {
    json r = {{"phi", num(pt.phi)}, {"r1", pt.r1}, {"r2", pt.r2}, {"certified", pt.certified}, {"q", num(pt.q)}};
    if (pt.cov) r["cov"] = {mat_to_json(pt.cov->s1.mat()), mat_to_json(pt.cov->s2.mat())};
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string polyline_csv(const RegionPolyline& p) {
  std::string out = "phi_over_pi,R1_nats,R2_nats,certified,Q_phi\n";
  for (const auto& pt : p.points)
    out += fmt(pt.phi / std::numbers::pi) + "," + fmt(pt.r1) + "," + fmt(pt.r2) + "," +
           (pt.certified ? "1" : "0") + "," + fmt(pt.q) + "\n";
  return out;
}

std::string regime_csv(const std::vector<miso::RegimeCell>& cells) {
  std::string out = "a,theta_over_pi,case_tag,certified\n";
  for (const auto& c : cells)
    out += fmt(c.a) + "," + fmt(c.theta / std::numbers::pi) + "," + c.tag + "," + (c.certified ? "1" : "0") + "\n";
  return out;
}

json to_json(const RunReport& r) {
  const Tolerances& t = r.tolerances;
  json j = {{"command", r.command},
            {"results", r.results},
            {"tolerances",
             {{"solver_tol", t.solver_tol},
              {"active_tol", t.active_tol},
              {"markov_residual", t.markov_residual},
              {"genie_norm", t.genie_norm},
              {"cert_psd", t.cert_psd},
              {"multiplier", t.multiplier}}},
            {"exit_code", r.exit_code}};
  j["channel"] = r.channel ? to_json(*r.channel) : json(nullptr);
  j["wall_time_s"] = r.wall_time_s ? json(*r.wall_time_s) : json(nullptr);
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  try {
    r.command = j.at("command").get<std::string>();
    r.results = j.at("results");
    const json& t = j.at("tolerances");
    r.tolerances.solver_tol = t.at("solver_tol").get<double>();
    r.tolerances.active_tol = t.at("active_tol").get<double>();
    r.tolerances.markov_residual = t.at("markov_residual").get<double>();
    r.tolerances.genie_norm = t.at("genie_norm").get<double>();
    r.tolerances.cert_psd = t.at("cert_psd").get<double>();
    r.tolerances.multiplier = t.at("multiplier").get<double>();
    r.exit_code = j.at("exit_code").get<int>();
    if (!j.at("channel").is_null()) r.channel = channel_from_json(j.at("channel"));
    if (!j.at("wall_time_s").is_null()) r.wall_time_s = j.at("wall_time_s").get<double>();
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace vgic::io
