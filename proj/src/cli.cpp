#include "vgic/cli.hpp"

#include "vgic/errors.hpp"
#include "vgic/gsi.hpp"
#include "vgic/miso.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

namespace vgic::cli {

using io::json;
using io::RunReport;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

using Clock = std::chrono::steady_clock;

RunReport start(const std::string& command, const Options& o) {
  RunReport r;
  r.command = command;
  r.tolerances.solver_tol = o.tol;
  r.tolerances.active_tol = solver_options(o).active_tol;
  return r;
}

void finish(RunReport& r, const Options& o, Clock::time_point t0) {
  if (o.timing) r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
}

json sym_json(const SymMatrix& s) { return io::mat_to_json(s.mat()); }

bool is_symmetric(const MisoEquiv& m) {
  return std::abs(m.theta1 - m.theta2) < 1e-12 && std::abs(m.a1 - m.a2) < 1e-12 && m.p1 == m.p2 && m.a1 > 0.0 &&
         m.theta1 > 0.0 && m.theta1 < kPi / 2;
}

json closed_form(const ChannelMimo& ch, ChannelKind kind) {
  if (kind == ChannelKind::MisoZic) {
    const auto c = miso::zic_sum_rate(reduce_miso(ch));
    return {{"family", "zic"},
            {"case_tag", miso::to_string(c.case_tag)},
            {"sum_rate_nats", c.sum_rate},
            {"phi_opt_over_pi", c.phi_opt / kPi},
            {"phi_ez_over_pi", c.phi_ez / kPi},
            {"certified", c.certified}};
  }
  if (kind == ChannelKind::Miso) {
    const MisoEquiv m = reduce_miso(ch);
    if (!is_symmetric(m)) return nullptr;
    const auto c = miso::sym_sum_rate(m);
    return {{"family", "symmetric"},
            {"case_tag", miso::to_string(c.case_tag)},
            {"sum_rate_nats", c.sum_rate},
            {"phi_star_over_pi", c.phi_star / kPi},
            {"gamma", c.gamma},
            {"lambda", c.lambda},
            {"eta", c.eta},
            {"w_scale", c.k},
            {"lambda_o_scale", c.lambda_o_scale},
            {"genie", c.genie},
            {"certified", c.certified}};
  }
  return nullptr;
}

// Lifts reduced-channel beams back to the antennas of `ch`.
RegionPolyline lift_polyline(const ChannelMimo& ch, RegionPolyline p) {
  const auto u1 = reduce_miso_user(ch.h1.row(0).transpose(), ch.f1.row(0).transpose(), ch.p1);
  const auto u2 = reduce_miso_user(ch.h2.row(0).transpose(), ch.f2.row(0).transpose(), ch.p2);
  for (auto& pt : p.points)
    if (pt.cov) pt.cov = CovariancePair{lift_covariance(pt.cov->s1, u1), lift_covariance(pt.cov->s2, u2)};
  return p;
}

struct Row {
  std::string quantity;
  double published, computed, tol;
  bool pass() const { return std::abs(computed - published) <= tol; }
};

json rows_json(const std::vector<Row>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"quantity", r.quantity}, {"published", r.published}, {"computed", r.computed}, {"tolerance", r.tol},
                   {"pass", r.pass()}});
  return out;
}

std::vector<double> a_grid(int n) { return miso::linspace(0.1, 10.0, n); }
std::vector<double> theta_grid(int n) { return miso::linspace(0.01 * kPi, 0.49 * kPi, n); }

json cells_json(const std::vector<miso::RegimeCell>& cells) {
  json out = json::array();
  for (const auto& c : cells)
    out.push_back({{"a", c.a},
                   {"theta_over_pi", c.theta / kPi},
                   {"case_tag", c.tag},
                   {"certified", c.certified},
                   {"sum_rate_nats", c.sum_rate}});
  return out;
}

RegionPolyline polyline_from_json(const json& j) {
  RegionPolyline p;
  for (const auto& r : j) {
    RegionPoint pt;
    pt.r1 = r.at("r1").get<double>();
    pt.r2 = r.at("r2").get<double>();
    pt.phi = r.at("phi").is_null() ? std::nan("") : r.at("phi").get<double>();
    pt.q = r.at("q").is_null() ? std::nan("") : r.at("q").get<double>();
    pt.certified = r.at("certified").get<bool>();
    p.points.push_back(pt);
  }
  return p;
}

std::vector<miso::RegimeCell> cells_from_json(const json& j) {
  std::vector<miso::RegimeCell> cells;
  for (const auto& c : j)
    cells.push_back({c.at("a").get<double>(), c.at("theta_over_pi").get<double>() * kPi,
                     c.at("case_tag").get<std::string>(), c.at("certified").get<bool>(),
                     c.at("sum_rate_nats").get<double>()});
  return cells;
}

std::string mat_text(const json& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < m[i].size(); ++k) s += (k ? ", " : "") + io::fmt(m[i][k].get<double>());
    s += "]";
  }
  return s + "]";
}

std::string scalar_text(const json& v) {
  if (v.is_number()) return io::fmt(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "n/a";
  return v.dump();
}

std::string rate_text(double nats) { return io::fmt(nats) + " nats (" + io::fmt(nats / kLn2) + " bits)"; }

}  // namespace

SolverOptions solver_options(const Options& o) {
  SolverOptions s;
  s.tol = o.tol;
  s.max_iter = o.max_iter;
  s.starts = o.starts;
  return s;
}

ChannelMimo example_channel(int id) {
  switch (id) {
    case 1: {
      ChannelMimo ch;
      ch.h1 = mat_from_rows({{1.1388, -0.2236}, {0.8445, -2.7614}});
      ch.f1 = mat_from_rows({{0.1489, 5.0975}, {1.3055, 1.9099}});
      ch.h2 = mat_from_rows({{1.1307, 1.0983}, {0.1415, 0.2041}});
      ch.f2 = mat_from_rows({{-0.0970, 0.7639}, {1.9346, 1.4774}});
      ch.p1 = ch.p2 = 10.0;
      return ch;
    }
    case 2: return to_channel(symmetric_miso(2.0, 0.2 * kPi, 1.0));
    case 3: return to_channel(symmetric_miso(2.0, 0.1 * kPi, 4.0));
    case 4: return to_channel(zic_miso(6.0, 0.2 * kPi, 9.0, 3.0));
    case 5: return to_channel(zic_miso(1.2, 0.1 * kPi, 0.5, 0.5));
    case 6: return to_channel(zic_miso(2.0, 0.2 * kPi, 2.0, 0.4));
    default: throw InputError("example " + std::to_string(id) + " has no channel file");
  }
}

RunReport cmd_sumrate(const ChannelMimo& ch, const Options& o) {
  const auto t0 = Clock::now();
  RunReport rep = start("sumrate", o);
  rep.channel = ch;
  const ChannelKind kind = validate(ch);
  const SumRateAnalysis a = analyze_sum_rate(ch, solver_options(o));
  json& r = rep.results;
  r["kind"] = to_string(kind);
  r["sum_rate_nats"] = a.result.objective;
  r["sum_rate_bits"] = a.result.objective / kLn2;
  r["converged"] = a.result.converged;
  r["iterations"] = a.result.iterations;
  r["active_set"] = a.result.active_set;
  r["s1"] = sym_json(a.result.pair.s1);
  r["s2"] = sym_json(a.result.pair.s2);
  r["kkt"] = io::to_json(a.kkt);
  r["verdict"] = io::to_json(a.verdict);
  r["closed_form"] = closed_form(ch, kind);
  rep.exit_code = a.verdict.certified() ? kExitOk : kExitNotCertified;
  finish(rep, o, t0);
  return rep;
}

RunReport cmd_boundary(const ChannelMimo& ch, const Options& o) {
  const auto t0 = Clock::now();
  if (o.kind != "inner" && o.kind != "outer") throw InputError("--kind must be inner or outer");
  if (o.points < 2) throw InputError("--points must be at least 2");
  RunReport rep = start("boundary", o);
  rep.channel = ch;
  const ChannelKind kind = validate(ch);
  json& r = rep.results;
  r["kind"] = to_string(kind);
  r["boundary_kind"] = o.kind;
  RegionPolyline poly;
  if (o.kind == "inner" && kind == ChannelKind::MisoZic) {
    const miso::ZicBoundary zb = miso::zic_boundary(reduce_miso(ch), o.points);
    poly = lift_polyline(ch, zb.polyline);
    r["method"] = "closed_form_zic";
    r["phi_lo_over_pi"] = zb.phi_lo / kPi;
    r["phi_hi_over_pi"] = zb.phi_hi / kPi;
    json roots = json::array();
    for (double q : zb.q_roots) roots.push_back(q / kPi);
    r["q_roots_over_pi"] = roots;
    json corners = json::array();
    for (const auto& c : zb.corners) corners.push_back({{"name", c.name}, {"r1", c.r1}, {"r2", c.r2}});
    r["corners"] = corners;
    r["very_strong"] = zb.very_strong;
  } else if (o.kind == "inner") {
    const BoundaryAnalysis ba = certified_boundary(ch, o.points, solver_options(o));
    poly = ba.sweep.polyline;
    r["method"] = "solver";
    r["r_max"] = ba.sweep.r_max;
    r["monotone"] = ba.sweep.monotone;
    json verdicts = json::array();
    for (const auto& v : ba.verdicts) verdicts.push_back(io::to_json(v));
    r["verdicts"] = verdicts;
  } else {
    const BoundarySweep sw = outer_boundary_per_point(ch, o.points, solver_options(o));
    poly = sw.polyline;
    r["method"] = "solver_outer";
    r["r_max"] = sw.r_max;
    r["monotone"] = sw.monotone;
    json genies = json::array();
    for (const auto& p : sw.problems)
      genies.push_back({{"a1", io::mat_to_json(*p.genie.a1)}, {"a2", io::mat_to_json(*p.genie.a2)}});
    r["genies"] = genies;
  }
  r["polyline"] = io::to_json(poly);
  const auto n_cert = std::count_if(poly.points.begin(), poly.points.end(), [](const auto& p) { return p.certified; });
  r["n_points"] = poly.points.size();
  r["n_certified"] = n_cert;
  const bool all = n_cert == static_cast<long>(poly.points.size());
  r["all_certified"] = o.kind == "inner" ? json(all) : json(nullptr);
  rep.exit_code = o.kind == "outer" || all ? kExitOk : kExitNotCertified;
  finish(rep, o, t0);
  return rep;
}

RunReport cmd_classify(const ChannelMimo& ch, const Options& o) {
  const auto t0 = Clock::now();
  RunReport rep = start("classify", o);
  rep.channel = ch;
  const RegimeReport g = classify_regime(ch, std::max(2, o.points), solver_options(o));
  json& r = rep.results;
  r["kind"] = to_string(g.kind);
  r["very_strong"] = g.very_strong;
  r["strong_classical"] = g.strong_classical;
  r["gsi_sum_rate"] = g.gsi_sum_rate;
  r["gsi_full_region"] = g.gsi_full_region;
  r["fraction_of_boundary_certified"] = g.fraction_of_boundary_certified;
  r["sum_rate_nats"] = g.sum_rate;
  r["sum_rate_bits"] = g.sum_rate / kLn2;
  r["sum_rate_status"] = to_string(g.sum_rate_status);
  r["simo"] = g.simo ? json{{"gsi_full_region", g.simo->gsi_full_region}, {"very_strong", g.simo->very_strong}}
                     : json(nullptr);
  r["zic_case"] = g.zic_case ? json(*g.zic_case) : json(nullptr);
  rep.exit_code = g.sum_rate_status == VerdictStatus::Certified ? kExitOk : kExitNotCertified;
  finish(rep, o, t0);
  return rep;
}

RunReport cmd_regime_map(const std::string& family, double p1, double p2, int n, const Options& o) {
  const auto t0 = Clock::now();
  if (n < 8) throw InputError("regime map needs at least an 8 x 8 grid");
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw InputError("powers must be positive");
  RunReport rep = start("regime-map", o);
  std::vector<miso::RegimeCell> cells;
  if (family == "zic") cells = miso::regime_map_zic(p1, p2, a_grid(n), theta_grid(n));
  else if (family == "sym") cells = miso::regime_map_sym(p1, a_grid(n), theta_grid(n));
  else throw InputError("family must be zic or sym");
  rep.results["family"] = family;
  rep.results["p1"] = p1;
  rep.results["p2"] = family == "sym" ? p1 : p2;
  rep.results["grid"] = n;
  rep.results["cells"] = cells_json(cells);
  finish(rep, o, t0);
  return rep;
}

RunReport cmd_reproduce(int id, const Options& o) {
  const auto t0 = Clock::now();
  if (id < 1 || id > 8) throw InputError("example id must be in 1..8");
  RunReport rep = start("reproduce", o);
  rep.results["example"] = id;
  std::vector<Row> rows;
  std::optional<std::string> data_csv;
  const SolverOptions so = solver_options(o);

  if (id == 1) {
    const ChannelMimo ch = example_channel(1);
    rep.channel = ch;
    const SumRateAnalysis a = analyze_sum_rate(ch, so);
    const auto& s1 = a.result.pair.s1;
    const auto& s2 = a.result.pair.s2;
    const auto& w2 = a.kkt.w_or_k[1];
    rows = {{"sum_rate", 3.2998, a.result.objective, 1e-3},
            {"S1[0,0]", 8.2319, s1(0, 0), 2e-3},
            {"S1[0,1]", 0.3636, s1(0, 1), 2e-3},
            {"S1[1,1]", 1.7681, s1(1, 1), 2e-3},
            {"S2[0,0]", 7.7370, s2(0, 0), 2e-3},
            {"S2[0,1]", 4.1843, s2(0, 1), 2e-3},
            {"S2[1,1]", 2.2630, s2(1, 1), 2e-3},
            {"lambda1", 1.0, a.kkt.lambdas_or_betas[0], 1e-6},
            {"lambda2", 0.0, a.kkt.lambdas_or_betas[1], 1e-6},
            {"eta1", 0.0545, a.kkt.etas_or_nus[0], 5e-4},
            {"eta2", 0.0394, a.kkt.etas_or_nus[1], 5e-4},
            {"W2[0,0]", 0.003794, w2(0, 0), 5e-5},
            {"W2[0,1]", -0.007015, w2(0, 1), 5e-5},
            {"W2[1,1]", 0.012972, w2(1, 1), 5e-5}};
    if (a.verdict.genie.a2) {
      const Mat& a2 = *a.verdict.genie.a2;
      rows.push_back({"A2[0,0]", 0.2802, a2(0, 0), 1e-3});
      rows.push_back({"A2[0,1]", 0.5985, a2(0, 1), 1e-3});
      rows.push_back({"A2[1,0]", 0.1146, a2(1, 0), 1e-3});
      rows.push_back({"A2[1,1]", 0.0789, a2(1, 1), 1e-3});
    }
    rows.push_back({"certified", 1.0, a.verdict.certified() ? 1.0 : 0.0, 0.0});
  } else if (id == 2 || id == 3) {
    const ChannelMimo ch = example_channel(id);
    rep.channel = ch;
    const auto c = miso::sym_sum_rate(reduce_miso(ch));
    const SymMatrix s = miso::beam(c.phi_star, 1, ch.p1);
    const double solver_sum = solve(OptProblem::inner_sum(ch), so).objective;
    auto rel = [](double v) { return 5e-3 * std::abs(v); };
    if (id == 2) {
      rows = {{"sum_rate", 0.6532, c.sum_rate, 1e-3},
              {"sum_rate_solver", 0.6532, solver_sum, 1e-3},
              {"phi_star_over_pi", 0.3902, c.phi_star / kPi, 2e-3},
              {"gamma", 0.2627, c.gamma, rel(0.2627)},
              {"lambda", 0.3686, c.lambda, rel(0.3686)},
              {"eta", 0.1974, c.eta, rel(0.1974)},
              {"w_scale", 0.1768, c.k, rel(0.1768)},
              {"lambda_o_scale", 0.1499, c.lambda_o_scale, rel(0.1499)},
              {"S[0,0]", 0.8857, s(0, 0), 2e-3},
              {"S[0,1]", 0.3182, s(0, 1), 2e-3},
              {"S[1,1]", 0.1143, s(1, 1), 2e-3}};
    } else {
      rows = {{"sum_rate", 1.2724, c.sum_rate, 1e-3},
              {"sum_rate_solver", 1.2724, solver_sum, 1e-3},
              {"phi_star_over_pi", 0.4672, c.phi_star / kPi, 1e-3},
              {"gamma", 0.0, c.gamma, 1e-6},
              {"lambda", 0.5, c.lambda, rel(0.5)},
              {"eta", 0.0576, c.eta, rel(0.0576)},
              {"w_scale", 0.0563, c.k, rel(0.0563)},
              {"lambda_o_scale", 0.0467, c.lambda_o_scale, rel(0.0467)},
              {"S[0,0]", 3.9576, s(0, 0), 2e-3},
              {"S[0,1]", 0.4096, s(0, 1), 2e-3},
              {"S[1,1]", 0.0424, s(1, 1), 2e-3}};
    }
    rows.push_back({"certified", 1.0, c.certified ? 1.0 : 0.0, 0.0});
    rep.results["case_tag"] = miso::to_string(c.case_tag);
  } else if (id >= 4 && id <= 6) {
    const ChannelMimo ch = example_channel(id);
    rep.channel = ch;
    const MisoEquiv m = reduce_miso(ch);
    const miso::ZicBoundary zb = miso::zic_boundary(m, std::max(2, o.points));
    const auto sr = miso::zic_sum_rate(m);
    auto corner = [&](const std::string& name) {
      for (const auto& c : zb.corners)
        if (c.name == name) return c;
      throw NumericalFailure("missing corner " + name);
    };
    auto add_point = [&](const std::string& name, double r1, double r2, const miso::ZicCorner& c) {
      rows.push_back({name + ".R1", r1, c.r1, 2e-3});
      rows.push_back({name + ".R2", r2, c.r2, 2e-3});
    };
    if (id == 4) {
      const double phi0 = zb.q_roots.empty() ? std::nan("") : zb.q_roots.front();
      rows.push_back({"phi0_over_pi", 0.3748, phi0 / kPi, 2e-3});
      add_point("C", 0.8474, 0.6931, corner("C1"));
      add_point("B", 0.9442, 0.6724, corner("Q_root"));
      const double a_c = miso::genie_scalar(m.a2, m.theta2, m.tau2, zb.phi_lo);
      const double a_b = miso::genie_scalar(m.a2, m.theta2, m.tau2, phi0);
      rows.push_back({"A_at_C", 0.5046, a_c, 1e-3});
      rows.push_back({"A_at_B", 0.4298, a_b, 1e-3});
      const auto c = corner("C1");
      const auto b = corner("Q_root");
      rows.push_back({"outer_touch_C", c.r1, miso::zic_outer_r1(m, 0.5046, c.r2, so), 1e-3});
      rows.push_back({"outer_touch_B", b.r1, miso::zic_outer_r1(m, 0.4298, b.r2, so), 1e-3});
    } else {
      const bool all = std::all_of(zb.polyline.points.begin(), zb.polyline.points.end(),
                                   [](const RegionPoint& p) { return p.certified; });
      if (id == 5) {
        add_point("C1", 0.1544, 0.2027, corner("C1"));
        add_point("B", 0.1844, 0.1866, corner("B"));
        add_point("C2", 0.2027, 0.1682, corner("C2"));
        rows.push_back({"sum_rate", 0.3710, sr.sum_rate, 2e-3});
      } else {
        rows.push_back({"phi_ez_over_pi", 0.4959, sr.phi_ez / kPi, 1e-4});
        add_point("C1", 0.4615, 0.1682, corner("C1"));
        add_point("C2", 0.5493, 0.1182, corner("C2"));
        rows.push_back({"sum_rate", 0.6675, sr.sum_rate, 2e-3});
      }
      rows.push_back({"all_points_certified", 1.0, all ? 1.0 : 0.0, 0.0});
    }
    rep.results["case_tag"] = miso::to_string(sr.case_tag);
    rep.results["polyline"] = io::to_json(lift_polyline(ch, zb.polyline));
    data_csv = io::polyline_csv(zb.polyline);
  } else {
    const int n = std::max(8, o.points);
    const auto cells = id == 7 ? miso::regime_map_zic(1.0, 1.0, a_grid(n), theta_grid(n))
                               : miso::regime_map_sym(1.0, a_grid(n), theta_grid(n));
    rep.results["family"] = id == 7 ? "zic" : "sym";
    rep.results["cells"] = cells_json(cells);
    data_csv = io::regime_csv(cells);
  }

  rep.results["rows"] = rows_json(rows);
  const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass(); });
  rep.results["all_pass"] = all_pass;
  rep.exit_code = all_pass ? kExitOk : kExitNotCertified;

  if (!o.out.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(o.out);
    const std::string stem = (fs::path(o.out) / ("example_" + std::to_string(id))).string();
    if (rep.channel) io::write_file(stem + "_channel.json", io::to_json(*rep.channel).dump(2) + "\n");
    io::write_file(stem + "_table.csv", render(rep, "csv"));
    if (data_csv) io::write_file(stem + (id >= 7 ? "_regime.csv" : "_boundary.csv"), *data_csv);
  }
  finish(rep, o, t0);
  return rep;
}

// ---------------------------------------------------------------------------

std::string render(const RunReport& rep, const std::string& format) {
  if (format == "json") return io::to_json(rep).dump(2) + "\n";
  if (format != "csv" && format != "text") throw InputError("format must be json, csv or text");
  const json& r = rep.results;
  const bool csv = format == "csv";
  std::string out;

  if (rep.command == "boundary") {
    const RegionPolyline p = polyline_from_json(r.at("polyline"));
    if (csv) return io::polyline_csv(p);
    out += "boundary (" + r.at("boundary_kind").get<std::string>() + ", " + r.at("method").get<std::string>() + ")\n";
    out += "phi/pi      R1 [nats]   R2 [nats]   certified  Q(phi)\n";
    for (const auto& pt : p.points) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-11s %-11s %-11s %-10s %s\n", io::fmt(pt.phi / kPi).c_str(),
                    io::fmt(pt.r1).c_str(), io::fmt(pt.r2).c_str(), pt.certified ? "yes" : "no",
                    io::fmt(pt.q).c_str());
      out += buf;
    }
    if (r.contains("corners"))
      for (const auto& c : r["corners"])
        out += "corner " + c["name"].get<std::string>() + ": (" + io::fmt(c["r1"].get<double>()) + ", " +
               io::fmt(c["r2"].get<double>()) + ")\n";
    out += "certified points: " + std::to_string(r.at("n_certified").get<long>()) + "/" +
           std::to_string(r.at("n_points").get<long>()) + "\n";
  } else if (rep.command == "regime-map") {
    const auto cells = cells_from_json(r.at("cells"));
    if (csv) return io::regime_csv(cells);
    out += "regime map (" + r.at("family").get<std::string>() + "), " + std::to_string(cells.size()) + " cells\n";
    out += io::regime_csv(cells);
  } else if (rep.command == "reproduce") {
    if (csv) out += "quantity,published,computed,tolerance,pass\n";
    else out += "example " + std::to_string(r.at("example").get<int>()) + "\nquantity              published   computed    tolerance   result\n";
    for (const auto& row : r.at("rows")) {
      const std::string q = row["quantity"].get<std::string>();
      const std::string pv = io::fmt(row["published"].get<double>());
      const std::string cv = io::fmt(row["computed"].get<double>());
      const std::string tv = io::fmt(row["tolerance"].get<double>());
      const bool pass = row["pass"].get<bool>();
      if (csv) {
        out += q + "," + pv + "," + cv + "," + tv + "," + (pass ? "1" : "0") + "\n";
      } else {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%-21s %-11s %-11s %-11s %s\n", q.c_str(), pv.c_str(), cv.c_str(), tv.c_str(),
                      pass ? "PASS" : "FAIL");
        out += buf;
      }
    }
    if (!csv && r.contains("cells"))
      out += "regime map (" + r.at("family").get<std::string>() + "): " + std::to_string(r.at("cells").size()) +
             " cells\n";
    if (!csv) out += std::string("overall: ") + (r.at("all_pass").get<bool>() ? "PASS" : "FAIL") + "\n";
  } else if (rep.command == "sumrate") {
    const double s = r.at("sum_rate_nats").get<double>();
    const json& v = r.at("verdict");
    if (csv) {
      out += "key,value\n";
      out += "sum_rate_nats," + io::fmt(s) + "\n";
      out += "sum_rate_bits," + io::fmt(s / kLn2) + "\n";
      out += "verdict," + v.at("status").get<std::string>() + "\n";
      for (const auto& [k, m] : r.at("kkt").at("multipliers").items()) out += k + "," + io::fmt(m.get<double>()) + "\n";
    } else {
      out += "kind: " + r.at("kind").get<std::string>() + "\n";
      out += "sum rate: " + rate_text(s) + "\n";
      out += "S1: " + mat_text(r.at("s1")) + "\n";
      out += "S2: " + mat_text(r.at("s2")) + "\n";
      out += "multipliers:";
      for (const auto& [k, m] : r.at("kkt").at("multipliers").items()) out += " " + k + "=" + io::fmt(m.get<double>());
      out += "\n";
      for (const auto& c : v.at("checks"))
        out += "  [" + std::string(c["passed"].get<bool>() ? "ok" : "FAILED") + "] " + c["name"].get<std::string>() +
               " margin=" + io::fmt(c["margin"].get<double>()) +
               (c["note"].get<std::string>().empty() ? "" : " (" + c["note"].get<std::string>() + ")") + "\n";
      for (const auto& [k, a] : v.at("genie").items()) out += "genie " + k + ": " + mat_text(a) + "\n";
      if (!r.at("closed_form").is_null()) {
        out += "closed form:";
        for (const auto& [k, x] : r["closed_form"].items()) out += " " + k + "=" + scalar_text(x);
        out += "\n";
      }
      out += "verdict: " + v.at("status").get<std::string>() + "\n";
    }
  } else {  // classify
    if (csv) out += "key,value\n";
    for (const auto& [k, x] : r.items()) {
      if (x.is_object()) continue;
      out += k + (csv ? "," : ": ") + scalar_text(x) + "\n";
    }
    if (r.contains("simo") && r["simo"].is_object())
      for (const auto& [k, x] : r["simo"].items()) out += "simo." + k + (csv ? "," : ": ") + scalar_text(x) + "\n";
  }
  if (!csv && rep.wall_time_s) out += "wall time: " + io::fmt(*rep.wall_time_s) + " s\n";
  return out;
}

}  // namespace vgic::cli
