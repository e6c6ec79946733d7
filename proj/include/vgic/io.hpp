#pragma once

// JSON and CSV plumbing for channels, reports and sweeps.

#include "vgic/channel.hpp"
#include "vgic/gsi.hpp"
#include "vgic/miso.hpp"
#include "vgic/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vgic::io {

using json = nlohmann::json;

/// printf "%.6g"; nan and inf spelled "nan", "inf", "-inf".
std::string fmt(double v);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, const char* field);

/// {"h1": [[...]], "f1": ..., "h2": ..., "f2": ..., "p1": x, "p2": x}, row-major.
json to_json(const ChannelMimo& ch);
ChannelMimo channel_from_json(const json& j);

/// Parses channel JSON text; syntax errors carry line and column.
ChannelMimo parse_channel(std::string_view text);
ChannelMimo load_channel(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

json to_json(const KktCertificate& c);
json to_json(const GsiVerdict& v);
json to_json(const RegionPolyline& p);

/// phi_over_pi,R1_nats,R2_nats,certified,Q_phi
std::string polyline_csv(const RegionPolyline& p);
/// a,theta_over_pi,case_tag,certified
std::string regime_csv(const std::vector<miso::RegimeCell>& cells);

struct Tolerances {
  double solver_tol = 1e-7;
  double active_tol = 1e-6;
  double markov_residual = kMarkovResidualTol;
  double genie_norm = kGenieNormTol;
  double cert_psd = kCertPsdTol;
  double multiplier = kMultiplierTol;
  bool operator==(const Tolerances&) const = default;
};

struct RunReport {
  std::string command;
  std::optional<ChannelMimo> channel;
  json results = json::object();
  Tolerances tolerances;
  std::optional<double> wall_time_s;
  int exit_code = 0;
  bool operator==(const RunReport&) const = default;
};

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);

}  // namespace vgic::io
