#pragma once

// Command implementations behind the vgic executable.

#include "vgic/io.hpp"

#include <string>

namespace vgic::cli {

struct Options {
  double tol = 1e-7;
  int points = 33;
  int max_iter = 50000;
  int starts = 2;
  std::string kind = "inner";    // boundary: inner | outer
  std::string format = "text";   // json | csv | text
  std::string out;               // file (or directory for reproduce); empty means stdout
  bool timing = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotCertified = 2;

SolverOptions solver_options(const Options& o);

/// Channels of the numbered examples 1..6 (7 and 8 are regime maps).
ChannelMimo example_channel(int id);

io::RunReport cmd_sumrate(const ChannelMimo& ch, const Options& o);
io::RunReport cmd_boundary(const ChannelMimo& ch, const Options& o);
io::RunReport cmd_classify(const ChannelMimo& ch, const Options& o);
/// Runs example `id` and compares with the published values. With o.out set,
/// writes the channel file, the comparison table and any sweep data there.
io::RunReport cmd_reproduce(int id, const Options& o);
/// family: "zic" (powers p1, p2) or "sym" (power p1). n x n grid.
io::RunReport cmd_regime_map(const std::string& family, double p1, double p2, int n, const Options& o);

/// Report rendered as json, csv or text.
std::string render(const io::RunReport& r, const std::string& format);

}  // namespace vgic::cli
