#include "vgic/cli.hpp"
#include "vgic/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace vgic;

int main(int argc, char** argv) {
  CLI::App app{"Capacity and generally-strong-interference certificates for two-user Gaussian MIMO interference "
               "channels"};
  app.require_subcommand(1);
  cli::Options o;
  app.add_option("--tol", o.tol, "objective accuracy in nats")->check(CLI::PositiveNumber);
  app.add_option("--points", o.points, "boundary sweep points or regime-map grid size")->check(CLI::Range(2, 100000));
  app.add_option("--out", o.out, "output file (directory for reproduce)");
  app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--max-iter", o.max_iter, "Newton step budget")->check(CLI::PositiveNumber);
  app.add_option("--starts", o.starts, "solver starting points (1 or 2)")->check(CLI::Range(1, 2));
  app.add_flag("--timing", o.timing, "report wall time");

  std::string channel_file;
  auto* sumrate = app.add_subcommand("sumrate", "maximal inner-bound sum rate with certificate");
  sumrate->add_option("channel", channel_file, "channel JSON file")->required();
  auto* boundary = app.add_subcommand("boundary", "boundary sweep with per-point verdicts");
  boundary->add_option("channel", channel_file, "channel JSON file")->required();
  boundary->add_option("--kind", o.kind, "inner or outer")->check(CLI::IsMember({"inner", "outer"}));
  auto* classify = app.add_subcommand("classify", "interference regime flags");
  classify->add_option("channel", channel_file, "channel JSON file")->required();
  int example_id = 0;
  auto* reproduce = app.add_subcommand("reproduce", "rerun a numbered example and compare with published values");
  reproduce->add_option("id", example_id, "example number 1..8")->required()->check(CLI::Range(1, 8));
  std::string family = "zic";
  double p1 = 1.0, p2 = 1.0;
  auto* regime = app.add_subcommand("regime-map", "case tags over an (a, theta) grid of reduced MISO channels");
  regime->add_option("--family", family, "zic or sym")->check(CLI::IsMember({"zic", "sym"}));
  regime->add_option("--p1", p1, "power of user 1 (sym: both users)")->check(CLI::PositiveNumber);
  regime->add_option("--p2", p2, "power of user 2")->check(CLI::PositiveNumber);

  // subcommand options may also carry the global flags
  for (auto* sub : {sumrate, boundary, classify, reproduce, regime}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitInput;
  }

  try {
    io::RunReport rep;
    if (*sumrate) rep = cli::cmd_sumrate(io::load_channel(channel_file), o);
    else if (*boundary) rep = cli::cmd_boundary(io::load_channel(channel_file), o);
    else if (*classify) rep = cli::cmd_classify(io::load_channel(channel_file), o);
    else if (*reproduce) rep = cli::cmd_reproduce(example_id, o);
    else rep = cli::cmd_regime_map(family, p1, p2, std::max(8, o.points), o);

    const std::string text = cli::render(rep, o.format);
    // reproduce writes its own files into --out
    if (!o.out.empty() && !*reproduce) io::write_file(o.out, text);
    else std::cout << text;
    return rep.exit_code;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid channel: %s\n", e.what());
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitNotCertified;
  }
  return cli::kExitInput;
}
