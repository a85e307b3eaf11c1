// Command-line front end: state construction, verification, and the
// figure-reproduction sweeps with CSV/JSON output.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gncs/io.hpp"
#include "gncs/measure.hpp"
#include "gncs/observables.hpp"
#include "gncs/position.hpp"
#include "gncs/states.hpp"
#include "gncs/sweep.hpp"
#include "gncs/verify.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g;
  if (steps < 1) throw std::domain_error("steps must be >= 1");
  for (int i = 0; i <= steps; ++i) g.push_back(lo + (hi - lo) * i / steps);
  return g;
}

std::string rows_as(const std::string& format, const std::string& csv) {
  if (format == "csv") return csv;
  // A small generic CSV -> JSON conversion keeps the two formats in lockstep.
  nlohmann::json arr = nlohmann::json::array();
  std::size_t pos = csv.find('\n');
  const std::string header = csv.substr(0, pos);
  std::vector<std::string> cols;
  for (std::size_t i = 0, j; i <= header.size(); i = j + 1) {
    j = header.find(',', i);
    if (j == std::string::npos) j = header.size();
    cols.push_back(header.substr(i, j - i));
    if (j == header.size()) break;
  }
  while (pos != std::string::npos && pos + 1 < csv.size()) {
    const std::size_t end = csv.find('\n', pos + 1);
    const std::string line = csv.substr(pos + 1, end - pos - 1);
    if (!line.empty()) {
      nlohmann::json row;
      std::size_t ci = 0;
      for (std::size_t i = 0, j; i <= line.size() && ci < cols.size(); i = j + 1, ++ci) {
        j = line.find(',', i);
        if (j == std::string::npos) j = line.size();
        const std::string cell = line.substr(i, j - i);
        if (cols[ci] == "error")
          row[cols[ci]] = cell;
        else if (cols[ci] == "r")
          row[cols[ci]] = std::stoi(cell);
        else
          row[cols[ci]] = std::stod(cell);
        if (j == line.size()) break;
      }
      arr.push_back(std::move(row));
    }
    pos = end;
  }
  return arr.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"su(1,1) generalized nonlinear coherent states toolkit"};
  app.require_subcommand(1);

  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  int threads = hw > 0 ? hw : 1;
  app.add_option("--threads", threads, "sweep worker count")
      ->check(CLI::PositiveNumber);

  double lambda = 0.5, z_abs = 1.0, z_phase = 0.0, tolerance = 1e-14;
  int r = 2;
  std::string output;
  std::string format = "csv";

  auto add_state_opts = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "representation parameter (> -1/2)")
        ->required();
    cmd->add_option("--r", r, "deformation parameter (>= 1)")->required();
    cmd->add_option("--z-abs", z_abs, "|z|")->required();
    cmd->add_option("--z-phase", z_phase, "phase of z");
    cmd->add_option("--tolerance", tolerance, "truncation tolerance");
    cmd->add_option("--output,-o", output, "output path (default stdout)");
  };

  // state
  auto* c_state = app.add_subcommand("state", "build a state, emit JSON");
  add_state_opts(c_state);

  // overlap
  double r2_lambda = 0.0;  // unused placeholder to keep options local
  (void)r2_lambda;
  int overlap_r1 = 2, overlap_r2 = 2;
  double z1_abs = 1.0, z1_phase = 0.0, z2_abs = 1.0, z2_phase = 0.0;
  auto* c_overlap = app.add_subcommand("overlap", "scalar product of two states");
  c_overlap->add_option("--lambda", lambda)->required();
  c_overlap->add_option("--r1", overlap_r1)->required();
  c_overlap->add_option("--r2", overlap_r2)->required();
  c_overlap->add_option("--z1-abs", z1_abs)->required();
  c_overlap->add_option("--z1-phase", z1_phase);
  c_overlap->add_option("--z2-abs", z2_abs)->required();
  c_overlap->add_option("--z2-phase", z2_phase);
  c_overlap->add_option("--tolerance", tolerance);
  c_overlap->add_option("--output,-o", output);

  // wavefunction
  double x_min = 0.05, x_max = 6.0;
  int steps = 200;
  auto* c_wave = app.add_subcommand("wavefunction", "position wavefunction CSV");
  add_state_opts(c_wave);
  c_wave->add_option("--x-min", x_min)->check(CLI::PositiveNumber);
  c_wave->add_option("--x-max", x_max)->check(CLI::PositiveNumber);
  c_wave->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_wave->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // measure
  std::vector<double> lambdas;
  std::vector<int> rs;
  double t_min = 1e-3, t_max = 25.0;
  auto* c_measure = app.add_subcommand("measure", "identity-resolution weight CSV");
  c_measure->add_option("--lambda", lambdas, "lambda values")->required();
  c_measure->add_option("--r", rs, "deformation values (>= 2)")->required();
  c_measure->add_option("--t-min", t_min);
  c_measure->add_option("--t-max", t_max);
  c_measure->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_measure->add_option("--output,-o", output);
  c_measure->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // squeeze / stats
  std::vector<double> phis{0.0};
  double zsq_min = 0.25, zsq_max = 16.0;
  auto* c_squeeze = app.add_subcommand("squeeze", "squeezing-factor sweep CSV");
  c_squeeze->add_option("--lambda", lambdas)->required();
  c_squeeze->add_option("--r", rs)->required();
  c_squeeze->add_option("--phi", phis, "phases");
  c_squeeze->add_option("--zsq-min", zsq_min);
  c_squeeze->add_option("--zsq-max", zsq_max)->required();
  c_squeeze->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_squeeze->add_option("--output,-o", output);
  c_squeeze->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* c_stats = app.add_subcommand("stats", "photon-statistics sweep CSV");
  c_stats->add_option("--lambda", lambdas)->required();
  c_stats->add_option("--r", rs)->required();
  c_stats->add_option("--zsq-min", zsq_min);
  c_stats->add_option("--zsq-max", zsq_max)->required();
  c_stats->add_option("--steps", steps)->check(CLI::PositiveNumber);
  c_stats->add_option("--output,-o", output);
  c_stats->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  bool quick = false;
  auto* c_verify = app.add_subcommand("verify", "run the full invariant suite");
  c_verify->add_flag("--quick", quick,
                     "compatibility flag; the suite always runs in full");
  c_verify->add_option("--output,-o", output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_state)) {
      const gncs::GncsSpec spec{{lambda, r}, z_abs, z_phase};
      gncs::validate(spec);
      const auto s = gncs::build_state(spec, tolerance);
      write_output(output, gncs::io::to_json(s).dump(2) + "\n");
    } else if (app.got_subcommand(c_overlap)) {
      const gncs::GncsSpec a{{lambda, overlap_r1}, z1_abs, z1_phase};
      const gncs::GncsSpec b{{lambda, overlap_r2}, z2_abs, z2_phase};
      gncs::validate(a);
      gncs::validate(b);
      const gncs::cplx direct =
          gncs::overlap(gncs::build_state(a, tolerance), gncs::build_state(b, tolerance));
      const gncs::cplx closed = gncs::overlap_closed(a, b);
      const nlohmann::json j{
          {"direct", {direct.real(), direct.imag()}},
          {"closed_form", {closed.real(), closed.imag()}},
          {"abs_deviation", std::abs(direct - closed)}};
      write_output(output, j.dump(2) + "\n");
    } else if (app.got_subcommand(c_wave)) {
      const gncs::GncsSpec spec{{lambda, r}, z_abs, z_phase};
      gncs::validate(spec);
      const auto s = gncs::build_state(spec, tolerance);
      std::vector<gncs::io::WavefunctionSample> samples;
      for (double x : linspace(x_min, x_max, steps))
        samples.push_back({x, gncs::position::gncs_wavefunction(s, x)});
      write_output(output, rows_as(format, gncs::io::to_csv(samples)));
    } else if (app.got_subcommand(c_measure)) {
      for (int rv : rs)
        gncs::measure::b_parameters({lambdas.front(), rv});  // validates r >= 2
      if (!(t_min >= gncs::measure::weight_t_min &&
            t_max <= gncs::measure::weight_t_max && t_min < t_max))
        throw std::domain_error(
            "measure: t range must lie inside the validated domain [1e-3, 25]");
      const auto rows = gncs::sweep_measure(lambdas, rs,
                                            linspace(t_min, t_max, steps), threads);
      write_output(output, rows_as(format, gncs::io::to_csv(rows)));
    } else if (app.got_subcommand(c_squeeze)) {
      gncs::SweepGrid g{lambdas, rs, phis, linspace(zsq_min, zsq_max, steps)};
      write_output(output, rows_as(format, gncs::io::to_csv(gncs::sweep_squeeze(g, threads))));
    } else if (app.got_subcommand(c_stats)) {
      gncs::SweepGrid g{lambdas, rs, {0.0}, linspace(zsq_min, zsq_max, steps)};
      write_output(output, rows_as(format, gncs::io::to_csv(gncs::sweep_stats(g, threads))));
    } else if (app.got_subcommand(c_verify)) {
      (void)quick;
      const auto rep = gncs::verify::run_full(threads);
      write_output(output, rep.to_text());
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::domain_error& ex) {
    std::cerr << "invalid parameters: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
