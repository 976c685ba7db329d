#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncg/cli.hpp"

int main(int argc, char** argv) {
  ncg::CommandOptions opt;
  std::string commands;
  for (const auto& c : ncg::command_names()) commands += (commands.empty() ? "" : ", ") + c;

  CLI::App app{"Graded noncommutative algebra checks over exact fields"};
  app.add_option("command", opt.command, "One of: " + commands)->required();
  app.add_option("args", opt.args, "Names of algebras, modules or automorphisms");
  app.add_option("--field", opt.field, "GF(p) or QQ; overrides the workspace");
  app.add_option("--max-deg", opt.max_deg, "Truncation degree of algebras (default cap + hmax)");
  app.add_option("--window", opt.window, "lo,hi,hmax,cap");
  app.add_option("--seed", opt.seed, "Seed for randomized searches")->default_val(0);
  std::string json_out;
  app.add_option("--json", json_out, "Also write the report to this file");
  app.add_flag("--dual-sign", opt.dual_sign, "Pair ab with a*b* by -1 when a != b");
  app.add_option("--workspace", opt.workspace, "Workspace file (default: built-in example)");
  app.add_option("--match", opt.match, "Rational function to compare a Hilbert series with");
  app.add_option("--central", opt.central, "Central degree-2 element of the quadratic dual");
  app.add_option("--poly", opt.polys, "Homogeneous polynomial for point enumeration");
  app.add_option("--shift", opt.shift, "Shift applied to the second module");
  app.add_option("--d", opt.d, "Dimension d");
  app.add_option("--ell", opt.ell, "Gorenstein parameter");
  app.add_option("--n", opt.n, "Cluster tilting order")->default_val(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  const auto start = std::chrono::steady_clock::now();
  const ncg::CommandResult res = ncg::run_command(opt);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = res.report.dump(2) + "\n";
  std::cout << text;
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "ncg: cannot write " << json_out << "\n";
      return 3;
    }
  }
  std::cerr << "ncg: " << opt.command << " finished in " << secs << " s, exit " << res.exit_code
            << "\n";
  return res.exit_code;
}
