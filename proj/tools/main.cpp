// Command-line interface: enumeration, verification and report generation
// for the exact-arithmetic moduli computations. Reports are deterministic
// JSON; exit status 0 iff every check passes.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "drinfeld2/report.hpp"

namespace {

struct Options {
  d2::RunConfig cfg;
  std::string json_out;
};

int emit(const d2::json& report, const Options& opt) {
  std::string text = report.dump(2);
  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out);
    if (!out) {
      std::cerr << "cannot open " << opt.json_out << "\n";
      return 1;
    }
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  return d2::report_pass(report) ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--p", opt.cfg.p, "prime (2, 3 or 5)")->capture_default_str();
  cmd->add_option("--s", opt.cfg.s, "field stage: coefficients in F_{p^s}")->capture_default_str();
  cmd->add_option("--m", opt.cfg.m, "Witt truncation length")->capture_default_str();
  cmd->add_option("--precision", opt.cfg.precision, "lattice working precision")
      ->capture_default_str();
  cmd->add_option("--t-max", opt.cfg.t_max, "extension-ladder budget")->capture_default_str();
  cmd->add_option("--seed", opt.cfg.seed, "seed for sampled property checks")
      ->capture_default_str();
  cmd->add_option("--witt-triples", opt.cfg.witt_triples, "sample size for ring axioms")
      ->capture_default_str();
  cmd->add_option("--fiber-pairs", opt.cfg.fiber_pairs, "sample size for fiber-product checks")
      ->capture_default_str();
  cmd->add_option("--rebasings", opt.cfg.rebasings, "sample size for lattice rebasing checks")
      ->capture_default_str();
  cmd->add_option("--tangent-samples", opt.cfg.tangent_samples,
                  "sample size for the structural-matrix deformation checks")
      ->capture_default_str();
  cmd->add_option("--json-out", opt.json_out, "write the JSON report to this path")
      ->envname("DRINFELD2_JSON_OUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-adic moduli computations: Witt vectors, the tree, the point bijection, "
               "display families and their deformations"};
  app.set_config("--config", "", "line-oriented key=value config file mirroring the flags");
  app.require_subcommand(1);

  Options opt;
  add_common(&app, opt);  // shared flags live on the app; subcommands fall through

  using Runner = d2::json (*)(const d2::RunConfig&);
  struct Sub {
    const char* name;
    const char* help;
    Runner fn;
  };
  const Sub subs[] = {
      {"witt-selftest", "Witt ring laws, F/V identities, the square-zero splitting", d2::cmd_witt_selftest},
      {"tree", "lattice canonical forms and the Bruhat-Tits tree", d2::cmd_tree},
      {"enumerate-points", "chart points over F_{p^s}", d2::cmd_enumerate_points},
      {"roundtrip", "the point bijection and its inverse, with validation", d2::cmd_roundtrip},
      {"families", "the two explicit display families and their fibers", d2::cmd_families},
      {"glue-report", "Ferrand gluing, restrictions, the u-unit, Hodge lift data", d2::cmd_glue_report},
      {"tangent-report", "tangent dimensions, d-Upsilon, the alpha computation", d2::cmd_tangent_report},
      {"all", "every suite in sequence", d2::cmd_all},
  };

  Runner chosen = nullptr;
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    cmd->fallthrough();
    cmd->callback([&chosen, fn = s.fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  try {
    return emit(chosen(opt.cfg), opt);
  } catch (const d2::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
