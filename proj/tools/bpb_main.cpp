// Command line harness: enumeration, exact norms, membership checks, modulus
// tables, corrections, certificate verification and batch experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bpb/harness.hpp"
#include "bpb/serialization.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

struct CommonIo {
  std::string in = "-";
  std::string out;
  std::string format = "json";
};

std::string moduli_table(const std::vector<int>& dims, const std::vector<bpb::Rat>& eps_list,
                         const std::string& format) {
  if (format == "csv") {
    std::string out = "n,eps,eps_approx,rho,rho_approx,gamma,gamma_approx,nu,nu_approx,eta,eta_approx\n";
    for (int n : dims) {
      for (const bpb::Rat& eps : eps_list) {
        const bpb::ModulusChain chain = bpb::ModulusChain::at(n, eps);
        const auto cell = [](const bpb::Rat& v) {
          return bpb::rat_to_string(v) + "," + std::to_string(bpb::rat_to_double(v));
        };
        out += std::to_string(n) + "," + cell(chain.eps) + "," + cell(chain.rho) + "," +
               cell(chain.gamma) + "," + cell(chain.nu) + "," + cell(chain.eta) + "\n";
      }
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (int n : dims) {
    for (const bpb::Rat& eps : eps_list) {
      const bpb::ModulusChain chain = bpb::ModulusChain::at(n, eps);
      rows.push_back(ordered_json{{"n", n},
                                  {"eps", bpb::rat_to_string(chain.eps)},
                                  {"rho", bpb::rat_to_string(chain.rho)},
                                  {"gamma", bpb::rat_to_string(chain.gamma)},
                                  {"nu", bpb::rat_to_string(chain.nu)},
                                  {"eta", bpb::rat_to_string(chain.eta)},
                                  {"rho_approx", bpb::rat_to_double(chain.rho)},
                                  {"eta_approx", bpb::rat_to_double(chain.eta)}});
    }
  }
  return ordered_json{{"schema", "bpb.moduli/1"}, {"rows", std::move(rows)}}.dump(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for norm-attaining operator corrections on sup-normed domains"};
  app.require_subcommand(1);

  int exit_code = 0;

  // enumerate
  int enum_n = 3;
  CommonIo enum_io;
  auto* cmd_enum = app.add_subcommand("enumerate", "List odd/even index tuples and face extreme points");
  cmd_enum->add_option("--n", enum_n, "domain dimension")->required();
  cmd_enum->add_option("--out", enum_io.out, "output path (default stdout)");
  cmd_enum->callback([&] {
    ordered_json odd = ordered_json::array();
    for (const auto& t : bpb::enumerate_odd_tuples(enum_n)) odd.push_back(t.indices());
    ordered_json even = ordered_json::array();
    for (const auto& t : bpb::enumerate_even_tuples(enum_n)) even.push_back(t.indices());
    ordered_json ext = ordered_json::array();
    for (const auto& v : bpb::extreme_points_E1(enum_n)) {
      ordered_json coords = ordered_json::array();
      for (int i = 0; i < v.dim(); ++i) coords.push_back(bpb::rat_to_string(v[i]));
      ext.push_back(std::move(coords));
    }
    ordered_json node{{"schema", "bpb.enumerate/1"},
                      {"n", enum_n},
                      {"odd_tuples", std::move(odd)},
                      {"even_tuples", std::move(even)},
                      {"extreme_points", std::move(ext)}};
    write_output(enum_io.out, node.dump(1));
  });

  // norm
  CommonIo norm_io;
  bool norm_brute = false;
  auto* cmd_norm = app.add_subcommand("norm", "Exact operator norm of a tuple document");
  cmd_norm->add_option("--in", norm_io.in, "operator tuple JSON (default stdin)");
  cmd_norm->add_option("--out", norm_io.out, "output path");
  cmd_norm->add_flag("--brute", norm_brute, "also run the 2^n sign-vertex oracle");
  cmd_norm->callback([&] {
    const bpb::OperatorTuple op = bpb::operator_tuple_from_json(read_input(norm_io.in));
    const bpb::NormEstimate est = bpb::operator_norm_estimate(op);
    ordered_json node{{"schema", "bpb.norm/1"},
                      {"n", op.domain_dim()},
                      {"norm", bpb::rat_to_string(est.value)},
                      {"norm_approx", bpb::rat_to_double(est.value)},
                      {"exact", est.exact}};
    if (!est.exact) node["tolerance"] = est.tolerance;
    if (norm_brute) {
      const bpb::Rat brute = bpb::brute_norm(op);
      node["brute_norm"] = bpb::rat_to_string(brute);
      node["oracle_equality"] = est.exact && brute == est.value;
    }
    write_output(norm_io.out, node.dump(1));
  });

  // check-m
  CommonIo checkm_io;
  auto* cmd_checkm = app.add_subcommand("check-m", "Membership of a tuple in the operator unit ball");
  cmd_checkm->add_option("--in", checkm_io.in, "operator tuple JSON (default stdin)");
  cmd_checkm->add_option("--out", checkm_io.out, "output path");
  cmd_checkm->callback([&] {
    const bpb::OperatorTuple op = bpb::operator_tuple_from_json(read_input(checkm_io.in));
    const bpb::NormEstimate est = bpb::operator_norm_estimate(op);
    const bool within = est.exact ? est.value <= 1
                                  : bpb::rat_to_double(est.value) <= 1.0 + est.tolerance;
    ordered_json node{{"schema", "bpb.membership/1"},
                      {"n", op.domain_dim()},
                      {"norm", bpb::rat_to_string(est.value)},
                      {"in_m", within},
                      {"exact", est.exact}};
    if (!est.exact) node["tolerance"] = est.tolerance;
    write_output(checkm_io.out, node.dump(1));
    if (!within) exit_code = 1;
  });

  // moduli
  std::vector<int> mod_dims{1, 2, 3};
  std::vector<std::string> mod_eps{"1/2"};
  CommonIo mod_io;
  auto* cmd_moduli = app.add_subcommand("moduli", "Print the correction threshold functions");
  cmd_moduli->add_option("--n", mod_dims, "dimensions (repeatable)");
  cmd_moduli->add_option("--eps", mod_eps, "epsilon values as p/q (repeatable)");
  cmd_moduli->add_option("--format", mod_io.format, "json|csv");
  cmd_moduli->add_option("--out", mod_io.out, "output path");
  cmd_moduli->callback([&] {
    std::vector<bpb::Rat> eps_list;
    for (const std::string& text : mod_eps) eps_list.push_back(bpb::rat_from_string(text));
    write_output(mod_io.out, moduli_table(mod_dims, eps_list, mod_io.format));
  });

  // shared options for correction commands
  const auto add_correct = [&](const char* name, const char* help,
                               const std::vector<std::string>& accepted) {
    auto io = std::make_shared<CommonIo>();
    auto index = std::make_shared<int>(0);
    auto eps_text = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--in", io->in, "instance JSON (default stdin)");
    cmd->add_option("--index", *index, "entry of a bpb.instances/1 file (default 0)");
    cmd->add_option("--eps", *eps_text, "override the instance epsilon (p/q)");
    cmd->add_option("--out", io->out, "certificate output path");
    cmd->callback([&, io, index, eps_text, accepted] {
      std::optional<bpb::Rat> eps_override;
      if (!eps_text->empty()) eps_override = bpb::rat_from_string(*eps_text);
      const bpb::InstanceRunResult result =
          bpb::run_instance_file(read_input(io->in), *index, eps_override);
      if (std::find(accepted.begin(), accepted.end(), result.target) == accepted.end()) {
        throw std::runtime_error("instance target \"" + result.target +
                                 "\" does not belong to this subcommand");
      }
      write_output(io->out, result.certificate_json);
    });
  };
  add_correct("correct-ahsp", "Run an attainment-set correction on an instance",
              {"positive", "functional", "convex", "lift", "auxw"});
  add_correct("correct-bpbp", "Run a near-attainment operator correction", {"bpbp"});
  add_correct("roundtrip", "Derive the attainment-set correction through the operator correction",
              {"roundtrip"});

  // gen
  bpb::ExperimentSpec gen_spec;
  std::string gen_target = "positive";
  std::string gen_eps = "1/2";
  CommonIo gen_io;
  auto* cmd_gen = app.add_subcommand("gen", "Generate hypothesis-satisfying instances");
  cmd_gen->add_option("--target", gen_target,
                      "positive|functional|convex|lift|bpbp|roundtrip|auxw|norms");
  cmd_gen->add_option("--n", gen_spec.n, "domain dimension");
  cmd_gen->add_option("--m", gen_spec.m, "target support bound");
  cmd_gen->add_option("--eps", gen_eps, "epsilon as p/q");
  cmd_gen->add_option("--trials", gen_spec.trials, "instance count");
  cmd_gen->add_option("--seed", gen_spec.seed, "generator seed");
  cmd_gen->add_option("--n0", gen_spec.n0, "fixed n0 (0 = per instance)");
  cmd_gen->add_option("--out", gen_io.out, "output path");
  cmd_gen->callback([&] {
    gen_spec.eps = bpb::rat_from_string(gen_eps);
    write_output(gen_io.out, bpb::instances_json(gen_target, gen_spec));
  });

  // verify
  CommonIo verify_io;
  auto* cmd_verify = app.add_subcommand("verify", "Re-check every clause of a certificate");
  cmd_verify->add_option("--in", verify_io.in, "certificate JSON (default stdin)");
  cmd_verify->add_option("--out", verify_io.out, "report output path");
  cmd_verify->callback([&] {
    const bpb::VerifyReport report = bpb::verify_json(read_input(verify_io.in));
    write_output(verify_io.out, bpb::to_json(report));
    if (!report.all_pass()) exit_code = 1;
  });

  // bench
  bpb::ExperimentSpec bench_spec;
  std::string bench_target = "positive";
  std::string bench_eps = "1/2";
  CommonIo bench_io;
  auto* cmd_bench = app.add_subcommand("bench", "Generate, run and verify a batch; emit a report");
  cmd_bench->add_option("--target", bench_target,
                        "positive|functional|convex|lift|bpbp|roundtrip|auxw|norms");
  cmd_bench->add_option("--n", bench_spec.n, "domain dimension");
  cmd_bench->add_option("--m", bench_spec.m, "target support bound");
  cmd_bench->add_option("--eps", bench_eps, "epsilon as p/q");
  cmd_bench->add_option("--trials", bench_spec.trials, "instance count");
  cmd_bench->add_option("--seed", bench_spec.seed, "generator seed");
  cmd_bench->add_option("--n0", bench_spec.n0, "fixed n0 (0 = per instance)");
  cmd_bench->add_option("--format", bench_io.format, "json|csv");
  cmd_bench->add_option("--out", bench_io.out, "report output path");
  cmd_bench->callback([&] {
    bench_spec.eps = bpb::rat_from_string(bench_eps);
    const bpb::BatchReport report = bpb::run_batch(bench_target, bench_spec);
    write_output(bench_io.out, bench_io.format == "csv" ? bpb::report_csv(report)
                                                        : bpb::report_json(report));
    if (report.failures != 0) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
