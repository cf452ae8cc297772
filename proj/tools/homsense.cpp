// homsense: certify, decompose, construct, oracle, bound.

#include <homsense/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using homsense::cli::JobSpec;
  CLI::App app{"Exact uniqueness certificates for homomorphic sensing"};
  app.require_subcommand(1);

  JobSpec spec;
  std::size_t m = 0, n = 0, r1 = 0, r2 = 0, trials = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", spec.input_path, "JSON input document")->check(CLI::ExistingFile);
    sub->add_option("--out", spec.out_path, "write the result here instead of stdout");
    sub->add_option("--format", spec.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", spec.seed, "random seed");
    sub->add_option("--n", n, "subspace dimension");
  };

  auto* certify = app.add_subcommand("certify", "uniqueness certificate for one instance");
  common(certify);
  certify->add_option("--mode", spec.mode, "prop5, thm1, thm2 or prop4");
  certify->add_option("--trials", trials, "sections sampled by thm1");

  auto* decompose = app.add_subcommand("decompose", "invariant factors, multiplicities, Jordan chains");
  common(decompose);

  auto* construct = app.add_subcommand("construct", "witness subspace with dim(V + TV) = 2n");
  common(construct);
  construct->add_option("--mode", spec.mode, "boundary, half or general");

  auto* oracle = app.add_subcommand("oracle", "exhaustive collision search over a class");
  common(oracle);
  oracle->add_option("--mode", spec.mode, "endo-pair only: subspace or point");
  oracle->add_option("--m", m, "ambient dimension");
  oracle->add_option("--class", spec.klass, "transformation class")
      ->check(CLI::IsMember({"perm", "signed-perm", "proj-perm", "signed-proj-perm", "endo-pair"}));
  oracle->add_option("--r1", r1, "minimal rank of rho1 (default n)");
  oracle->add_option("--r2", r2, "minimal rank of rho2 (default 2n)");
  oracle->add_option("--trials", trials, "number of random subspaces");
  oracle->add_option("--bound", spec.bound, "entry bound for random subspaces")->check(CLI::PositiveNumber);
  oracle->add_option("--budget", spec.budget, "maximal number of pairs per subspace");
  oracle->add_option("--jobs", spec.jobs, "worker threads (default: available parallelism)");
  oracle->add_option("--sign-samples", spec.sign_samples, "sign patterns when full enumeration exceeds the budget");

  auto* bound = app.add_subcommand("bound", "codimension account of a permutation with projections");
  common(bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : homsense::cli::kError;
  }

  spec.command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  auto set = [&](const char* flag, std::size_t value, std::optional<std::size_t>& dst) {
    if (sub->get_option_no_throw(flag) && sub->count(flag)) dst = value;
  };
  set("--m", m, spec.m);
  set("--n", n, spec.n);
  set("--r1", r1, spec.r1);
  set("--r2", r2, spec.r2);
  set("--trials", trials, spec.trials);
  return homsense::cli::run(spec, std::cout, std::cerr);
}
