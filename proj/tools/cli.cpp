#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dca/config.hpp"
#include "dca/errors.hpp"
#include "dca/setfn_io.hpp"
#include "dca/suites.hpp"

namespace dca::cli {

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string suites;
  std::string out;
  std::optional<int> jobs;
  std::string mode;
  std::optional<double> tol;
  std::optional<std::uint64_t> trials;
  std::vector<std::string> files;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON configuration file");
  sub->add_option("--seed", f.seed, "Master seed");
  sub->add_option("--out", f.out, "Output path");
  sub->add_option("--jobs", f.jobs, "Worker threads (falls back to DCA_JOBS)");
  sub->add_option("--mode", f.mode, "Value mode")->check(CLI::IsMember({"int", "real"}));
  sub->add_option("--tol", f.tol, "Real-mode tolerance");
}

SuiteConfig resolve(const Flags& f) {
  SuiteConfig c = f.config.empty() ? SuiteConfig{} : load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (!f.suites.empty()) c.suites = parse_suite_list(f.suites);
  if (!f.out.empty()) c.out = f.out;
  if (!f.mode.empty()) c.mode = mode_from_string(f.mode);
  if (f.tol) c.tolerance = *f.tol;
  if (f.trials) c.trials = *f.trials;
  c.jobs = resolve_jobs(f.jobs, c.jobs);
  return c;
}

// Writes to the --out file when given, else to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError(path + ": cannot open for writing");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_gen(const SuiteConfig& c, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) {
    err << "gen: --out <directory> is required\n";
    return kOperationalError;
  }
  const auto instances = generate_instances(c);
  const auto manifest = write_instances(instances, c.out, c);
  out << "wrote " << manifest["count"].get<std::size_t>() << " instances to " << c.out << '\n';
  return kOk;
}

int cmd_check(const SuiteConfig& c, const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  std::vector<Instance> instances;
  if (files.empty()) {
    instances = generate_instances(c);
  } else {
    for (const auto& path : files) instances.push_back(load_instance(path));
  }
  const auto reports = run_suites(instances, c);
  Sink sink(c.out, out);
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports) {
    *sink << r.to_json().dump() << '\n';
    switch (r.verdict) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::Skip: ++skip; break;
    }
  }
  err << "check: " << instances.size() << " instances, " << reports.size() << " reports: " << pass << " PASS, "
      << fail << " FAIL, " << skip << " SKIP\n";
  return fail == 0 ? kOk : kFailure;
}

int cmd_falsify(const SuiteConfig& c, std::ostream& out, std::ostream& err) {
  const FalsifyResult res = run_falsification(c);
  Sink sink(c.out, out);
  *sink << res.to_json().dump(2) << '\n';
  err << "falsify: " << res.trials << " trials, " << res.single_pass << " pass the single exchange, "
      << res.counterexamples << " counterexamples, " << res.disagreements << " disagreements\n";
  return res.passed() ? kOk : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exchange-property and duality checker for set functions", "dca"};
  app.require_subcommand(1);
  Flags flags;
  auto* gen = app.add_subcommand("gen", "Write corpus instances and a manifest");
  add_common(gen, flags);
  auto* check = app.add_subcommand("check", "Run verification suites; one JSON report per line");
  add_common(check, flags);
  check->add_option("--suites", flags.suites, "Comma-separated suites or 'all'");
  check->add_option("instances", flags.files, "Instance files (default: generated corpus)");
  auto* falsify = app.add_subcommand("falsify", "Randomized search for exchange counterexamples");
  add_common(falsify, flags);
  falsify->add_option("--trials", flags.trials, "Number of trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto* help = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << help->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const auto* help = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << '\n' << help->help();
    return kOperationalError;
  }

  try {
    const SuiteConfig config = resolve(flags);
    if (gen->parsed()) return cmd_gen(config, out, err);
    if (check->parsed()) return cmd_check(config, flags.files, out, err);
    return cmd_falsify(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kOperationalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOperationalError;
  }
}

}  // namespace dca::cli
