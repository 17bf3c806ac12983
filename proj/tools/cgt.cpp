#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgt/boolean.hpp"
#include "cgt/catalog.hpp"
#include "cgt/errors.hpp"
#include "cgt/measures.hpp"
#include "cgt/report_io.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInexact = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct CommonOpts {
  std::string cache_dir;
  cgt::SearchBudget budget;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--cache-dir", opts->cache_dir,
                  "Directory for subgroup lattice caches")
      ->envname("CGT_CACHE_DIR");
  cmd->add_option("--time-limit-ms", opts->budget.time_limit_ms,
                  "Wall-clock limit per search in milliseconds");
  cmd->add_option("--max-orbits", opts->budget.max_orbits,
                  "Orbit count cap for multi-orbit searches");
  cmd->add_option("--max-total-degree", opts->budget.max_total_degree,
                  "Total degree cap for assembled representations");
  cmd->add_option("--max-classes", opts->budget.max_classes,
                  "Subgroup class cap for representation sweeps");
}

int run_compute(const CommonOpts& opts, const std::string& group_spec,
                const std::vector<std::string>& invariants, bool as_json) {
  cgt::ContextPool pool(opts.cache_dir);
  cgt::GroupContext& ctx = pool.get(group_spec);
  std::vector<cgt::MeasureReport> reports;
  for (const std::string& inv : invariants)
    reports.push_back(cgt::compute_invariant(inv, ctx, opts.budget));
  if (!opts.cache_dir.empty()) pool.lattice_of(ctx);
  if (as_json) {
    std::cout << cgt::render_json(cgt::report_document(reports));
  } else {
    for (const auto& r : reports)
      std::printf("%-10s %-9s %6d  %-7s %8lld ms\n", r.group.c_str(),
                  r.invariant.c_str(), r.value,
                  r.exhaustive ? "exact" : "partial", r.elapsed_ms);
  }
  for (const auto& r : reports)
    if (!r.exhaustive) return kExitInexact;
  return kExitOk;
}

int run_verify(const CommonOpts& opts, const std::vector<std::string>& only,
               const std::vector<std::string>& override_specs, bool as_json) {
  cgt::VerifyOptions vo;
  vo.only = only;
  vo.budget = opts.budget;
  vo.cache_dir = opts.cache_dir;
  for (const std::string& spec : override_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw cgt::ParseError("override must look like <claim>.<key>=<integer>: " +
                            spec);
    std::string key = spec.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw cgt::ParseError("override value is not an integer: " + spec);
    }
    vo.overrides[key] = value;
  }
  cgt::VerifyOutcome outcome = cgt::run_verify(vo);
  if (as_json) {
    std::cout << cgt::render_json(outcome.document);
  } else {
    int passed = 0;
    for (const auto& r : outcome.results) {
      std::printf("%-4s %-22s %s\n", r.pass ? "pass" : "FAIL", r.id.c_str(),
                  r.statement.c_str());
      if (r.pass) {
        ++passed;
      } else {
        std::printf("     expected: %s\n", r.expected.c_str());
        std::printf("     computed: %s\n", r.computed.c_str());
      }
    }
    std::printf("%d/%zu claims pass\n", passed, outcome.results.size());
  }
  return outcome.all_pass ? kExitOk : kExitMismatch;
}

int run_lattice(const CommonOpts& opts, const std::string& group_spec,
                const std::string& dot_path, bool save) {
  cgt::ContextPool pool(opts.cache_dir);
  cgt::GroupContext& ctx = pool.get(group_spec);
  const cgt::SubgroupLattice& lat =
      save ? pool.lattice_of(ctx) : ctx.lattice();
  if (!dot_path.empty())
    cgt::write_file_atomic(dot_path, lat.to_dot());
  std::printf("%s: %zu subgroups in %zu classes, %zu covers\n",
              ctx.name().c_str(), lat.nodes().size(), lat.classes().size(),
              lat.cover_edges().size());
  return kExitOk;
}

int run_hunt(const CommonOpts& opts, long long max_order,
             const std::string& report_path) {
  std::vector<cgt::CatalogEntry> entries = cgt::builtin_catalog(max_order);
  if (entries.empty())
    throw cgt::DomainError("no catalog group has order at most " +
                           std::to_string(max_order));
  cgt::ContextPool pool(opts.cache_dir);
  json rows = json::array();
  int gaps = 0;
  bool all_exact = true;
  for (const auto& entry : entries) {
    cgt::GapReport r = cgt::hunt_gap(pool.get(entry.spec), opts.budget);
    std::printf("%-10s b2=%-3d mu'=%-3d free-meet=%-3d %s%s%s\n",
                r.group.c_str(), r.b2, r.mu_prime, r.unconstrained_meet,
                r.exhaustive ? "" : "(partial) ",
                r.normal_min_achievable ? "" : "NORMAL-MIN SHORTFALL ",
                r.strict_gap ? "STRICT GAP" : "");
    if (r.strict_gap) ++gaps;
    all_exact = all_exact && r.exhaustive;
    rows.push_back(json{{"group", r.group},
                        {"b2", r.b2},
                        {"mu_prime", r.mu_prime},
                        {"unconstrained_meet", r.unconstrained_meet},
                        {"strict_gap", r.strict_gap},
                        {"normal_min_achievable", r.normal_min_achievable},
                        {"exhaustive", r.exhaustive}});
  }
  if (gaps > 0)
    std::printf("STRICT GAP between b2 and mu' in %d of %zu groups\n", gaps,
                entries.size());
  else
    std::printf("no strict gap in any of the %zu groups\n", entries.size());
  if (!report_path.empty()) {
    json doc{{"format", "hunt-gaps"},
             {"version", 1},
             {"max_order", max_order},
             {"rows", rows}};
    cgt::write_file_atomic(report_path, cgt::render_json(doc));
  }
  return all_exact ? kExitOk : kExitInexact;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base and generation measures for small finite groups"};
  app.require_subcommand(1);

  CommonOpts compute_opts;
  std::string compute_group;
  std::vector<std::string> compute_invariants;
  bool compute_json = false;
  CLI::App* compute = app.add_subcommand(
      "compute", "Compute invariants of one group");
  compute->add_option("--group", compute_group,
                      "Group spec: S5, A5, C12, D6, Q8, PSL27, custom:<file>")
      ->required();
  compute->add_option("--invariants", compute_invariants,
                      "Comma-separated list from b1,b2,b3,l,d,dprime,mu,muprime")
      ->required()
      ->delimiter(',');
  compute->add_flag("--json", compute_json, "Emit a report document");
  add_common(compute, &compute_opts);

  CommonOpts verify_opts;
  std::vector<std::string> verify_only;
  std::vector<std::string> verify_overrides;
  bool verify_json = false;
  CLI::App* verify = app.add_subcommand(
      "verify-paper", "Check every recorded claim against fresh computation");
  verify->add_option("--only", verify_only, "Claim ids to check (default all)")
      ->delimiter(',');
  verify->add_option("--override-expected", verify_overrides,
                     "Replace an expected value, as <claim>.<key>=<integer>")
      ->group("");
  verify->add_flag("--json", verify_json, "Emit the outcome document");
  add_common(verify, &verify_opts);

  CommonOpts lattice_opts;
  std::string lattice_group;
  std::string lattice_dot;
  bool lattice_save = false;
  CLI::App* lattice = app.add_subcommand(
      "lattice", "Build a subgroup lattice; optionally export or cache it");
  lattice->add_option("--group", lattice_group, "Group spec")->required();
  lattice->add_option("--dot", lattice_dot, "Write the Hasse diagram here");
  lattice->add_flag("--save", lattice_save,
                    "Store the lattice in the cache directory");
  add_common(lattice, &lattice_opts);

  CommonOpts hunt_opts;
  long long hunt_max_order = 24;
  std::string hunt_report;
  CLI::App* hunt = app.add_subcommand(
      "hunt", "Sweep the catalog for groups where b2 falls short of mu'");
  hunt->add_option("--max-order", hunt_max_order,
                   "Largest group order to include");
  hunt->add_option("--report", hunt_report, "Write row data here as JSON");
  add_common(hunt, &hunt_opts);

  CLI11_PARSE(app, argc, argv);

  std::function<int()> body;
  if (compute->parsed())
    body = [&] {
      return run_compute(compute_opts, compute_group, compute_invariants,
                         compute_json);
    };
  else if (verify->parsed())
    body = [&] {
      return run_verify(verify_opts, verify_only, verify_overrides,
                        verify_json);
    };
  else if (lattice->parsed())
    body = [&] {
      return run_lattice(lattice_opts, lattice_group, lattice_dot,
                         lattice_save);
    };
  else
    body = [&] { return run_hunt(hunt_opts, hunt_max_order, hunt_report); };

  try {
    return body();
  } catch (const cgt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cgt::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cgt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cgt::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInexact;
  } catch (const cgt::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
