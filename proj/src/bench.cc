#include "gsd/bench.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "gsd/error.h"
#include "gsd/oracle.h"
#include "json.hpp"

namespace gsd {

void BenchConfig::check() const {
  if (instances.empty()) throw Error("bench config: no instances");
  if (variations < 1) throw Error("bench config: variations must be at least 1");
  if (n_delete < 0) throw Error("bench config: n_delete must be nonnegative");
  if (methods.empty()) throw Error("bench config: no methods");
  if (time_limit <= 0) throw Error("bench config: time_limit must be positive");
  if (workers < 1) throw Error("bench config: workers must be at least 1");
}

BenchConfig load_bench_config(const std::string& path) {
  namespace fs = std::filesystem;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(pddl::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("bench config " + path + ": " + e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };
  BenchConfig c;
  try {
    for (const auto& inst : j.at("instances")) {
      BenchInstance bi;
      bi.domain = inst.at("domain").get<std::string>();
      bi.name = inst.at("name").get<std::string>();
      bi.domain_file = resolve(inst.at("domain_file").get<std::string>());
      bi.problem_file = resolve(inst.at("problem_file").get<std::string>());
      c.instances.push_back(std::move(bi));
    }
    c.variations = j.value("variations", c.variations);
    c.n_delete = j.value("n_delete", c.n_delete);
    c.seed = j.value("seed", c.seed);
    if (j.contains("methods")) {
      c.methods.clear();
      for (const auto& m : j.at("methods")) c.methods.push_back(parse_design_method(m.get<std::string>()));
    }
    c.time_limit = j.value("time_limit", c.time_limit);
    if (j.contains("output")) c.output = resolve(j.at("output").get<std::string>());
    c.workers = j.value("workers", c.workers);
    c.bound_rows = j.value("bound_rows", c.bound_rows);
    c.extra_universe = j.value("extra_universe", c.extra_universe);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bench config " + path + ": " + e.what());
  }
  c.check();
  return c;
}

Variation generate_variation(const pddl::ProblemAst& problem, int n_delete, std::uint64_t seed) {
  std::vector<pddl::Atom> init = problem.init;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  if (n_delete < 0 || static_cast<std::size_t>(n_delete) > init.size())
    throw Error("cannot delete " + std::to_string(n_delete) + " of " +
                std::to_string(init.size()) + " initial atoms");
  Rng rng(seed);
  Variation v;
  v.robot = problem;
  v.human = problem;
  const auto picked = sample_indices(rng, init.size(), static_cast<std::size_t>(n_delete));
  for (std::size_t i : picked) v.deleted.push_back(init[i]);
  std::erase_if(v.human.init, [&](const pddl::Atom& a) {
    return std::binary_search(v.deleted.begin(), v.deleted.end(), a);
  });
  v.human.name = problem.name + "-human";
  return v;
}

std::uint64_t variation_seed(std::uint64_t seed, std::size_t instance, int variation) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(variation)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

DesignAtom parse_design_atom(const GroundedModel& m, const std::string& text) {
  if (text.size() < 2 || (text[0] != '+' && text[0] != '-'))
    throw Error("design atom '" + text + "' must start with '+' or '-'");
  const std::string name = pddl::normalize_atom_name(text.substr(1));
  const auto f = m.find_fluent(name);
  if (!f) throw Error("design atom '" + text + "' names an unknown fluent");
  return DesignAtom{*f, text[0] == '+' ? Polarity::kAdd : Polarity::kRemove, 1};
}

std::vector<UniverseEntry> parse_universe(const std::string& json_text) {
  std::vector<UniverseEntry> out;
  try {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (j.is_object()) j = j.at("universe");
    if (!j.is_array()) throw Error("universe must be a JSON list");
    for (const auto& item : j) {
      UniverseEntry e;
      if (item.is_string()) {
        const auto text = item.get<std::string>();
        if (text.size() < 2 || (text[0] != '+' && text[0] != '-'))
          throw Error("universe atom '" + text + "' must start with '+' or '-'");
        e.polarity = text[0] == '+' ? Polarity::kAdd : Polarity::kRemove;
        e.fluent = pddl::normalize_atom_name(text.substr(1));
      } else {
        e.fluent = pddl::normalize_atom_name(item.at("fluent").get<std::string>());
        const auto pol = item.value("polarity", std::string("add"));
        if (pol != "add" && pol != "remove") throw Error("universe polarity must be add or remove");
        e.polarity = pol == "add" ? Polarity::kAdd : Polarity::kRemove;
        e.cost = item.value("cost", std::int64_t{1});
      }
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("universe: ") + e.what());
  }
  return out;
}

std::vector<UniverseEntry> load_universe(const std::string& path) {
  return parse_universe(pddl::read_file(path));
}

std::vector<DesignAtom> resolve_universe(const GroundedModel& m,
                                         const std::vector<UniverseEntry>& entries) {
  std::vector<DesignAtom> out;
  for (const auto& e : entries) {
    const auto f = m.find_fluent(e.fluent);
    if (!f) throw Error("universe names unknown fluent " + e.fluent);
    out.push_back({*f, e.polarity, e.cost});
  }
  return out;
}

DesignProblem variation_design_problem(const pddl::DomainAst& domain, const Variation& v,
                                       const std::vector<std::string>& extra_universe) {
  pddl::GroundOptions opts;
  for (const auto& a : v.deleted) opts.assume_possible.push_back(pddl::ground_name(a.predicate, a.args));
  for (const auto& e : extra_universe)
    if (!e.empty() && e[0] == '+') opts.assume_possible.push_back(pddl::normalize_atom_name(e.substr(1)));
  DesignProblem dp;
  dp.robot = pddl::ground(domain, v.robot, opts);
  dp.human = pddl::ground(domain, v.human, opts);
  for (const auto& a : v.deleted) {
    const auto f = dp.robot.find_fluent(pddl::ground_name(a.predicate, a.args));
    if (!f) throw Error("deleted atom is not a fluent");
    dp.universe.push_back({*f, Polarity::kAdd, 1});
  }
  for (const auto& e : extra_universe) {
    const DesignAtom atom = parse_design_atom(dp.robot, e);
    if (std::find(dp.universe.begin(), dp.universe.end(), atom) == dp.universe.end())
      dp.universe.push_back(atom);
  }
  std::sort(dp.universe.begin(), dp.universe.end());
  return dp;
}

namespace {

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string outcome_of(const DesignSearchResult& r) {
  return r.status == DesignStatus::kUnknown ? "timeout" : to_string(r.status);
}

struct Job {
  std::size_t instance;
  int variation;
};

std::vector<BenchRow> run_variation(const BenchConfig& config, const pddl::DomainAst& domain,
                                    const pddl::ProblemAst& problem, const Job& job) {
  const auto& inst = config.instances[job.instance];
  const Variation v =
      generate_variation(problem, config.n_delete, variation_seed(config.seed, job.instance, job.variation));
  const DesignProblem dp = variation_design_problem(domain, v, config.extra_universe);

  DesignSearchConfig dc;
  dc.time_limit = config.time_limit;
  dc.search.budget.seconds = config.time_limit;

  std::vector<BenchRow> rows;
  auto row = [&](std::string method) {
    BenchRow r;
    r.domain = inst.domain;
    r.instance = inst.name;
    r.variation = job.variation;
    r.method = std::move(method);
    return r;
  };

  std::optional<Design> design;
  for (DesignMethod m : config.methods) {
    dc.method = m;
    const auto start = std::chrono::steady_clock::now();
    BenchRow r = row(to_string(m));
    try {
      const auto res = design_search(dp, dc);
      r.outcome = outcome_of(res);
      if (res.design) {
        r.design_size = static_cast<std::int64_t>(res.design->size());
        if (!design) design = res.design;
      }
      r.expanded = res.stats.expanded;
      r.generated = res.stats.generated;
    } catch (const std::exception& e) {
      r.outcome = "error";
    }
    r.seconds = since(start);
    rows.push_back(std::move(r));
  }

  if (!config.bound_rows) return rows;
  SearchOptions opts;
  opts.budget.seconds = config.time_limit;
  auto bound_row = [&](const std::string& name, const GroundedModel& robot, const GroundedModel& human) {
    BenchRow r = row(name);
    const auto start = std::chrono::steady_clock::now();
    const auto b = compute_bound(build_joint_model(robot, human, CostScheme::of(BoundMode::kGdDown)), opts);
    r.seconds = since(start);
    r.outcome = b.status == BoundStatus::kResourceExhausted ? "timeout" : to_string(b.status);
    if (b.report) r.design_size = b.report->bound;
    r.expanded = b.stats.expanded;
    r.generated = b.stats.generated;
    rows.push_back(std::move(r));
  };
  bound_row("gd_down", dp.robot, dp.human);
  if (!design) {
    for (const char* name : {"gd_down_design", "gd_up"}) {
      BenchRow r = row(name);
      r.outcome = "skipped";
      rows.push_back(std::move(r));
    }
    return rows;
  }
  const GroundedModel robot = apply_design(dp.robot, *design);
  const GroundedModel human = apply_design(dp.human, *design);
  bound_row("gd_down_design", robot, human);

  BenchRow r = row("gd_up");
  const auto start = std::chrono::steady_clock::now();
  DesignSearchConfig uc;
  uc.search = opts;
  SearchStats stats;
  const auto check = upper_bound_within(robot, human, 0, Ordering::kOrdered, uc, &stats);
  r.seconds = since(start);
  r.outcome = check == UpperCheck::kWithin     ? "unsolvable"
              : check == UpperCheck::kExceeded ? "solvable"
                                               : "timeout";
  r.design_size = check == UpperCheck::kWithin ? 0 : -1;
  r.expanded = stats.expanded;
  r.generated = stats.generated;
  rows.push_back(std::move(r));
  return rows;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream* summary) {
  config.check();
  std::vector<pddl::DomainAst> domains;
  std::vector<pddl::ProblemAst> problems;
  for (const auto& inst : config.instances) {
    domains.push_back(pddl::parse_domain(pddl::read_file(inst.domain_file)));
    problems.push_back(pddl::parse_problem(pddl::read_file(inst.problem_file)));
    pddl::check_problem(domains.back(), problems.back());
  }
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < config.instances.size(); ++i)
    for (int v = 0; v < config.variations; ++v) jobs.push_back({i, v});

  std::vector<std::vector<BenchRow>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t j;
      {
        std::lock_guard lock(mu);
        if (next >= jobs.size()) return;
        j = next++;
      }
      try {
        results[j] = run_variation(config, domains[jobs[j].instance], problems[jobs[j].instance], jobs[j]);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };
  const int n = std::min<int>(config.workers, static_cast<int>(jobs.size()));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error("bench: " + e);

  std::vector<BenchRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  if (!config.output.empty()) {
    std::ofstream out(config.output);
    if (!out) throw Error("cannot write " + config.output);
    out << bench_csv(rows);
  }
  if (summary) print_bench_summary(rows, *summary);
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timing) {
  std::ostringstream os;
  os << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.domain << ',' << r.instance << ',' << r.variation << ',' << r.method << ',';
    if (include_timing) os << std::fixed << std::setprecision(4) << r.seconds;
    os << ',' << r.outcome << ',' << r.design_size << ',' << r.expanded << ',' << r.generated << '\n';
  }
  return os.str();
}

void print_bench_summary(const std::vector<BenchRow>& rows, std::ostream& os) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> groups;
  std::vector<std::tuple<std::string, std::string, std::string>> order;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.domain, r.instance, r.method);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.seconds);
  }
  for (const auto& key : order) {
    const auto& xs = groups.at(key);
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
    os << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key) << ": "
       << std::fixed << std::setprecision(3) << mean << " +- " << sd << " s (n=" << xs.size() << ")\n";
  }
}

}  // namespace gsd
