#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gsd/bench.h"
#include "gsd/error.h"

using namespace gsd;

namespace {

const std::string kData = GSD_DATA_DIR;

BenchConfig small_config() {
  BenchConfig c;
  c.instances = {{"blocksworld", "bw-3", kData + "/blocksworld/domain.pddl", kData + "/blocksworld/bw-3.pddl"}};
  c.variations = 2;
  c.n_delete = 2;
  c.seed = 9;
  c.methods = {DesignMethod::kMain, DesignMethod::kNaive};
  c.time_limit = 60;
  c.output.clear();
  return c;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("variations delete distinct init atoms") {
  const auto problem = pddl::parse_problem(pddl::read_file(kData + "/blocksworld/bw-4.pddl"));
  const auto v = generate_variation(problem, 3, 77);
  CHECK(v.deleted.size() == 3);
  CHECK(std::is_sorted(v.deleted.begin(), v.deleted.end()));
  CHECK(v.human.init.size() == problem.init.size() - 3);
  CHECK(v.robot.init == problem.init);
  const auto again = generate_variation(problem, 3, 77);
  CHECK(again.deleted == v.deleted);
  CHECK_THROWS_AS(generate_variation(problem, 99, 1), Error);
  CHECK(generate_variation(problem, 0, 1).deleted.empty());
}

TEST_CASE("variation seeds are stable and distinct") {
  CHECK(variation_seed(1, 0, 0) == variation_seed(1, 0, 0));
  CHECK(variation_seed(1, 0, 0) != variation_seed(1, 0, 1));
  CHECK(variation_seed(1, 0, 0) != variation_seed(1, 1, 0));
  CHECK(variation_seed(1, 0, 0) != variation_seed(2, 0, 0));
}

TEST_CASE("variation design problems restore the deleted atoms") {
  const auto domain = pddl::parse_domain(pddl::read_file(kData + "/blocksworld/domain.pddl"));
  const auto problem = pddl::parse_problem(pddl::read_file(kData + "/blocksworld/bw-3.pddl"));
  const auto v = generate_variation(problem, 2, 5);
  const auto dp = variation_design_problem(domain, v, {"+holding a"});
  CHECK(dp.robot.fluents == dp.human.fluents);
  CHECK(dp.universe.size() == 3);
  CHECK(std::is_sorted(dp.universe.begin(), dp.universe.end()));
  for (const auto& a : dp.universe) CHECK(a.polarity == Polarity::kAdd);
  CHECK(dp.robot.init.count() == dp.human.init.count() + 2);
  CHECK_THROWS_AS(variation_design_problem(domain, v, {"+flying a"}), Error);
}

TEST_CASE("design atoms and universes") {
  const auto m = pddl::load_model(pddl::read_file(kData + "/blocksworld/domain.pddl"),
                                  pddl::read_file(kData + "/blocksworld/bw-3.pddl"));
  const auto a = parse_design_atom(m, "-(on a b)");
  CHECK(m.fluents[static_cast<std::size_t>(a.fluent)] == "on_a_b");
  CHECK(a.polarity == Polarity::kRemove);
  CHECK(parse_design_atom(m, "+clear_c").polarity == Polarity::kAdd);
  CHECK_THROWS_AS(parse_design_atom(m, "on a b"), Error);
  CHECK_THROWS_AS(parse_design_atom(m, "+on a z"), Error);

  const auto entries = parse_universe(
      R"j({"universe": ["+(clear c)", {"fluent": "on b c", "polarity": "remove", "cost": 3}]})j");
  REQUIRE(entries.size() == 2);
  CHECK(entries[1].fluent == "on_b_c");
  CHECK(entries[1].cost == 3);
  const auto atoms = resolve_universe(m, entries);
  CHECK(atoms[0].polarity == Polarity::kAdd);
  CHECK(atoms[1].cost == 3);
  CHECK_THROWS_AS(parse_universe("[\"x\"]"), Error);
  CHECK_THROWS_AS(parse_universe("{"), Error);
  CHECK_THROWS_AS(parse_universe(R"([{"fluent": "x", "polarity": "flip"}])"), Error);
  CHECK_THROWS_AS(resolve_universe(m, parse_universe("[\"+nothing\"]")), Error);
  CHECK(load_universe(kData + "/fixtures/c-universe.json").size() == 2);
}

TEST_CASE("bench config loading") {
  const auto c = load_bench_config(kData + "/bench.json");
  CHECK(c.instances.size() == 3);
  CHECK(c.seed == 2024);
  CHECK(std::filesystem::exists(c.instances[0].domain_file));
  CHECK(c.methods.size() == 3);

  const auto bad = temp_file("gsd-bad-bench.json", R"({"instances": [], "variations": 1})");
  CHECK_THROWS_AS(load_bench_config(bad.string()), Error);
  const auto broken = temp_file("gsd-broken-bench.json", "{ nope");
  CHECK_THROWS_AS(load_bench_config(broken.string()), Error);
  BenchConfig zero = small_config();
  zero.workers = 0;
  CHECK_THROWS_AS(zero.check(), Error);
}

TEST_CASE("bench runs are reproducible") {
  const auto config = small_config();
  std::ostringstream summary;
  const auto rows = run_bench(config, &summary);
  // Two methods plus three bound rows per variation.
  REQUIRE(rows.size() == 2 * 5);
  for (const auto& r : rows) CHECK(r.outcome != "error");
  CHECK(rows[0].method == "main");
  CHECK(rows[1].method == "naive");
  CHECK(rows[0].design_size == rows[1].design_size);
  CHECK(summary.str().find("bw-3 main") != std::string::npos);

  auto parallel = config;
  parallel.workers = 2;
  CHECK(bench_csv(run_bench(parallel), false) == bench_csv(rows, false));

  const auto csv = bench_csv(rows);
  CHECK(csv.rfind(std::string(kBenchCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("bench writes its csv") {
  auto config = small_config();
  config.variations = 1;
  config.bound_rows = false;
  config.output = (std::filesystem::temp_directory_path() / "gsd-bench-test.csv").string();
  const auto rows = run_bench(config);
  CHECK(rows.size() == 2);
  std::ifstream in(config.output);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == bench_csv(rows));
}
