#include <doctest.h>

#include "emo/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace emo;

namespace {

const std::filesystem::path data_dir = EMO_TEST_DATA;

ExperimentSpec small_ojzj_spec(std::size_t reps)
{
    return parse_experiment_spec(R"({
      "problem": {"type": "ojzj", "n": 8, "k": 2},
      "scenarios": [
        {"name": "spu", "algorithm": "nsga2", "update": "spu", "p_s": 0.5, "p_s_basis": "population"},
        {"name": "archive", "algorithm": "sms_emoa", "archive": true},
        {"name": "spu_archive", "algorithm": "sms_emoa", "update": "spu", "p_s": 0.5, "archive": true}
      ],
      "replications": )" + std::to_string(reps) + R"(,
      "base_seed": 12
    })");
}

ResultRow row(const std::string& scenario, std::size_t rep, double indicator)
{
    ResultRow r;
    r.scenario = scenario;
    r.replication = rep;
    r.success = true;
    r.indicator = indicator;
    return r;
}

std::size_t count_lines(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("population rule")
{
    const OjzjParams p{10, 3};
    CHECK(ojzj_population_rule(p, false, Algorithm::nsga2) == 56);
    CHECK(ojzj_population_rule(p, false, Algorithm::sms_emoa) == 16);
    CHECK(ojzj_population_rule(p, true, Algorithm::nsga2) == 8);
    CHECK(ojzj_population_rule(p, true, Algorithm::sms_emoa) == 5);
}

TEST_CASE("spec parsing fills ojzj defaults")
{
    const auto spec = small_ojzj_spec(2);
    REQUIRE(spec.scenarios.size() == 3);
    const auto& spu = spec.scenarios[0].config;
    CHECK(spu.mu == 4 * (8 - 4 + 3) * 2);
    CHECK(spu.survival_basis == SurvivalBasis::population);
    CHECK(spu.stop == StopRule::full_front_coverage);
    CHECK(spu.budget == 1'000'000'000);
    CHECK(spec.scenarios[1].config.mu == 5);
    CHECK(spec.baseline_name() == "spu_archive");
}

TEST_CASE("spec parsing rejects bad documents")
{
    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "ojzj", "n": 8, "k": 2}, "scenarios": [], "typo": 1})"),
                    SpecError);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "ojzj", "n": 8, "k": 2},
        "scenarios": [{"name": "a", "algorithm": "nsga2", "colour": 3}]})"),
                    SpecError);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "ojzj", "n": 8, "k": 2},
        "scenarios": [{"name": "a", "algorithm": "moead"}]})"),
                    SpecError);
    CHECK_THROWS_AS(parse_experiment_spec("{"), SpecError);

    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "ojzj", "n": 8, "k": 2},
        "scenarios": [{"name": "a", "algorithm": "nsga2"}, {"name": "a", "algorithm": "nsga2"}]})"),
                    SpecError);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "ojzj", "n": 8, "k": 2},
        "scenarios": [{"name": "odd", "algorithm": "nsga2", "mu": 7}]})"),
                    ConfigError);

    auto zero = small_ojzj_spec(1);
    zero.replications = 0;
    CHECK_THROWS_AS(zero.validate(), SpecError);
}

TEST_CASE("motsp spec from tsplib files")
{
    const auto spec = load_experiment_spec(data_dir / "spec_tsplib.json");
    const auto& setup = std::get<MotspSetup>(spec.problem);
    CHECK(setup.instance.cities == 5);
    CHECK(setup.instance.objectives() == 2);
    CHECK(setup.reference.size() >= 1);
    CHECK(spec.scenarios[0].config.stop == StopRule::budget_only);

    const auto rows = run_cells(spec);
    CHECK(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.indicator >= 0);
        CHECK(r.evaluations >= 400);
    }
    CHECK_THROWS(load_experiment_spec(data_dir / "missing.json"));
    CHECK_THROWS_AS(parse_experiment_spec(R"({"problem": {"type": "motsp", "tsplib": ["nope.tsp", "nope.tsp"]},
        "scenarios": [{"name": "a", "algorithm": "nsga2"}]})",
                                          data_dir),
                    InstanceError);
}

TEST_CASE("seeds depend only on the cell")
{
    CHECK(cell_seed(1, "a", 0) == cell_seed(1, "a", 0));
    CHECK(cell_seed(1, "a", 0) != cell_seed(1, "a", 1));
    CHECK(cell_seed(1, "a", 0) != cell_seed(1, "b", 0));
    CHECK(cell_seed(1, "a", 0) != cell_seed(2, "a", 0));
}

TEST_CASE("rows are deterministic and worker independent")
{
    const auto spec = small_ojzj_spec(4);
    const auto one = run_cells(spec, {1, false});
    const auto three = run_cells(spec, {3, false});
    CHECK(rows_to_csv(one) == rows_to_csv(three));
    CHECK(count_lines(rows_to_csv(one)) == 1 + 3 * 4);
    for (const auto& r : one) {
        CHECK(r.success);
        CHECK(r.wallclock_ms == 0);
        CHECK(r.indicator == static_cast<double>(r.evaluations));
    }
    const auto single = run_cell(spec, 1, 2);
    CHECK(single.seed == one[4 + 2].seed);
    CHECK(single.evaluations == one[4 + 2].evaluations);
}

TEST_CASE("csv layout")
{
    ResultRow r = row("a,b", 0, 0.1);
    r.seed = 42;
    r.evaluations = 7;
    const auto csv = rows_to_csv(std::vector{r});
    CHECK(csv == "scenario,replication,seed,evaluations,success,indicator,wallclock_ms\n\"a,b\",0,42,7,1,0.1,0\n");
}

TEST_CASE("summary statistics")
{
    std::vector<ResultRow> rows;
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{10, 20, 30, 40};
    for (std::size_t i = 0; i < 4; ++i) {
        rows.push_back(row("a", i, a[i]));
        rows.push_back(row("b", i, b[i]));
    }
    const auto s = summarize(rows);
    CHECK(s.baseline == "b");
    CHECK(s.at("a").mean == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(s.at("a").std == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
    CHECK(s.at("b").mean == doctest::Approx(25).epsilon(1e-12));
    CHECK(!s.at("b").test.has_value());
    REQUIRE(s.at("a").test.has_value());
    CHECK(s.at("a").test->exact);
    CHECK(s.at("a").test->p_value == doctest::Approx(2.0 / 70).epsilon(1e-12));
    CHECK(s.at("a").significant);

    const auto by_a = summarize(rows, "a");
    CHECK(by_a.baseline == "a");
    CHECK(by_a.at("b").test.has_value());
    CHECK_THROWS(summarize(rows, "zzz"));
}

TEST_CASE("summary warnings and identical scenarios")
{
    const std::vector<ResultRow> single{row("x", 0, 5), row("y", 0, 5)};
    const auto s = summarize(single);
    CHECK(s.at("x").std == 0);
    CHECK(!s.at("x").warnings.empty());

    std::vector<ResultRow> same;
    for (std::size_t i = 0; i < 5; ++i) {
        same.push_back(row("p", i, static_cast<double>(i)));
        same.push_back(row("q", i, static_cast<double>(i)));
    }
    const auto t = summarize(same);
    CHECK(t.at("p").test->p_value == 1.0);
    CHECK(!t.at("p").significant);

    auto failed = row("f", 0, 1);
    failed.success = false;
    const auto u = summarize(std::vector{failed, row("g", 0, 1)});
    CHECK(u.at("f").successes == 0);
    CHECK(u.at("f").warnings.size() == 2);

    const auto json = summary_to_json(t);
    CHECK(json.find("\"baseline\": \"q\"") != std::string::npos);
}

TEST_CASE("summary means equal the csv rows")
{
    const auto out = run_experiment(small_ojzj_spec(5), {2, false});
    for (const auto& sc : out.summary.scenarios) {
        double total = 0;
        std::size_t n = 0;
        for (const auto& r : out.rows) {
            if (r.scenario == sc.name) {
                total += r.indicator;
                ++n;
            }
        }
        CHECK(n == 5);
        CHECK(sc.mean == doctest::Approx(total / 5).epsilon(1e-12));
    }
}

TEST_CASE("experiment files are reproducible")
{
    const auto dir = std::filesystem::temp_directory_path() / "emo_harness_test";
    std::filesystem::remove_all(dir);
    const auto spec = small_ojzj_spec(2);
    run_experiment(spec, {1, false}, dir / "first");
    run_experiment(spec, {2, false}, dir / "second");
    CHECK(slurp(dir / "first" / "rows.csv") == slurp(dir / "second" / "rows.csv"));
    CHECK(slurp(dir / "first" / "summary.json") == slurp(dir / "second" / "summary.json"));
    CHECK(count_lines(slurp(dir / "first" / "rows.csv")) == 7);
    std::filesystem::remove_all(dir);
}

TEST_CASE("bounds queries")
{
    const double n = 100;
    const double k = std::ceil(std::numbers::e * std::log(8 * std::numbers::e * n));
    const auto grid = parse_bound_grid(R"({
      "cells": [
        {"name": "plain", "n": 100, "k": )" + std::to_string(k) + R"(, "mu": 200, "p_s": 0.5, "p_c": 0.5, "variant": "sms_emoa"},
        {"name": "archived", "n": 100, "k": )" + std::to_string(k) + R"(, "mu": 5, "p_s": 0.5, "p_c": 0.5, "variant": "sms_emoa"},
        {"name": "nsga", "n": 100, "k": )" + std::to_string(k) + R"(, "mu": 200, "p_s": 0.25, "p_c": 0.5, "variant": "nsga2"},
        {"name": "sms", "n": 100, "k": )" + std::to_string(k) + R"(, "mu": 200, "p_s": 0.25, "p_c": 0.5, "variant": "sms_emoa"}
      ],
      "ratios": [["archived", "plain"], ["nsga", "sms"]]
    })");
    const auto table = bounds_query(grid);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[1].bound.log_value < table.rows[0].bound.log_value);
    REQUIRE(table.ratios.size() == 2);
    CHECK(table.ratios[0].ratio < 1);
    CHECK(table.ratios[1].ratio <= 1);
    CHECK(table.rows[0].C == doctest::Approx(8 * std::numbers::e * n));

    const auto csv = bound_table_to_csv(table);
    CHECK(csv.rfind("name,variant,n,k,mu,p_s,p_c,C,M,log_bound,bound,warnings\n", 0) == 0);

    const auto one = bounds_query(parse_bound_grid(
        R"({"cells": [{"name": "c", "n": 20, "k": 3, "mu": 5, "p_s": 0.5, "p_c": 0.5, "variant": "sms_emoa"}]})"));
    CHECK(one.rows.size() == 1);
    CHECK(one.ratios.empty());

    CHECK_THROWS_AS(bounds_query(parse_bound_grid(R"({"cells": [], "ratios": [["a", "b"]]})")), SpecError);
    CHECK_THROWS_AS(parse_bound_grid(R"({"cells": [{"name": "c", "n": 20, "k": 3, "mu": 5, "p_s": 0.5,
        "p_c": 0.5, "variant": "sms_emoa", "extra": 0}]})"),
                    SpecError);
}

TEST_CASE("verification suites pass")
{
    CHECK(verify_sorting(3, 100).passed());
    CHECK(verify_hypervolume(3, 30).passed());
    CHECK(verify_ojzj_fronts(10).passed());
    CHECK(verify_rank_sum(3, 50).passed());
}
