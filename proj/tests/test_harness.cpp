#include <doctest.h>

#include <map>
#include <sstream>
#include <stdexcept>

#include "cvhnn/harness.hpp"
#include "cvhnn/report_io.hpp"

using namespace cvhnn;

TEST_CASE("coceil initial states follow the rectangle areas") {
  // On [-3, 7) with Q = 3, R = 2 a coordinate lands on level 0 w.p. 3/10,
  // levels 1 and 2 w.p. 2/10 each and level 3 w.p. 3/10.
  const double level_p[] = {0.3, 0.2, 0.2, 0.3};
  ExperimentConfig config;
  config.n = 1;
  Rng rng(10);
  std::map<StateCode, int> counts;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) ++counts[sample_initial_coceil(config, rng)[0]];
  CHECK(counts.size() == 16);
  for (const auto& [code, count] : counts) {
    const double p = level_p[code.x] * level_p[code.y];
    const double sd = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(count / double(draws) - p) < 5 * sd);
  }
}

TEST_CASE("cosign initial states cover the image set evenly") {
  ExperimentConfig config;
  config.n = 1;
  config.activation = ActivationSpec::cosign(3, 2.0, 4);
  CHECK(config.effective_disk_radius() == 6.0);
  Rng rng(11);
  std::map<StateCode, int> counts;
  const int draws = 120000;
  for (int k = 0; k < draws; ++k) ++counts[sample_initial_cosign(config, rng)[0]];
  CHECK(counts.size() == 12);
  for (const auto& [code, count] : counts) {
    CHECK(is_member(config.activation, code));
    CHECK(std::abs(count - draws / 12) < 500);
  }
}

TEST_CASE("samplers") {
  ExperimentConfig config;
  config.n = 7;
  Rng rng(3);
  CHECK(is_valid_state(config.activation, sample_initial(config, rng)));
  CHECK(sample_initial(config, rng).size() == 7);
  CHECK_THROWS_AS(sample_initial_cosign(config, rng), std::invalid_argument);

  config.activation = ActivationSpec::cosign(2, 1.0, 3);
  CHECK(is_valid_state(config.activation, sample_initial(config, rng)));
  CHECK_THROWS_AS(sample_initial_coceil(config, rng), std::invalid_argument);

  config.activation = ActivationSpec::csign(5);
  CHECK(is_valid_state(config.activation, sample_initial(config, rng)));

  // The rectangle can be moved.
  config.activation = ActivationSpec::coceil(3, 2.0);
  config.rect_min = 10.0;
  config.rect_max = 11.0;
  for (auto code : sample_initial(config, rng)) CHECK(code == StateCode{3, 3});
}

TEST_CASE("experiment config validation") {
  auto bad = [](auto edit) {
    ExperimentConfig c;
    edit(c);
    return c;
  };
  CHECK_NOTHROW(ExperimentConfig{}.validate());
  CHECK_THROWS_AS(bad([](auto& c) { c.n = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& c) { c.trials = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& c) { c.sweeps = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& c) { c.rect_max = c.rect_min; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& c) { c.disk_radius = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(bad([](auto& c) { c.trials = 0; })), std::invalid_argument);
}

TEST_CASE("single neuron experiment is flat at zero") {
  ExperimentConfig config;
  config.n = 1;
  config.trials = 1;
  config.sweeps = 1;
  const auto report = run_experiment(config);
  REQUIRE(report.trials.size() == 1);
  const auto& traj = report.trials[0].trajectory;
  for (const auto& step : traj.steps) CHECK(*step.energy == 0.0);
  CHECK(report.summary.max_energy_increase == 0.0);

  std::ostringstream csv;
  write_trace_csv(csv, report);
  CHECK(csv.str().rfind("trial,update_index,neuron,energy\n0,0,,0.0\n0,1,0,0.0\n", 0) == 0);
}

TEST_CASE("experiments are reproducible") {
  for (const auto& spec : {ActivationSpec::coceil(3, 2.0), ActivationSpec::cosign(3, 2.0, 4)}) {
    ExperimentConfig config;
    config.activation = spec;
    const auto a = run_experiment(config);
    const auto b = run_experiment(config);
    CHECK(report_to_json(a, "trace.csv", "energy.svg").dump() ==
          report_to_json(b, "trace.csv", "energy.svg").dump());
    std::ostringstream csv_a, csv_b, svg_a, svg_b;
    write_trace_csv(csv_a, a);
    write_trace_csv(csv_b, b);
    write_energy_svg(svg_a, a);
    write_energy_svg(svg_b, b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(svg_a.str() == svg_b.str());
    CHECK(svg_a.str().find("<polyline") != std::string::npos);

    config.state_seed = 3;
    CHECK(report_to_json(run_experiment(config), "", "").dump() != report_to_json(a, "", "").dump());
    CHECK(trial_seed(2, 0) != trial_seed(2, 1));
  }
}

TEST_CASE("trace and report layout") {
  ExperimentConfig config;
  config.n = 3;
  config.trials = 2;
  config.sweeps = 2;
  const auto report = run_experiment(config);
  std::ostringstream csv;
  write_trace_csv(csv, report);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "trial,update_index,neuron,energy");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  std::size_t expected = 0;
  for (const auto& t : report.trials) expected += t.trajectory.steps.size();
  CHECK(rows == expected);

  const auto doc = report_to_json(report, "trace.csv", "energy.svg");
  CHECK(doc["trials"].size() == 2);
  CHECK(doc["files"]["trace"] == "trace.csv");
  CHECK(doc["config"]["activation"]["kind"] == "coceil");
  const auto& s = doc["summary"];
  CHECK(s["converged"].get<int>() + s["cycles"].get<int>() + s["unresolved"].get<int>() == 2);

  config.mode = UpdateMode::Parallel;
  std::ostringstream parallel_csv;
  write_trace_csv(parallel_csv, run_experiment(config));
  CHECK(parallel_csv.str().find(",1,all,") != std::string::npos);
}

TEST_CASE("phase quantizer experiments never raise the energy") {
  for (const auto& spec : {ActivationSpec::csign(4), ActivationSpec::csign(7), ActivationSpec::split_sign()}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ExperimentConfig config;
      config.activation = spec;
      config.weight_seed = seed;
      config.sweeps = 100;
      const auto report = run_experiment(config);
      REQUIRE(report.summary.max_energy_increase <= 1e-9);
      REQUIRE(report.summary.converged == config.trials);
    }
  }
}

TEST_CASE("conjecture suite") {
  ConjectureSuiteConfig config;
  config.sizes = {2, 3, 5};
  config.resolution_factors = {2, 3, 4};
  config.trials = 20;
  config.max_sweeps = 200;
  const auto report = conjecture_suite(config);
  CHECK(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    CHECK(row.serial.total() == 20);
    CHECK(row.parallel.total() == 20);
  }
  for (auto kind : {ActivationKind::CSign, ActivationKind::SplitSign}) {
    const auto& row = report.row(kind);
    CHECK(row.serial.converged == 20);
    CHECK(row.serial.runs_with_energy_increase == 0);
  }
  for (const auto& c : report.counterexamples) {
    const bool allowed = c.mode == UpdateMode::Parallel && c.verdict.kind == Verdict::Kind::Cycle &&
                         c.verdict.length == 2;
    CHECK_FALSE(allowed);
    CHECK_FALSE((c.mode == UpdateMode::Serial && c.verdict.kind == Verdict::Kind::Converged));
  }
  CHECK(conjecture_to_json(report).dump() == conjecture_to_json(conjecture_suite(config)).dump());

  auto bad = config;
  bad.sizes = {17};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.resolution_factors = {0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.kinds.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
