// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nei/cube.hpp"
#include "nei/hierarchy.hpp"
#include "nei/io.hpp"
#include "nei/report.hpp"
#include "nei/swarm.hpp"
#include "../oracle.hpp"

using namespace nei;

namespace {

// Collects the failed sub-checks of one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(12);
      os << what << ": got " << got << ", want " << want << " +/- " << tol;
      failures.push_back(os.str());
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failed = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  if (elapsed > budget_s) {
    std::ostringstream os;
    os << "runtime " << elapsed << " s exceeds " << budget_s << " s";
    c.failures.push_back(os.str());
  }
  const bool ok = c.failures.empty();
  failed += !ok;
  std::printf("[%s] %d. %s (%.3f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), elapsed);
  for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
}

std::string data(const std::string& name) { return std::string(NEI_DATA_DIR) + "/" + name; }

io::Scenario scenario(const std::string& name) {
  return io::load_scenario(std::string(NEI_SCENARIO_DIR) + "/" + name + ".json");
}

// |got - printed| within one unit of the printed value's last digit.
bool matches_printed(double got, double printed, int decimals) {
  return std::abs(got - printed) <= std::pow(10.0, -decimals) + 1e-12;
}

constexpr double kInstant = 0.1;

}  // namespace

int main() {
  criterion(1, "resource example: E(X), q, exact and paper-2dp h, zone", kInstant, [](Check& c) {
    const auto events = io::load_event_table(data("resource.csv"));
    const auto ref = oracle::reduce({100, 40, 1}, {0.5, 0.3, 0.2});
    const auto exact = evaluate(events, Rounding::Exact, std::exp(1.0));
    const auto paper = evaluate(events, Rounding::Paper2dp, std::exp(1.0));
    c.expect(exact.expectation == 62.2, "E(X) == 62.2");
    c.near(exact.q[0], 0.8, 0.005, "q1 to 2 decimals");
    c.near(exact.q[1], 0.19, 0.005, "q2 to 2 decimals");
    c.near(exact.h, static_cast<double>(ref.h), 1e-9, "exact h vs oracle");
    c.near(exact.h, 0.4656, 0.001, "exact h");
    c.near(paper.h, 0.49, 0.005, "paper-2dp h");
    c.expect(exact.zone.zone == Zone::QuasiEquilibrium, "exact zone quasi-equilibrium");
    c.expect(paper.zone.zone == Zone::QuasiEquilibrium, "paper-2dp zone quasi-equilibrium");
  });

  criterion(2, "task example: E(X), q, exact and paper-2dp h, zone", kInstant, [](Check& c) {
    const auto events = io::load_event_table(data("tasks.csv"));
    const auto ref = oracle::reduce({100, 20, 70, 100}, {0.8, 0.1, 0.07, 0.03});
    const auto exact = evaluate(events, Rounding::Exact, std::exp(1.0));
    const auto paper = evaluate(events, Rounding::Paper2dp, std::exp(1.0));
    c.expect(exact.expectation == 89.9, "E(X) == 89.9");
    const double printed[] = {0.89, 0.02, 0.054, 0.033};
    const int decimals[] = {2, 2, 3, 3};
    for (int k = 0; k < 4; ++k)
      c.expect(matches_printed(exact.q[k], printed[k], decimals[k]), "q" + std::to_string(k + 1) + " printed precision");
    c.near(exact.h, static_cast<double>(ref.h), 1e-9, "exact h vs oracle");
    c.near(exact.h, 0.3322, 0.001, "exact h");
    c.near(paper.h, 0.329, 0.005, "paper-2dp h");
    c.expect(exact.zone.zone == Zone::Order, "exact zone order");
    c.expect(paper.zone.zone == Zone::Order, "paper-2dp zone order");
  });

  criterion(3, "dice reductions are exact", kInstant, [](Check& c) {
    // q_k * 21 and q_k * 13 must land on the integer numerators
    const auto fair_events = io::load_event_table(data("fair_die.csv"));
    const auto fair = reduce(fair_events);
    c.near(expectation(fair_events), 3.5, 1e-15, "fair E(X)");
    for (int k = 0; k < 6; ++k) c.near(fair.q()[k] * 21.0, k + 1, 1e-12, "fair q" + std::to_string(k + 1) + " * 21");

    const auto colored_events = io::load_event_table(data("colored_die.json"));
    const auto colored = reduce(colored_events);
    c.near(expectation(colored_events) * 6.0, 13.0, 1e-12, "colored E(X) * 6");
    const int numerators[] = {2, 4, 3, 4};
    for (int k = 0; k < 4; ++k)
      c.near(colored.q()[k] * 13.0, numerators[k], 1e-12, "colored q" + std::to_string(k + 1) + " * 13");
  });

  criterion(4, "golden thresholds", kInstant, [](Check& c) {
    const auto t = golden_thresholds();
    const double r5 = std::sqrt(5.0);
    c.near(t.low, (3 - r5) / 2, 1e-9, "h_low");
    c.near(t.high, (r5 - 1) / 2, 1e-9, "h_high");
    c.near(t.low + t.high, 1.0, 1e-12, "h_low + h_high");
    c.near(order_chaos(t.high).uncertainty_per_order, (1 + r5) / 2, 1e-9, "V_c(h_high)");
  });

  criterion(5, "property suite over 10,000 random schemes", 30.0, [](Check& c) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> size(1, 50);
    std::uniform_real_distribution<double> weight(0.01, 1.0), log_x(std::log(1e-3), std::log(1e3));
    int bad_norm = 0, bad_scale = 0, bad_perm = 0, bad_base = 0, bad_bounds = 0, bad_uniform = 0, bad_oracle = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = size(rng);
      std::vector<double> p(n), x(n);
      for (int k = 0; k < n; ++k) {
        p[k] = weight(rng);
        x[k] = std::exp(log_x(rng));
      }
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& v : p) v /= total;
      std::vector<Event> ev;
      for (int k = 0; k < n; ++k) ev.push_back({"e" + std::to_string(k), x[k], p[k]});
      const WeightedEvents events(ev);
      const auto d = reduce(events);
      const double h = normalized_entropy(d);

      bad_norm += std::abs(std::accumulate(d.q().begin(), d.q().end(), 0.0) - 1.0) > 1e-12;
      bad_bounds += !(h >= 0.0 && h <= 1.0);
      bad_oracle += std::abs(h - static_cast<double>(oracle::reduce(x, p).h)) > 1e-9;

      const double factor = std::exp(log_x(rng));
      bad_scale += std::abs(normalized_entropy(reduce(events.scaled(factor))) - h) > 1e-12;

      auto shuffled = ev;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      bad_perm += std::abs(normalized_entropy(reduce(WeightedEvents(shuffled))) - h) > 1e-12;

      if (n > 1) {
        const double hn = static_cast<double>(n);
        bad_base += std::abs(entropy(d, 2.0) / std::log2(hn) - h) > 1e-12;
        bad_base += std::abs(entropy(d, 10.0) / std::log10(hn) - h) > 1e-12;

        // uniform iff h = 1: x_k = 1/P_k makes every q_k = 1/n
        std::vector<Event> flat = ev;
        for (auto& e : flat) e.intensity = 1.0 / e.probability;
        const auto du = reduce(WeightedEvents(flat));
        double max_dev = 0.0;
        for (double q : d.q()) max_dev = std::max(max_dev, std::abs(q - 1.0 / hn));
        const bool uniform = max_dev <= 1e-9;
        bad_uniform += std::abs(normalized_entropy(du) - 1.0) > 1e-9;
        bad_uniform += uniform != (std::abs(h - 1.0) <= 1e-9);
      }
    }
    c.expect(bad_norm == 0, "normalization failures: " + std::to_string(bad_norm));
    c.expect(bad_scale == 0, "scale invariance failures: " + std::to_string(bad_scale));
    c.expect(bad_perm == 0, "permutation invariance failures: " + std::to_string(bad_perm));
    c.expect(bad_base == 0, "base independence failures: " + std::to_string(bad_base));
    c.expect(bad_bounds == 0, "h outside [0,1]: " + std::to_string(bad_bounds));
    c.expect(bad_uniform == 0, "uniform iff h = 1 failures: " + std::to_string(bad_uniform));
    c.expect(bad_oracle == 0, "oracle mismatches: " + std::to_string(bad_oracle));
  });

  criterion(6, "thinking cube: states, edges, path counts vs DFS oracle", 1.0, [](Check& c) {
    c.expect(all_cube_states().size() == 27, "27 states");
    int degree_sum = 0;
    for (const auto& s : all_cube_states()) degree_sum += static_cast<int>(adjacent_states(s).size());
    c.expect(degree_sum == 2 * 54, "54 edges, got " + std::to_string(degree_sum / 2));
    c.expect(oracle::lattice_edge_count() == 54, "oracle edge count");
    int mismatches = 0;
    for (int a = 1; a <= 27; ++a)
      for (int b = 1; b <= 27; ++b)
        for (int len = 0; len <= 6; ++len)
          mismatches += adaptation_paths(CubeState::from_index(a), CubeState::from_index(b), len).size() !=
                        oracle::simple_path_count(a, b, len);
    c.expect(mismatches == 0, "path count mismatches: " + std::to_string(mismatches));
    const auto corner = adaptation_paths(CubeState::from_index(1), CubeState::from_index(27), 6);
    c.expect(corner.size() == 90, "opposite corners: " + std::to_string(corner.size()) + " paths");
  });

  criterion(7, "hierarchy: 5-level chain and level/branching sweep", kInstant, [](Check& c) {
    const auto chain = io::parse_edge_list(io::read_file(data("chain5.edges")));
    const auto r = cohesion(chain);
    c.near(r.h, static_cast<double>(oracle::complete_tree(5, 1, oracle::kDefaultRanks).h), 1e-9, "chain h vs oracle");
    c.near(r.h, 0.318, 0.001, "chain h");
    c.expect(r.cohesion == Cohesion::Linear, "chain is linear");
    c.expect(r.h < 0.38, "chain h below 0.38");
    for (int levels = 1; levels <= 5; ++levels)
      for (int branching = 1; branching <= 4; ++branching)
        c.near(cohesion(build_tree(levels, branching)).h,
               static_cast<double>(oracle::complete_tree(levels, branching, oracle::kDefaultRanks).h), 1e-9,
               "sweep " + std::to_string(levels) + "x" + std::to_string(branching));
  });

  criterion(8, "simulator reference scenarios", 10.0, [](Check& c) {
    auto stable = scenario("stable");
    c.expect(stable.config.robots == 30 && stable.config.ticks == 500 && !stable.config.controller,
             "stable scenario is N=30, 500 ticks, controller off");
    const auto s = swarm::run(stable.config, stable.environment);
    c.expect(s.summary.mean_h_last_decile < s.summary.mean_h_first_decile, "(a) last-decile mean h < first-decile");
    c.expect(s.summary.final_zone == Zone::Order, "(a) final zone order");

    auto volatile_ = scenario("volatile");
    volatile_.config.controller = false;
    const auto v = swarm::run(volatile_.config, volatile_.environment);
    c.expect(v.summary.disintegration_ticks > 0, "(b) volatile raises disintegration");

    auto moderate = scenario("moderate");
    moderate.config.controller = true;
    const auto on = swarm::run(moderate.config, moderate.environment);
    moderate.config.controller = false;
    const auto off = swarm::run(moderate.config, moderate.environment);
    c.expect(on.summary.corridor_fraction > off.summary.corridor_fraction,
             "(c) corridor fraction on " + std::to_string(on.summary.corridor_fraction) + " vs off " +
                 std::to_string(off.summary.corridor_fraction));

    const auto s2 = swarm::run(stable.config, stable.environment);
    const auto v2 = swarm::run(volatile_.config, volatile_.environment);
    moderate.config.controller = true;
    const auto on2 = swarm::run(moderate.config, moderate.environment);
    c.expect(s2.series == s.series && v2.series == v.series && on2.series == on.series, "(d) bit-identical reruns");
    c.expect(io::metrics_csv(on2.series) == io::metrics_csv(on.series), "(d) identical CSV export");
  });

  std::printf("%d of 8 criteria failed\n", failed);
  return failed;
}
