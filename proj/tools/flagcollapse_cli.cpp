#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "flagcollapse/flagcollapse.hpp"
#include "flagcollapse/oracle.hpp"

using namespace flagcollapse;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Edge counts, rounds, timings and check counts of one collapse run,
// printed as key=value lines.
struct RunStats {
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::vector<std::size_t> round_sizes;
  double read_seconds = 0, collapse_seconds = 0, write_seconds = 0;
  CollapseStats checks;
  std::string algorithm;
  unsigned parts = 1;

  void print(std::ostream& os) const {
    os << "algorithm=" << algorithm << '\n'
       << "parts=" << parts << '\n'
       << "edges_before=" << edges_before << '\n'
       << "edges_after=" << edges_after << '\n'
       << "rounds=" << (round_sizes.empty() ? 0 : round_sizes.size() - 1) << '\n'
       << "round_sizes=";
    for (std::size_t i = 0; i < round_sizes.size(); ++i) os << (i ? "," : "") << round_sizes[i];
    os << '\n'
       << "domination_checks=" << checks.domination_checks << '\n'
       << "witness_rechecks=" << checks.witness_rechecks << '\n'
       << "shifts=" << checks.shifts << '\n'
       << "trims=" << checks.trims << '\n'
       << "time_read=" << read_seconds << '\n'
       << "time_collapse=" << collapse_seconds << '\n'
       << "time_write=" << write_seconds << '\n';
  }
};

// "-" means standard input / output.
template <class Fn>
auto with_input(const std::string& path, Fn&& fn) {
  if (path == "-") return fn(std::cin);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return fn(f);
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  fn(f);
}

struct CollapseOptions {
  std::string input = "-", output = "-", removed;
  std::string algorithm = "backward";
  bool fixpoint = false;
  std::optional<int> rounds;
  std::optional<double> epsilon, alpha;
  unsigned threads = 1;
  bool dense = false, sparse = false, stats = false;
};

void check_collapse_flags(const CollapseOptions& o) {
  const bool approx = o.epsilon || o.alpha;
  if (o.epsilon && o.alpha) throw UsageError("--epsilon and --alpha are mutually exclusive");
  if (approx && o.threads > 1)
    throw UsageError("approximate collapse runs single-threaded; drop --threads or --epsilon/--alpha");
  if (approx && o.algorithm != "backward")
    throw UsageError("approximate collapse needs --algorithm backward");
  if (approx && (o.fixpoint || o.rounds.value_or(1) > 1))
    throw UsageError("approximate collapse runs a single round; repeating it compounds the error");
  if (o.threads > 1 && o.algorithm != "backward")
    throw UsageError("--threads > 1 needs --algorithm backward");
  if (o.fixpoint && o.rounds) throw UsageError("--fixpoint and --rounds are mutually exclusive");
  if (o.rounds && *o.rounds < 1) throw UsageError("--rounds must be at least 1");
  if (o.threads < 1) throw UsageError("--threads must be at least 1");
}

int run_collapse(const CollapseOptions& o) {
  check_collapse_flags(o);
  RunStats st;
  st.algorithm = o.algorithm;
  auto layout = o.sparse ? NeighborhoodLayout::sparse : NeighborhoodLayout::dense;

  auto t0 = Clock::now();
  FilteredGraph g = with_input(o.input, [](std::istream& in) { return io::read_graph(in); });
  st.read_seconds = seconds_since(t0);
  st.edges_before = g.edge_count();

  t0 = Clock::now();
  CollapseResult result;
  if (o.epsilon || o.alpha) {
    auto p = o.epsilon ? ApproxParams::additive(*o.epsilon) : ApproxParams::multiplicative(*o.alpha);
    result = approx_collapse(g, p, layout);
    st.round_sizes = {g.edge_count(), result.kept.size()};
  } else {
    const int max_rounds = o.fixpoint ? std::numeric_limits<int>::max() : o.rounds.value_or(1);
    FixpointResult fx;
    if (o.threads > 1) {
      st.parts = default_parts(g.edge_count(), o.threads);
      fx = iterate_rounds(g, max_rounds, [&](const FilteredGraph& h) {
        return parallel_backward_collapse(h, st.parts, layout);
      });
    } else {
      auto algorithm = o.algorithm == "forward" ? Algorithm::forward : Algorithm::backward;
      fx = collapse_to_fixpoint(g, algorithm, max_rounds, layout);
    }
    result = std::move(fx.result);
    st.round_sizes = std::move(fx.round_sizes);
  }
  st.collapse_seconds = seconds_since(t0);
  st.checks = result.stats;
  st.edges_after = result.kept.size();

  t0 = Clock::now();
  with_output(o.output, [&](std::ostream& os) { io::write_graph(os, result.graph()); });
  if (!o.removed.empty()) {
    with_output(o.removed, [&](std::ostream& os) {
      for (const auto& e : result.removed)
        os << e.u << ' ' << e.v << ' ' << io::format_grade(e.t) << '\n';
    });
  }
  st.write_seconds = seconds_since(t0);
  if (o.stats) st.print(std::cerr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-collapse reduction of flag and zigzag flag filtrations"};
  app.require_subcommand(1);

  CollapseOptions co;
  auto* collapse = app.add_subcommand("collapse", "Reduce a flag filtration given as a graph file");
  collapse->add_option("-i,--input", co.input, "Graph file ('-' for stdin)");
  collapse->add_option("-o,--output", co.output, "Reduced graph file ('-' for stdout)");
  collapse->add_option("--removed", co.removed, "Write removed edges (original grades) here");
  collapse->add_option("--algorithm", co.algorithm, "backward or forward")
      ->check(CLI::IsMember({"backward", "forward"}));
  auto* fix = collapse->add_flag("--fixpoint", co.fixpoint, "Repeat until nothing changes");
  auto* rounds = collapse->add_option("--rounds", co.rounds, "Number of rounds (default 1)");
  fix->excludes(rounds);
  auto* eps = collapse->add_option("--epsilon", co.epsilon, "Additive approximation");
  auto* alpha = collapse->add_option("--alpha", co.alpha, "Multiplicative approximation");
  eps->excludes(alpha);
  collapse->add_option("--threads", co.threads, "Worker threads for backward collapse");
  auto* dense = collapse->add_flag("--dense", co.dense, "Dense neighborhood checks (default)");
  auto* sparse = collapse->add_flag("--sparse", co.sparse, "Sparse neighborhood checks");
  dense->excludes(sparse);
  collapse->add_flag("--stats", co.stats, "Print run statistics to stderr");

  std::string zin = "-", zout = "-";
  int passes = 8;
  bool zstats = false;
  auto* zz = app.add_subcommand("zigzag-collapse", "Reduce a zigzag flag filtration");
  zz->add_option("-i,--input", zin, "Zigzag event file ('-' for stdin)");
  zz->add_option("-o,--output", zout, "Reduced event file ('-' for stdout)");
  zz->add_option("--passes", passes, "Maximum inclusion/removal passes")->check(CLI::PositiveNumber);
  zz->add_flag("--stats", zstats, "Print run statistics to stderr");

  std::string rin = "-", rout = "-";
  double threshold = kInfinity;
  auto* rips = app.add_subcommand("rips", "Euclidean Rips graph of a point cloud");
  rips->add_option("-i,--input", rin, "Point file ('-' for stdin)");
  rips->add_option("-o,--output", rout, "Graph file ('-' for stdout)");
  rips->add_option("--threshold", threshold, "Longest edge kept (default inf)");

  std::string kind, sout = "-";
  std::size_t n = 0;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Seeded synthetic point cloud or complete graph");
  sample->add_option("--kind", kind, "uniform_square, circle, regular_polygon, torus, complete_graph")
      ->required()
      ->check(CLI::IsMember({"uniform_square", "circle", "regular_polygon", "torus", "complete_graph"}));
  sample->add_option("-n,--n", n, "Number of points or vertices")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("-o,--output", sout, "Output file ('-' for stdout)");

  std::string pin = "-", pout = "-";
  int max_dim = 1;
  std::size_t budget = oracle::kDefaultSimplexBudget;
  auto* pers = app.add_subcommand("persistence", "Diagram of the flag filtration of a graph");
  pers->add_option("-i,--input", pin, "Graph file ('-' for stdin)");
  pers->add_option("-o,--output", pout, "Diagram file ('-' for stdout)");
  pers->add_option("--max-dim", max_dim, "Highest homology dimension")->check(CLI::NonNegativeNumber);
  pers->add_option("--budget", budget, "Simplex budget");

  auto* zpers = app.add_subcommand("zigzag-persistence", "Closed-interval diagram of a zigzag file");
  zpers->add_option("-i,--input", pin, "Zigzag event file ('-' for stdin)");
  zpers->add_option("-o,--output", pout, "Diagram file ('-' for stdout)");
  zpers->add_option("--max-dim", max_dim, "Highest homology dimension")->check(CLI::NonNegativeNumber);
  zpers->add_option("--budget", budget, "Simplex budget");

  std::string da, db;
  std::optional<int> bdim;
  auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between two diagram files");
  bn->add_option("a", da, "First diagram")->required();
  bn->add_option("b", db, "Second diagram")->required();
  bn->add_option("--dim", bdim, "Only this dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*collapse) return run_collapse(co);

    if (*zz) {
      auto z = with_input(zin, [](std::istream& in) { return io::read_zigzag(in); });
      auto t0 = Clock::now();
      auto r = zigzag_collapse_with_stats(z, passes);
      double secs = seconds_since(t0);
      with_output(zout, [&](std::ostream& os) { io::write_zigzag(os, r.filtration); });
      if (zstats)
        std::cerr << "events_before=" << z.events().size() << '\n'
                  << "events_after=" << r.filtration.events().size() << '\n'
                  << "passes=" << r.stats.passes << '\n'
                  << "domination_checks=" << r.stats.domination_checks << '\n'
                  << "shifts=" << r.stats.shifts << '\n'
                  << "cancellations=" << r.stats.cancellations << '\n'
                  << "trims=" << r.stats.trims << '\n'
                  << "refused_swaps=" << r.stats.refused_swaps << '\n'
                  << "time_collapse=" << secs << '\n';
      return 0;
    }

    if (*rips) {
      auto p = with_input(rin, [](std::istream& in) { return io::read_points(in); });
      auto g = rips_graph(p, threshold);
      with_output(rout, [&](std::ostream& os) { io::write_graph(os, g); });
      return 0;
    }

    if (*sample) {
      auto k = parse_sample_kind(kind);
      with_output(sout, [&](std::ostream& os) {
        if (k == SampleKind::complete_graph)
          io::write_graph(os, complete_graph(n));
        else
          io::write_points(os, sample_points(k, n, seed));
      });
      return 0;
    }

    if (*pers) {
      auto g = with_input(pin, [](std::istream& in) { return io::read_graph(in); });
      auto d = oracle::flag_persistence(g, max_dim, budget);
      with_output(pout, [&](std::ostream& os) { io::write_diagram(os, d); });
      return 0;
    }

    if (*zpers) {
      auto z = with_input(pin, [](std::istream& in) { return io::read_zigzag(in); });
      auto d = oracle::zigzag_persistence(z, max_dim, std::nullopt, budget);
      with_output(pout, [&](std::ostream& os) { io::write_diagram(os, d); });
      return 0;
    }

    if (*bn) {
      auto read = [](const std::string& path) {
        return with_input(path, [](std::istream& in) {
          return io::read_diagram(in, oracle::IntervalConvention::half_open);
        });
      };
      auto a = read(da), b = read(db);
      std::vector<int> dims;
      if (bdim) {
        dims.push_back(*bdim);
      } else {
        for (int d = 0; d <= std::max(a.max_dimension(), b.max_dimension()); ++d) dims.push_back(d);
      }
      for (int d : dims)
        std::cout << d << ' ' << io::format_grade(oracle::bottleneck_distance(a, b, d)) << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
