#pragma once

// Command-line front end. Kept in a header so the test suite can drive
// run_command directly with captured streams.
//
// Exit codes: 0 success, 1 usage error, 2 data or schema error,
// 3 mathematical error (divergence, infeasibility). Errors are reported as a
// single line "error: <category>: <message>" on the error stream.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "possibility/io.hpp"
#include "possibility/possibility.hpp"

namespace possibility::cli {

namespace detail {

inline DiscreteDistribution load_discrete(const std::string& path) {
  return io::parse_discrete(io::read_file(path));
}

inline PiecewisePossibility load_piecewise(const std::string& path) {
  return io::parse_piecewise(io::read_file(path));
}

// Reorders `d` onto `labels` when both carry the same label set.
inline DiscreteDistribution align(const DiscreteDistribution& d,
                                  const std::vector<std::string>& labels) {
  if (d.labels() == labels) return d;
  if (d.size() != labels.size()) {
    throw DomainError("distributions have different domains (" + std::to_string(labels.size()) +
                      " vs " + std::to_string(d.size()) + " labels)");
  }
  return restrict_to(d, labels);
}

struct Output {
  bool bits = false;
  int precision = 6;

  std::string operator()(double nats) const {
    return io::format_fixed(bits ? nats / std::numbers::ln2 : nats, precision);
  }
};

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Information measures, distances and inference for possibility distributions",
               "possibility"};
  app.require_subcommand(1);
  detail::Output fmt;
  app.add_option("--precision", fmt.precision, "Decimals in printed values")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();

  std::string file, file2, tau_file, out_file, csv_file, metric_name = "G", n_list, grid = "left";
  bool continuous = false;
  std::size_t samples = 0;

  auto* uncertainty = app.add_subcommand("uncertainty", "U-uncertainty of a discrete distribution");
  uncertainty->add_option("file", file, "Discrete distribution document")->required();
  uncertainty->add_option("--tau", tau_file, "Tau table; prints the tau-deformed information");
  uncertainty->add_flag("--bits", fmt.bits, "Print bits instead of nats");

  auto* info_cmd = app.add_subcommand("info", "Information I(f) of a continuous distribution");
  info_cmd->add_option("file", file, "Piecewise-linear distribution document")->required();
  info_cmd->add_flag("--bits", fmt.bits, "Print bits instead of nats");

  auto* distance_cmd = app.add_subcommand("distance", "Information distance between two distributions");
  distance_cmd->add_option("file1", file, "First distribution (lower one for g)")->required();
  distance_cmd->add_option("file2", file2, "Second distribution")->required();
  distance_cmd->add_option("--metric", metric_name, "g, G, H or K")
      ->check(CLI::IsMember({"g", "G", "H", "K"}))
      ->required();
  distance_cmd->add_flag("--continuous", continuous, "Inputs are piecewise-linear distributions");
  distance_cmd->add_flag("--bits", fmt.bits, "Print bits instead of nats");

  auto* rearrange_cmd = app.add_subcommand("rearrange", "Descending rearrangement of a continuous distribution");
  rearrange_cmd->add_option("file", file, "Piecewise-linear distribution document")->required();
  rearrange_cmd->add_option("--out", out_file, "Output document")->required();
  rearrange_cmd->add_option("--csv", csv_file, "Also write the curve sampled uniformly as CSV");
  rearrange_cmd->add_option("--samples", samples, "Sample count for --csv")->default_val(101);

  auto* approx_cmd = app.add_subcommand("approx", "Discrete approximations ln n - U(p_n) of I(f)");
  approx_cmd->add_option("file", file, "Piecewise-linear distribution document")->required();
  approx_cmd->add_option("--n", n_list, "Comma-separated increasing sample counts")->required();
  approx_cmd->add_option("--csv", csv_file, "CSV output path")->required();
  approx_cmd->add_option("--grid", grid, "Sample grid: left ((i-1)/n) or right (i/n)")
      ->check(CLI::IsMember({"left", "right"}));

  auto* infer_cmd = app.add_subcommand("infer", "Maximum-uncertainty / minimum-distance inference");
  infer_cmd->add_option("problem", file, "Problem document")->required();
  infer_cmd->add_option("--out", out_file, "Solution document")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*uncertainty) {
      const auto d = detail::load_discrete(file);
      if (tau_file.empty()) {
        out << fmt(u_uncertainty(d).nats) << "\n";
      } else {
        const auto tau = io::parse_tau(io::read_file(tau_file));
        out << fmt(info_tau(d, tau).nats) << "\n";
      }
    } else if (*info_cmd) {
      out << fmt(info(detail::load_piecewise(file))) << "\n";
    } else if (*distance_cmd) {
      const Metric metric = parse_metric(metric_name);
      double value = 0.0;
      if (continuous) {
        const auto f1 = detail::load_piecewise(file);
        const auto f2 = detail::load_piecewise(file2);
        switch (metric) {
          case Metric::g: value = g_cont(f1, f2); break;
          case Metric::G: value = big_g_cont(f1, f2); break;
          case Metric::H: value = big_h_cont(f1, f2); break;
          case Metric::K: value = big_k_cont(f1, f2); break;
        }
      } else {
        const auto d1 = detail::load_discrete(file);
        const auto d2 = detail::align(detail::load_discrete(file2), d1.labels());
        value = distance(metric, d1, d2);
      }
      out << fmt(value) << "\n";
    } else if (*rearrange_cmd) {
      const auto f = detail::load_piecewise(file);
      const auto rearranged = descending_rearrangement(f);
      io::write_file(out_file, io::serialize(rearranged, {{"name", "descending rearrangement"}}));
      if (!csv_file.empty()) io::emit_csv(sample_curve(rearranged, samples), csv_file);
    } else if (*approx_cmd) {
      const auto f = detail::load_piecewise(file);
      std::vector<std::size_t> ns;
      std::stringstream ss(n_list);
      for (std::string item; std::getline(ss, item, ',');) {
        std::size_t pos = 0;
        unsigned long long n = 0;
        try {
          n = std::stoull(item, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != item.size() || item.empty() || n == 0) {
          err << "error: usage: --n expects positive integers, got '" << item << "'\n";
          return 1;
        }
        ns.push_back(static_cast<std::size_t>(n));
      }
      const auto series = convergence_series(f, ns, grid == "right" ? SampleGrid::right : SampleGrid::left);
      io::emit_csv(series, csv_file);
      for (const auto& e : series.entries) {
        out << e.n << " " << fmt(e.u_value) << " " << fmt(e.approx_info) << "\n";
      }
    } else if (*infer_cmd) {
      const auto problem = io::parse_problem(io::read_file(file));
      const auto solution = solve(problem);
      io::write_file(out_file, io::serialize(solution, problem));
      out << fmt(solution.objective_value) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.category()) << ": " << e.what() << "\n";
    switch (e.category()) {
      case ErrorCategory::usage: return 1;
      case ErrorCategory::data: return 2;
      case ErrorCategory::math: return 3;
    }
  } catch (const std::exception& e) {
    err << "error: data: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace possibility::cli
