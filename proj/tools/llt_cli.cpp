// Command-line driver: single-shot statistics, n-grid sweeps and the proof
// decomposition for one window.
//
// Exit codes: 0 ok, 2 usage or malformed input, 3 resource limit.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "llt/convolve.hpp"
#include "llt/error.hpp"
#include "llt/families.hpp"
#include "llt/limit_law.hpp"
#include "llt/llt_stats.hpp"
#include "llt/report_io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::vector<std::int64_t> parse_int_list(const std::string &text, const std::string &what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != item.size()) {
      throw llt::InvalidArgument(what + ": '" + item + "' is not an integer");
    }
    out.push_back(value);
  }
  return out;
}

std::set<std::int64_t> parse_moduli(const std::string &text) {
  std::set<std::int64_t> moduli;
  for (const auto d : parse_int_list(text, "--mod")) {
    if (d < 1) {
      throw llt::InvalidArgument("--mod: moduli must be positive");
    }
    moduli.insert(d);
  }
  return moduli;
}

llt::FamilySpec load_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw llt::InvalidArgument("--spec: cannot read '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return llt::parse_family_spec(buf.str());
}

llt::ConvolveOptions options_from_env() {
  llt::ConvolveOptions options;
  if (const char *cap = std::getenv("LLT_MAX_SUPPORT")) {
    const auto values = parse_int_list(cap, "LLT_MAX_SUPPORT");
    if (values.size() != 1 || values.front() < 1) {
      throw llt::InvalidArgument("LLT_MAX_SUPPORT must be a positive integer");
    }
    options.max_support = static_cast<std::size_t>(values.front());
  }
  return options;
}

llt::LltReport report_for(const llt::FamilySpec &spec, const llt::LimitLaw &law,
                          const std::set<std::int64_t> &moduli,
                          const llt::ConvolveOptions &options) {
  const auto pmf = llt::sum_law(spec, options);
  return llt::full_report(pmf, law, moduli, static_cast<std::int64_t>(spec.n));
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact lattice sum laws and local limit theorem diagnostics"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string law_name = "normal";
  std::string moduli_text;
  bool compact_json = false;
  auto *stats = app.add_subcommand("stats", "Print the statistics report for one spec as JSON");
  stats->add_option("--spec", spec_path, "Family spec JSON file")->required();
  stats->add_option("--law", law_name, "Limit law")->capture_default_str();
  stats->add_option("--mod", moduli_text, "Comma-separated moduli for mod_dev, e.g. 2,3");
  stats->add_flag("--json", compact_json, "Single-line JSON output");

  std::string n_text;
  std::string out_path;
  std::string plot_path;
  auto *sweep = app.add_subcommand("sweep", "Write one CSV row per n");
  sweep->add_option("--spec", spec_path, "Family spec JSON file")->required();
  sweep->add_option("--n", n_text, "Comma-separated ascending list of n")->required();
  sweep->add_option("--out", out_path, "CSV output file")->required();
  sweep->add_option("--plot", plot_path, "Optional SVG chart output");
  sweep->add_option("--law", law_name, "Limit law")->capture_default_str();
  sweep->add_option("--mod", moduli_text, "Comma-separated moduli for mod_dev columns");

  std::int64_t m = 0;
  std::int64_t v = 1;
  auto *decompose = app.add_subcommand("decompose", "Print the window decomposition at (m, v)");
  decompose->add_option("--spec", spec_path, "Family spec JSON file")->required();
  decompose->add_option("--m", m, "Window start")->required();
  decompose->add_option("--v", v, "Window length (>= 1)")->required();
  decompose->add_option("--law", law_name, "Limit law")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto law = llt::law_by_name(law_name);
    const auto options = options_from_env();
    const auto spec = load_spec(spec_path);

    if (*stats) {
      const auto report = report_for(spec, *law, parse_moduli(moduli_text), options);
      std::cout << llt::report_to_json(report).dump(compact_json ? -1 : 2) << '\n';
    } else if (*sweep) {
      const auto ns = parse_int_list(n_text, "--n");
      if (ns.empty()) {
        throw llt::InvalidArgument("--n: the list of n must not be empty");
      }
      for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1 || (i > 0 && ns[i] <= ns[i - 1])) {
          throw llt::InvalidArgument("--n: values must be positive and strictly ascending");
        }
      }
      const auto moduli = parse_moduli(moduli_text);
      std::vector<std::future<llt::LltReport>> pending;
      pending.reserve(ns.size());
      for (const auto n : ns) {
        pending.push_back(std::async(std::launch::async, [&, n] {
          return report_for(llt::with_n(spec, static_cast<std::size_t>(n)), *law, moduli, options);
        }));
      }
      std::vector<llt::LltReport> rows;
      rows.reserve(ns.size());
      for (auto &f : pending) {
        rows.push_back(f.get());
      }
      std::ofstream csv(out_path, std::ios::binary);
      if (!csv) {
        throw llt::InvalidArgument("--out: cannot write '" + out_path + "'");
      }
      llt::write_sweep_csv(csv, rows, moduli);
      if (!plot_path.empty()) {
        std::ofstream svg(plot_path, std::ios::binary);
        if (!svg) {
          throw llt::InvalidArgument("--plot: cannot write '" + plot_path + "'");
        }
        svg << llt::render_sweep_svg(rows);
      }
    } else if (*decompose) {
      if (v < 1) {
        throw llt::InvalidArgument("--v: window length must be at least 1");
      }
      const auto pmf = llt::sum_law(spec, options);
      const auto norm = llt::mean_and_std(pmf);
      const auto d = llt::proof_decomposition(pmf, norm, *law, m, v);
      std::cout << llt::decomposition_to_json(d).dump(2) << '\n';
    }
  } catch (const llt::SupportOverflow &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const llt::InvalidArgument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::bad_alloc &) {
    std::cerr << "error: out of memory\n";
    return kExitResource;
  }
  return 0;
}
