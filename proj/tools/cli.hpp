#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes to the given streams, so tests can drive it directly.
//
// Exit codes: 0 success, 2 usage error, 1 internal inconsistency.

#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "grassknot/census.hpp"
#include "grassknot/diagram.hpp"
#include "grassknot/invariants.hpp"
#include "grassknot/matching.hpp"
#include "grassknot/render.hpp"
#include "grassknot/serialize.hpp"

namespace grassknot::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline int pairs_from_blades(int blades) {
  if (blades < 2 || blades % 2 != 0) throw UsageError("--blades must be a positive even number");
  return blades / 2;
}

inline int resolve_threads(int threads) {
  if (threads < 0) throw UsageError("--threads must be non-negative");
  if (threads == 0) return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  return threads;
}

/// Pair list, matrix form, or (six blades) a taxonomy label such as "C1".
inline Matching read_matching(const std::string& text, int n) {
  if (n == 3)
    if (auto l = parse_label(text)) return taxonomy_matching(*l);
  return parse_matching(text, n);
}

inline std::string signed_int(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

inline void explain(const LinkDiagram& d, std::ostream& out) {
  out << "crossing order (bit i of --signs is crossing i; 1 = first chord over):\n";
  for (int i = 0; i < d.total_crossings(); ++i) {
    const auto& c = d.crossings()[i];
    out << "  " << i << ": " << side_name(c.side) << ' ' << c.chord_a.lo << '-' << c.chord_a.hi << " x "
        << c.chord_b.lo << '-' << c.chord_b.hi << " at x=" << to_string(c.x) << " level=" << c.level
        << " sign_if_first_over=" << signed_int(c.sign_if_a_over()) << '\n';
  }
}

}  // namespace detail

inline constexpr const char* kCensusCsvHelp =
    "CSV columns: top_label,bottom_label,top,bottom,connected,component_count,total_crossings,"
    "split_link,unknot,trefoil_left,trefoil_right,figure_eight,other,unknot_fraction. "
    "Table CSV columns: top,bottom,cell,unknot,trefoil,figure_eight.";

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tie the ends of a bundle of blades of grass and ask what comes out.", "grassknot"};
  app.require_subcommand(1, 1);
  app.footer(kCensusCsvHelp);

  int blades = 6;
  std::string format = "text";
  int threads = 1;
  int cap = kDefaultCrossingCap;

  auto* enumerate = app.add_subcommand("enumerate", "list the perfect matchings of the endpoints");
  enumerate->add_option("--blades", blades, "number of blades (even)")->capture_default_str();
  enumerate->add_option("--format", format, "text | csv | json")->capture_default_str();

  std::string top_text, bottom_text, signs_text;
  bool explain = false;
  auto* classify_cmd = app.add_subcommand("classify", "classify one tied configuration");
  classify_cmd->add_option("--blades", blades, "number of blades (even)")->capture_default_str();
  classify_cmd->add_option("--top", top_text, "top matching, e.g. 12,34,56")->required();
  classify_cmd->add_option("--bottom", bottom_text, "bottom matching")->required();
  auto* signs_opt = classify_cmd->add_option("--signs", signs_text, "over/under bitstring in crossing order");
  classify_cmd->add_flag("--explain", explain, "print the crossing order");
  classify_cmd->add_option("--cap", cap, "crossing cap for exact mode")->capture_default_str();

  auto* census_cmd = app.add_subcommand("census", "exhaustive census of all tied configurations");
  census_cmd->add_option("--blades", blades, "number of blades (even, at most 8)")->capture_default_str();
  census_cmd->add_option("--format", format, "text | json | csv")->capture_default_str();
  census_cmd->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  census_cmd->add_option("--cap", cap, "crossing cap for exact mode")->capture_default_str();
  census_cmd->footer(kCensusCsvHelp);

  auto* prob_cmd = app.add_subcommand("prob", "exact outcome probabilities");
  prob_cmd->add_option("--blades", blades, "number of blades (even, at most 8)")->capture_default_str();
  prob_cmd->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();

  auto* table_cmd = app.add_subcommand("table", "connectivity grid over the six-blade labels");
  table_cmd->add_option("--blades", blades, "number of blades (must be 6)")->capture_default_str();
  table_cmd->add_option("--format", format, "text | csv")->capture_default_str();

  std::string svg_path;
  bool ascii = false;
  auto* render_cmd = app.add_subcommand("render", "draw a signed diagram");
  render_cmd->add_option("--blades", blades, "number of blades (even)")->capture_default_str();
  render_cmd->add_option("--top", top_text, "top matching")->required();
  render_cmd->add_option("--bottom", bottom_text, "bottom matching")->required();
  auto* render_signs = render_cmd->add_option("--signs", signs_text, "over/under bitstring in crossing order");
  render_cmd->add_option("--svg", svg_path, "write an SVG file");
  render_cmd->add_flag("--ascii", ascii, "print an ASCII drawing");

  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of the outcome probabilities");
  mc_cmd->add_option("--blades", blades, "number of blades (even)")->capture_default_str();
  mc_cmd->add_option("--samples", samples, "number of samples")->capture_default_str();
  mc_cmd->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  mc_cmd->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  mc_cmd->add_option("--format", format, "text | json")->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("grassknot");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  const bool have_signs = signs_opt->count() > 0 || render_signs->count() > 0;

  try {
    if (enumerate->parsed()) {
      out << matchings_listing(detail::pairs_from_blades(blades), parse_list_format(format));
    } else if (classify_cmd->parsed()) {
      const int n = detail::pairs_from_blades(blades);
      const Matching top = detail::read_matching(top_text, n);
      const Matching bottom = detail::read_matching(bottom_text, n);
      const TiedConfiguration config(top, bottom);
      auto d = std::make_shared<const LinkDiagram>(build_diagram(config));
      if (explain) detail::explain(*d, out);
      if (have_signs) {
        const SignedDiagram sd(d, SignAssignment::parse(signs_text));
        if (d->component_count() > 1) {
          out << "components=" << d->component_count() << " split crossings=" << d->total_crossings() << '\n';
        } else {
          const KnotClass k = classify(sd);
          out << "components=1 crossings=" << d->total_crossings() << " writhe=" << *sd.writhe() << '\n';
          out << "class=" << tag_name(k.tag) << " jones=" << k.jones->pretty()
              << " determinant=" << determinant(*k.jones) << '\n';
        }
      } else if (d->component_count() > 1) {
        out << "components=" << d->component_count() << " split crossings=" << d->total_crossings() << '\n';
      } else {
        const PairReport r = classify_pair(top, bottom, cap);
        out << "components=1 crossings=" << r.total_crossings << '\n';
        std::string line;
        for (KnotTag t : kAllTags)
          if (count_of(r.class_counts, t) != 0)
            line += (line.empty() ? "" : " ") + std::string(tag_name(t)) + ":" +
                    std::to_string(count_of(r.class_counts, t));
        out << line << '\n';
      }
    } else if (census_cmd->parsed()) {
      const CensusReport r = full_census(detail::pairs_from_blades(blades), {detail::resolve_threads(threads), cap});
      const ListFormat f = parse_list_format(format);
      if (f == ListFormat::Json)
        out << census_json(r);
      else if (f == ListFormat::Csv)
        out << census_csv(r);
      else
        out << census_text(r);
    } else if (prob_cmd->parsed()) {
      const CensusReport r = full_census(detail::pairs_from_blades(blades), {detail::resolve_threads(threads)});
      ring_probability(r);
      out << probability_summary(r);
    } else if (table_cmd->parsed()) {
      if (blades != 6) throw UsageError("the labelled table exists only for --blades 6");
      const CensusReport r = full_census(3);
      const ListFormat f = parse_list_format(format);
      if (f == ListFormat::Json) throw UsageError("table supports text and csv");
      out << (f == ListFormat::Csv ? connectivity_table_csv(r) : connectivity_table(r));
    } else if (render_cmd->parsed()) {
      if (svg_path.empty() && !ascii) throw UsageError("render needs --svg <file> or --ascii");
      const int n = detail::pairs_from_blades(blades);
      const TiedConfiguration config(detail::read_matching(top_text, n), detail::read_matching(bottom_text, n));
      auto d = std::make_shared<const LinkDiagram>(build_diagram(config));
      const SignedDiagram sd(d, SignAssignment::parse(signs_text));
      if (!svg_path.empty()) {
        std::ofstream file(svg_path, std::ios::binary);
        if (!file) throw UsageError("cannot open '" + svg_path + "' for writing");
        file << render_svg(sd);
        if (!file) throw UsageError("failed writing '" + svg_path + "'");
      }
      if (ascii) out << render_ascii(sd);
    } else if (mc_cmd->parsed()) {
      const McEstimate e =
          monte_carlo(detail::pairs_from_blades(blades), samples, seed, detail::resolve_threads(threads));
      const ListFormat f = parse_list_format(format);
      if (f == ListFormat::Csv) throw UsageError("mc supports text and json");
      out << (f == ListFormat::Json ? mc_to_json(e).dump(2) + "\n" : mc_text(e));
    }
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CrossingCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace grassknot::cli
