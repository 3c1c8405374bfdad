#pragma once

// JSON, CSV and text forms of census reports, Monte Carlo estimates and
// matching lists. JSON key order is fixed (insertion order).

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "grassknot/census.hpp"
#include "grassknot/matching.hpp"
#include "grassknot/numeric.hpp"

namespace grassknot {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& r) {
  Json j;
  j["num"] = to_int64(numerator_of(r));
  j["den"] = to_int64(denominator_of(r));
  return j;
}

inline Rational rational_from_json(const Json& j) {
  return make_rational(BigInt(j.at("num").get<std::int64_t>()), BigInt(j.at("den").get<std::int64_t>()));
}

inline Json pair_to_json(const PairReport& p) {
  Json j;
  j["top"] = p.top.to_string();
  j["bottom"] = p.bottom.to_string();
  if (p.labels) {
    j["top_label"] = std::string(label_name((*p.labels)[0]));
    j["bottom_label"] = std::string(label_name((*p.labels)[1]));
  } else {
    j["top_label"] = nullptr;
    j["bottom_label"] = nullptr;
  }
  j["connected"] = p.connected;
  j["component_count"] = p.component_count;
  j["total_crossings"] = p.total_crossings;
  Json counts = Json::object();
  for (KnotTag t : kAllTags) counts[std::string(tag_name(t))] = count_of(p.class_counts, t);
  j["class_counts"] = counts;
  j["unknot_fraction"] = rational_to_json(p.unknot_fraction);
  return j;
}

inline PairReport pair_from_json(const Json& j, int n) {
  PairReport p;
  p.top = parse_matching(j.at("top").get<std::string>(), n);
  p.bottom = parse_matching(j.at("bottom").get<std::string>(), n);
  if (!j.at("top_label").is_null()) {
    const auto a = parse_label(j.at("top_label").get<std::string>());
    const auto b = parse_label(j.at("bottom_label").get<std::string>());
    if (!a || !b) throw std::invalid_argument("unknown taxonomy label in JSON");
    p.labels = std::array<Label, 2>{*a, *b};
  }
  p.connected = j.at("connected").get<bool>();
  p.component_count = j.at("component_count").get<int>();
  p.total_crossings = j.at("total_crossings").get<int>();
  for (KnotTag t : kAllTags) count_of(p.class_counts, t) = j.at("class_counts").at(std::string(tag_name(t))).get<std::uint64_t>();
  p.unknot_fraction = rational_from_json(j.at("unknot_fraction"));
  return p;
}

inline Json census_to_json(const CensusReport& r) {
  Json j;
  j["n"] = r.n;
  j["blades"] = 2 * r.n;
  j["total_pairs"] = r.total_pairs;
  j["connected_pairs"] = r.connected_pairs;
  j["split_pairs"] = r.split_pairs;
  j["model"] = r.model;
  const Probabilities& p = r.probabilities;
  Json probs;
  probs["split"] = rational_to_json(p.split);
  probs["ring"] = rational_to_json(p.ring);
  probs["trefoil"] = rational_to_json(p.trefoil);
  probs["figure_eight"] = rational_to_json(p.figure_eight);
  probs["other"] = rational_to_json(p.other);
  probs["trefoil_left"] = rational_to_json(p.trefoil_left);
  probs["trefoil_right"] = rational_to_json(p.trefoil_right);
  j["probabilities"] = probs;
  Json cmp;
  cmp["p_connected"] = rational_to_json(r.p_connected);
  cmp["book_answer"] = r.book_answer ? rational_to_json(*r.book_answer) : Json(nullptr);
  j["comparison"] = cmp;
  Json pairs = Json::array();
  for (const auto& pr : r.pairs) pairs.push_back(pair_to_json(pr));
  j["pairs"] = pairs;
  return j;
}

inline CensusReport census_from_json(const Json& j) {
  CensusReport r;
  r.n = j.at("n").get<int>();
  r.total_pairs = j.at("total_pairs").get<std::uint64_t>();
  r.connected_pairs = j.at("connected_pairs").get<std::uint64_t>();
  r.split_pairs = j.at("split_pairs").get<std::uint64_t>();
  r.model = j.at("model").get<std::string>();
  const Json& probs = j.at("probabilities");
  Probabilities& p = r.probabilities;
  p.split = rational_from_json(probs.at("split"));
  p.ring = rational_from_json(probs.at("ring"));
  p.trefoil = rational_from_json(probs.at("trefoil"));
  p.figure_eight = rational_from_json(probs.at("figure_eight"));
  p.other = rational_from_json(probs.at("other"));
  p.trefoil_left = rational_from_json(probs.at("trefoil_left"));
  p.trefoil_right = rational_from_json(probs.at("trefoil_right"));
  const Json& cmp = j.at("comparison");
  r.p_connected = rational_from_json(cmp.at("p_connected"));
  if (!cmp.at("book_answer").is_null()) r.book_answer = rational_from_json(cmp.at("book_answer"));
  for (const auto& pj : j.at("pairs")) r.pairs.push_back(pair_from_json(pj, r.n));
  return r;
}

inline std::string census_json(const CensusReport& r) { return census_to_json(r).dump() + "\n"; }

inline CensusReport parse_census_json(const std::string& text) { return census_from_json(Json::parse(text)); }

inline constexpr std::string_view kCensusCsvHeader =
    "top_label,bottom_label,top,bottom,connected,component_count,total_crossings,"
    "split_link,unknot,trefoil_left,trefoil_right,figure_eight,other,unknot_fraction";

/// One row per ordered pair; matchings are quoted because they contain commas.
inline std::string census_csv(const CensusReport& r) {
  std::ostringstream out;
  out << kCensusCsvHeader << '\n';
  for (const auto& p : r.pairs) {
    out << (p.labels ? label_name((*p.labels)[0]) : "") << ',' << (p.labels ? label_name((*p.labels)[1]) : "") << ",\""
        << p.top.to_string() << "\",\"" << p.bottom.to_string() << "\"," << (p.connected ? "true" : "false") << ','
        << p.component_count << ',' << p.total_crossings;
    for (KnotTag t : kAllTags) out << ',' << count_of(p.class_counts, t);
    out << ',' << to_string(p.unknot_fraction) << '\n';
  }
  return out.str();
}

inline std::string fraction_line(std::string_view name, const Rational& v, std::size_t width = 15) {
  std::string head(name);
  if (head.size() < width) head.append(width - head.size(), ' ');
  return head + "= " + to_string(v) + "  (" + to_decimal(v) + ")\n";
}

inline std::string probability_summary(const CensusReport& r) {
  const Probabilities& p = r.probabilities;
  std::string out;
  out += "model: " + r.model + "\n";
  out += "blades: " + std::to_string(2 * r.n) + "\n";
  out += fraction_line("p_split", p.split);
  out += fraction_line("p_ring", p.ring);
  out += fraction_line("p_trefoil", p.trefoil);
  out += fraction_line("p_trefoil_left", p.trefoil_left);
  out += fraction_line("p_trefoil_right", p.trefoil_right);
  out += fraction_line("p_figure_eight", p.figure_eight);
  out += fraction_line("p_other", p.other);
  out += fraction_line("p_connected", r.p_connected);
  if (r.book_answer) out += fraction_line("book_answer", *r.book_answer);
  return out;
}

inline std::string census_text(const CensusReport& r) {
  std::ostringstream out;
  out << "total_pairs=" << r.total_pairs << " connected_pairs=" << r.connected_pairs
      << " split_pairs=" << r.split_pairs << '\n';
  out << probability_summary(r);
  out << "pairs:\n";
  for (const auto& p : r.pairs) {
    out << "  ";
    if (p.labels) out << label_name((*p.labels)[0]) << ' ' << label_name((*p.labels)[1]) << ' ';
    out << p.top.to_string() << " | " << p.bottom.to_string() << " components=" << p.component_count
        << " crossings=" << p.total_crossings;
    for (KnotTag t : kAllTags)
      if (count_of(p.class_counts, t) != 0) out << ' ' << tag_name(t) << ':' << count_of(p.class_counts, t);
    out << '\n';
  }
  return out.str();
}

inline Json mc_to_json(const McEstimate& e) {
  Json j;
  j["n"] = e.n;
  j["blades"] = 2 * e.n;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  Json classes;
  for (KnotTag t : kAllTags) {
    Json c;
    c["hits"] = count_of(e.hits, t);
    c["estimate"] = e.estimate(t);
    c["standard_error"] = e.standard_error(t);
    classes[std::string(tag_name(t))] = c;
  }
  j["classes"] = classes;
  return j;
}

inline std::string mc_text(const McEstimate& e) {
  std::ostringstream out;
  out << "blades=" << 2 * e.n << " samples=" << e.samples << " seed=" << e.seed << '\n';
  char buf[128];
  for (KnotTag t : kAllTags) {
    std::snprintf(buf, sizeof buf, "%-14s hits=%-10llu estimate=%.12g se=%.6g\n", std::string(tag_name(t)).c_str(),
                  static_cast<unsigned long long>(count_of(e.hits, t)), e.estimate(t), e.standard_error(t));
    out << buf;
  }
  return out.str();
}

enum class ListFormat { Text, Csv, Json };

inline ListFormat parse_list_format(std::string_view s) {
  if (s == "text") return ListFormat::Text;
  if (s == "csv") return ListFormat::Csv;
  if (s == "json") return ListFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

inline std::string matchings_listing(int n, ListFormat format) {
  const auto all = enumerate_matchings(n);
  auto label = [&](const Matching& m) { return n == 3 ? std::string(label_name(taxonomy_label(m))) : std::string(); };
  if (format == ListFormat::Json) {
    Json arr = Json::array();
    for (const auto& m : all) {
      Json j;
      j["label"] = n == 3 ? Json(label(m)) : Json(nullptr);
      j["pairs"] = m.to_string();
      j["crossings"] = crossing_count(m);
      arr.push_back(j);
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ListFormat::Csv) {
    out << "label,pairs\n";
    for (const auto& m : all) out << label(m) << ",\"" << m.to_string() << "\"\n";
    return out.str();
  }
  for (const auto& m : all) {
    if (n == 3) out << label(m) << (label(m).size() == 1 ? "   " : "  ");
    out << m.to_string() << "  crossings=" << crossing_count(m) << '\n';
  }
  out << all.size() << " matchings\n";
  return out.str();
}

}  // namespace grassknot
