#pragma once

// Command-line front end. Kept in a header so tests can drive run_cli
// in-process with captured streams.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sclqm/sclqm.hpp"

namespace sclqm::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_usage = 2,
  exit_hypothesis = 3,
  exit_limit = 4,
  exit_internal = 5,
};

inline int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_input:
      return exit_usage;
    case ErrorCategory::hypothesis_violation:
      return exit_hypothesis;
    case ErrorCategory::limit_exceeded:
      return exit_limit;
    case ErrorCategory::internal:
      return exit_internal;
  }
  return exit_internal;
}

inline std::size_t ball_cap_from_env() {
  if (const char* v = std::getenv("SCLQM_BALL_CAP")) {
    try {
      const auto cap = std::stoull(v);
      if (cap > 0) return cap;
    } catch (const std::exception&) {
    }
    throw InvalidInput(std::string("SCLQM_BALL_CAP must be a positive integer, got \"") + v + "\"");
  }
  return default_ball_cap;
}

inline Alphabet parse_group(const std::string& group) {
  const std::string prefix = "free:";
  if (group.rfind(prefix, 0) != 0) throw InvalidInput("--group must look like free:<rank>, got \"" + group + "\"");
  try {
    std::size_t used = 0;
    const int rank = std::stoi(group.substr(prefix.size()), &used);
    if (used == group.size() - prefix.size()) return Alphabet(rank);
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw InvalidInput("--group must look like free:<rank>, got \"" + group + "\"");
}

inline bool is_rational(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den");
}

inline std::string scalar_text(const Json& j) {
  if (is_rational(j)) {
    return to_string(Rational(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>()));
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

inline void render_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (is_rational(value) || !value.is_structured()) {
      out << indent << key << ": " << scalar_text(value) << "\n";
    } else if (value.is_array() &&
               std::all_of(value.begin(), value.end(), [](const Json& v) { return !v.is_structured(); })) {
      out << indent << key << ":";
      for (const auto& v : value) out << " " << scalar_text(v);
      out << "\n";
    } else {
      out << indent << key << ":\n";
      render_text(value, out, indent + "  ");
    }
  }
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& cells) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (is_rational(value) || !value.is_structured()) {
      cells.emplace_back(name, scalar_text(value));
    } else {
      flatten(value, name, cells);
    }
  }
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n ") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

inline void emit(const std::vector<Json>& records, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << (records.size() == 1 ? records.front() : Json(records)).dump(2) << "\n";
  } else if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> first;
    if (records.empty()) return;
    flatten(records.front(), "", first);
    for (std::size_t i = 0; i < first.size(); ++i) out << (i ? "," : "") << csv_escape(first[i].first);
    out << "\n";
    for (const auto& r : records) {
      std::vector<std::pair<std::string, std::string>> cells;
      flatten(r, "", cells);
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i].second);
      out << "\n";
    }
  } else {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (i) out << "\n";
      render_text(records[i], out);
    }
  }
}

struct Options {
  std::string group = "free:2";
  std::string format = "text";
  std::string spec;
  std::string pattern;
  std::vector<std::string> words;
  std::vector<std::string> excluded;
  std::string words_file;
  std::size_t radius = 0;
  std::int64_t n_max = 16;
  std::size_t max_pattern_length = 6;
};

inline std::vector<std::string> collect_words(const Options& o) {
  std::vector<std::string> words = o.words;
  if (!o.words_file.empty()) {
    std::ifstream in(o.words_file);
    if (!in) throw InvalidInput("cannot open words file \"" + o.words_file + "\"");
    for (std::string line; std::getline(in, line);) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      words.push_back(line.substr(start));
    }
  }
  if (words.empty()) throw InvalidInput("no words given (use --word or --words-file)");
  return words;
}

inline Json eval_record(const Options& o) {
  const Alphabet alphabet = parse_group(o.group);
  const BrooksPattern p(parse_word(o.pattern, alphabet));
  Json rows = Json::array();
  for (const auto& text : collect_words(o)) {
    const FreeWord g = parse_word(text, alphabet);
    rows.push_back(Json{{"word", to_string(g)},
                        {"count", counting_value(p, g)},
                        {"inverse_count", count_copies(g, p.inverse_word())},
                        {"h", small_qm(p, g)}});
  }
  return Json{{"verb", "eval"}, {"group", o.group}, {"pattern", to_string(p.word())}, {"values", rows}};
}

inline Json homogenize_record(const Options& o) {
  const Alphabet alphabet = parse_group(o.group);
  const BrooksPattern p(parse_word(o.pattern, alphabet));
  Json rows = Json::array();
  for (const auto& text : collect_words(o)) {
    const FreeWord g = parse_word(text, alphabet);
    rows.push_back(Json{{"word", to_string(g)},
                        {"translation_length", translation_length(g)},
                        {"hbar", rational_json(homogeneous_value(p, g))}});
  }
  return Json{{"verb", "homogenize"}, {"group", o.group}, {"pattern", to_string(p.word())}, {"values", rows}};
}

inline Json defect_record(const Options& o) {
  const Alphabet alphabet = parse_group(o.group);
  const BrooksPattern p(parse_word(o.pattern, alphabet));
  const std::size_t radius = o.radius ? o.radius : 4;
  return Json{
      {"verb", "defect"},
      {"group", o.group},
      {"pattern", to_string(p.word())},
      {"radius", radius},
      {"defect_lower_bound", defect_lower_bound(p, alphabet, radius, ball_cap_from_env())},
      {"certified_defect_upper", rational_json(certified_defect_upper(p))},
      {"homogenized_defect_upper", rational_json(homogenized_defect_upper(p))},
      {"quasigeodesic_K", rational_json(p.multiplicative_constant())},
      {"quasigeodesic_eps", rational_json(p.additive_constant())},
  };
}

inline Json descriptor_record(const std::string& verb, const Options& o, const QmDescriptor& d,
                              const FreeWord& a, const std::vector<FreeWord>& others) {
  Json values = Json::object();
  values[to_string(a)] = rational_json(d.value(a));
  for (const auto& e : others) values[to_string(e)] = rational_json(d.value(e));
  return Json{
      {"verb", verb},
      {"group", o.group},
      {"descriptor", descriptor_json(d)},
      {"values", values},
      {"scl_lower", rational_json(bavard_lower(d.value(a), d.defect_upper))},
  };
}

inline Json gap_record(const Options& o) {
  const Alphabet alphabet = parse_group(o.group);
  const auto words = collect_words(o);
  if (words.size() != 1) throw InvalidInput("gap takes exactly one --word");
  const FreeWord a = parse_word(words.front(), alphabet);
  return descriptor_record("gap", o, gap_qm(a), a, {});
}

inline Json separate_record(const Options& o) {
  const Alphabet alphabet = parse_group(o.group);
  const auto words = collect_words(o);
  if (words.size() != 1) throw InvalidInput("separate takes exactly one --word");
  const FreeWord a = parse_word(words.front(), alphabet);
  std::vector<FreeWord> others;
  for (const auto& e : o.excluded) others.push_back(parse_word(e, alphabet));
  return descriptor_record("separate", o, separating_qm(a, others), a, others);
}

inline std::vector<SclReport> scl_reports(const Options& o) {
  SclOptions options;
  options.ball_cap = ball_cap_from_env();
  options.max_pattern_length = o.max_pattern_length;
  options.n_max = o.n_max;
  if (o.radius) options.genus_radius = o.radius;
  std::vector<SclReport> reports;
  if (!o.spec.empty()) {
    const Amalgam g = load_amalgam_spec(o.spec);
    for (const auto& text : collect_words(o)) {
      reports.push_back(scl_report(g, parse_amalgam_word(text, g), options));
      reports.back().group = "amalgam:" + o.spec;
    }
  } else {
    const Alphabet alphabet = parse_group(o.group);
    for (const auto& text : collect_words(o)) reports.push_back(scl_report(parse_word(text, alphabet), alphabet, options));
  }
  return reports;
}

inline AmalgamWord single_amalgam_word(const Options& o, const Amalgam& g) {
  const auto words = collect_words(o);
  if (words.size() != 1) throw InvalidInput("expected exactly one --word");
  return parse_amalgam_word(words.front(), g);
}

inline Json amalgam_check_record(const Options& o, bool& holds) {
  const Amalgam g = load_amalgam_spec(o.spec);
  const AmalgamWord w = single_amalgam_word(o, g);
  const DoubleCosetResult r = g.double_coset_condition(w);
  holds = r.holds;
  Json out{{"verb", "amalgam-check"}, {"spec", o.spec}, {"word", to_string(w)}, {"double_coset", double_coset_json(r)}};
  if (auto m = g.mirror_check(w, 4)) out["mirror_witness"] = mirror_json(*m);
  return out;
}

inline Json amalgam_eval_record(const Options& o) {
  const Amalgam g = load_amalgam_spec(o.spec);
  const AmalgamWord w = parse_amalgam_word(o.pattern, g);
  Json rows = Json::array();
  for (const auto& text : collect_words(o)) {
    const AmalgamWord x = parse_amalgam_word(text, g);
    rows.push_back(Json{{"word", to_string(g.reduce(x))},
                        {"count", g.counting_value(w, x)},
                        {"inverse_count", g.counting_value(g.inverse_word(w), x)},
                        {"h", g.quasimorphism(w, x)},
                        {"hbar_bracket", interval_json(g.homogeneous_interval(w, x, o.n_max))}});
  }
  return Json{{"verb", "amalgam-eval"}, {"spec", o.spec}, {"pattern", to_string(w)}, {"n_max", o.n_max}, {"values", rows}};
}

inline Json amalgam_cert_record(const Options& o) {
  const Amalgam g = load_amalgam_spec(o.spec);
  const AmalgamWord w = single_amalgam_word(o, g);
  const AmalgamCertificate c = certify_scl_lower(g, w, 8, o.n_max);
  std::size_t radius = o.radius ? o.radius : 4;
  return Json{{"verb", "amalgam-cert"},
              {"spec", o.spec},
              {"certificate", certificate_json(c)},
              {"empirical_defect_radius", radius},
              {"empirical_defect", g.defect_lower_bound(w, radius, ball_cap_from_env())}};
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting quasimorphisms and certified scl bounds"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--word,-w", o.words, "element(s) to process");
    sub->add_option("--words-file", o.words_file, "file with one word per line");
  };
  auto add_free = [&](CLI::App* sub) { sub->add_option("--group,-g", o.group, "free:<rank>"); };
  auto add_spec = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--spec", o.spec, "amalgam spec file");
    if (required) opt->required();
  };

  auto* eval = app.add_subcommand("eval", "counting function c_w and h_w = c_w - c_{w^-1}");
  auto* homogenize = app.add_subcommand("homogenize", "exact homogenization of h_w");
  auto* defect = app.add_subcommand("defect", "enumerated and certified defect of h_w");
  auto* gap = app.add_subcommand("gap", "quasimorphism with value 1 at the word");
  auto* separate = app.add_subcommand("separate", "quasimorphism with value 1 at the word, 0 at exclusions");
  auto* scl = app.add_subcommand("scl-report", "certified scl bounds");
  auto* check = app.add_subcommand("amalgam-check", "double coset condition in an amalgam");
  auto* aeval = app.add_subcommand("amalgam-eval", "counting quasimorphism in an amalgam");
  auto* cert = app.add_subcommand("amalgam-cert", "scl >= 1/624 certificate in an amalgam");

  for (auto* sub : {eval, homogenize, defect, gap, separate, scl, check, aeval, cert}) add_common(sub);
  for (auto* sub : {eval, homogenize, defect, gap, separate, scl}) add_free(sub);
  for (auto* sub : {eval, homogenize, defect}) sub->add_option("--pattern,-p", o.pattern, "pattern word")->required();
  aeval->add_option("--pattern,-p", o.pattern, "pattern word, e.g. \"A:1 B:1\"")->required();
  add_spec(scl, false);
  for (auto* sub : {check, aeval, cert}) add_spec(sub, true);
  defect->add_option("--radius,-r", o.radius, "ball radius (default 4)");
  scl->add_option("--radius,-r", o.radius, "genus-one search radius (default 4)");
  scl->add_option("--max-pattern-length", o.max_pattern_length, "longest candidate pattern");
  cert->add_option("--radius,-r", o.radius, "radius of the empirical defect ball (default 4)");
  separate->add_option("--exclude,-x", o.excluded, "element(s) to vanish on");
  for (auto* sub : {scl, aeval, cert}) sub->add_option("--n-max", o.n_max, "power used for homogenization brackets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    std::vector<Json> records;
    int status = exit_ok;
    if (eval->parsed()) {
      records.push_back(eval_record(o));
    } else if (homogenize->parsed()) {
      records.push_back(homogenize_record(o));
    } else if (defect->parsed()) {
      records.push_back(defect_record(o));
    } else if (gap->parsed()) {
      records.push_back(gap_record(o));
    } else if (separate->parsed()) {
      records.push_back(separate_record(o));
    } else if (scl->parsed()) {
      const auto reports = scl_reports(o);
      if (o.format == "csv") {
        out << csv_header() << "\n";
        for (const auto& r : reports) out << csv_row(r) << "\n";
        return exit_ok;
      }
      for (const auto& r : reports) records.push_back(report_json(r));
    } else if (check->parsed()) {
      bool holds = true;
      records.push_back(amalgam_check_record(o, holds));
      if (!holds) status = exit_check_failed;
    } else if (aeval->parsed()) {
      records.push_back(amalgam_eval_record(o));
    } else if (cert->parsed()) {
      records.push_back(amalgam_cert_record(o));
    }
    emit(records, o.format, out);
    return status;
  } catch (const Error& e) {
    if (o.format == "json") {
      out << Json{{"error", {{"category", category_name(e.category())}, {"message", e.what()}}}}.dump(2) << "\n";
    }
    err << "error [" << category_name(e.category()) << "]: " << e.what() << "\n";
    return exit_code_for(e.category());
  }
}

}  // namespace sclqm::cli
