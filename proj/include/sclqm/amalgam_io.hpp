#pragma once

// Text formats for amalgams.
//
// Spec files are line oriented. '#' starts a comment. Sections:
//
//   [group A]          [group B]          [group C]
//   order = n
//   table =
//   <n rows of n space-separated element indices>
//
//   [embed A]          [embed B]
//   <|C| image indices, whitespace separated, any number of lines>
//
// Words are whitespace-separated syllables "A:1 B:4 A:3"; the empty string
// is the identity.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sclqm/amalgam.hpp"
#include "sclqm/error.hpp"

namespace sclqm {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

inline int parse_index(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw InvalidInput("line " + std::to_string(line) + ": expected an integer, got \"" + token + "\"");
  }
  return value;
}

struct GroupSection {
  std::optional<int> order;
  bool in_table = false;
  std::vector<std::vector<int>> rows;
  std::size_t line = 0;
};

}  // namespace detail

inline Amalgam parse_amalgam_spec(std::istream& in) {
  std::map<std::string, detail::GroupSection> groups;
  std::map<std::string, std::vector<int>> embeds;
  std::map<std::string, std::size_t> embed_lines;
  std::string section;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const std::string text = detail::trim(std::string_view(raw).substr(0, raw.find('#')));
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') throw InvalidInput("line " + std::to_string(line) + ": unterminated section header");
      section = detail::trim(std::string_view(text).substr(1, text.size() - 2));
      if (section == "group A" || section == "group B" || section == "group C") {
        if (groups.count(section)) throw InvalidInput("line " + std::to_string(line) + ": duplicate section [" + section + "]");
        groups[section].line = line;
      } else if (section == "embed A" || section == "embed B") {
        if (embeds.count(section)) throw InvalidInput("line " + std::to_string(line) + ": duplicate section [" + section + "]");
        embeds[section];
        embed_lines[section] = line;
      } else {
        throw InvalidInput("line " + std::to_string(line) + ": unknown section [" + section + "]");
      }
      continue;
    }

    if (section.empty()) throw InvalidInput("line " + std::to_string(line) + ": content before any section");

    if (section.rfind("embed", 0) == 0) {
      std::istringstream tokens(text);
      for (std::string tok; tokens >> tok;) embeds[section].push_back(detail::parse_index(tok, line));
      continue;
    }

    auto& g = groups[section];
    if (const auto eq = text.find('='); eq != std::string::npos && !g.in_table) {
      const std::string key = detail::trim(std::string_view(text).substr(0, eq));
      const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
      if (key == "order") {
        g.order = detail::parse_index(value, line);
        if (*g.order < 1) throw InvalidInput("line " + std::to_string(line) + ": order must be positive");
      } else if (key == "table") {
        if (!g.order) throw InvalidInput("line " + std::to_string(line) + ": table given before order");
        if (!value.empty()) throw InvalidInput("line " + std::to_string(line) + ": table rows start on the next line");
        g.in_table = true;
      } else {
        throw InvalidInput("line " + std::to_string(line) + ": unknown key \"" + key + "\"");
      }
      continue;
    }
    if (!g.in_table) throw InvalidInput("line " + std::to_string(line) + ": expected \"order =\" or \"table =\"");
    std::vector<int> row;
    std::istringstream tokens(text);
    for (std::string tok; tokens >> tok;) row.push_back(detail::parse_index(tok, line));
    if (row.size() != static_cast<std::size_t>(*g.order)) {
      throw InvalidInput("line " + std::to_string(line) + ": row has " + std::to_string(row.size()) +
                         " entries, expected " + std::to_string(*g.order));
    }
    if (g.rows.size() == static_cast<std::size_t>(*g.order)) {
      throw InvalidInput("line " + std::to_string(line) + ": too many table rows in [" + section + "]");
    }
    g.rows.push_back(std::move(row));
  }

  auto table = [&](const std::string& name) {
    auto it = groups.find(name);
    if (it == groups.end()) throw InvalidInput("missing section [" + name + "]");
    const auto& g = it->second;
    if (!g.order || g.rows.size() != static_cast<std::size_t>(*g.order)) {
      throw InvalidInput("section [" + name + "] at line " + std::to_string(g.line) + ": incomplete table");
    }
    return FiniteGroupTable::from_rows(g.rows, name);
  };
  auto embedding = [&](const std::string& name) {
    auto it = embeds.find(name);
    if (it == embeds.end()) throw InvalidInput("missing section [" + name + "]");
    return it->second;
  };

  return Amalgam::validate(AmalgamSpec{
      table("group A"),
      table("group B"),
      table("group C"),
      embedding("embed A"),
      embedding("embed B"),
  });
}

inline Amalgam load_amalgam_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open spec file \"" + path + "\"");
  try {
    return parse_amalgam_spec(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline std::string format_amalgam_spec(const AmalgamSpec& spec) {
  std::ostringstream out;
  auto group = [&](const char* name, const FiniteGroupTable& g) {
    out << "[group " << name << "]\norder = " << g.order() << "\ntable =\n";
    for (const auto& row : g.rows()) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
      out << "\n";
    }
  };
  auto embed = [&](const char* name, const std::vector<int>& images) {
    out << "[embed " << name << "]\n";
    for (std::size_t i = 0; i < images.size(); ++i) out << (i ? " " : "") << images[i];
    out << "\n";
  };
  group("A", spec.a);
  group("B", spec.b);
  group("C", spec.c);
  embed("A", spec.embed_a);
  embed("B", spec.embed_b);
  return out.str();
}

inline AmalgamWord parse_amalgam_word(std::string_view text, const Amalgam& g) {
  AmalgamWord w;
  std::istringstream tokens{std::string(text)};
  for (std::string tok; tokens >> tok;) {
    if (tok.size() < 3 || (tok[0] != 'A' && tok[0] != 'B') || tok[1] != ':') {
      throw InvalidInput("malformed syllable \"" + tok + "\" (expected A:<index> or B:<index>)");
    }
    const Side side = tok[0] == 'A' ? Side::A : Side::B;
    std::size_t used = 0;
    int element = -1;
    try {
      element = std::stoi(tok.substr(2), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() - 2) throw InvalidInput("malformed syllable \"" + tok + "\"");
    w.push_back({side, element});
  }
  g.check_word(w);
  return w;
}

}  // namespace sclqm
