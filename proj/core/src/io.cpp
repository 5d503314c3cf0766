#include "sprank/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sprank/errors.hpp"

namespace sprank::io {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> to_count(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void check_shape(std::size_t n, std::size_t m) {
  // Validation lives in pattern_from_stars; an empty star list triggers it.
  (void)pattern_from_stars(n, m, {});
}

// Picks "# key: value" metadata out of a comment line; other comments are ignored.
void read_metadata(std::string_view body, PatternDocument& doc) {
  body = trim(body);
  auto take = [&](std::string_view key, std::optional<std::string>& slot) {
    if (body.starts_with(key) && !slot) {
      slot = std::string(trim(body.substr(key.size())));
    }
  };
  take("name:", doc.name);
  take("comment:", doc.comment);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

PatternDocument parse_text_document(std::istream& in, const WarningSink& warn) {
  PatternDocument meta{Format::text, pattern_from_stars(1, 1, {}), {}, {}};
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<Edge> stars;
  std::size_t rows_read = 0;
  std::size_t line_no = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      read_metadata(line.substr(1), meta);
      continue;
    }
    const auto tokens = tokenize(line);
    const std::size_t indent = raw.find_first_not_of(" \t");
    auto col = [indent](const Token& t) { return t.column + indent; };
    if (!shape) {
      if (tokens.size() != 2) {
        throw ParseError(line_no, 0, "expected header \"n m\"");
      }
      const auto n = to_count(tokens[0].text);
      const auto m = to_count(tokens[1].text);
      if (!n) throw ParseError(line_no, col(tokens[0]), "row count is not a number");
      if (!m) throw ParseError(line_no, col(tokens[1]), "column count is not a number");
      check_shape(*n, *m);
      shape = std::pair(*n, *m);
      continue;
    }
    const auto [n, m] = *shape;
    if (rows_read == n) {
      throw ParseError(line_no, col(tokens.front()),
                       "unexpected content after the last of " + std::to_string(n) + " rows");
    }
    if (tokens.size() != m) {
      throw ParseError(line_no, tokens.size() > m ? col(tokens[m]) : 0,
                       "row " + std::to_string(rows_read + 1) + " has " +
                           std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(m));
    }
    for (std::size_t j = 0; j < m; ++j) {
      const std::string_view t = tokens[j].text;
      if (t == "*") {
        stars.push_back({rows_read, j});
      } else if (t != "0" && t != ".") {
        throw ParseError(line_no, col(tokens[j]),
                         "unexpected entry \"" + std::string(t) + "\" (use *, 0 or .)");
      }
    }
    ++rows_read;
  }
  if (!shape) throw ParseError(line_no + 1, 0, "missing header \"n m\"");
  if (rows_read < shape->first) {
    throw ParseError(line_no + 1, 0,
                     "missing row " + std::to_string(rows_read + 1) + " of " +
                         std::to_string(shape->first));
  }
  meta.pattern = pattern_from_stars(shape->first, shape->second, stars, warn);
  return meta;
}

PatternDocument parse_json_document(std::istream& in, const WarningSink& warn) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(line, column, "invalid JSON");
  }
  if (!doc.is_object()) throw ParseError(1, 0, "top-level value must be an object");
  auto count = [&](const char* key) -> std::size_t {
    if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
      throw ParseError(1, 0, std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return doc[key].get<std::size_t>();
  };
  const std::size_t n = count("n");
  const std::size_t m = count("m");
  if (!doc.contains("stars") || !doc["stars"].is_array()) {
    throw ParseError(1, 0, "field \"stars\" must be an array");
  }
  std::vector<Edge> stars;
  for (const auto& item : doc["stars"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw ParseError(1, 0, "each star must be a [row, col] pair of integers");
    }
    const auto row = item[0].get<long long>();
    const auto col = item[1].get<long long>();
    if (row < 1 || col < 1) {
      throw OutOfRange("star (" + std::to_string(row) + "," + std::to_string(col) +
                       ") has a non-positive index");
    }
    stars.push_back({static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1)});
  }
  PatternDocument out{Format::json, pattern_from_stars(n, m, stars, warn), {}, {}};
  if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"].get<std::string>();
  if (doc.contains("comment") && doc["comment"].is_string()) {
    out.comment = doc["comment"].get<std::string>();
  }
  return out;
}

SparsityPattern parse_text(std::istream& in, const WarningSink& warn) {
  return parse_text_document(in, warn).pattern;
}

SparsityPattern parse_json(std::istream& in, const WarningSink& warn) {
  return parse_json_document(in, warn).pattern;
}

PatternDocument parse_document(std::istream& in, const WarningSink& warn) {
  in >> std::ws;
  if (in.peek() == '{') return parse_json_document(in, warn);
  return parse_text_document(in, warn);
}

std::string serialize_text(const PatternDocument& doc) {
  std::ostringstream out;
  if (doc.name) out << "# name: " << *doc.name << '\n';
  if (doc.comment) out << "# comment: " << *doc.comment << '\n';
  const SparsityPattern& p = doc.pattern;
  out << p.rows() << ' ' << p.cols() << '\n';
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      out << (j ? " " : "") << (p.has_star(i, j) ? '*' : '0');
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_json(const PatternDocument& doc) {
  ordered_json j;
  j["n"] = doc.pattern.rows();
  j["m"] = doc.pattern.cols();
  j["stars"] = ordered_json::array();
  for (const Edge& e : doc.pattern.stars()) j["stars"].push_back({e.left + 1, e.right + 1});
  if (doc.name) j["name"] = *doc.name;
  if (doc.comment) j["comment"] = *doc.comment;
  return j.dump() + "\n";
}

std::string serialize(const PatternDocument& doc) {
  return doc.format == Format::json ? serialize_json(doc) : serialize_text(doc);
}

std::string export_dot(const BipartiteGraph& g, std::span<const Matching> matchings) {
  std::map<Edge, std::size_t> colour;
  for (std::size_t k = 0; k < matchings.size(); ++k) {
    for (const Edge& e : matchings[k].edges()) {
      if (!g.has_edge(e)) {
        throw NotSubset("matching " + std::to_string(k + 1) + " uses non-edge " + to_string(e));
      }
      colour.try_emplace(e, k);
    }
  }
  const std::size_t palette = std::size(kDotPalette);
  std::ostringstream out;
  out << "graph G {\n";
  for (std::size_t i = 0; i < g.n_left(); ++i) out << "  a" << i + 1 << ";\n";
  for (std::size_t j = 0; j < g.n_right(); ++j) out << "  b" << j + 1 << ";\n";
  for (const Edge& e : g.edges()) {
    out << "  a" << e.left + 1 << " -- b" << e.right + 1;
    if (auto it = colour.find(e); it != colour.end()) {
      out << " [color=" << kDotPalette[it->second % palette] << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sprank::io
