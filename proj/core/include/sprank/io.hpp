#pragma once

// Pattern file formats and DOT export.
//
// Text (.spm):
//   # comment lines start with '#'
//   # name: <text>        (optional metadata, first occurrence wins)
//   # comment: <text>
//   n m
//   * * 0 0 0             (n rows of m tokens; '*' is a star, '0' or '.' empty)
//
// JSON:
//   {"n": 2, "m": 3, "stars": [[1, 1], [1, 2]], "name": "...", "comment": "..."}
//
// Indices in both formats are 1-based.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank::io {

enum class Format { text, json };

struct PatternDocument {
  Format format = Format::text;
  SparsityPattern pattern;
  std::optional<std::string> name;
  std::optional<std::string> comment;
};

/// Throws ParseError for malformed input, ShapeError / OutOfRange for
/// patterns that fail validation.
PatternDocument parse_text_document(std::istream& in, const WarningSink& warn = {});
PatternDocument parse_json_document(std::istream& in, const WarningSink& warn = {});

SparsityPattern parse_text(std::istream& in, const WarningSink& warn = {});
SparsityPattern parse_json(std::istream& in, const WarningSink& warn = {});

/// JSON if the first non-blank character is '{', text otherwise.
PatternDocument parse_document(std::istream& in, const WarningSink& warn = {});

std::string serialize_text(const PatternDocument& doc);
std::string serialize_json(const PatternDocument& doc);
std::string serialize(const PatternDocument& doc);

/// Colour cycle used for matchings in DOT output.
inline constexpr std::string_view kDotPalette[] = {
    "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan",
};

/// Undirected DOT graph with left nodes a1..an and right nodes b1..bm. Edges
/// are written in sorted order; the edges of matching k get palette colour
/// k mod |palette|. Throws NotSubset if a matching uses a non-edge.
std::string export_dot(const BipartiteGraph& g, std::span<const Matching> matchings = {});

}  // namespace sprank::io
