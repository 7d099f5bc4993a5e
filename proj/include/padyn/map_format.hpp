#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padyn/word.hpp"

namespace padyn {

/// Field-independent description of one factor; scalars are kept as literals
/// so the same description can be instantiated over several primes.
struct FactorDesc {
  enum class Kind { Henon, Triangular, Affine };
  struct Term {
    std::string coef;
    std::vector<unsigned> exp;
  };

  Kind kind = Kind::Henon;
  bool inverse = false;
  std::string a;                              // henon
  std::vector<std::string> poly;              // henon, low to high
  std::vector<std::string> a_list;            // triangular
  std::vector<std::vector<Term>> F;           // triangular
  std::vector<std::vector<std::string>> matrix;  // affine
  std::vector<std::string> translation;       // affine
};

struct MapDescription {
  std::uint64_t prime = 0;
  unsigned extension_degree = 1;
  unsigned precision = 0;
  std::vector<std::uint64_t> modulus;  // empty: default
  unsigned dimension = 2;
  std::vector<FactorDesc> factors;
  std::vector<FactorDesc> conjugator;
  std::vector<std::vector<std::string>> rational_points;

  /// Field of the description, optionally overriding prime and precision.
  FieldSpec field(std::optional<std::uint64_t> prime = {}, std::optional<unsigned> precision = {}) const;
};

/// A document holds one map object or an array of them. ParseError on any
/// structural problem.
std::vector<MapDescription> parse_maps(std::string_view text);
/// Canonical text: a single object for one map, an array otherwise.
std::string serialize_maps(const std::vector<MapDescription>& maps);

AutoWord build_word(const MapDescription& desc, FieldSpec spec);
AutoWord build_word(const MapDescription& desc);
std::vector<Vector> build_rational_points(const MapDescription& desc, FieldSpec spec);

/// Description of a word over its own field, scalars in literal form.
MapDescription describe_word(const AutoWord& w);

}  // namespace padyn
