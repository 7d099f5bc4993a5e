#pragma once

#include <string>
#include <vector>

#include "padyn/word.hpp"

namespace padyn {

enum class LocusField { Generic, Special };

/// Point [x:y:0] on the line at infinity, first nonzero coordinate equal to 1.
/// Over the residue field the coordinates are canonical lifts of residues.
struct ProjectivePoint {
  PadicElement x;
  PadicElement y;
};

struct ProjectivePointSet {
  LocusField field = LocusField::Generic;
  std::vector<ProjectivePoint> points;

  bool empty() const { return points.empty(); }
  bool contains(const ProjectivePoint& pt) const;
  bool intersects(const ProjectivePointSet& other) const;
  std::vector<std::string> to_strings() const;
  std::string to_string() const;
  friend bool operator==(const ProjectivePointSet& a, const ProjectivePointSet& b);
};

/// Common zeros on T = 0 of the homogenized coordinates of a plane map.
ProjectivePointSet indeterminacy_locus(const AutoWord& w, LocusField where = LocusField::Generic,
                                       int max_degree = kDefaultMaxDegree);
/// Same, from already expanded coordinate polynomials.
ProjectivePointSet locus_of_polys(const std::vector<MultiPoly>& coords, LocusField where);

bool is_regular(const AutoWord& w, int max_degree = kDefaultMaxDegree);
bool is_special_henon(const AutoWord& w, int max_degree = kDefaultMaxDegree);
/// Henon product whose a_i are units and whose polynomials are integral.
bool henon_coefficient_criterion(const AutoWord& w);
/// Z(w^n) = Z(w) and Z(w^-n) = Z(w^-1) for 1 <= n <= n_max.
bool check_iterate_locus(const AutoWord& w, unsigned n_max, int max_degree = kDefaultMaxDegree);

/// Distinct roots of g in K found at the working precision.
std::vector<PadicElement> roots_in_field(const UniPoly& g);

}  // namespace padyn
