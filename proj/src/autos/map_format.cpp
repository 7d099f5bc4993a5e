#include "padyn/map_format.hpp"

#include <json.hpp>

#include "padyn/error.hpp"

namespace padyn {

namespace {

using json = nlohmann::ordered_json;

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
  if (!obj.is_object()) fail(ErrorKind::ParseError, std::string(what) + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(ErrorKind::ParseError, "unknown key '" + k + "' in " + what);
  }
}

// Scalars may be written as JSON integers or strings; both are kept as text.
std::string literal(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  fail(ErrorKind::ParseError, "scalar must be a string or an integer, got " + v.dump());
}

std::vector<std::string> literal_list(const json& v) {
  if (!v.is_array()) fail(ErrorKind::ParseError, "expected a list of scalars");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(literal(x));
  return out;
}

template <class T>
T unsigned_field(const json& v, const char* key) {
  if (!v.is_number_unsigned()) fail(ErrorKind::ParseError, std::string(key) + " must be a nonnegative integer");
  return v.get<T>();
}

FactorDesc parse_factor(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "factor must be an object");
  FactorDesc d;
  const std::string type = require(j, "type").is_string() ? j["type"].get<std::string>() : "";
  if (j.contains("inverse")) {
    if (!j["inverse"].is_boolean()) fail(ErrorKind::ParseError, "inverse must be a boolean");
    d.inverse = j["inverse"].get<bool>();
  }
  if (type == "henon") {
    check_keys(j, {"type", "a", "poly", "inverse"}, "henon factor");
    d.kind = FactorDesc::Kind::Henon;
    d.a = literal(require(j, "a"));
    d.poly = literal_list(require(j, "poly"));
  } else if (type == "triangular") {
    check_keys(j, {"type", "a", "F", "inverse"}, "triangular factor");
    d.kind = FactorDesc::Kind::Triangular;
    d.a_list = literal_list(require(j, "a"));
    const json& F = require(j, "F");
    if (!F.is_array()) fail(ErrorKind::ParseError, "F must be a list of term lists");
    for (const auto& poly : F) {
      if (!poly.is_array()) fail(ErrorKind::ParseError, "each F_i must be a list of terms");
      std::vector<FactorDesc::Term> terms;
      for (const auto& t : poly) {
        check_keys(t, {"coef", "exp"}, "term");
        FactorDesc::Term term{literal(require(t, "coef")), {}};
        const json& e = require(t, "exp");
        if (!e.is_array()) fail(ErrorKind::ParseError, "exp must be a list");
        for (const auto& x : e) term.exp.push_back(unsigned_field<unsigned>(x, "exponent"));
        terms.push_back(std::move(term));
      }
      d.F.push_back(std::move(terms));
    }
  } else if (type == "affine") {
    check_keys(j, {"type", "matrix", "translation", "inverse"}, "affine factor");
    d.kind = FactorDesc::Kind::Affine;
    const json& m = require(j, "matrix");
    if (!m.is_array()) fail(ErrorKind::ParseError, "matrix must be a list of rows");
    for (const auto& row : m) d.matrix.push_back(literal_list(row));
    d.translation = literal_list(require(j, "translation"));
  } else {
    fail(ErrorKind::ParseError, "unknown factor type '" + type + "'");
  }
  return d;
}

std::vector<FactorDesc> parse_factor_list(const json& j) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "factor list must be an array");
  std::vector<FactorDesc> out;
  for (const auto& f : j) out.push_back(parse_factor(f));
  return out;
}

MapDescription parse_one(const json& j) {
  check_keys(j,
             {"prime", "extension_degree", "precision", "modulus", "dimension", "factors", "conjugator",
              "rational_points"},
             "map");
  MapDescription d;
  d.prime = unsigned_field<std::uint64_t>(require(j, "prime"), "prime");
  d.extension_degree = j.contains("extension_degree") ? unsigned_field<unsigned>(j["extension_degree"], "extension_degree") : 1;
  d.precision = unsigned_field<unsigned>(require(j, "precision"), "precision");
  if (j.contains("modulus")) {
    if (!j["modulus"].is_array()) fail(ErrorKind::ParseError, "modulus must be a list");
    for (const auto& c : j["modulus"]) d.modulus.push_back(unsigned_field<std::uint64_t>(c, "modulus coefficient"));
  }
  d.dimension = j.contains("dimension") ? unsigned_field<unsigned>(j["dimension"], "dimension") : 2;
  d.factors = parse_factor_list(require(j, "factors"));
  if (j.contains("conjugator")) d.conjugator = parse_factor_list(j["conjugator"]);
  if (j.contains("rational_points")) {
    if (!j["rational_points"].is_array()) fail(ErrorKind::ParseError, "rational_points must be a list");
    for (const auto& pt : j["rational_points"]) d.rational_points.push_back(literal_list(pt));
  }
  return d;
}

json factor_json(const FactorDesc& d) {
  json j;
  switch (d.kind) {
    case FactorDesc::Kind::Henon:
      j["type"] = "henon";
      j["a"] = d.a;
      j["poly"] = d.poly;
      break;
    case FactorDesc::Kind::Triangular: {
      j["type"] = "triangular";
      j["a"] = d.a_list;
      json F = json::array();
      for (const auto& poly : d.F) {
        json terms = json::array();
        for (const auto& t : poly) terms.push_back(json{{"coef", t.coef}, {"exp", t.exp}});
        F.push_back(terms);
      }
      j["F"] = F;
      break;
    }
    case FactorDesc::Kind::Affine:
      j["type"] = "affine";
      j["matrix"] = d.matrix;
      j["translation"] = d.translation;
      break;
  }
  if (d.inverse) j["inverse"] = true;
  return j;
}

json map_json(const MapDescription& d) {
  json j;
  j["prime"] = d.prime;
  j["extension_degree"] = d.extension_degree;
  j["precision"] = d.precision;
  if (!d.modulus.empty()) j["modulus"] = d.modulus;
  j["dimension"] = d.dimension;
  j["factors"] = json::array();
  for (const auto& f : d.factors) j["factors"].push_back(factor_json(f));
  if (!d.conjugator.empty()) {
    j["conjugator"] = json::array();
    for (const auto& f : d.conjugator) j["conjugator"].push_back(factor_json(f));
  }
  if (!d.rational_points.empty()) j["rational_points"] = d.rational_points;
  return j;
}

Factor build_factor(const FactorDesc& d, FieldSpec spec, unsigned r) {
  auto scalar = [&](const std::string& s) { return PadicElement::parse(spec, s); };
  switch (d.kind) {
    case FactorDesc::Kind::Henon:
      if (r != 2) fail(ErrorKind::InvalidArgument, "Henon factors need dimension 2");
      return Factor{HenonFactor::make(scalar(d.a), UniPoly::parse(spec, d.poly)), d.inverse};
    case FactorDesc::Kind::Triangular: {
      if (d.a_list.size() != r || d.F.size() != r) {
        fail(ErrorKind::InvalidArgument, "triangular factor needs " + std::to_string(r) + " entries in a and F");
      }
      std::vector<PadicElement> a;
      for (const auto& s : d.a_list) a.push_back(scalar(s));
      std::vector<MultiPoly> F;
      for (const auto& poly : d.F) {
        std::vector<MultiPoly::Term> terms;
        for (const auto& t : poly) {
          if (t.exp.size() != r) fail(ErrorKind::InvalidArgument, "exponent vector length must equal dimension");
          Monomial m{};
          for (unsigned i = 0; i < r; ++i) m[i] = static_cast<std::uint16_t>(t.exp[i]);
          terms.push_back({m, scalar(t.coef)});
        }
        F.push_back(MultiPoly::from_terms(spec, r, std::move(terms)));
      }
      return Factor{TriangularAuto::make(std::move(a), std::move(F)), d.inverse};
    }
    case FactorDesc::Kind::Affine: {
      if (d.matrix.size() != r || d.translation.size() != r) {
        fail(ErrorKind::InvalidArgument, "affine factor shape must match dimension");
      }
      Matrix m;
      for (const auto& row : d.matrix) {
        m.emplace_back();
        for (const auto& s : row) m.back().push_back(scalar(s));
      }
      Vector b;
      for (const auto& s : d.translation) b.push_back(scalar(s));
      return Factor{AffineAuto::make(std::move(m), std::move(b)), d.inverse};
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown factor kind");
}

FactorDesc describe_factor(const Factor& f) {
  FactorDesc d;
  d.inverse = f.inverted;
  if (const auto* h = std::get_if<HenonFactor>(&f.body)) {
    d.kind = FactorDesc::Kind::Henon;
    d.a = h->a.to_string();
    for (const auto& c : h->poly.coeffs()) d.poly.push_back(c.to_string());
  } else if (const auto* t = std::get_if<TriangularAuto>(&f.body)) {
    d.kind = FactorDesc::Kind::Triangular;
    for (const auto& a : t->a) d.a_list.push_back(a.to_string());
    for (const auto& F : t->F) {
      std::vector<FactorDesc::Term> terms;
      for (const auto& [m, c] : F.terms()) terms.push_back({c.to_string(), std::vector<unsigned>(m.begin(), m.begin() + t->dimension())});
      d.F.push_back(std::move(terms));
    }
  } else {
    const auto& af = std::get<AffineAuto>(f.body);
    d.kind = FactorDesc::Kind::Affine;
    for (const auto& row : af.matrix) {
      d.matrix.emplace_back();
      for (const auto& x : row) d.matrix.back().push_back(x.to_string());
    }
    for (const auto& x : af.translation) d.translation.push_back(x.to_string());
  }
  return d;
}

}  // namespace

FieldSpec MapDescription::field(std::optional<std::uint64_t> p, std::optional<unsigned> n) const {
  return FieldSpec::create(p.value_or(prime), n.value_or(precision), extension_degree,
                           p && *p != prime ? std::vector<std::uint64_t>{} : modulus);
}

std::vector<MapDescription> parse_maps(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed map document: ") + e.what());
  }
  std::vector<MapDescription> out;
  try {
    if (j.is_array()) {
      if (j.empty()) fail(ErrorKind::ParseError, "empty map list");
      for (const auto& m : j) out.push_back(parse_one(m));
    } else {
      out.push_back(parse_one(j));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad map document: ") + e.what());
  }
  return out;
}

std::string serialize_maps(const std::vector<MapDescription>& maps) {
  json j;
  if (maps.size() == 1) {
    j = map_json(maps.front());
  } else {
    j = json::array();
    for (const auto& m : maps) j.push_back(map_json(m));
  }
  return j.dump(2) + "\n";
}

AutoWord build_word(const MapDescription& desc, FieldSpec spec) {
  std::vector<Factor> factors, conj;
  for (const auto& f : desc.factors) factors.push_back(build_factor(f, spec, desc.dimension));
  for (const auto& f : desc.conjugator) conj.push_back(build_factor(f, spec, desc.dimension));
  return AutoWord(spec, desc.dimension, std::move(factors), std::move(conj));
}

AutoWord build_word(const MapDescription& desc) { return build_word(desc, desc.field()); }

std::vector<Vector> build_rational_points(const MapDescription& desc, FieldSpec spec) {
  std::vector<Vector> out;
  for (const auto& pt : desc.rational_points) {
    if (pt.size() != desc.dimension) fail(ErrorKind::InvalidArgument, "rational point has the wrong dimension");
    Vector v;
    for (const auto& s : pt) v.push_back(PadicElement::parse(spec, s));
    out.push_back(std::move(v));
  }
  return out;
}

MapDescription describe_word(const AutoWord& w) {
  MapDescription d;
  const FieldSpec spec = w.spec();
  d.prime = spec.prime();
  d.extension_degree = spec.degree();
  d.precision = spec.precision();
  if (spec.degree() > 1) d.modulus = spec.modulus();
  d.dimension = w.dimension();
  for (const auto& f : w.factors()) d.factors.push_back(describe_factor(f));
  for (const auto& f : w.conjugator()) d.conjugator.push_back(describe_factor(f));
  return d;
}

}  // namespace padyn
