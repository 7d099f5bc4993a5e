#include <limits>
#include <memory>
#include <sstream>

#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"

namespace padyn {

namespace {

using Term = std::pair<Monomial, Coeffs>;

struct CompiledFactor {
  enum class Kind { Henon, Triangular, Affine } kind;
  bool inverted = false;
  // henon
  Coeffs a{}, a_inv{};
  std::vector<Coeffs> poly;
  // triangular
  std::vector<Coeffs> ta, ta_inv;
  std::vector<std::vector<Term>> F;
  // affine
  std::vector<std::vector<Coeffs>> M, M_inv;
  std::vector<Coeffs> b;
};

}  // namespace

struct LevelMap::Impl {
  ResidueRing ring;
  unsigned r;
  std::uint64_t side;  // elements of O/p^k
  std::vector<CompiledFactor> seq;

  Coeffs at(const PadicElement& c) const { return c.reduce(ring.level()); }

  Coeffs eval_poly(const std::vector<Coeffs>& c, const Coeffs& x) const {
    Coeffs acc = ring.zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = ring.add(ring.mul(acc, x), *it);
    return acc;
  }

  Coeffs eval_multi(const std::vector<Term>& terms, const std::vector<Coeffs>& x) const {
    Coeffs acc = ring.zero();
    for (const auto& [m, c] : terms) {
      Coeffs t = c;
      for (unsigned i = 0; i < r; ++i) {
        if (m[i]) t = ring.mul(t, ring.pow(x[i], m[i]));
      }
      acc = ring.add(acc, t);
    }
    return acc;
  }

  void step(const CompiledFactor& f, std::vector<Coeffs>& x) const {
    switch (f.kind) {
      case CompiledFactor::Kind::Henon: {
        if (!f.inverted) {
          Coeffs nx = ring.sub(eval_poly(f.poly, x[0]), ring.mul(f.a, x[1]));
          x[1] = x[0];
          x[0] = nx;
        } else {
          Coeffs ny = ring.mul(ring.sub(eval_poly(f.poly, x[1]), x[0]), f.a_inv);
          x[0] = x[1];
          x[1] = ny;
        }
        return;
      }
      case CompiledFactor::Kind::Triangular: {
        if (!f.inverted) {
          // Coordinate i only reads later coordinates, so update in order.
          for (unsigned i = 0; i < r; ++i) x[i] = ring.add(ring.mul(f.ta[i], x[i]), eval_multi(f.F[i], x));
        } else {
          for (unsigned i = r; i-- > 0;) x[i] = ring.mul(ring.sub(x[i], eval_multi(f.F[i], x)), f.ta_inv[i]);
        }
        return;
      }
      case CompiledFactor::Kind::Affine: {
        std::vector<Coeffs> in = x;
        if (f.inverted) {
          for (unsigned i = 0; i < r; ++i) in[i] = ring.sub(in[i], f.b[i]);
        }
        const auto& M = f.inverted ? f.M_inv : f.M;
        for (unsigned i = 0; i < r; ++i) {
          Coeffs acc = f.inverted ? ring.zero() : f.b[i];
          for (unsigned j = 0; j < r; ++j) acc = ring.add(acc, ring.mul(M[i][j], in[j]));
          x[i] = acc;
        }
        return;
      }
    }
  }

  CompiledFactor compile(const Factor& f) const {
    CompiledFactor c{};
    c.inverted = f.inverted;
    if (const auto* h = std::get_if<HenonFactor>(&f.body)) {
      c.kind = CompiledFactor::Kind::Henon;
      c.a = at(h->a);
      c.a_inv = ring.inv(c.a);
      for (const auto& x : h->poly.coeffs()) c.poly.push_back(at(x));
    } else if (const auto* t = std::get_if<TriangularAuto>(&f.body)) {
      c.kind = CompiledFactor::Kind::Triangular;
      for (unsigned i = 0; i < r; ++i) {
        c.ta.push_back(at(t->a[i]));
        c.ta_inv.push_back(ring.inv(c.ta.back()));
        std::vector<Term> terms;
        for (const auto& [m, v] : t->F[i].terms()) terms.push_back({m, at(v)});
        c.F.push_back(std::move(terms));
      }
    } else {
      const auto& af = std::get<AffineAuto>(f.body);
      c.kind = CompiledFactor::Kind::Affine;
      for (unsigned i = 0; i < r; ++i) {
        c.M.emplace_back();
        c.M_inv.emplace_back();
        for (unsigned j = 0; j < r; ++j) {
          c.M[i].push_back(at(af.matrix[i][j]));
          c.M_inv[i].push_back(at(af.matrix_inverse[i][j]));
        }
        c.b.push_back(at(af.translation[i]));
      }
    }
    return c;
  }
};

LevelMap::LevelMap(const AutoWord& w, unsigned level)
    : impl_(nullptr), level_(level), dimension_(w.dimension()), size_(0) {
  // Validates integrality and invertibility of the reduction.
  (void)reduce_word(w);
  auto impl = std::make_unique<Impl>(Impl{ResidueRing(w.spec(), level), w.dimension(), 0, {}});
  impl->side = impl->ring.size();
  unsigned __int128 total = 1;
  for (unsigned i = 0; i < dimension_; ++i) {
    total *= impl->side;
    if (total > std::numeric_limits<std::uint64_t>::max()) total = std::numeric_limits<std::uint64_t>::max();
  }
  size_ = static_cast<std::uint64_t>(total);
  for (const auto& f : application_sequence(w)) impl->seq.push_back(impl->compile(f));
  impl_ = impl.release();
}

LevelMap::~LevelMap() { delete impl_; }

LevelMap::LevelMap(LevelMap&& o) noexcept
    : impl_(o.impl_), level_(o.level_), dimension_(o.dimension_), size_(o.size_) {
  o.impl_ = nullptr;
}

LevelMap& LevelMap::operator=(LevelMap&& o) noexcept {
  if (this != &o) {
    delete impl_;
    impl_ = o.impl_;
    o.impl_ = nullptr;
    level_ = o.level_;
    dimension_ = o.dimension_;
    size_ = o.size_;
  }
  return *this;
}

std::vector<Coeffs> LevelMap::decode(std::uint64_t index) const {
  std::vector<Coeffs> x(dimension_);
  for (unsigned i = 0; i < dimension_; ++i) {
    x[i] = impl_->ring.from_index(index % impl_->side);
    index /= impl_->side;
  }
  return x;
}

std::uint64_t LevelMap::encode(const std::vector<Coeffs>& x) const {
  std::uint64_t index = 0;
  for (unsigned i = dimension_; i-- > 0;) index = index * impl_->side + impl_->ring.index(x[i]);
  return index;
}

std::uint64_t LevelMap::operator()(std::uint64_t index) const {
  std::vector<Coeffs> x = decode(index);
  for (const auto& f : impl_->seq) impl_->step(f, x);
  return encode(x);
}

Vector LevelMap::lift(std::uint64_t index) const {
  Vector out;
  const FieldSpec spec = impl_->ring.spec();
  for (const auto& c : decode(index)) out.push_back(PadicElement::from_coeffs(spec, c));
  return out;
}

std::uint64_t CycleStructure::total_points() const {
  std::uint64_t n = 0;
  for (const auto& [len, count] : counts) n += len * count;
  return n;
}

std::string CycleStructure::to_csv() const {
  std::ostringstream os;
  os << "# level=" << level << "\n";
  os << "length,count\n";
  for (const auto& [len, count] : counts) os << len << "," << count << "\n";
  return os.str();
}

void for_each_cycle(const LevelMap& map, std::uint64_t budget,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit) {
  if (map.size() > budget) {
    fail(ErrorKind::BudgetExceeded, "level " + std::to_string(map.level()) + " has " +
                                        (map.size() == std::numeric_limits<std::uint64_t>::max()
                                             ? std::string("too many")
                                             : std::to_string(map.size())) +
                                        " points, budget is " + std::to_string(budget));
  }
  std::vector<bool> seen(map.size(), false);
  for (std::uint64_t s = 0; s < map.size(); ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    std::uint64_t cur = s;
    do {
      seen[cur] = true;
      cur = map(cur);
      if (++len > map.size()) fail(ErrorKind::InvalidArgument, "induced map is not a permutation");
    } while (cur != s);
    visit(s, len);
  }
}

CycleStructure permutation_cycles(const AutoWord& w, unsigned level, std::uint64_t budget) {
  LevelMap map(w, level);
  CycleStructure cs{level, w.dimension(), {}};
  for_each_cycle(map, budget, [&](std::uint64_t, std::uint64_t len) { ++cs.counts[len]; });
  return cs;
}

}  // namespace padyn
