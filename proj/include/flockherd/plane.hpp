#pragma once

// PG(2,q): points, collineations, arcs/ovals/hyperovals, set stabilizers,
// point orbits, the hyperoval census for tiny q, and the derivation of oval
// class representatives from hyperovals.
//
// Stabilizers and equivalences all run on the same frame-mapping scheme: fix
// an ordered base quadruple B of the set in general position; every
// stabilizing (resp. mapping) collineation sends B to some ordered quadruple
// of the target in general position, so enumerating those quadruples times
// the Frobenius exponents finds every element exactly once.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockherd/gf2e.hpp"
#include "flockherd/opoly.hpp"
#include "flockherd/util.hpp"

namespace flockherd::plane {

using gf::FieldCtx;
using gf::FieldElem;
using gf::kOne;
using gf::kZero;

struct ProjPoint {
  std::array<FieldElem, 3> x{};

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(x[0].v) << 32) |
           (static_cast<std::uint64_t>(x[1].v) << 16) | x[2].v;
  }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return a.key() < b.key();
  }
};

// Normalize so the first nonzero coordinate is 1; equality of normalized
// points is coordinate equality.
inline ProjPoint normalize(const FieldCtx& F, std::array<FieldElem, 3> v) {
  int lead = -1;
  for (int i = 0; i < 3; ++i)
    if (v[i] != kZero) {
      lead = i;
      break;
    }
  if (lead < 0) throw std::invalid_argument("zero vector is not a point");
  if (v[lead] != kOne) {
    const FieldElem s = F.inv(v[lead]);
    for (int i = lead; i < 3; ++i) v[i] = F.mul(v[i], s);
  }
  return ProjPoint{v};
}

inline ProjPoint point(const FieldCtx& F, std::uint32_t a, std::uint32_t b,
                       std::uint32_t c) {
  return normalize(F, {F.elem(a), F.elem(b), F.elem(c)});
}

// Dense index of a normalized point in [0, q^2+q+1).
inline std::uint32_t point_index(const FieldCtx& F, const ProjPoint& p) {
  const std::uint32_t q = F.order();
  if (p.x[0] == kOne) return static_cast<std::uint32_t>(p.x[1].v) * q + p.x[2].v;
  if (p.x[1] == kOne) return q * q + p.x[2].v;
  return q * q + q;
}

inline std::uint32_t num_points(const FieldCtx& F) {
  return F.order() * F.order() + F.order() + 1;
}

inline std::vector<ProjPoint> all_points(const FieldCtx& F) {
  std::vector<ProjPoint> pts;
  pts.reserve(num_points(F));
  const std::uint32_t q = F.order();
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c) pts.push_back(point(F, 1, b, c));
  for (std::uint32_t c = 0; c < q; ++c) pts.push_back(point(F, 0, 1, c));
  pts.push_back(point(F, 0, 0, 1));
  return pts;
}

using Mat3 = std::array<std::array<FieldElem, 3>, 3>;

inline FieldElem det3(const FieldCtx& F, const Mat3& m) {
  FieldElem d = kZero;
  d = FieldCtx::add(d, F.mul(m[0][0], FieldCtx::add(F.mul(m[1][1], m[2][2]),
                                                    F.mul(m[1][2], m[2][1]))));
  d = FieldCtx::add(d, F.mul(m[0][1], FieldCtx::add(F.mul(m[1][0], m[2][2]),
                                                    F.mul(m[1][2], m[2][0]))));
  d = FieldCtx::add(d, F.mul(m[0][2], FieldCtx::add(F.mul(m[1][0], m[2][1]),
                                                    F.mul(m[1][1], m[2][0]))));
  return d;
}

// Adjugate; in characteristic 2 the cofactor signs vanish.
inline Mat3 adj3(const FieldCtx& F, const Mat3& m) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[i][j] = FieldCtx::add(F.mul(m[r0][c0], m[r1][c1]),
                              F.mul(m[r0][c1], m[r1][c0]));
    }
  return a;
}

inline Mat3 mul3(const FieldCtx& F, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const FieldElem aik = a[i][k];
      if (aik == kZero) continue;
      for (int j = 0; j < 3; ++j)
        r[i][j] = FieldCtx::add(r[i][j], F.mul(aik, b[k][j]));
    }
  return r;
}

// Element of PGammaL(3,q): x -> (x^(2^gamma)) M on row vectors.
struct Collineation {
  Mat3 m{};
  std::uint8_t gamma = 0;

  friend bool operator==(const Collineation&, const Collineation&) = default;
};

inline ProjPoint apply(const FieldCtx& F, const Collineation& g,
                       const ProjPoint& p) {
  std::array<FieldElem, 3> y{};
  for (int i = 0; i < 3; ++i) {
    const FieldElem xi = F.frobenius(p.x[i], g.gamma);
    if (xi == kZero) continue;
    for (int j = 0; j < 3; ++j)
      y[j] = FieldCtx::add(y[j], F.mul(xi, g.m[i][j]));
  }
  return normalize(F, y);
}

// apply a, then b
inline Collineation compose(const FieldCtx& F, const Collineation& a,
                            const Collineation& b) {
  Mat3 am;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) am[i][j] = F.frobenius(a.m[i][j], b.gamma);
  return Collineation{mul3(F, am, b.m),
                      static_cast<std::uint8_t>((a.gamma + b.gamma) % F.degree())};
}

// Scale the matrix so its first nonzero entry is 1 (projective normal form).
inline Collineation normalize_collineation(const FieldCtx& F, Collineation g) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (g.m[i][j] != kZero) {
        const FieldElem s = F.inv(g.m[i][j]);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) g.m[a][b] = F.mul(g.m[a][b], s);
        return g;
      }
  throw std::invalid_argument("zero matrix");
}

inline bool collinear(const FieldCtx& F, const ProjPoint& a, const ProjPoint& b,
                      const ProjPoint& c) {
  return det3(F, Mat3{a.x, b.x, c.x}) == kZero;
}

// Dual coordinates of the line through two distinct points (cross product;
// characteristic 2 drops the signs).
inline ProjPoint line_through(const FieldCtx& F, const ProjPoint& a,
                              const ProjPoint& b) {
  std::array<FieldElem, 3> d{
      FieldCtx::add(F.mul(a.x[1], b.x[2]), F.mul(a.x[2], b.x[1])),
      FieldCtx::add(F.mul(a.x[0], b.x[2]), F.mul(a.x[2], b.x[0])),
      FieldCtx::add(F.mul(a.x[0], b.x[1]), F.mul(a.x[1], b.x[0]))};
  return normalize(F, d);
}

inline FieldElem incid(const FieldCtx& F, const ProjPoint& line,
                       const ProjPoint& p) {
  FieldElem s = kZero;
  for (int i = 0; i < 3; ++i) s = FieldCtx::add(s, F.mul(line.x[i], p.x[i]));
  return s;
}

enum class SetRole { arc, oval, hyperoval };

inline const char* role_name(SetRole r) {
  switch (r) {
    case SetRole::arc: return "arc";
    case SetRole::oval: return "oval";
    case SetRole::hyperoval: return "hyperoval";
  }
  return "?";
}

struct PointSet {
  std::vector<ProjPoint> pts;  // sorted by key, no duplicates
  SetRole role = SetRole::arc;

  std::size_t size() const { return pts.size(); }
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

inline bool arc_check(const FieldCtx& F, const std::vector<ProjPoint>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (collinear(F, pts[i], pts[j], pts[k])) return false;
  return true;
}

inline bool arc_check(const FieldCtx& F, const PointSet& s) {
  return arc_check(F, s.pts);
}

// Validating constructor: sorts, deduplicates (duplicates are an error) and
// checks the size and arc condition demanded by the role.
inline PointSet make_point_set(const FieldCtx& F, std::vector<ProjPoint> pts,
                               SetRole role) {
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw std::invalid_argument("duplicate points");
  if (role == SetRole::oval && pts.size() != F.order() + 1)
    throw std::invalid_argument("oval must have q+1 points");
  if (role == SetRole::hyperoval && pts.size() != F.order() + 2)
    throw std::invalid_argument("hyperoval must have q+2 points");
  if (role != SetRole::arc && !arc_check(F, pts))
    throw std::invalid_argument("set is not an arc");
  return PointSet{std::move(pts), role};
}

inline PointSet apply(const FieldCtx& F, const Collineation& g,
                      const PointSet& s) {
  std::vector<ProjPoint> out;
  out.reserve(s.pts.size());
  for (const auto& p : s.pts) out.push_back(apply(F, g, p));
  std::sort(out.begin(), out.end());
  return PointSet{std::move(out), s.role};
}

inline std::array<ProjPoint, 4> fundamental_quadrangle(const FieldCtx& F) {
  return {point(F, 0, 0, 1), point(F, 0, 1, 0), point(F, 1, 0, 0),
          point(F, 1, 1, 1)};
}

// The oval D(f) = {(1, t, f(t))} + {(0,1,0)} of an o-permutation table.
inline PointSet oval_points(const FieldCtx& F, const opoly::EvalTable& f) {
  std::vector<ProjPoint> pts;
  pts.reserve(F.order() + 1);
  for (std::uint32_t t = 0; t < F.order(); ++t)
    pts.push_back(normalize(F, {kOne, F.elem(t), f[t]}));
  pts.push_back(point(F, 0, 1, 0));
  return make_point_set(F, std::move(pts), SetRole::oval);
}

namespace detail {

// Matrix of the projectivity sending the standard frame (e1,e2,e3,(1,1,1))
// to (p0,p1,p2,p3): rows lambda_i * p_i with lambda = p3 * adj(rows).
// Returns false if the quadruple is not in general position.
inline bool frame_matrix(const FieldCtx& F, const ProjPoint& p0,
                         const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3, Mat3& out) {
  const Mat3 P{p0.x, p1.x, p2.x};
  const Mat3 A = adj3(F, P);
  FieldElem lam[3];
  for (int j = 0; j < 3; ++j) {
    FieldElem s = kZero;
    for (int i = 0; i < 3; ++i) s = FieldCtx::add(s, F.mul(p3.x[i], A[i][j]));
    if (s == kZero) return false;  // degenerate (incl. det(P) == 0)
    lam[j] = s;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = F.mul(lam[i], P[i][j]);
  return true;
}

inline ProjPoint frob_point(const FieldCtx& F, const ProjPoint& p, unsigned g) {
  return ProjPoint{{F.frobenius(p.x[0], g), F.frobenius(p.x[1], g),
                    F.frobenius(p.x[2], g)}};
}

// Greedy lexicographically-smallest base quadruple in general position.
inline std::array<ProjPoint, 4> base_quadruple(const FieldCtx& F,
                                               const std::vector<ProjPoint>& pts) {
  std::array<ProjPoint, 4> b{};
  int got = 0;
  for (const auto& p : pts) {
    bool ok = true;
    if (got == 2 && collinear(F, b[0], b[1], p)) ok = false;
    if (got == 3 && (collinear(F, b[0], b[1], p) || collinear(F, b[0], b[2], p) ||
                     collinear(F, b[1], b[2], p)))
      ok = false;
    if (ok) {
      b[got++] = p;
      if (got == 4) return b;
    }
  }
  throw std::invalid_argument("no quadruple of the set is in general position");
}

struct MemberBitset {
  std::vector<std::uint64_t> bits;
  explicit MemberBitset(std::uint32_t n) : bits((n + 63) / 64) {}
  void set(std::uint32_t i) { bits[i >> 6] |= 1ull << (i & 63); }
  bool test(std::uint32_t i) const { return bits[i >> 6] >> (i & 63) & 1u; }
};

}  // namespace detail

// The unique projectivity (gamma = 0) sending src to dst in order.
inline Collineation map_quadrangle(const FieldCtx& F,
                                   const std::array<ProjPoint, 4>& src,
                                   const std::array<ProjPoint, 4>& dst) {
  Mat3 fs, fd;
  if (!detail::frame_matrix(F, src[0], src[1], src[2], src[3], fs) ||
      !detail::frame_matrix(F, dst[0], dst[1], dst[2], dst[3], fd))
    throw std::invalid_argument("quadruple not in general position");
  return normalize_collineation(F, Collineation{mul3(F, adj3(F, fs), fd), 0});
}

struct StabGroup {
  std::uint64_t order = 0;
  std::vector<Collineation> generators;          // in fact all elements
  std::vector<std::vector<std::uint32_t>> point_orbits;  // indices into the set
};

namespace detail {

// Union-find over set indices.
struct UF {
  std::vector<std::uint32_t> parent;
  explicit UF(std::uint32_t n) : parent(n) {
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

inline std::vector<std::vector<std::uint32_t>> orbits_from_elements(
    const FieldCtx& F, const std::vector<ProjPoint>& pts,
    const std::vector<Collineation>& elems) {
  std::vector<std::uint32_t> pos(num_points(F), UINT32_MAX);
  for (std::uint32_t i = 0; i < pts.size(); ++i)
    pos[point_index(F, pts[i])] = i;
  UF uf(static_cast<std::uint32_t>(pts.size()));
  for (const auto& g : elems)
    for (std::uint32_t i = 0; i < pts.size(); ++i)
      uf.unite(i, pos[point_index(F, apply(F, g, pts[i]))]);
  std::vector<std::vector<std::uint32_t>> orbits(pts.size());
  for (std::uint32_t i = 0; i < pts.size(); ++i) orbits[uf.find(i)].push_back(i);
  std::erase_if(orbits, [](const auto& o) { return o.empty(); });
  return orbits;
}

// Core quadruple-enumeration scan.  For every ordered quadruple T of
// `target` in general position and every Frobenius exponent, form the unique
// semilinear map sending base^gamma to T and keep it iff it maps all of
// `source` into `target`.  With source == target this enumerates the set
// stabilizer; otherwise the witnesses of equivalence.  If `first_only` is
// set, stops at the first witness (deterministic order).
inline std::vector<Collineation> frame_scan(
    const FieldCtx& F, const std::vector<ProjPoint>& source,
    const std::array<ProjPoint, 4>& base, const std::vector<ProjPoint>& target,
    const std::vector<const ProjPoint*>& t0_candidates, bool first_only,
    unsigned workers) {
  const unsigned e = F.degree();
  std::vector<Mat3> base_adj(e);
  for (unsigned g = 0; g < e; ++g) {
    Mat3 fb;
    if (!detail::frame_matrix(F, frob_point(F, base[0], g),
                              frob_point(F, base[1], g),
                              frob_point(F, base[2], g),
                              frob_point(F, base[3], g), fb))
      throw std::logic_error("base quadruple degenerate under Frobenius");
    base_adj[g] = adj3(F, fb);
  }

  MemberBitset member(num_points(F));
  for (const auto& p : target) member.set(point_index(F, p));

  // sample points of the source, excluding the base, checked before the full
  // pass; they kill almost every candidate tuple early
  std::vector<ProjPoint> samples;
  for (const auto& p : source) {
    if (p == base[0] || p == base[1] || p == base[2] || p == base[3]) continue;
    samples.push_back(p);
    if (samples.size() == 3) break;
  }

  const std::size_t n = target.size();
  std::vector<std::vector<Collineation>> found(workers == 0 ? 1 : workers);
  std::atomic<bool> stop{false};

  auto scan_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    Mat3 ft, m;
    for (std::uint64_t i1 = lo; i1 < hi && !(first_only && stop.load(std::memory_order_relaxed)); ++i1) {
      const ProjPoint& t1 = *t0_candidates[i1];
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        const ProjPoint& t2 = target[i2];
        if (t2 == t1) continue;
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          const ProjPoint& t3 = target[i3];
          if (t3 == t1 || t3 == t2 || collinear(F, t1, t2, t3)) continue;
          for (std::size_t i4 = 0; i4 < n; ++i4) {
            const ProjPoint& t4 = target[i4];
            if (t4 == t1 || t4 == t2 || t4 == t3) continue;
            if (!detail::frame_matrix(F, t1, t2, t3, t4, ft)) continue;
            for (unsigned g = 0; g < e; ++g) {
              m = mul3(F, base_adj[g], ft);
              const Collineation cand{m, static_cast<std::uint8_t>(g)};
              bool ok = true;
              for (const auto& s : samples) {
                if (!member.test(point_index(F, apply(F, cand, s)))) {
                  ok = false;
                  break;
                }
              }
              if (!ok) continue;
              for (const auto& s : source) {
                if (!member.test(point_index(F, apply(F, cand, s)))) {
                  ok = false;
                  break;
                }
              }
              if (!ok) continue;
              found[w].push_back(normalize_collineation(F, cand));
              if (first_only) {
                stop.store(true, std::memory_order_relaxed);
                return;
              }
            }
          }
        }
      }
    }
  };

  if (workers <= 1) {
    scan_range(0, 0, t0_candidates.size());
  } else {
    util::parallel_ranges(t0_candidates.size(), workers, scan_range);
  }

  std::vector<Collineation> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  if (first_only && all.size() > 1) all.resize(1);
  return all;
}

}  // namespace detail

// Exact set stabilizer in PGammaL(3,q), with point orbits.
inline StabGroup set_stabilizer(const FieldCtx& F, const PointSet& s,
                                unsigned workers = 1) {
  const auto base = detail::base_quadruple(F, s.pts);
  std::vector<const ProjPoint*> t0;
  for (const auto& p : s.pts) t0.push_back(&p);
  auto elems =
      detail::frame_scan(F, s.pts, base, s.pts, t0, /*first_only=*/false, workers);
  StabGroup g;
  g.order = elems.size();
  g.point_orbits = detail::orbits_from_elements(F, s.pts, elems);
  g.generators = std::move(elems);
  return g;
}

inline std::vector<std::vector<std::uint32_t>> point_orbits(
    const FieldCtx& F, const StabGroup& g, const PointSet& s) {
  return detail::orbits_from_elements(F, s.pts, g.generators);
}

// The unique point on all q+1 tangents of an oval (q even).
inline ProjPoint nucleus(const FieldCtx& F, const PointSet& oval) {
  if (oval.role != SetRole::oval || oval.size() != F.order() + 1)
    throw std::invalid_argument("nucleus needs an oval");
  const auto& pts = oval.pts;

  auto tangent_at = [&](const ProjPoint& p) {
    std::vector<std::uint64_t> secants;
    secants.reserve(pts.size() - 1);
    for (const auto& q : pts)
      if (!(q == p)) secants.push_back(line_through(F, p, q).key());
    std::sort(secants.begin(), secants.end());
    // pencil of lines through p: two independent dual vectors
    std::array<FieldElem, 3> l1{}, l2{};
    if (p.x[0] != kZero) {
      l1 = {p.x[1], p.x[0], kZero};
      l2 = {p.x[2], kZero, p.x[0]};
    } else if (p.x[1] != kZero) {
      l1 = {p.x[0], kZero, kZero};  // not independent in general; fall through
      l1 = {kOne, kZero, kZero};
      l2 = {kZero, p.x[2], p.x[1]};
    } else {
      l1 = {kOne, kZero, kZero};
      l2 = {kZero, kOne, kZero};
    }
    const ProjPoint L2 = normalize(F, l2);
    for (std::uint32_t t = 0; t <= F.order(); ++t) {
      ProjPoint cand = t == F.order()
                           ? L2
                           : normalize(F, {FieldCtx::add(l1[0], F.mul(F.elem(t), l2[0])),
                                           FieldCtx::add(l1[1], F.mul(F.elem(t), l2[1])),
                                           FieldCtx::add(l1[2], F.mul(F.elem(t), l2[2]))});
      if (incid(F, cand, p) != kZero) continue;
      if (!std::binary_search(secants.begin(), secants.end(), cand.key()))
        return cand;
    }
    throw std::logic_error("no tangent found");
  };

  const ProjPoint t0 = tangent_at(pts[0]);
  const ProjPoint t1 = tangent_at(pts[1]);
  const ProjPoint n = line_through(F, t0, t1);  // dual cross = intersection

  // verify: the line joining n to each oval point meets the oval only there
  for (const auto& p : pts) {
    const ProjPoint line = line_through(F, n, p);
    int hits = 0;
    for (const auto& q : pts)
      if (incid(F, line, q) == kZero) ++hits;
    if (hits != 1)
      throw std::invalid_argument("tangents not concurrent: not an oval nucleus");
  }
  return n;
}

// Some collineation mapping o1 onto o2, if one exists.  Both ovals; anchored
// at the nuclei (any equivalence must map nucleus to nucleus).
inline std::optional<Collineation> equivalent_ovals(const FieldCtx& F,
                                                    const PointSet& o1,
                                                    const PointSet& o2,
                                                    unsigned workers = 1) {
  const ProjPoint n1 = nucleus(F, o1), n2 = nucleus(F, o2);
  const std::array<ProjPoint, 4> base{n1, o1.pts[0], o1.pts[1], o1.pts[2]};
  std::vector<const ProjPoint*> t0{&n2};
  auto w = detail::frame_scan(F, o1.pts, base, o2.pts, t0, /*first_only=*/true,
                              workers);
  if (w.empty()) return std::nullopt;
  return w[0];
}

// Generic variant for equal-size sets (hyperovals, arcs).
inline std::optional<Collineation> equivalent_sets(const FieldCtx& F,
                                                   const PointSet& s1,
                                                   const PointSet& s2,
                                                   unsigned workers = 1) {
  if (s1.size() != s2.size()) return std::nullopt;
  const auto base = detail::base_quadruple(F, s1.pts);
  std::vector<const ProjPoint*> t0;
  for (const auto& p : s2.pts) t0.push_back(&p);
  auto w = detail::frame_scan(F, s1.pts, base, s2.pts, t0, /*first_only=*/true,
                              workers);
  if (w.empty()) return std::nullopt;
  return w[0];
}

// Canonical form: the lexicographically least sorted point-index vector over
// all images of the set mapping one of its ordered quadruples (after a field
// automorphism) onto the standard frame.  Equal canonical forms <=>
// equivalent sets.
inline std::vector<std::uint32_t> canonical_form(const FieldCtx& F,
                                                 const PointSet& s) {
  const unsigned e = F.degree();
  std::vector<std::uint32_t> best;
  Mat3 ft;
  const std::size_t n = s.pts.size();
  std::vector<std::uint32_t> img(n);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t i3 = 0; i3 < n; ++i3)
        for (std::size_t i4 = 0; i4 < n; ++i4) {
          if (i2 == i1 || i3 == i1 || i3 == i2 || i4 == i1 || i4 == i2 ||
              i4 == i3)
            continue;
          for (unsigned g = 0; g < e; ++g) {
            if (!detail::frame_matrix(
                    F, detail::frob_point(F, s.pts[i1], g),
                    detail::frob_point(F, s.pts[i2], g),
                    detail::frob_point(F, s.pts[i3], g),
                    detail::frob_point(F, s.pts[i4], g), ft))
              continue;
            const Collineation cand{adj3(F, ft), static_cast<std::uint8_t>(g)};
            for (std::size_t i = 0; i < n; ++i)
              img[i] = point_index(F, apply(F, cand, s.pts[i]));
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = img;
          }
        }
  if (best.empty()) throw std::invalid_argument("set has no frame quadruple");
  return best;
}

// Complete list of hyperovals up to equivalence, q in {2, 4, 8}: exhaustive
// backtracking extension of arcs through the fundamental quadrangle, then
// isomorph rejection by canonical form.
inline std::vector<PointSet> hyperoval_census(const FieldCtx& F) {
  const std::uint32_t q = F.order();
  if (q != 2 && q != 4 && q != 8)
    throw std::invalid_argument("census supported for q in {2,4,8}");
  const auto frame = fundamental_quadrangle(F);
  std::vector<ProjPoint> pts = all_points(F);
  std::sort(pts.begin(), pts.end());

  std::vector<ProjPoint> cur(frame.begin(), frame.end());
  std::vector<PointSet> classes;
  std::vector<std::vector<std::uint32_t>> canon_seen;

  auto extends_arc = [&](const ProjPoint& p) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (collinear(F, cur[i], cur[j], p)) return false;
    }
    return true;
  };

  auto record = [&]() {
    PointSet h = make_point_set(F, cur, SetRole::hyperoval);
    auto c = canonical_form(F, h);
    for (const auto& seen : canon_seen)
      if (seen == c) return;
    canon_seen.push_back(std::move(c));
    classes.push_back(std::move(h));
  };

  auto in_frame = [&](const ProjPoint& p) {
    return p == frame[0] || p == frame[1] || p == frame[2] || p == frame[3];
  };

  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (cur.size() == q + 2) {
      record();
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      if (in_frame(pts[i]) || !extends_arc(pts[i])) continue;
      cur.push_back(pts[i]);
      extend(i + 1);
      cur.pop_back();
    }
  };
  extend(0);
  return classes;
}

// One oval class representative per point-orbit of each hyperoval's
// stabilizer: remove an orbit representative, renormalize so the oval
// contains (0,1,0),(1,0,0),(1,1,1) with nucleus (0,0,1), interpolate.
struct OvalClassRep {
  opoly::OPoly poly;
  int hyperoval_index = 0;
  std::size_t orbit_size = 0;
};

inline std::vector<OvalClassRep> oval_class_reps(
    const FieldCtx& F, const std::vector<PointSet>& hyperovals,
    unsigned workers = 1) {
  std::vector<OvalClassRep> reps;
  for (std::size_t hi = 0; hi < hyperovals.size(); ++hi) {
    const PointSet& h = hyperovals[hi];
    StabGroup stab = set_stabilizer(F, h, workers);
    // orbits sorted by smallest member
    std::vector<std::vector<std::uint32_t>> orbits = stab.point_orbits;
    std::sort(orbits.begin(), orbits.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& orbit : orbits) {
      const ProjPoint removed = h.pts[orbit.front()];
      std::vector<ProjPoint> rest;
      for (const auto& p : h.pts)
        if (!(p == removed)) rest.push_back(p);
      // removed point is the nucleus of the remaining oval
      const std::array<ProjPoint, 4> src{removed, rest[0], rest[1], rest[2]};
      const Collineation g = map_quadrangle(F, src, fundamental_quadrangle(F));
      opoly::EvalTable table(F.order());
      bool seen_inf = false;
      for (const auto& p : rest) {
        const ProjPoint ip = apply(F, g, p);
        if (ip == point(F, 0, 1, 0)) {
          seen_inf = true;
          continue;
        }
        if (ip.x[0] != kOne)
          throw std::logic_error("renormalized oval point off the affine chart");
        table[ip.x[1].v] = ip.x[2];
      }
      if (!seen_inf) throw std::logic_error("renormalized oval misses (0,1,0)");
      if (!opoly::is_opermutation(F, table))
        throw std::logic_error("oval class representative not an o-permutation");
      if (table[1] != kOne)
        throw std::logic_error("representative not normalized to f(1)=1");
      reps.push_back(OvalClassRep{opoly::interpolate(F, table),
                                  static_cast<int>(hi), orbit.size()});
    }
  }
  return reps;
}

// ---- PointSet file format: header "q <hex> role <tag>", then one point per
// line as three hex coordinates, sorted. ----

inline void write_point_set(std::ostream& os, const FieldCtx& F,
                            const PointSet& s) {
  os << "q " << std::hex << F.order() << std::dec << " role " << role_name(s.role)
     << "\n";
  for (const auto& p : s.pts)
    os << FieldCtx::to_hex(p.x[0]) << ' ' << FieldCtx::to_hex(p.x[1]) << ' '
       << FieldCtx::to_hex(p.x[2]) << "\n";
}

inline PointSet read_point_set(std::istream& is, const FieldCtx& F) {
  std::string word;
  std::uint32_t q = 0;
  std::string role;
  if (!(is >> word >> std::hex >> q >> std::dec >> word >> role) ||
      q != F.order())
    throw std::invalid_argument("point set header mismatch");
  SetRole r = role == "oval"      ? SetRole::oval
              : role == "hyperoval" ? SetRole::hyperoval
                                    : SetRole::arc;
  std::vector<ProjPoint> pts;
  std::string a, b, c;
  while (is >> a >> b >> c)
    pts.push_back(normalize(F, {F.from_hex(a), F.from_hex(b), F.from_hex(c)}));
  return make_point_set(F, std::move(pts), r);
}

}  // namespace flockherd::plane
