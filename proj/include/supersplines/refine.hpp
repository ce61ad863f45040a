#ifndef SUPERSPLINES_REFINE_HPP
#define SUPERSPLINES_REFINE_HPP

// Mesh generators: the Powell-Sabin 6-split, a symmetric Morgan-Scott
// triangulation and vertex stars.

#include <supersplines/mesh.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace supersplines {

enum class VertexRole { Original, EdgePoint, TrianglePoint };

struct VertexProvenance {
  VertexRole role;
  std::size_t source;  // original vertex, edge or triangle index
};

/// Interior split point of each triangle. Barycenters are the default; for
/// triangles where a barycenter segment misses the shared edge, rational
/// approximations of the incenters (which always work) are used instead.
enum class SplitPointRule { Auto, Barycenter, Incenter, Explicit };

struct PSSplitResult {
  Mesh refined;
  SmoothnessSpec spec;
  std::vector<VertexProvenance> provenance;  // per refined vertex
  SplitPointRule rule_used = SplitPointRule::Barycenter;
};

namespace detail {

// sqrt(q) rounded down to six decimals
inline Rational approx_sqrt(const Rational& q) {
  Integer scale = 1000000;
  Integer radicand = q.get_num() * q.get_den() * scale * scale;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  return ratio(root, q.get_den() * scale);
}

inline std::vector<Point> split_points(const Mesh& m, SplitPointRule rule) {
  std::vector<Point> out;
  for (const auto& t : m.triangles()) {
    const auto &a = m.vertex(t[0]), &b = m.vertex(t[1]), &c = m.vertex(t[2]);
    if (rule == SplitPointRule::Incenter) {
      auto len = [](const Point& p, const Point& q) {
        return approx_sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
      };
      Rational wa = len(b, c), wb = len(c, a), wc = len(a, b), w = wa + wb + wc;
      out.push_back({(wa * a.x + wb * b.x + wc * c.x) / w, (wa * a.y + wb * b.y + wc * c.y) / w});
    } else {
      out.push_back({(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3});
    }
  }
  return out;
}

// Point where segment z0 z1 crosses edge pq, if strictly inside both.
inline std::optional<Point> crossing(const Point& p, const Point& q, const Point& z0, const Point& z1) {
  Rational dx = q.x - p.x, dy = q.y - p.y, ex = z1.x - z0.x, ey = z1.y - z0.y;
  Rational den = dx * ey - dy * ex;
  if (sgn(den) == 0) return std::nullopt;
  Rational wx = z0.x - p.x, wy = z0.y - p.y;
  Rational t = (wx * ey - wy * ex) / den;
  Rational u = (wx * dy - wy * dx) / den;
  if (sgn(t) <= 0 || t >= 1 || sgn(u) <= 0 || u >= 1) return std::nullopt;
  return Point{p.x + t * dx, p.y + t * dy};
}

}  // namespace detail

/// Each triangle is split into six around its barycenter Z; every edge gets
/// one split point B, where the segment between neighbouring barycenters
/// crosses it (the midpoint on boundary edges). Smoothness: s across the
/// segments [Z, B], r on all other edges; supersmoothness s at original
/// vertices and at Z points, r at B points.
namespace detail {

// Split points of the edges for the given triangle points; the index of the
// first edge whose split point is not interior, if any.
inline std::optional<std::size_t> edge_split_points(const Mesh& m, const std::vector<Point>& z, std::vector<Point>& out) {
  out.clear();
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const auto& p = m.vertex(m.edges()[e][0]);
    const auto& q = m.vertex(m.edges()[e][1]);
    if (!m.edge_interior(e)) {
      out.push_back({(p.x + q.x) / 2, (p.y + q.y) / 2});
      continue;
    }
    auto b = crossing(p, q, z[static_cast<std::size_t>(m.edge_triangles(e)[0])], z[static_cast<std::size_t>(m.edge_triangles(e)[1])]);
    if (!b) return e;
    out.push_back(*b);
  }
  return std::nullopt;
}

inline PSSplitResult assemble_split(const Mesh& m, int r, int s, const std::vector<Point>& z, const std::vector<Point>& bpts,
                                    SplitPointRule used);

}  // namespace detail

/// Powell-Sabin split with explicitly chosen interior points, one per
/// triangle (each strictly inside its triangle).
inline PSSplitResult powell_sabin_6split(const Mesh& m, int r, int s, const std::vector<Point>& split_points) {
  if (r < 0 || s < r) throw InvalidArgument("Powell-Sabin split requires 0 <= r <= s");
  auto disk = validate_disk(m);
  if (!disk.ok) throw InvalidArgument("mesh is not a disk (" + disk.failed + ")");
  if (split_points.size() != m.num_triangles()) throw InvalidArgument("need one split point per triangle");
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles()[t];
    for (int k = 0; k < 3; ++k)
      if (sgn(orient2d(m.vertex(tri[k]), m.vertex(tri[(k + 1) % 3]), split_points[t])) <= 0)
        throw InvalidArgument("split point " + std::to_string(t) + " is not inside its triangle");
  }
  std::vector<Point> bpts;
  if (auto bad = detail::edge_split_points(m, split_points, bpts))
    throw InvalidArgument("Powell-Sabin construction failed: split point of edge " + std::to_string(*bad) +
                          " is not interior to the edge");
  return detail::assemble_split(m, r, s, split_points, bpts, SplitPointRule::Explicit);
}

inline PSSplitResult powell_sabin_6split(const Mesh& m, int r, int s, SplitPointRule rule = SplitPointRule::Auto) {
  if (r < 0 || s < r) throw InvalidArgument("Powell-Sabin split requires 0 <= r <= s");
  auto disk = validate_disk(m);
  if (!disk.ok) throw InvalidArgument("mesh is not a disk (" + disk.failed + ")");
  SplitPointRule used = rule == SplitPointRule::Incenter ? SplitPointRule::Incenter : SplitPointRule::Barycenter;
  auto z = detail::split_points(m, used);
  std::vector<Point> bpts;
  auto bad = detail::edge_split_points(m, z, bpts);
  if (bad && rule == SplitPointRule::Auto) {
    used = SplitPointRule::Incenter;
    z = detail::split_points(m, used);
    bad = detail::edge_split_points(m, z, bpts);
  }
  if (bad)
    throw InvalidArgument("Powell-Sabin construction failed: split point of edge " + std::to_string(*bad) +
                          " is not interior to the edge");
  return detail::assemble_split(m, r, s, z, bpts, used);
}

inline PSSplitResult detail::assemble_split(const Mesh& m, int r, int s, const std::vector<Point>& z,
                                            const std::vector<Point>& bpts, SplitPointRule used) {
  std::vector<Point> pts = m.vertices();
  std::vector<VertexProvenance> prov;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) prov.push_back({VertexRole::Original, v});
  const int edge_base = static_cast<int>(pts.size());
  for (std::size_t e = 0; e < bpts.size(); ++e) {
    pts.push_back(bpts[e]);
    prov.push_back({VertexRole::EdgePoint, e});
  }
  const int tri_base = static_cast<int>(pts.size());
  for (std::size_t t = 0; t < z.size(); ++t) {
    pts.push_back(z[t]);
    prov.push_back({VertexRole::TrianglePoint, t});
  }

  std::vector<Triangle> tris;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles()[t];  // counterclockwise
    int z = tri_base + static_cast<int>(t);
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], c = tri[(k + 1) % 3];
      int b = edge_base + static_cast<int>(m.edge_index(a, c));
      tris.push_back({a, b, z});
      tris.push_back({b, c, z});
    }
  }
  Mesh refined(std::move(pts), std::move(tris));

  std::vector<int> edge_r(refined.num_edges(), r), vertex_s(refined.num_vertices(), s);
  auto role = [&](int v) { return prov[static_cast<std::size_t>(v)].role; };
  for (std::size_t e = 0; e < refined.num_edges(); ++e) {
    auto ra = role(refined.edges()[e][0]), rb = role(refined.edges()[e][1]);
    bool zb = (ra == VertexRole::TrianglePoint && rb == VertexRole::EdgePoint) ||
              (ra == VertexRole::EdgePoint && rb == VertexRole::TrianglePoint);
    if (zb) edge_r[e] = s;
  }
  for (std::size_t v = 0; v < refined.num_vertices(); ++v)
    if (prov[v].role == VertexRole::EdgePoint) vertex_s[v] = r;
  SmoothnessSpec spec(refined, std::move(edge_r), std::move(vertex_s));
  return {std::move(refined), std::move(spec), std::move(prov), used};
}

/// Outer triangle (0,0), (9,0), (0,9) with the inner triangle (2,2), (5,2),
/// (2,5), its image under the homothety of ratio 1/3 about the common
/// centroid. Inner vertex i is joined to outer vertices i and i+1; every inner
/// vertex sees four slopes, and the three lines through corresponding inner
/// and outer vertices meet at the centroid.
inline Mesh morgan_scott_mesh() {
  std::vector<Point> v = {{2, 2}, {5, 2}, {2, 5}, {0, 0}, {9, 0}, {0, 9}};
  std::vector<Triangle> t = {{0, 1, 2}, {0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {0, 2, 5}, {0, 3, 5}};
  return Mesh(std::move(v), std::move(t));
}

inline Mesh single_triangle_mesh() { return Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}); }

inline Mesh two_triangle_mesh() { return Mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}}); }

/// Fan around the origin with one boundary vertex per direction. With
/// `generic_radius_perturbation`, the k-th boundary vertex is placed at
/// (1 + k/7) times its direction instead of at the direction itself.
inline Mesh make_vertex_star(const std::vector<Point>& directions, bool generic_radius_perturbation = false) {
  if (directions.size() < 3) throw InvalidArgument("a vertex star needs at least three directions");
  for (const auto& p : directions)
    if (sgn(p.x) == 0 && sgn(p.y) == 0) throw InvalidArgument("zero direction");
  auto upper = [](const Point& p) { return sgn(p.y) > 0 || (sgn(p.y) == 0 && sgn(p.x) > 0); };
  std::vector<Point> dirs = directions;
  std::sort(dirs.begin(), dirs.end(), [&](const Point& a, const Point& b) {
    bool ua = upper(a), ub = upper(b);
    if (ua != ub) return ua;
    return sgn(a.x * b.y - a.y * b.x) > 0;
  });
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const auto& a = dirs[k];
    const auto& b = dirs[(k + 1) % dirs.size()];
    if (sgn(a.x * b.y - a.y * b.x) <= 0)
      throw InvalidArgument("directions do not form a simple fan (repeated direction or an angular gap of at least pi)");
  }
  std::vector<Point> pts{{0, 0}};
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    Rational scale = generic_radius_perturbation ? Rational(1) + Rational(static_cast<long>(k), 7) : Rational(1);
    pts.push_back({dirs[k].x * scale, dirs[k].y * scale});
  }
  std::vector<Triangle> tris;
  const int n = static_cast<int>(dirs.size());
  for (int k = 0; k < n; ++k) tris.push_back({0, k + 1, (k + 1) % n + 1});
  return Mesh(std::move(pts), std::move(tris));
}

/// Directions with pairwise distinct slopes and all angular gaps below pi,
/// for t = 3..8.
inline std::vector<Point> generic_star_directions(int t) {
  switch (t) {
    case 3: return {{3, 1}, {-1, 3}, {-2, -3}};
    case 4: return {{4, 1}, {-1, 3}, {-3, -1}, {2, -3}};
    case 5: return {{5, 1}, {1, 4}, {-4, 2}, {-3, -3}, {2, -5}};
    case 6: return {{6, 1}, {2, 5}, {-3, 4}, {-5, -1}, {-1, -5}, {4, -3}};
    case 7: return {{7, 1}, {4, 5}, {-1, 6}, {-5, 3}, {-6, -2}, {-2, -6}, {4, -5}};
    case 8: return {{8, 1}, {5, 6}, {0, 7}, {-5, 5}, {-8, -2}, {-4, -7}, {1, -8}, {6, -5}};
    default: throw InvalidArgument("generic stars are available for 3 to 8 slopes");
  }
}

/// Crossed square: two full diagonals through the center, two slopes.
inline Mesh crossed_star() { return make_vertex_star({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

inline Mesh generic_star(int t) { return make_vertex_star(generic_star_directions(t)); }


/// Random triangulated disk with at most `max_triangles` triangles and small
/// rational coordinates, reproducible from `seed`. Starts from a triangle or
/// a convex quadrilateral and applies random interior-point splits, edge
/// splits and convex edge flips.
inline Mesh random_disk_mesh(std::uint32_t seed, std::size_t max_triangles = 8) {
  if (max_triangles < 1) throw InvalidArgument("need at least one triangle");
  std::mt19937 rng(seed);
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<Point> pts;
  std::vector<Triangle> tris;
  if (max_triangles >= 2 && roll(0, 1)) {
    pts = {{0, 0}, {12, roll(-2, 2)}, {12 + roll(-2, 2), 12}, {roll(-2, 2), 12}};
    tris = {{0, 1, 2}, {0, 2, 3}};
  } else {
    pts = {{0, 0}, {12, roll(-2, 2)}, {roll(2, 8), 12}};
    tris = {{0, 1, 2}};
  }
  auto ccw = [&](int a, int b, int c) { return sgn(orient2d(pts[a], pts[b], pts[c])) > 0; };
  auto shared = [&](std::size_t t, std::size_t u) {
    std::vector<int> out;
    for (int a : tris[t])
      for (int b : tris[u])
        if (a == b) out.push_back(a);
    return out;
  };
  auto third = [&](std::size_t t, int a, int b) {
    for (int c : tris[t])
      if (c != a && c != b) return c;
    return -1;
  };
  for (int step = 0; step < 40; ++step) {
    int kind = roll(0, 2);
    auto t = static_cast<std::size_t>(roll(0, static_cast<int>(tris.size()) - 1));
    auto [a, b, c] = tris[t];
    if (kind == 0 && tris.size() + 2 <= max_triangles) {
      // interior point with random positive barycentric weights
      int wa = roll(1, 4), wb = roll(1, 4), wc = roll(1, 4);
      Rational w = wa + wb + wc;
      Point p{(wa * pts[a].x + wb * pts[b].x + wc * pts[c].x) / w, (wa * pts[a].y + wb * pts[b].y + wc * pts[c].y) / w};
      int z = static_cast<int>(pts.size());
      pts.push_back(p);
      tris[t] = {a, b, z};
      tris.push_back({b, c, z});
      tris.push_back({c, a, z});
    } else if (kind == 1) {
      // split edge (a, b) of t at a random interior point
      std::optional<std::size_t> u;
      for (std::size_t k = 0; k < tris.size(); ++k)
        if (k != t && shared(t, k).size() == 2) {
          auto sh = shared(t, k);
          if ((sh[0] == a && sh[1] == b) || (sh[0] == b && sh[1] == a)) u = k;
        }
      if (tris.size() + (u ? 2 : 1) > max_triangles) continue;
      Rational lam = ratio(roll(1, 3), 4);
      int m = static_cast<int>(pts.size());
      pts.push_back({pts[a].x + lam * (pts[b].x - pts[a].x), pts[a].y + lam * (pts[b].y - pts[a].y)});
      tris[t] = {a, m, c};
      tris.push_back({m, b, c});
      if (u) {
        int o = third(*u, a, b);
        tris[*u] = {b, m, o};
        tris.push_back({m, a, o});
      }
    } else {
      // flip a shared edge when the quadrilateral is strictly convex
      for (std::size_t k = 0; k < tris.size(); ++k) {
        if (k == t || shared(t, k).size() != 2) continue;
        auto sh = shared(t, k);
        int p = third(t, sh[0], sh[1]), q = third(k, sh[0], sh[1]);
        int e0 = sh[0], e1 = sh[1];
        if (!ccw(p, e0, e1)) std::swap(e0, e1);  // now p, e0, e1 counterclockwise
        if (ccw(p, e0, q) && ccw(q, e1, p)) {
          tris[t] = {p, e0, q};
          tris[k] = {q, e1, p};
        }
        break;
      }
    }
  }
  return Mesh(std::move(pts), std::move(tris));
}

}  // namespace supersplines

#endif  // SUPERSPLINES_REFINE_HPP
