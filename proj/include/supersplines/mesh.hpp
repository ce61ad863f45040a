#ifndef SUPERSPLINES_MESH_HPP
#define SUPERSPLINES_MESH_HPP

// Planar triangulations with rational vertices, smoothness specifications,
// disk validation, stars, slopes and the vertex ordering used by the upper
// bound.

#include <supersplines/polynomial.hpp>
#include <supersplines/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace supersplines {

class MeshError : public std::runtime_error {
 public:
  enum class Kind { Parse, DegenerateTriangle, NonManifoldEdge, DanglingVertex, IndexOutOfRange, Duplicate, Ordering };
  MeshError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FaceCounts {
  std::size_t f0 = 0, f1 = 0, f2 = 0, f0_interior = 0, f1_interior = 0;
  bool operator==(const FaceCounts&) const = default;
};

using Triangle = std::array<int, 3>;
using Edge = std::array<int, 2>;  // sorted: e[0] < e[1]

/// Twice the signed area of (a, b, c).
inline Rational orient2d(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// Direction reduced to coprime integers, sign fixed so that opposite
/// directions coincide.
inline std::pair<Integer, Integer> slope_key(const Point& from, const Point& to) {
  Rational dx = to.x - from.x, dy = to.y - from.y;
  Integer den = lcm(dx.get_den(), dy.get_den());
  Integer a = Rational(dx * den).get_num(), b = Rational(dy * den).get_num();
  Integer g = gcd(a, b);
  if (g == 0) throw InvalidArgument("zero-length direction");
  a /= g;
  b /= g;
  if (sgn(a) < 0 || (sgn(a) == 0 && sgn(b) < 0)) {
    a = -a;
    b = -b;
  }
  return {a, b};
}

class Mesh {
 public:
  Mesh() = default;

  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles)
      : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    build();
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Point& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  /// Triangles containing edge e (one or two).
  const std::vector<int>& edge_triangles(std::size_t e) const { return edge_tris_.at(e); }
  bool edge_interior(std::size_t e) const { return edge_tris_.at(e).size() == 2; }
  bool vertex_interior(int v) const { return vertex_interior_.at(static_cast<std::size_t>(v)); }

  /// Edges incident to vertex v.
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_.at(static_cast<std::size_t>(v)); }
  /// Triangles incident to vertex v.
  const std::vector<int>& vertex_triangles(int v) const { return vertex_tris_.at(static_cast<std::size_t>(v)); }

  std::optional<std::size_t> find_edge(int a, int b) const {
    auto it = edge_index_.find(a < b ? Edge{a, b} : Edge{b, a});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t edge_index(int a, int b) const {
    auto e = find_edge(a, b);
    if (!e) throw InvalidArgument("no edge between the given vertices");
    return *e;
  }

  int other_endpoint(std::size_t e, int v) const {
    const auto& ed = edges_.at(e);
    if (ed[0] == v) return ed[1];
    if (ed[1] == v) return ed[0];
    throw InvalidArgument("vertex is not an endpoint of the edge");
  }

  std::array<std::size_t, 3> triangle_edges(int t) const {
    const auto& tri = triangles_.at(static_cast<std::size_t>(t));
    return {edge_index(tri[0], tri[1]), edge_index(tri[1], tri[2]), edge_index(tri[2], tri[0])};
  }

  FaceCounts counts() const {
    FaceCounts c;
    c.f0 = vertices_.size();
    c.f1 = edges_.size();
    c.f2 = triangles_.size();
    for (std::size_t e = 0; e < edges_.size(); ++e) c.f1_interior += edge_interior(e);
    for (bool b : vertex_interior_) c.f0_interior += b;
    return c;
  }

  std::vector<int> interior_vertices() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (vertex_interior_[v]) out.push_back(static_cast<int>(v));
    return out;
  }

  std::vector<std::size_t> interior_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edge_interior(e)) out.push_back(e);
    return out;
  }

  LinearForm3 edge_form(std::size_t e) const {
    return edge_linear_form(vertex(edges_.at(e)[0]), vertex(edges_.at(e)[1]));
  }

 private:
  void build() {
    const int n = static_cast<int>(vertices_.size());
    {
      std::set<std::pair<Rational, Rational>> seen;
      for (const auto& p : vertices_)
        if (!seen.insert({p.x, p.y}).second)
          throw MeshError(MeshError::Kind::Duplicate, "duplicate vertex (" + to_string(p.x) + ", " + to_string(p.y) + ")");
    }
    std::set<Triangle> tri_seen;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      auto& tri = triangles_[t];
      for (int v : tri)
        if (v < 0 || v >= n)
          throw MeshError(MeshError::Kind::IndexOutOfRange, "triangle " + std::to_string(t) + " has vertex index out of range");
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
        throw MeshError(MeshError::Kind::DegenerateTriangle, "triangle " + std::to_string(t) + " repeats a vertex");
      auto area = orient2d(vertex(tri[0]), vertex(tri[1]), vertex(tri[2]));
      if (sgn(area) == 0)
        throw MeshError(MeshError::Kind::DegenerateTriangle, "triangle " + std::to_string(t) + " has zero area");
      if (sgn(area) < 0) std::swap(tri[1], tri[2]);
      Triangle key = tri;
      std::sort(key.begin(), key.end());
      if (!tri_seen.insert(key).second)
        throw MeshError(MeshError::Kind::Duplicate, "duplicate triangle " + std::to_string(t));
    }
    std::map<Edge, std::vector<int>> adj;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      const auto& tri = triangles_[t];
      for (int k = 0; k < 3; ++k) {
        int a = tri[k], b = tri[(k + 1) % 3];
        adj[a < b ? Edge{a, b} : Edge{b, a}].push_back(static_cast<int>(t));
      }
    }
    vertex_edges_.assign(vertices_.size(), {});
    vertex_tris_.assign(vertices_.size(), {});
    vertex_interior_.assign(vertices_.size(), true);
    for (auto& [e, tris] : adj) {
      if (tris.size() > 2)
        throw MeshError(MeshError::Kind::NonManifoldEdge, "edge [" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                                                              "] belongs to more than two triangles");
      std::size_t idx = edges_.size();
      edge_index_[e] = idx;
      edges_.push_back(e);
      edge_tris_.push_back(tris);
      vertex_edges_[e[0]].push_back(static_cast<int>(idx));
      vertex_edges_[e[1]].push_back(static_cast<int>(idx));
      if (tris.size() == 1) vertex_interior_[e[0]] = vertex_interior_[e[1]] = false;
    }
    for (std::size_t t = 0; t < triangles_.size(); ++t)
      for (int v : triangles_[t]) vertex_tris_[v].push_back(static_cast<int>(t));
    for (int v = 0; v < n; ++v)
      if (vertex_tris_[v].empty())
        throw MeshError(MeshError::Kind::DanglingVertex, "vertex " + std::to_string(v) + " belongs to no triangle");
  }

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::map<Edge, std::size_t> edge_index_;
  std::vector<std::vector<int>> edge_tris_;
  std::vector<std::vector<int>> vertex_edges_, vertex_tris_;
  std::vector<bool> vertex_interior_;
};

/// Smoothness order r per edge (-1 on boundary edges, which carry no
/// constraint) and supersmoothness order s per vertex.
///
/// An edge may carry more smoothness than one of its endpoints requires
/// (r_tau > s_gamma); the edge ideal then uses the effective endpoint order
/// max(s_gamma, r_tau), which describes the same space since
/// <l^{r+1}> lies in every lower power of the vertex ideal.
class SmoothnessSpec {
 public:
  SmoothnessSpec() = default;

  SmoothnessSpec(const Mesh& m, std::vector<int> edge_r, std::vector<int> vertex_s)
      : edge_r_(std::move(edge_r)), vertex_s_(std::move(vertex_s)) {
    if (edge_r_.size() != m.num_edges() || vertex_s_.size() != m.num_vertices())
      throw InvalidArgument("smoothness specification does not match the mesh");
    for (std::size_t e = 0; e < edge_r_.size(); ++e) {
      if (!m.edge_interior(e)) edge_r_[e] = -1;
      else if (edge_r_[e] < 0) throw InvalidArgument("negative edge smoothness");
    }
    for (int s : vertex_s_)
      if (s < 0) throw InvalidArgument("negative vertex supersmoothness");
  }

  /// r on every interior edge, s at every vertex. Requires s >= r.
  static SmoothnessSpec uniform(const Mesh& m, int r, int s) {
    if (r < 0 || s < r) throw InvalidArgument("uniform smoothness requires 0 <= r <= s");
    return SmoothnessSpec(m, std::vector<int>(m.num_edges(), r), std::vector<int>(m.num_vertices(), s));
  }

  int r(std::size_t e) const { return edge_r_.at(e); }
  int s(int v) const { return vertex_s_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& edge_r() const { return edge_r_; }
  const std::vector<int>& vertex_s() const { return vertex_s_; }

  /// Supersmoothness at v as seen by the ideal of edge e.
  int effective_s(std::size_t e, int v) const { return std::max(s(v), r(e)); }

  int max_s() const { return vertex_s_.empty() ? 0 : *std::max_element(vertex_s_.begin(), vertex_s_.end()); }
  int max_r() const {
    int best = 0;
    for (int r : edge_r_) best = std::max(best, r);
    return best;
  }

  /// Common (r, s) when every interior edge has the same r and every vertex
  /// has the same s.
  std::optional<std::pair<int, int>> uniform_values() const {
    std::optional<int> r, s;
    for (int v : edge_r_) {
      if (v < 0) continue;
      if (r && *r != v) return std::nullopt;
      r = v;
    }
    for (int v : vertex_s_) {
      if (s && *s != v) return std::nullopt;
      s = v;
    }
    if (!s) return std::nullopt;
    return std::pair{r.value_or(0), *s};
  }

  SmoothnessSpec with_edge_r(std::size_t e, int r) const {
    auto copy = *this;
    copy.edge_r_.at(e) = r;
    return copy;
  }
  SmoothnessSpec with_vertex_s(int v, int s) const {
    auto copy = *this;
    copy.vertex_s_.at(static_cast<std::size_t>(v)) = s;
    return copy;
  }

  bool operator==(const SmoothnessSpec&) const = default;

 private:
  std::vector<int> edge_r_;
  std::vector<int> vertex_s_;
};

// ---- IO -------------------------------------------------------------------

/// Smoothness block of a mesh document before it is resolved against a mesh.
struct SmoothnessInput {
  std::optional<int> default_r, default_s;
  std::vector<std::array<int, 3>> edge_r;  // (i, j, r)
  std::vector<std::array<int, 2>> vertex_s;  // (v, s)
};

struct MeshDocument {
  Mesh mesh;
  std::optional<SmoothnessInput> smoothness;
};

/// Resolves explicit entries over defaults; `r`/`s` fill in defaults the
/// document does not give (or override them when `force` is set).
inline SmoothnessSpec resolve_smoothness(const Mesh& m, const std::optional<SmoothnessInput>& in, std::optional<int> r,
                                         std::optional<int> s, bool force = false) {
  int dr = 0, ds = 0;
  bool have_r = false, have_s = false;
  if (in && in->default_r) dr = *in->default_r, have_r = true;
  if (in && in->default_s) ds = *in->default_s, have_s = true;
  if (r && (force || !have_r)) dr = *r, have_r = true;
  if (s && (force || !have_s)) ds = *s, have_s = true;
  if (!have_s) ds = dr;
  if (dr < 0 || ds < dr) throw InvalidArgument("default smoothness requires 0 <= r <= s");
  std::vector<int> edge_r(m.num_edges(), dr), vertex_s(m.num_vertices(), ds);
  if (in) {
    for (const auto& [a, b, rv] : in->edge_r) {
      auto e = m.find_edge(a, b);
      if (!e) throw InvalidArgument("smoothness entry names a non-existent edge");
      edge_r[*e] = rv;
    }
    for (const auto& [v, sv] : in->vertex_s) {
      if (v < 0 || static_cast<std::size_t>(v) >= m.num_vertices())
        throw InvalidArgument("smoothness entry names a non-existent vertex");
      vertex_s[static_cast<std::size_t>(v)] = sv;
    }
  }
  return SmoothnessSpec(m, std::move(edge_r), std::move(vertex_s));
}

inline Rational parse_coordinate(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw MeshError(MeshError::Kind::Parse, "coordinates must be integers or \"p/q\" strings");
}

inline MeshDocument mesh_document_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Point> verts;
    for (const auto& v : doc.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw MeshError(MeshError::Kind::Parse, "vertex must be a pair");
      verts.push_back({parse_coordinate(v[0]), parse_coordinate(v[1])});
    }
    std::vector<Triangle> tris;
    for (const auto& t : doc.at("triangles")) {
      if (!t.is_array() || t.size() != 3) throw MeshError(MeshError::Kind::Parse, "triangle must be a triple");
      tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    MeshDocument out{Mesh(std::move(verts), std::move(tris)), std::nullopt};
    if (doc.contains("smoothness")) {
      const auto& sm = doc.at("smoothness");
      SmoothnessInput in;
      if (sm.contains("default_r")) in.default_r = sm.at("default_r").get<int>();
      if (sm.contains("default_s")) in.default_s = sm.at("default_s").get<int>();
      if (sm.contains("edge_r"))
        for (const auto& e : sm.at("edge_r")) in.edge_r.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
      if (sm.contains("vertex_s"))
        for (const auto& e : sm.at("vertex_s")) in.vertex_s.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      out.smoothness = std::move(in);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(MeshError::Kind::Parse, std::string("malformed mesh document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw MeshError(MeshError::Kind::Parse, std::string("malformed mesh document: ") + e.what());
  }
}

inline MeshDocument parse_mesh_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(MeshError::Kind::Parse, std::string("mesh is not valid JSON: ") + e.what());
  }
  return mesh_document_from_json(doc);
}

inline MeshDocument load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError(MeshError::Kind::Parse, "cannot open mesh file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh_document(ss.str());
}

inline Mesh load_mesh(const std::string& text) { return parse_mesh_document(text).mesh; }

inline nlohmann::json to_json(const Mesh& m, const SmoothnessSpec* spec = nullptr) {
  nlohmann::json verts = nlohmann::json::array(), tris = nlohmann::json::array();
  for (const auto& p : m.vertices()) verts.push_back({to_string(p.x), to_string(p.y)});
  for (const auto& t : m.triangles()) tris.push_back({t[0], t[1], t[2]});
  nlohmann::json doc = {{"vertices", verts}, {"triangles", tris}};
  if (spec) {
    nlohmann::json er = nlohmann::json::array(), vs = nlohmann::json::array();
    for (std::size_t e = 0; e < m.num_edges(); ++e)
      if (m.edge_interior(e)) er.push_back({m.edges()[e][0], m.edges()[e][1], spec->r(e)});
    for (std::size_t v = 0; v < m.num_vertices(); ++v) vs.push_back({static_cast<int>(v), spec->s(static_cast<int>(v))});
    doc["smoothness"] = {{"edge_r", er}, {"vertex_s", vs}};
  }
  return doc;
}

// ---- topology -------------------------------------------------------------

struct DiskReport {
  bool ok = true;
  std::string failed;  // name of the failing property
  std::string detail;
};

inline DiskReport validate_disk(const Mesh& m) {
  auto fail = [](std::string prop, std::string detail) { return DiskReport{false, std::move(prop), std::move(detail)}; };
  if (m.num_triangles() == 0) return fail("connected", "mesh has no triangles");

  // connectivity through shared vertices
  {
    std::vector<char> seen(m.num_triangles(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int v : m.triangles()[t])
        for (int u : m.vertex_triangles(v))
          if (!seen[u]) seen[u] = 1, ++count, q.push(u);
    }
    if (count != m.num_triangles()) return fail("connected", "triangles form more than one component");
  }

  // hereditary: the triangles around each vertex are linked by interior edges through it
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const auto& tris = m.vertex_triangles(static_cast<int>(v));
    std::set<int> reached{tris.front()};
    std::vector<int> stack{tris.front()};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (auto e : m.triangle_edges(t)) {
        const auto& ed = m.edges()[e];
        if (ed[0] != static_cast<int>(v) && ed[1] != static_cast<int>(v)) continue;
        for (int u : m.edge_triangles(e))
          if (reached.insert(u).second) stack.push_back(u);
      }
    }
    if (reached.size() != tris.size())
      return fail("hereditary", "triangles around vertex " + std::to_string(v) + " are not connected through edges");
  }

  auto c = m.counts();
  long long chi = static_cast<long long>(c.f0) - static_cast<long long>(c.f1) + static_cast<long long>(c.f2);
  if (chi != 1) return fail("euler-characteristic", "f0 - f1 + f2 = " + std::to_string(chi));

  // boundary is one simple cycle
  std::map<int, int> bdeg;
  std::vector<std::size_t> bedges;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (m.edge_interior(e)) continue;
    bedges.push_back(e);
    ++bdeg[m.edges()[e][0]];
    ++bdeg[m.edges()[e][1]];
  }
  for (auto [v, d] : bdeg)
    if (d != 2) return fail("boundary-cycle", "boundary vertex " + std::to_string(v) + " has " + std::to_string(d) + " boundary edges");
  if (!bedges.empty()) {
    std::set<int> seen{m.edges()[bedges[0]][0]};
    std::vector<int> stack{m.edges()[bedges[0]][0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : m.vertex_edges(v)) {
        if (m.edge_interior(static_cast<std::size_t>(e))) continue;
        int u = m.other_endpoint(static_cast<std::size_t>(e), v);
        if (seen.insert(u).second) stack.push_back(u);
      }
    }
    if (seen.size() != bdeg.size()) return fail("boundary-cycle", "boundary edges form more than one cycle");
  }
  return {};
}

struct StarResult {
  Mesh mesh;
  std::vector<int> original_index;  // new vertex -> original vertex
  int center = 0;                   // index of v in the star
};

inline StarResult star(const Mesh& m, int v) {
  if (v < 0 || static_cast<std::size_t>(v) >= m.num_vertices()) throw InvalidArgument("vertex index out of range");
  std::map<int, int> remap;
  StarResult out;
  auto id = [&](int u) {
    auto [it, ins] = remap.try_emplace(u, static_cast<int>(out.original_index.size()));
    if (ins) out.original_index.push_back(u);
    return it->second;
  };
  out.center = id(v);
  std::vector<Triangle> tris;
  for (int t : m.vertex_triangles(v)) {
    const auto& tri = m.triangles()[t];
    tris.push_back({id(tri[0]), id(tri[1]), id(tri[2])});
  }
  std::vector<Point> pts;
  for (int u : out.original_index) pts.push_back(m.vertex(u));
  out.mesh = Mesh(std::move(pts), std::move(tris));
  return out;
}

inline std::size_t distinct_slopes_at(const Mesh& m, int v) {
  std::set<std::pair<Integer, Integer>> dirs;
  for (int e : m.vertex_edges(v)) dirs.insert(slope_key(m.vertex(v), m.vertex(m.other_endpoint(static_cast<std::size_t>(e), v))));
  return dirs.size();
}

/// Whether every interior vertex has two earlier-or-boundary neighbours
/// joined to it by edges of different slopes.
inline bool check_vertex_ordering(const Mesh& m, const std::vector<int>& order) {
  if (order.size() != m.num_vertices()) return false;
  std::vector<int> pos(m.num_vertices(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= m.num_vertices() || pos[v] >= 0) return false;
    pos[v] = static_cast<int>(i);
  }
  for (int v : m.interior_vertices()) {
    std::set<std::pair<Integer, Integer>> dirs;
    for (int e : m.vertex_edges(v)) {
      int u = m.other_endpoint(static_cast<std::size_t>(e), v);
      if (!m.vertex_interior(u) || pos[u] < pos[v]) dirs.insert(slope_key(m.vertex(v), m.vertex(u)));
    }
    if (dirs.size() < 2) return false;
  }
  return true;
}

/// Boundary vertices first, then interior vertices as soon as two placed
/// neighbours with different slopes exist. Placing a vertex never makes
/// another vertex ineligible, so the greedy closure finds an ordering
/// whenever one exists.
inline std::vector<int> vertex_ordering(const Mesh& m) {
  std::vector<int> order;
  std::vector<char> placed(m.num_vertices(), 0);
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    if (!m.vertex_interior(static_cast<int>(v))) order.push_back(static_cast<int>(v)), placed[v] = 1;
  auto interior = m.interior_vertices();
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v : interior) {
      if (placed[v]) continue;
      std::set<std::pair<Integer, Integer>> dirs;
      for (int e : m.vertex_edges(v)) {
        int u = m.other_endpoint(static_cast<std::size_t>(e), v);
        if (placed[u]) dirs.insert(slope_key(m.vertex(v), m.vertex(u)));
      }
      if (dirs.size() >= 2) {
        order.push_back(v);
        placed[v] = 1;
        progress = true;
      }
    }
  }
  if (order.size() != m.num_vertices())
    throw MeshError(MeshError::Kind::Ordering, "no vertex ordering with two earlier neighbours of distinct slopes exists");
  return order;
}

}  // namespace supersplines

#endif  // SUPERSPLINES_MESH_HPP
