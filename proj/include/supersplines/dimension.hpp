#ifndef SUPERSPLINES_DIMENSION_HPP
#define SUPERSPLINES_DIMENSION_HPP

// Dimensions of superspline spaces: the kernel computation, the homology
// correction term, lower and upper bounds, and closed forms for special
// configurations.

#include <supersplines/ideals.hpp>
#include <supersplines/matrix.hpp>
#include <supersplines/mesh.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace supersplines {

struct DimensionReport {
  int d = 0;
  std::int64_t term_polys = 0;  // f2 * C(d+2,2)
  std::int64_t term_edges = 0;  // sum of dim J(tau)_d
  std::int64_t term_vertices_full = 0, term_vertices_bar = 0, term_vertices_tilde = 0;
  std::int64_t h0_dim = 0;
  std::int64_t lb_51 = 0, lb_52 = 0, ub_53 = 0;
  std::int64_t lb_51_raw = 0, lb_52_raw = 0;  // before taking the max with C(d+2,2)
  std::int64_t exact = 0;
  std::string method = "exact";

  /// exact = C(d+2,2) + edges - vertices + H0
  bool euler_holds() const { return exact == binom(d + 2, 2) + term_edges - term_vertices_full + h0_dim; }
  bool sandwich_holds() const { return lb_52 <= lb_51 && lb_51 <= exact && exact <= ub_53; }
};

/// A mesh with a smoothness specification; owns the edge and vertex ideals
/// and memoizes every per-degree quantity, so tables that query the same
/// terms repeatedly stay cheap. Safe to share across threads.
class SplineProblem {
 public:
  SplineProblem(Mesh mesh, SmoothnessSpec spec) : mesh_(std::move(mesh)), spec_(std::move(spec)) {
    if (spec_.edge_r().size() != mesh_.num_edges() || spec_.vertex_s().size() != mesh_.num_vertices())
      throw InvalidArgument("smoothness specification does not match the mesh");
    auto disk = validate_disk(mesh_);
    if (!disk.ok) throw InvalidArgument("mesh is not a disk (" + disk.failed + "): " + disk.detail);
    edge_ideals_.resize(mesh_.num_edges());
    for (auto e : mesh_.interior_edges()) edge_ideals_[e] = mesh_edge_ideal(mesh_, spec_, e);
    for (int v : mesh_.interior_vertices()) {
      full_[v] = vertex_ideal(mesh_, spec_, v, VertexIdealVariant::Full);
      bar_[v] = vertex_ideal(mesh_, spec_, v, VertexIdealVariant::Bar);
    }
  }

  const Mesh& mesh() const { return mesh_; }
  const SmoothnessSpec& spec() const { return spec_; }

  const GradedIdeal& edge_ideal_of(std::size_t e) const {
    if (!edge_ideals_.at(e)) throw InvalidArgument("boundary edge has no ideal");
    return *edge_ideals_[e];
  }
  const GradedIdeal& vertex_ideal_of(int v, VertexIdealVariant variant) const {
    if (variant == VertexIdealVariant::Tilde) {
      std::lock_guard lock(mu_);
      if (!tilde_.count(v)) {
        const auto& ord = ordering_locked();
        tilde_[v] = vertex_ideal(mesh_, spec_, v, VertexIdealVariant::Tilde, &ord);
      }
      return tilde_.at(v);
    }
    const auto& map = variant == VertexIdealVariant::Full ? full_ : bar_;
    auto it = map.find(v);
    if (it == map.end()) throw InvalidArgument("vertex ideals are defined at interior vertices");
    return it->second;
  }

  const std::vector<int>& ordering() const {
    std::lock_guard lock(mu_);
    return ordering_locked();
  }

  std::int64_t sum_edge_dims(int d) const {
    std::int64_t sum = 0;
    for (auto e : mesh_.interior_edges()) sum += static_cast<std::int64_t>(edge_ideals_[e]->graded_dim(d));
    return sum;
  }

  std::int64_t sum_vertex_dims(int d, VertexIdealVariant variant) const {
    std::int64_t sum = 0;
    for (int v : mesh_.interior_vertices()) sum += static_cast<std::int64_t>(vertex_ideal_of(v, variant).graded_dim(d));
    return sum;
  }

  /// dim S_d^{r,s} as the kernel of the stacked edge constraints.
  std::int64_t exact(int d) const {
    check_degree(d);
    return memo(exact_memo_, d, [&] { return compute_exact(d); });
  }

  /// dim H0 of the ideal complex in degree d.
  std::int64_t h0(int d) const {
    check_degree(d);
    return memo(h0_memo_, d, [&] { return compute_h0(d); });
  }

  /// Homological lower bound. Global polynomials are always splines, so the
  /// bound is never reported below C(d+2,2); the unclamped value is lb51_raw.
  std::int64_t lb51(int d) const { return std::max(binom(d + 2, 2), lb51_raw(d)); }
  std::int64_t lb52(int d) const { return std::max(binom(d + 2, 2), lb52_raw(d)); }

  std::int64_t lb51_raw(int d) const {
    check_degree(d);
    return binom(d + 2, 2) + sum_edge_dims(d) - sum_vertex_dims(d, VertexIdealVariant::Full);
  }

  /// Lower bound with the simplified vertex ideals; closed form when r and
  /// s are uniform, rank computations otherwise.
  std::int64_t lb52_raw(int d) const {
    check_degree(d);
    auto uni = spec_.uniform_values();
    if (uni && uni->first <= uni->second) {
      auto [r, s] = *uni;
      std::int64_t val = binom(d + 2, 2);
      val += static_cast<std::int64_t>(mesh_.interior_edges().size()) * dim_edge_ideal_closed(r, s, d);
      for (int v : mesh_.interior_vertices())
        val -= dim_vertex_star_ideal_closed(static_cast<int>(distinct_slopes_at(mesh_, v)), r, s, d);
      return val;
    }
    return binom(d + 2, 2) + sum_edge_dims(d) - sum_vertex_dims(d, VertexIdealVariant::Bar);
  }

  std::int64_t ub53(int d) const {
    check_degree(d);
    return binom(d + 2, 2) + sum_edge_dims(d) - sum_vertex_dims(d, VertexIdealVariant::Tilde);
  }

  DimensionReport report(int d) const {
    DimensionReport rep;
    rep.d = d;
    rep.term_polys = static_cast<std::int64_t>(mesh_.num_triangles()) * binom(d + 2, 2);
    rep.term_edges = sum_edge_dims(d);
    rep.term_vertices_full = sum_vertex_dims(d, VertexIdealVariant::Full);
    rep.term_vertices_bar = sum_vertex_dims(d, VertexIdealVariant::Bar);
    rep.term_vertices_tilde = sum_vertex_dims(d, VertexIdealVariant::Tilde);
    rep.h0_dim = h0(d);
    rep.lb_51_raw = binom(d + 2, 2) + rep.term_edges - rep.term_vertices_full;
    rep.lb_52_raw = lb52_raw(d);
    rep.lb_51 = std::max(binom(d + 2, 2), rep.lb_51_raw);
    rep.lb_52 = std::max(binom(d + 2, 2), rep.lb_52_raw);
    rep.ub_53 = ub53(d);
    rep.exact = exact(d);
    return rep;
  }

 private:
  static void check_degree(int d) {
    if (d < 0) throw InvalidArgument("negative degree");
  }

  template <class F>
  std::int64_t memo(std::map<int, std::int64_t>& table, int d, F&& compute) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = table.find(d); it != table.end()) return it->second;
    }
    auto value = compute();
    std::lock_guard lock(mu_);
    table.emplace(d, value);
    return value;
  }

  const std::vector<int>& ordering_locked() const {
    if (!ordering_) ordering_ = vertex_ordering(mesh_);
    return *ordering_;
  }

  std::int64_t compute_exact(int d) const {
    const std::size_t n = monomial_count(d);
    const std::size_t T = mesh_.num_triangles();
    const std::size_t N = T * n;
    auto interior = mesh_.interior_edges();
    if (interior.empty()) return static_cast<std::int64_t>(N);

    // Spanning tree of the dual graph. Columns not in a tree edge's ideal
    // belong to the child triangle and are eliminated first, deepest
    // triangles first, so tree rows become pivots without any reduction.
    std::vector<std::int64_t> parent_edge(T, -1);
    std::vector<char> seen(T, 0);
    std::vector<int> bfs{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < bfs.size(); ++h) {
      int t = bfs[h];
      for (auto e : mesh_.triangle_edges(t)) {
        if (!mesh_.edge_interior(e)) continue;
        for (int u : mesh_.edge_triangles(e))
          if (!seen[u]) seen[u] = 1, parent_edge[u] = static_cast<std::int64_t>(e), bfs.push_back(u);
      }
    }

    std::map<std::size_t, std::vector<SparseRow>> rref;
    for (auto e : interior) rref[e] = edge_ideals_[e]->reduced_basis(d);

    auto is_tree = [&](std::size_t e) {
      const auto& tr = mesh_.edge_triangles(e);
      return parent_edge[tr[0]] == static_cast<std::int64_t>(e) || parent_edge[tr[1]] == static_cast<std::int64_t>(e);
    };

    std::vector<std::uint32_t> order;
    order.reserve(N);
    std::vector<char> used(N, 0);
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
      int t = *it;
      if (parent_edge[t] < 0) continue;
      std::vector<char> pivot(n, 0);
      for (const auto& row : rref[static_cast<std::size_t>(parent_edge[t])]) pivot[row.front().col] = 1;
      for (std::size_t k = 0; k < n; ++k)
        if (!pivot[k]) {
          auto c = static_cast<std::uint32_t>(t * n + k);
          order.push_back(c);
          used[c] = 1;
        }
    }
    for (std::size_t c = 0; c < N; ++c)
      if (!used[c]) order.push_back(static_cast<std::uint32_t>(c));

    RowEchelon ech(N, order);
    auto add_edge_rows = [&](std::size_t e) {
      const auto& tris = mesh_.edge_triangles(e);
      std::size_t s0 = static_cast<std::size_t>(std::min(tris[0], tris[1]));
      std::size_t s1 = static_cast<std::size_t>(std::max(tris[0], tris[1]));
      const auto& basis = rref[e];
      // column k of the reduced basis: (pivot column, coefficient) pairs
      std::vector<std::vector<std::pair<std::uint32_t, Rational>>> col(n);
      std::vector<char> pivot(n, 0);
      for (const auto& row : basis) {
        auto q = row.front().col;
        pivot[q] = 1;
        for (const auto& en : row)
          if (en.col != q) col[en.col].push_back({q, en.val});
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (pivot[k]) continue;
        SparseRow local{{static_cast<std::uint32_t>(k), Rational(1)}};
        for (const auto& [q, v] : col[k]) local.push_back({q, -v});
        std::sort(local.begin(), local.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
        SparseRow row;
        row.reserve(2 * local.size());
        for (const auto& en : local) row.push_back({static_cast<std::uint32_t>(s0 * n + en.col), en.val});
        for (const auto& en : local) row.push_back({static_cast<std::uint32_t>(s1 * n + en.col), -en.val});
        ech.insert(row);
      }
    };
    for (auto e : interior)
      if (is_tree(e)) add_edge_rows(e);
    for (auto e : interior)
      if (!is_tree(e)) add_edge_rows(e);
    return static_cast<std::int64_t>(N - ech.rank());
  }

  std::int64_t compute_h0(int d) const {
    auto verts = mesh_.interior_vertices();
    if (verts.empty()) return 0;
    const std::size_t n = monomial_count(d);
    std::map<int, std::size_t> block;
    for (std::size_t i = 0; i < verts.size(); ++i) block[verts[i]] = i;
    std::int64_t total = sum_vertex_dims(d, VertexIdealVariant::Full);
    RowEchelon ech(verts.size() * n);
    for (auto e : mesh_.interior_edges()) {
      const auto& ed = mesh_.edges()[e];  // ed[0] < ed[1]
      bool lo = mesh_.vertex_interior(ed[0]), hi = mesh_.vertex_interior(ed[1]);
      if (!lo && !hi) continue;
      for (const auto& g : edge_ideals_[e]->graded_basis(d)) {
        SparseRow row;
        if (lo)
          for (const auto& en : g) row.push_back({static_cast<std::uint32_t>(block[ed[0]] * n + en.col), -en.val});
        if (hi)
          for (const auto& en : g) row.push_back({static_cast<std::uint32_t>(block[ed[1]] * n + en.col), en.val});
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
        ech.insert(row);
      }
    }
    return total - static_cast<std::int64_t>(ech.rank());
  }

  Mesh mesh_;
  SmoothnessSpec spec_;
  std::vector<std::optional<GradedIdeal>> edge_ideals_;
  std::map<int, GradedIdeal> full_, bar_;
  mutable std::map<int, GradedIdeal> tilde_;
  mutable std::optional<std::vector<int>> ordering_;
  mutable std::map<int, std::int64_t> exact_memo_, h0_memo_;
  mutable std::mutex mu_;
};

inline std::int64_t exact_dimension(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).exact(d); }
inline std::int64_t h0_dimension(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).h0(d); }
inline std::int64_t lower_bound_51(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).lb51(d); }
inline std::int64_t lower_bound_52(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).lb52(d); }
inline std::int64_t upper_bound_53(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).ub53(d); }
inline DimensionReport euler_assembly(const Mesh& m, const SmoothnessSpec& spec, int d) { return SplineProblem(m, spec).report(d); }

// ---- vertex stars -------------------------------------------------------------

struct StarProfile {
  int center = 0;
  std::int64_t t = 0;
  std::int64_t f1_interior = 0;
  std::int64_t Omega = 0, a = 0, b = 0;
};

/// Profile of a mesh that is the star of its single interior vertex.
inline StarProfile star_profile(const Mesh& star, int r) {
  auto interior = star.interior_vertices();
  if (interior.size() != 1) throw InvalidArgument("not a vertex star: expected exactly one interior vertex");
  int c = interior.front();
  if (star.vertex_triangles(c).size() != star.num_triangles())
    throw InvalidArgument("not a vertex star: some triangle misses the center");
  StarProfile p;
  p.center = c;
  p.t = static_cast<std::int64_t>(distinct_slopes_at(star, c));
  p.f1_interior = static_cast<std::int64_t>(star.interior_edges().size());
  auto sp = vertex_socle_params(static_cast<int>(p.t), r);
  p.Omega = sp.Omega;
  p.a = sp.a;
  p.b = sp.b;
  return p;
}

/// Smoothness used for stars: r on the spokes, s at the center, r on the link.
inline SmoothnessSpec star_spec(const Mesh& star, int r, int s) {
  auto p = star_profile(star, r);
  auto spec = SmoothnessSpec::uniform(star, r, r);
  return spec.with_vertex_s(p.center, s);
}

inline std::int64_t vertex_star_dim(const Mesh& star, int r, int s, int d) {
  if (r < 0 || s < r || d < 0) throw InvalidArgument("vertex star formula requires 0 <= r <= s and d >= 0");
  auto p = star_profile(star, r);
  return binom(d + 2, 2) + p.f1_interior * dim_edge_ideal_boundary_closed(r, s, d) -
         dim_vertex_star_ideal_closed(static_cast<int>(p.t), r, s, d);
}

inline std::int64_t schumaker_dim(const Mesh& star, int r, int d) {
  if (r < 0 || d < 0) throw InvalidArgument("negative order");
  auto p = star_profile(star, r);
  return binom(d + 2, 2) + (p.f1_interior - p.t) * binom(d - r + 1, 2) + p.b * binom(d + 2 - p.Omega, 2) +
         p.a * binom(d - p.Omega + 1, 2);
}

inline std::int64_t argyris_dim(const Mesh& m, int r) {
  if (r < 0) throw InvalidArgument("negative order");
  auto disk = validate_disk(m);
  if (!disk.ok) throw InvalidArgument("mesh is not a disk (" + disk.failed + ")");
  auto c = m.counts();
  return binom(2 * r + 2, 2) * static_cast<std::int64_t>(c.f0) + binom(r + 1, 2) * static_cast<std::int64_t>(c.f1) +
         binom(r, 2) * static_cast<std::int64_t>(c.f2);
}

struct IntrinsicOrder {
  int order = 0;
  bool generic = true;  // every interior edge has its own slope
};

inline IntrinsicOrder intrinsic_supersmoothness_order(const Mesh& star, int r) {
  auto p = star_profile(star, r);
  return {static_cast<int>((r + 1) / (p.t - 1) + r), p.f1_interior == p.t};
}

inline bool is_degenerate(const Mesh& star, int r, int s) {
  if (s < r) throw InvalidArgument("supersmoothness below edge smoothness");
  return schumaker_dim(star, r, s) == binom(s + 2, 2);
}

// ---- Powell-Sabin -----------------------------------------------------------

inline bool ps_formula_applies(int r, int s, int d) { return r >= 0 && s >= std::max(r, 2 * r - 1) && d >= 2 * s - r + 1; }

/// dim J(B)_d at a split point B on an interior edge, for d >= 2s-r. The
/// last term comes from the syzygies x^{s+1-i}y^i z^i, i = 1..s-r, of the
/// monomial model <y^{s+1}, x^{s+1-i}y^i, x^{s+1-i}z^i>.
inline std::int64_t ps_edge_point_ideal_dim(int r, int s, int d) {
  return 2 * static_cast<std::int64_t>(s - r + 1) * binom(d - s + 1, 2) - (2 * static_cast<std::int64_t>(s - r) + 1) * binom(d - s, 2) -
         binom(d - s - r, 2) + binom(d - 2 * s + r, 2);
}

/// Dimension on the Powell-Sabin 6-split of `original`, computed from the
/// face counts of the original mesh.
inline std::int64_t ps_dim_general(const Mesh& original, int r, int s, int d) {
  if (!ps_formula_applies(r, s, d))
    throw std::out_of_range("Powell-Sabin closed form requires s >= max(r, 2r-1) and d >= 2s-r+1");
  auto disk = validate_disk(original);
  if (!disk.ok) throw InvalidArgument("mesh is not a disk (" + disk.failed + ")");
  auto c = original.counts();
  auto f2 = static_cast<std::int64_t>(c.f2);
  auto f0i = static_cast<std::int64_t>(c.f0_interior), f1i = static_cast<std::int64_t>(c.f1_interior);
  std::int64_t dimJB = ps_edge_point_ideal_dim(r, s, d);
  std::int64_t sq = static_cast<std::int64_t>(d - s) * (d - s) - binom(d - 2 * s + r, 2);
  return binom(d + 2, 2) + 3 * f2 * binom(d - s + 1, 2) + 3 * f2 * sq +
         2 * f1i * ((s - r + 1) * binom(d - s + 1, 2) - (s - r) * binom(d - s, 2)) -
         (f0i + f2) * (binom(d + 2, 2) - binom(s + 2, 2)) - f1i * dimJB;
}

inline std::int64_t speleers_dim(const Mesh& original, int r) {
  auto c = original.counts();
  return r * (r - 1) / 2 * static_cast<std::int64_t>(c.f2) + static_cast<std::int64_t>(r) * (2 * r + 1) * static_cast<std::int64_t>(c.f0);
}

}  // namespace supersplines

#endif  // SUPERSPLINES_DIMENSION_HPP
