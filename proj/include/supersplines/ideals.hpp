#ifndef SUPERSPLINES_IDEALS_HPP
#define SUPERSPLINES_IDEALS_HPP

// Homogeneous ideals given by explicit generators, the edge and vertex
// ideals of a smoothness specification, and closed forms for their
// Hilbert functions.

#include <supersplines/matrix.hpp>
#include <supersplines/mesh.hpp>
#include <supersplines/polynomial.hpp>

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace supersplines {

namespace detail {

// Index of x_v * m (v = 0, 1, 2) for each monomial m of degree d - 1,
// laid out in degree d.
inline const std::vector<std::array<std::uint32_t, 3>>& shift_table(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<std::array<std::uint32_t, 3>>> tables;
  std::lock_guard lock(mu);
  auto it = tables.find(d);
  if (it != tables.end()) return it->second;
  std::vector<std::array<std::uint32_t, 3>> t;
  for (const auto& m : graded_monomial_basis(d - 1))
    t.push_back({static_cast<std::uint32_t>(monomial_index({m.i + 1, m.j, m.k})),
                 static_cast<std::uint32_t>(monomial_index({m.i, m.j + 1, m.k})),
                 static_cast<std::uint32_t>(monomial_index({m.i, m.j, m.k + 1}))});
  return tables.emplace(d, std::move(t)).first->second;
}

inline SparseRow shift(const SparseRow& row, int d, int var) {
  const auto& t = shift_table(d);
  SparseRow out;
  out.reserve(row.size());
  for (const auto& e : row) out.push_back({t[e.col][var], e.val});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  return out;
}

}  // namespace detail

/// Ideal of Q[x,y,z] generated by finitely many homogeneous polynomials.
///
/// Graded pieces are computed degree by degree: I_d is spanned by the
/// variable multiples of a basis of I_{d-1} together with the generators of
/// degree d. Results are cached per degree; copies share the cache.
class GradedIdeal {
 public:
  GradedIdeal() : cache_(std::make_shared<Cache>()) {}

  explicit GradedIdeal(std::vector<HomogeneousPolynomial> gens) : cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (g.is_zero()) throw InvalidArgument("ideal generator is zero");
      generators_.push_back(std::move(g));
    }
  }

  const std::vector<HomogeneousPolynomial>& generators() const { return generators_; }

  std::optional<int> min_generator_degree() const {
    std::optional<int> d;
    for (const auto& g : generators_) d = d ? std::min(*d, g.degree()) : g.degree();
    return d;
  }
  int max_generator_degree() const {
    int d = 0;
    for (const auto& g : generators_) d = std::max(d, g.degree());
    return d;
  }

  /// dim over Q of the degree-d piece.
  std::size_t graded_dim(int d) const {
    if (d < 0) throw InvalidArgument("negative degree");
    std::lock_guard lock(cache_->mu);
    return piece(d).size();
  }

  /// Echelon basis of I_d (pairwise distinct leading columns).
  std::vector<SparseRow> graded_basis(int d) const {
    if (d < 0) throw InvalidArgument("negative degree");
    std::lock_guard lock(cache_->mu);
    return piece(d);
  }

  /// Reduced row echelon basis of I_d.
  std::vector<SparseRow> reduced_basis(int d) const {
    if (d < 0) throw InvalidArgument("negative degree");
    std::lock_guard lock(cache_->mu);
    auto it = cache_->reduced.find(d);
    if (it != cache_->reduced.end()) return it->second;
    const auto& rows = piece(d);
    RowEchelon ech(monomial_count(d));
    for (const auto& r : rows) ech.insert(r);
    return cache_->reduced.emplace(d, ech.reduced_rows()).first->second;
  }

  bool contains(const HomogeneousPolynomial& f) const {
    if (f.is_zero()) return true;
    auto basis = graded_basis(f.degree());
    RowEchelon ech(monomial_count(f.degree()));
    for (const auto& r : basis) ech.insert(r);
    return ech.contains(f.sparse_coefficients());
  }

  friend GradedIdeal operator+(const GradedIdeal& a, const GradedIdeal& b) {
    auto gens = a.generators_;
    gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
    return GradedIdeal(std::move(gens));
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<int, std::vector<SparseRow>> pieces;
    std::map<int, std::vector<SparseRow>> reduced;
    std::optional<int> full_from;  // I_d = S_d for all d >= full_from
  };

  // caller holds the lock
  const std::vector<SparseRow>& piece(int d) const {
    auto& c = *cache_;
    if (auto it = c.pieces.find(d); it != c.pieces.end()) return it->second;
    auto min_deg = min_generator_degree();
    if (!min_deg || d < *min_deg) return c.pieces.emplace(d, std::vector<SparseRow>{}).first->second;
    if (c.full_from && d >= *c.full_from) return c.pieces.emplace(d, identity_rows(d)).first->second;

    const std::size_t n = monomial_count(d);
    RowEchelon ech(n);
    if (d > *min_deg) {
      const auto prev = piece(d - 1);
      for (int var = 0; var < 3 && !ech.full(); ++var)
        for (const auto& r : prev) {
          if (ech.full()) break;
          ech.insert(detail::shift(r, d, var));
        }
    }
    for (const auto& g : generators_) {
      if (ech.full()) break;
      if (g.degree() == d) ech.insert(g.sparse_coefficients());
    }
    if (ech.full()) {
      c.full_from = d;
      return c.pieces.emplace(d, identity_rows(d)).first->second;
    }
    return c.pieces.emplace(d, ech.rows()).first->second;
  }

  static std::vector<SparseRow> identity_rows(int d) {
    std::vector<SparseRow> rows(monomial_count(d));
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].push_back({static_cast<std::uint32_t>(k), Rational(1)});
    return rows;
  }

  std::vector<HomogeneousPolynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

inline nlohmann::json to_json(const GradedIdeal& ideal) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : ideal.generators()) gens.push_back(to_json(g));
  return {{"generators", gens}};
}

/// <l^e>
inline GradedIdeal principal_power(const LinearForm3& l, int e) { return GradedIdeal({l.polynomial().pow(e)}); }

/// <l1, l2>^e, generated by the e+1 products l1^i l2^(e-i).
inline GradedIdeal power_of_pair(const LinearForm3& l1, const LinearForm3& l2, int e) {
  std::vector<HomogeneousPolynomial> gens;
  auto p1 = l1.polynomial(), p2 = l2.polynomial();
  for (int i = 0; i <= e; ++i) gens.push_back(p1.pow(i) * p2.pow(e - i));
  return GradedIdeal(std::move(gens));
}

// ---- edge ideals ------------------------------------------------------------

/// Edge tau = [gamma, gamma'] in the frame (l_tau, l_{tau,gamma},
/// l_{tau,gamma'}); l_{tau,gamma} vanishes at gamma, l_{tau,gamma'} at gamma'.
struct EdgeIdealSpec {
  LinearForm3 ell_tau;
  LinearForm3 ell_gamma;
  LinearForm3 ell_gamma_prime;
  int r = 0;
  int s_gamma = 0;
  int s_gamma_prime = 0;
};

/// Frame exponents (m, i, j) of the minimal generators l_tau^m l_gamma^i l_gamma'^j.
inline std::vector<std::array<int, 3>> edge_ideal_exponents(int r, int s_gamma, int s_gamma_prime) {
  if (r < 0 || s_gamma < r || s_gamma_prime < r) throw InvalidArgument("edge ideal requires 0 <= r <= s at both ends");
  std::vector<std::array<int, 3>> all;
  for (int i = 0; i <= s_gamma - r; ++i)
    for (int j = 0; j <= s_gamma_prime - r; ++j)
      all.push_back({std::max({r + 1, s_gamma + 1 - i, s_gamma_prime + 1 - j}), i, j});
  std::vector<std::array<int, 3>> minimal;
  for (std::size_t a = 0; a < all.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < all.size() && !redundant; ++b) {
      if (a == b) continue;
      bool divides = all[b][0] <= all[a][0] && all[b][1] <= all[a][1] && all[b][2] <= all[a][2];
      // among equal triples keep the first
      if (divides && (all[b] != all[a] || b < a)) redundant = true;
    }
    if (!redundant) minimal.push_back(all[a]);
  }
  return minimal;
}

inline GradedIdeal edge_ideal(const EdgeIdealSpec& spec) {
  if (sgn(determinant(spec.ell_tau, spec.ell_gamma, spec.ell_gamma_prime)) == 0)
    throw InvalidArgument("edge ideal frame forms are linearly dependent");
  auto exps = edge_ideal_exponents(spec.r, spec.s_gamma, spec.s_gamma_prime);
  auto lt = spec.ell_tau.polynomial(), lg = spec.ell_gamma.polynomial(), lgp = spec.ell_gamma_prime.polynomial();
  std::map<std::pair<int, int>, HomogeneousPolynomial> powers;
  auto power = [&](int which, const HomogeneousPolynomial& base, int e) -> const HomogeneousPolynomial& {
    auto it = powers.find({which, e});
    if (it == powers.end()) it = powers.emplace(std::pair{which, e}, base.pow(e)).first;
    return it->second;
  };
  std::vector<HomogeneousPolynomial> gens;
  for (const auto& [m, i, j] : exps) gens.push_back(power(0, lt, m) * power(1, lg, i) * power(2, lgp, j));
  return GradedIdeal(std::move(gens));
}

/// The canonical frame (x, y, z).
inline EdgeIdealSpec canonical_edge_spec(int r, int s_gamma, int s_gamma_prime) {
  return {LinearForm3(1, 0, 0), LinearForm3(0, 1, 0), LinearForm3(0, 0, 1), r, s_gamma, s_gamma_prime};
}

/// Frame of mesh edge e with gamma = first endpoint (lower index).
inline EdgeIdealSpec mesh_edge_spec(const Mesh& m, const SmoothnessSpec& spec, std::size_t e) {
  if (!m.edge_interior(e)) throw InvalidArgument("edge ideals are defined on interior edges");
  const auto& ed = m.edges()[e];
  auto lt = m.edge_form(e);
  int r = spec.r(e);
  return {lt, vertex_complement_form(lt, m.vertex(ed[0])), vertex_complement_form(lt, m.vertex(ed[1])), r,
          spec.effective_s(e, ed[0]), spec.effective_s(e, ed[1])};
}

inline GradedIdeal mesh_edge_ideal(const Mesh& m, const SmoothnessSpec& spec, std::size_t e) {
  return edge_ideal(mesh_edge_spec(m, spec, e));
}

// ---- closed forms -----------------------------------------------------------

/// dim J(tau)_d for an edge with both endpoints of supersmoothness s.
inline std::int64_t dim_edge_ideal_closed(int r, int s, int d) {
  if (r < 0 || r > s) throw InvalidArgument("closed form requires 0 <= r <= s");
  if (d <= s) return 0;
  std::int64_t ds = d - s;
  return ds * ds - binom(d - 2 * s + r, 2);
}

/// dim J(tau)_d for an edge with supersmoothness s at one end and r at the other.
inline std::int64_t dim_edge_ideal_boundary_closed(int r, int s, int d) {
  if (r < 0 || r > s) throw InvalidArgument("closed form requires 0 <= r <= s");
  if (d <= s) return 0;
  return (s - r + 1) * binom(d - s + 1, 2) - (s - r) * binom(d - s, 2);
}

struct SocleParams {
  std::int64_t Omega, a, b;
  bool operator==(const SocleParams&) const = default;
};

inline SocleParams vertex_socle_params(int t, int r) {
  if (t < 2) throw InvalidArgument("socle parameters need at least two slopes");
  if (r < 0) throw InvalidArgument("negative smoothness");
  std::int64_t Omega = static_cast<std::int64_t>(t) * r / (t - 1) + 1;
  std::int64_t a = static_cast<std::int64_t>(t) * (r + 1) + (1 - t) * Omega;
  std::int64_t b = t - a - 1;
  return {Omega, a, b};
}

/// dim J(gamma)_d at a vertex with t slopes, edge order r and
/// supersmoothness s (all uniform).
inline std::int64_t dim_vertex_star_ideal_closed(int t, int r, int s, int d) {
  if (r < 0 || s < r || d < 0) throw InvalidArgument("closed form requires 0 <= r <= s and d >= 0");
  auto [Omega, a, b] = vertex_socle_params(t, r);
  if (d <= s) return 0;
  if (s < Omega - 1) {
    std::int64_t lead = static_cast<std::int64_t>(t) * (d - s) * (d + s - 2 * r + 1) / 2;
    return lead - b * binom(d + 2 - Omega, 2) - a * binom(d + 1 - Omega, 2);
  }
  return binom(d + 2, 2) - binom(s + 2, 2);
}

// ---- vertex ideals ----------------------------------------------------------

enum class VertexIdealVariant { Full, Bar, Tilde };

/// Interior edges through v that a variant sums over.
inline std::vector<std::size_t> vertex_ideal_edges(const Mesh& m, int v, VertexIdealVariant variant,
                                                   const std::vector<int>* ordering) {
  std::vector<int> pos;
  if (variant == VertexIdealVariant::Tilde) {
    if (!ordering) throw InvalidArgument("the tilde vertex ideal needs a vertex ordering");
    pos.assign(m.num_vertices(), -1);
    for (std::size_t i = 0; i < ordering->size(); ++i) pos.at(static_cast<std::size_t>((*ordering)[i])) = static_cast<int>(i);
  }
  std::vector<std::size_t> out;
  for (int e : m.vertex_edges(v)) {
    auto ue = static_cast<std::size_t>(e);
    if (!m.edge_interior(ue)) continue;
    if (variant == VertexIdealVariant::Tilde) {
      int u = m.other_endpoint(ue, v);
      if (m.vertex_interior(u) && pos[u] > pos[v]) continue;
    }
    out.push_back(ue);
  }
  return out;
}

inline GradedIdeal vertex_ideal(const Mesh& m, const SmoothnessSpec& spec, int v, VertexIdealVariant variant,
                                const std::vector<int>* ordering = nullptr) {
  if (v < 0 || static_cast<std::size_t>(v) >= m.num_vertices()) throw InvalidArgument("vertex index out of range");
  if (!m.vertex_interior(v)) throw InvalidArgument("vertex ideals are defined at interior vertices");
  std::vector<HomogeneousPolynomial> gens;
  for (auto e : vertex_ideal_edges(m, v, variant, ordering)) {
    auto es = mesh_edge_spec(m, spec, e);
    if (variant == VertexIdealVariant::Bar) {
      // keep only the condition at v
      if (m.edges()[e][0] == v) es.s_gamma_prime = es.r;
      else es.s_gamma = es.r;
    }
    auto ideal = edge_ideal(es);
    gens.insert(gens.end(), ideal.generators().begin(), ideal.generators().end());
  }
  return GradedIdeal(std::move(gens));
}

}  // namespace supersplines

#endif  // SUPERSPLINES_IDEALS_HPP
