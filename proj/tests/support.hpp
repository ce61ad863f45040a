#ifndef SUPERSPLINES_TESTS_SUPPORT_HPP
#define SUPERSPLINES_TESTS_SUPPORT_HPP

// Oracles shared by the test suite. None of them calls into the ideal or
// dimension code: they recount from first principles.

#include <supersplines/supersplines.hpp>

#include <random>
#include <set>

namespace oracle {

using namespace supersplines;

inline std::int64_t factorial_binom(std::int64_t a, std::int64_t b) {
  if (a < b) return 0;
  Integer num = 1, den = 1;
  for (std::int64_t i = 0; i < b; ++i) {
    num *= Integer(static_cast<long>(a - i));
    den *= Integer(static_cast<long>(i + 1));
  }
  return Integer(num / den).get_si();
}

/// Degree-d monomials divisible by at least one generator monomial.
inline std::int64_t monomial_ideal_dim(const std::vector<Monomial3>& gens, int d) {
  std::int64_t n = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      Monomial3 m{i, j, d - i - j};
      for (const auto& g : gens)
        if (g.divides(m)) {
          ++n;
          break;
        }
    }
  return n;
}

/// Canonical-frame edge ideal ⟨x^{r+1}⟩ ∩ ⟨x,y⟩^{sg+1} ∩ ⟨x,z⟩^{sgp+1}, counted
/// monomial by monomial: all three ideals are monomial, so the intersection is
/// spanned by the monomials lying in each of them.
inline std::int64_t canonical_edge_dim(int r, int sg, int sgp, int d) {
  std::int64_t n = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      int k = d - i - j;
      if (i >= r + 1 && i + j >= sg + 1 && i + k >= sgp + 1) ++n;
    }
  return n;
}

/// Coefficient of x^a y^b in a bivariate polynomial of degree <= d, laid out
/// in a fixed order of (a, b).
inline std::vector<std::pair<int, int>> bivariate_basis(int d) {
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t <= d; ++t)
    for (int a = t; a >= 0; --a) out.push_back({a, t - a});
  return out;
}

inline Rational falling(int n, int k) {
  Rational v = 1;
  for (int i = 0; i < k; ++i) v *= n - i;
  return v;
}

inline Rational power(const Rational& x, int e) {
  Rational v = 1;
  for (int i = 0; i < e; ++i) v *= x;
  return v;
}

/// Row functional: coefficient vector of f -> (d^{al+be} f / dx^al dy^be)(p).
inline std::vector<Rational> derivative_functional(int d, int al, int be, const Point& p) {
  auto basis = bivariate_basis(d);
  std::vector<Rational> row(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto [a, b] = basis[k];
    if (a < al || b < be) continue;
    row[k] = falling(a, al) * falling(b, be) * power(p.x, a - al) * power(p.y, b - be);
  }
  return row;
}

/// The smoothness conditions written with derivatives of the affine pieces:
/// across an interior edge all partials of order <= r of the difference
/// vanish on the edge (checked at d+1 points of the line), and at each
/// endpoint all partials of order <= max(s, r) vanish.
inline RatMatrix derivative_constraints(const Mesh& m, const SmoothnessSpec& spec, int d) {
  const std::size_t n = bivariate_basis(d).size();
  std::vector<SparseRow> rows;
  auto push = [&](std::size_t s0, std::size_t s1, const std::vector<Rational>& f) {
    SparseRow row;
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(f[k]) != 0) row.push_back({static_cast<std::uint32_t>(s0 * n + k), f[k]});
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(f[k]) != 0) row.push_back({static_cast<std::uint32_t>(s1 * n + k), -f[k]});
    if (!row.empty()) {
      std::sort(row.begin(), row.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
      rows.push_back(std::move(row));
    }
  };
  for (auto e : m.interior_edges()) {
    auto tr = m.edge_triangles(e);
    auto s0 = static_cast<std::size_t>(tr[0]), s1 = static_cast<std::size_t>(tr[1]);
    const Point& p = m.vertex(m.edges()[e][0]);
    const Point& q = m.vertex(m.edges()[e][1]);
    int r = spec.r(e);
    for (int o = 0; o <= r; ++o)
      for (int al = 0; al <= o; ++al)
        for (int k = 0; k <= d; ++k) {
          Rational lam(k, d + 1);
          Point x{p.x + lam * (q.x - p.x), p.y + lam * (q.y - p.y)};
          push(s0, s1, derivative_functional(d, al, o - al, x));
        }
    for (int v : {m.edges()[e][0], m.edges()[e][1]}) {
      int s = spec.effective_s(e, v);
      for (int o = 0; o <= std::min(s, d); ++o)
        for (int al = 0; al <= o; ++al) push(s0, s1, derivative_functional(d, al, o - al, m.vertex(v)));
    }
  }
  return RatMatrix::from_sparse_rows(m.num_triangles() * n, std::move(rows));
}

inline std::int64_t derivative_dimension(const Mesh& m, const SmoothnessSpec& spec, int d) {
  return static_cast<std::int64_t>(kernel_dim(derivative_constraints(m, spec, d)));
}

/// Piece of a kernel vector on triangle t, as a bivariate polynomial.
inline Polynomial2 piece(const std::vector<Rational>& v, std::size_t t, int d) {
  auto basis = bivariate_basis(d);
  Polynomial2 p;
  for (std::size_t k = 0; k < basis.size(); ++k) p.add_term(basis[k].first, basis[k].second, v[t * basis.size() + k]);
  return p;
}

/// Uniform (r, s) specs on random disk meshes, reproducible from the seed.
struct RandomCase {
  Mesh mesh;
  SmoothnessSpec spec;
  int r, s, d;
};

inline RandomCase random_case(std::uint32_t seed, int max_d = 10) {
  std::mt19937 rng(seed * 7919u + 17u);
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Mesh m = random_disk_mesh(seed, 8);
  int r = roll(0, 2), s = r + roll(0, 2), d = roll(std::min(max_d, r + 1), max_d);
  auto spec = SmoothnessSpec::uniform(m, r, s);
  return {m, spec, r, s, d};
}

/// Non-uniform variant: raises r on a random interior edge and s at a random
/// vertex.
inline SmoothnessSpec perturbed_spec(const Mesh& m, int r, int s, std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto spec = SmoothnessSpec::uniform(m, r, s);
  auto ie = m.interior_edges();
  if (!ie.empty()) spec = spec.with_edge_r(ie[rng() % ie.size()], r + 1);
  spec = spec.with_vertex_s(static_cast<int>(rng() % m.num_vertices()), s + 1);
  return spec;
}

/// Image of the mesh under an invertible affine map with rational entries.
inline Mesh affine_image(const Mesh& m, const Rational& a, const Rational& b, const Rational& c, const Rational& dd,
                         const Rational& tx, const Rational& ty) {
  std::vector<Point> pts;
  for (const auto& p : m.vertices()) pts.push_back({a * p.x + b * p.y + tx, c * p.x + dd * p.y + ty});
  return Mesh(std::move(pts), m.triangles());
}

}  // namespace oracle

#endif  // SUPERSPLINES_TESTS_SUPPORT_HPP
