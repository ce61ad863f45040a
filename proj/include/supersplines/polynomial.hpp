#ifndef SUPERSPLINES_POLYNOMIAL_HPP
#define SUPERSPLINES_POLYNOMIAL_HPP

// Homogeneous polynomials in Q[x,y,z], linear forms, and the bivariate
// polynomials they homogenize.
//
// Monomials of a fixed degree are laid out in graded lexicographic order
// with x > y > z: x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ... , z^d.

#include <supersplines/rational.hpp>
#include <supersplines/matrix.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <vector>

namespace supersplines {

struct Point {
  Rational x, y;
  bool operator==(const Point&) const = default;
};

struct Monomial3 {
  int i = 0, j = 0, k = 0;  // exponents of x, y, z

  int degree() const { return i + j + k; }
  bool operator==(const Monomial3&) const = default;
  Monomial3 operator*(const Monomial3& o) const { return {i + o.i, j + o.j, k + o.k}; }
  bool divides(const Monomial3& o) const { return i <= o.i && j <= o.j && k <= o.k; }
};

/// Strict "comes first" relation of the fixed order (higher degree first,
/// then larger x exponent, then larger y exponent).
struct MonomialOrder {
  bool operator()(const Monomial3& a, const Monomial3& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  }
};

inline std::size_t monomial_count(int d) { return d < 0 ? 0 : static_cast<std::size_t>(binom(d + 2, 2)); }

/// Position of m among the degree-deg(m) monomials.
inline std::size_t monomial_index(const Monomial3& m) {
  int d = m.degree();
  return static_cast<std::size_t>(binom(d - m.i + 1, 2) + m.k);
}

inline std::vector<Monomial3> graded_monomial_basis(int d) {
  if (d < 0) throw InvalidArgument("negative degree");
  std::vector<Monomial3> out;
  out.reserve(monomial_count(d));
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

inline std::string to_string(const Monomial3& m) {
  if (m.degree() == 0) return "1";
  std::string s;
  auto put = [&](char v, int e) {
    if (e == 0) return;
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  put('x', m.i);
  put('y', m.j);
  put('z', m.k);
  return s;
}

class HomogeneousPolynomial {
 public:
  using Terms = std::map<Monomial3, Rational, MonomialOrder>;

  explicit HomogeneousPolynomial(int degree = 0) : degree_(degree) {
    if (degree < 0) throw InvalidArgument("negative degree");
  }

  static HomogeneousPolynomial monomial(const Monomial3& m, const Rational& c = 1) {
    HomogeneousPolynomial p(m.degree());
    p.add_term(m, c);
    return p;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial3& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial3& m, const Rational& c) {
    if (m.degree() != degree_) throw InvalidArgument("monomial degree does not match polynomial degree");
    if (sgn(c) == 0) return;
    Rational v = c;
    v.canonicalize();
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& o) {
    if (o.degree_ != degree_ && !o.is_zero()) throw InvalidArgument("adding polynomials of different degrees");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  HomogeneousPolynomial& operator-=(const HomogeneousPolynomial& o) {
    if (o.degree_ != degree_ && !o.is_zero()) throw InvalidArgument("subtracting polynomials of different degrees");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  HomogeneousPolynomial& operator*=(const Rational& c) {
    if (sgn(c) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend HomogeneousPolynomial operator+(HomogeneousPolynomial a, const HomogeneousPolynomial& b) { return a += b; }
  friend HomogeneousPolynomial operator-(HomogeneousPolynomial a, const HomogeneousPolynomial& b) { return a -= b; }
  friend HomogeneousPolynomial operator*(HomogeneousPolynomial a, const Rational& c) { return a *= c; }

  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    HomogeneousPolynomial p(a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
  }

  HomogeneousPolynomial pow(int e) const {
    if (e < 0) throw InvalidArgument("negative exponent");
    HomogeneousPolynomial result = monomial({0, 0, 0});
    HomogeneousPolynomial base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  bool operator==(const HomogeneousPolynomial& o) const {
    return degree_ == o.degree_ && terms_ == o.terms_;
  }

  Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int e = 0; e < m.i; ++e) t *= x;
      for (int e = 0; e < m.j; ++e) t *= y;
      for (int e = 0; e < m.k; ++e) t *= z;
      acc += t;
    }
    return acc;
  }

  /// Coefficients in the fixed layout of the degree-d monomials.
  std::vector<Rational> coefficient_vector() const {
    std::vector<Rational> v(monomial_count(degree_));
    for (const auto& [m, c] : terms_) v[monomial_index(m)] = c;
    return v;
  }

  SparseRow sparse_coefficients() const {
    SparseRow row;
    row.reserve(terms_.size());
    for (const auto& [m, c] : terms_) row.push_back({static_cast<std::uint32_t>(monomial_index(m)), c});
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    return row;
  }

  static HomogeneousPolynomial from_coefficients(int d, std::span<const Rational> coeffs) {
    if (coeffs.size() != monomial_count(d)) throw InvalidArgument("coefficient vector has wrong length");
    HomogeneousPolynomial p(d);
    auto basis = graded_monomial_basis(d);
    for (std::size_t n = 0; n < basis.size(); ++n) p.add_term(basis[n], coeffs[n]);
    return p;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = abs(c);
      os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      bool unit = a == 1;
      if (!unit) os << to_string(a);
      if (m.degree() > 0) os << (unit ? "" : "*") << to_string(m);
      else if (unit) os << "1";
      first = false;
    }
    return os.str();
  }

 private:
  int degree_;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const HomogeneousPolynomial& p) { return os << p.str(); }

inline nlohmann::json to_json(const HomogeneousPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exp", {m.i, m.j, m.k}}, {"coef", to_string(c)}});
  return {{"degree", p.degree()}, {"terms", terms}};
}

inline HomogeneousPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    HomogeneousPolynomial p(j.at("degree").get<int>());
    for (const auto& t : j.at("terms")) {
      const auto& e = t.at("exp");
      Monomial3 m{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()};
      if (m.i < 0 || m.j < 0 || m.k < 0) throw InvalidArgument("negative exponent");
      p.add_term(m, parse_rational(t.at("coef").get<std::string>()));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed polynomial document: ") + e.what());
  }
}

/// a*x + b*y + c*z, normalized to coprime integers with the first nonzero
/// coefficient positive.
class LinearForm3 {
 public:
  LinearForm3(const Rational& a, const Rational& b, const Rational& c) : coef_{a, b, c} { normalize(); }

  const Rational& a() const { return coef_[0]; }
  const Rational& b() const { return coef_[1]; }
  const Rational& c() const { return coef_[2]; }
  const std::array<Rational, 3>& coefficients() const { return coef_; }

  Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const {
    return coef_[0] * x + coef_[1] * y + coef_[2] * z;
  }
  bool vanishes_at(const Point& p) const { return sgn(evaluate(p.x, p.y, 1)) == 0; }

  HomogeneousPolynomial polynomial() const {
    HomogeneousPolynomial p(1);
    p.add_term({1, 0, 0}, coef_[0]);
    p.add_term({0, 1, 0}, coef_[1]);
    p.add_term({0, 0, 1}, coef_[2]);
    return p;
  }

  bool operator==(const LinearForm3&) const = default;

  std::string str() const { return polynomial().str(); }

 private:
  void normalize() {
    if (sgn(coef_[0]) == 0 && sgn(coef_[1]) == 0 && sgn(coef_[2]) == 0)
      throw InvalidArgument("linear form is identically zero");
    Integer den = 1;
    for (const auto& q : coef_) den = lcm(den, q.get_den());
    Integer g = 0;
    std::array<Integer, 3> ints;
    for (int n = 0; n < 3; ++n) {
      Rational scaled = coef_[n] * den;
      ints[n] = scaled.get_num();
      g = gcd(g, ints[n]);
    }
    int lead = sgn(ints[0]) != 0 ? 0 : (sgn(ints[1]) != 0 ? 1 : 2);
    if (sgn(ints[lead]) < 0) g = -g;
    for (int n = 0; n < 3; ++n) coef_[n] = Rational(ints[n] / g);
  }

  std::array<Rational, 3> coef_;
};

/// Determinant of the 3x3 coefficient matrix of three linear forms.
inline Rational determinant(const LinearForm3& p, const LinearForm3& q, const LinearForm3& r) {
  return p.a() * (q.b() * r.c() - q.c() * r.b()) - p.b() * (q.a() * r.c() - q.c() * r.a()) +
         p.c() * (q.a() * r.b() - q.b() * r.a());
}

inline bool proportional(const LinearForm3& p, const LinearForm3& q) { return p == q; }

/// Homogenized line through two distinct points.
inline LinearForm3 edge_linear_form(const Point& p1, const Point& p2) {
  if (p1 == p2) throw InvalidArgument("degenerate edge: coincident endpoints");
  // cross product of (x1, y1, 1) and (x2, y2, 1)
  return LinearForm3(p1.y - p2.y, p2.x - p1.x, p1.x * p2.y - p2.x * p1.y);
}

/// A second form through v independent of ell: x - v.x z, or y - v.y z.
inline LinearForm3 vertex_complement_form(const LinearForm3& ell, const Point& v) {
  if (!ell.vanishes_at(v)) throw InvalidArgument("linear form does not vanish at the vertex");
  LinearForm3 first(1, 0, -v.x);
  if (!proportional(first, ell)) return first;
  return LinearForm3(0, 1, -v.y);
}

/// Polynomial in x, y of arbitrary (not necessarily homogeneous) degree.
class Polynomial2 {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  Polynomial2() = default;

  void add_term(int i, int j, const Rational& c) {
    if (i < 0 || j < 0) throw InvalidArgument("negative exponent");
    if (sgn(c) == 0) return;
    Rational v = c;
    v.canonicalize();
    auto [it, inserted] = terms_.try_emplace({i, j}, v);
    if (!inserted) {
      it->second += v;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  Rational coefficient(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational evaluate(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int n = 0; n < e.first; ++n) t *= x;
      for (int n = 0; n < e.second; ++n) t *= y;
      acc += t;
    }
    return acc;
  }

  /// Partial derivative d^a/dx^a d^b/dy^b.
  Polynomial2 derivative(int a, int b) const {
    Polynomial2 out;
    for (const auto& [e, c] : terms_) {
      if (e.first < a || e.second < b) continue;
      Rational f = c;
      for (int n = 0; n < a; ++n) f *= e.first - n;
      for (int n = 0; n < b; ++n) f *= e.second - n;
      out.add_term(e.first - a, e.second - b, f);
    }
    return out;
  }

  friend Polynomial2 operator*(const Polynomial2& p, const Polynomial2& q) {
    Polynomial2 out;
    for (const auto& [ep, cp] : p.terms_)
      for (const auto& [eq, cq] : q.terms_) out.add_term(ep.first + eq.first, ep.second + eq.second, cp * cq);
    return out;
  }
  friend Polynomial2 operator+(Polynomial2 p, const Polynomial2& q) {
    for (const auto& [e, c] : q.terms_) p.add_term(e.first, e.second, c);
    return p;
  }
  friend Polynomial2 operator-(Polynomial2 p, const Polynomial2& q) {
    for (const auto& [e, c] : q.terms_) p.add_term(e.first, e.second, -c);
    return p;
  }

  bool operator==(const Polynomial2&) const = default;

 private:
  Terms terms_;
};

/// Degree-d homogenization with respect to z.
inline HomogeneousPolynomial homogenize(const Polynomial2& p, int d) {
  if (p.total_degree() > d) throw InvalidArgument("polynomial degree exceeds homogenization degree");
  HomogeneousPolynomial h(d);
  for (const auto& [e, c] : p.terms()) h.add_term({e.first, e.second, d - e.first - e.second}, c);
  return h;
}

/// Sets z = 1.
inline Polynomial2 dehomogenize(const HomogeneousPolynomial& h) {
  Polynomial2 p;
  for (const auto& [m, c] : h.terms()) p.add_term(m.i, m.j, c);
  return p;
}

}  // namespace supersplines

#endif  // SUPERSPLINES_POLYNOMIAL_HPP
