// splinedim: dimensions, bounds and ideals of superspline spaces from the
// command line.

#include <supersplines/supersplines.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ss = supersplines;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Csv, Json };

struct Options {
  std::string mesh_path, gen;
  std::optional<int> r, s, s2;
  std::string degrees;
  std::string method = "exact";
  std::string format = "text";
  bool check = false, allow_large = false;
  // ideal selectors
  std::optional<int> vertex;
  std::string edge, variant = "full";
  bool canonical = false;
};

// ---- mesh sources -----------------------------------------------------------

enum class SourceKind { File, Plain, Star, PowellSabin };

struct Source {
  SourceKind kind = SourceKind::Plain;
  ss::Mesh mesh;
  ss::SmoothnessSpec spec;
  std::optional<ss::Mesh> original;  // before the Powell-Sabin split
  int r = 0, s = 0;                  // requested orders (generated meshes)
};

std::pair<int, int> require_rs(const Options& o) {
  if (!o.r) throw UsageError("this mesh source needs -r");
  int r = *o.r, s = o.s.value_or(r);
  if (r < 0 || s < r) throw UsageError("need 0 <= r <= s");
  return {r, s};
}

ss::Mesh builtin_mesh(const std::string& name, bool& is_star) {
  is_star = false;
  if (name == "triangle") return ss::single_triangle_mesh();
  if (name == "two-triangles" || name == "argyris-demo") return ss::two_triangle_mesh();
  if (name == "morgan-scott") return ss::morgan_scott_mesh();
  if (name == "star:crossed") return is_star = true, ss::crossed_star();
  if (name.rfind("star:", 0) == 0) {
    auto rest = name.substr(5);
    auto dash = rest.find("-generic");
    if (dash == std::string::npos || dash + 8 != rest.size()) throw UsageError("unknown star generator '" + name + "'");
    int t = 0;
    try {
      t = std::stoi(rest.substr(0, dash));
    } catch (const std::exception&) {
      throw UsageError("bad slope count in '" + name + "'");
    }
    is_star = true;
    return ss::generic_star(t);
  }
  if (name.rfind("random:", 0) == 0) {
    std::stringstream in(name.substr(7));
    std::string seed, count;
    std::getline(in, seed, ':');
    std::getline(in, count, ':');
    try {
      return ss::random_disk_mesh(static_cast<std::uint32_t>(std::stoul(seed)), count.empty() ? 8 : std::stoul(count));
    } catch (const std::logic_error&) {
      throw UsageError("expected random:<seed>[:<max triangles>]");
    }
  }
  throw UsageError("unknown generator '" + name + "'");
}

Source load_source(const Options& o) {
  if (o.mesh_path.empty() == o.gen.empty()) throw UsageError("give exactly one of --mesh or --gen");
  Source src;
  if (!o.mesh_path.empty()) {
    auto doc = ss::load_mesh_file(o.mesh_path);
    src.kind = SourceKind::File;
    src.mesh = doc.mesh;
    if (!doc.smoothness && !o.r) throw UsageError("mesh file has no smoothness block; give -r");
    src.spec = ss::resolve_smoothness(doc.mesh, doc.smoothness, o.r, o.s, true);
    return src;
  }
  if (o.gen.rfind("ps6:", 0) == 0) {
    bool star = false;
    auto base = builtin_mesh(o.gen.substr(4), star);
    auto [r, s] = require_rs(o);
    auto ps = ss::powell_sabin_6split(base, r, s);
    src.kind = SourceKind::PowellSabin;
    src.original = base;
    src.r = r;
    src.s = s;
    src.mesh = std::move(ps.refined);
    src.spec = std::move(ps.spec);
    return src;
  }
  bool star = false;
  src.mesh = builtin_mesh(o.gen, star);
  std::optional<int> r = o.r, s = o.s;
  if (o.gen == "argyris-demo" && !r) r = 1, s = s.value_or(2);
  if (!r) throw UsageError("this mesh source needs -r");
  int rv = *r, sv = s.value_or(rv);
  if (rv < 0 || sv < rv) throw UsageError("need 0 <= r <= s");
  src.kind = star ? SourceKind::Star : SourceKind::Plain;
  src.r = rv;
  src.s = sv;
  src.spec = star ? ss::star_spec(src.mesh, rv, sv) : ss::SmoothnessSpec::uniform(src.mesh, rv, sv);
  return src;
}

// ---- degrees and formats ------------------------------------------------------

std::vector<int> parse_degrees(const Options& o) {
  if (o.degrees.empty()) throw UsageError("give a degree with -d (a single value or a..b)");
  int lo = 0, hi = 0;
  try {
    auto dots = o.degrees.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(o.degrees, &used);
      if (used != o.degrees.size()) throw std::invalid_argument("trailing");
    } else {
      lo = std::stoi(o.degrees.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument("trailing");
      auto rest = o.degrees.substr(dots + 2);
      hi = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing");
    }
  } catch (const std::logic_error&) {
    throw UsageError("malformed degree '" + o.degrees + "'");
  }
  if (lo < 0 || hi < lo) throw UsageError("degree range must satisfy 0 <= a <= b");
  if (hi > 30 && !o.allow_large) throw UsageError("degrees above 30 need --allow-large");
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

Format parse_format(const std::string& f) {
  if (f == "text") return Format::Text;
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  throw UsageError("unknown format '" + f + "'");
}

// ---- dimension rows -----------------------------------------------------------

struct Row {
  int d = 0;
  std::optional<std::int64_t> h0, lb52, lb51, ub53, exact;
  std::string method;
};

/// Closed form for the source at degree d, when one applies.
std::optional<std::int64_t> closed_form(const Source& src, int d) {
  switch (src.kind) {
    case SourceKind::PowellSabin:
      if (ss::ps_formula_applies(src.r, src.s, d)) return ss::ps_dim_general(*src.original, src.r, src.s, d);
      return std::nullopt;
    case SourceKind::Star:
      if (src.s == src.r) return ss::schumaker_dim(src.mesh, src.r, d);
      if (d >= src.s) return ss::vertex_star_dim(src.mesh, src.r, src.s, d);
      return std::nullopt;
    default: {
      if (src.mesh.interior_edges().empty()) return ss::binom(d + 2, 2);
      auto uni = src.spec.uniform_values();
      if (uni && uni->second == 2 * uni->first && d == 4 * uni->first + 1) return ss::argyris_dim(src.mesh, uni->first);
      return std::nullopt;
    }
  }
}

Row compute_row(const ss::SplineProblem& P, const Source& src, int d, const std::string& method, bool check) {
  Row row;
  row.d = d;
  if (method == "all" || check) {
    auto rep = P.report(d);
    row.h0 = rep.h0_dim;
    row.lb52 = rep.lb_52;
    row.lb51 = rep.lb_51;
    row.ub53 = rep.ub_53;
    row.exact = rep.exact;
    row.method = "exact";
    if (!rep.euler_holds())
      throw InvariantViolation("Euler identity violated at d=" + std::to_string(d) + " (exact " +
                               std::to_string(rep.exact) + ", lower bound " + std::to_string(rep.lb_51_raw) + ", H0 " +
                               std::to_string(rep.h0_dim) + ")");
    if (!rep.sandwich_holds())
      throw InvariantViolation("bound ordering violated at d=" + std::to_string(d));
    if (method == "formula") {
      auto f = closed_form(src, d);
      if (f && *f != rep.exact)
        throw InvariantViolation("closed form " + std::to_string(*f) + " disagrees with exact " + std::to_string(rep.exact) +
                                 " at d=" + std::to_string(d));
      row.method = f ? "formula" : "oracle";
    }
    return row;
  }
  if (method == "exact") {
    row.exact = P.exact(d);
    row.method = "exact";
  } else if (method == "lb51") {
    row.lb51 = P.lb51(d);
    row.method = "lb51";
  } else if (method == "lb52") {
    row.lb52 = P.lb52(d);
    row.method = "lb52";
  } else if (method == "ub53") {
    row.ub53 = P.ub53(d);
    row.method = "ub53";
  } else if (method == "formula") {
    auto f = closed_form(src, d);
    row.exact = f ? *f : P.exact(d);
    row.method = f ? "formula" : "oracle";
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  return row;
}

std::string cell(const std::optional<std::int64_t>& v, const char* missing) {
  return v ? std::to_string(*v) : std::string(missing);
}

void print_rows(const std::vector<Row>& rows, Format fmt) {
  if (fmt == Format::Json) {
    json out = json::array();
    for (const auto& r : rows) {
      json j;
      j["d"] = r.d;
      for (auto [k, v] : {std::pair{"h0", r.h0}, {"lb52", r.lb52}, {"lb51", r.lb51}, {"ub53", r.ub53}, {"exact", r.exact}})
        j[k] = v ? json(*v) : json(nullptr);
      j["method"] = r.method;
      out.push_back(j);
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (fmt == Format::Csv) {
    std::cout << "d,h0,lb52,lb51,ub53,exact,method\n";
    for (const auto& r : rows)
      std::cout << r.d << ',' << cell(r.h0, "") << ',' << cell(r.lb52, "") << ',' << cell(r.lb51, "") << ','
                << cell(r.ub53, "") << ',' << cell(r.exact, "") << ',' << r.method << "\n";
    return;
  }
  const int w = 8;
  std::cout << std::setw(4) << "d" << std::setw(w) << "H0" << std::setw(w) << "LB52" << std::setw(w) << "LB51"
            << std::setw(w) << "UB53" << std::setw(w) << "exact" << "  method\n";
  for (const auto& r : rows)
    std::cout << std::setw(4) << r.d << std::setw(w) << cell(r.h0, "-") << std::setw(w) << cell(r.lb52, "-")
              << std::setw(w) << cell(r.lb51, "-") << std::setw(w) << cell(r.ub53, "-") << std::setw(w)
              << cell(r.exact, "-") << "  " << r.method << "\n";
}

int run_dim(const Options& o) {
  static const std::set<std::string> methods{"exact", "lb51", "lb52", "ub53", "formula", "all"};
  if (!methods.count(o.method)) throw UsageError("unknown method '" + o.method + "'");
  auto fmt = parse_format(o.format);
  auto degrees = parse_degrees(o);
  auto src = load_source(o);
  ss::SplineProblem P(src.mesh, src.spec);
  std::vector<Row> rows;
  for (int d : degrees) rows.push_back(compute_row(P, src, d, o.method, o.check));
  print_rows(rows, fmt);
  return 0;
}

// ---- ideals -----------------------------------------------------------------

int run_ideal(const Options& o) {
  auto fmt = parse_format(o.format);
  auto degrees = parse_degrees(o);
  ss::GradedIdeal ideal;
  std::string label;
  if (o.canonical) {
    if (!o.r) throw UsageError("--canonical needs -r");
    int r = *o.r, s = o.s.value_or(r), s2 = o.s2.value_or(s);
    ideal = ss::edge_ideal(ss::canonical_edge_spec(r, s, s2));
    label = "edge ideal in the frame (x, y, z), r=" + std::to_string(r) + " s=" + std::to_string(s) + " s'=" + std::to_string(s2);
  } else {
    auto src = load_source(o);
    if (!o.edge.empty() == o.vertex.has_value()) throw UsageError("select exactly one of --edge or --vertex");
    if (!o.edge.empty()) {
      std::size_t e = 0;
      try {
        auto comma = o.edge.find(',');
        if (comma == std::string::npos) {
          e = std::stoul(o.edge);
        } else {
          auto found = src.mesh.find_edge(std::stoi(o.edge.substr(0, comma)), std::stoi(o.edge.substr(comma + 1)));
          if (!found) throw UsageError("no edge " + o.edge);
          e = *found;
        }
      } catch (const std::logic_error&) {
        throw UsageError("malformed edge selector '" + o.edge + "'");
      }
      if (e >= src.mesh.num_edges()) throw UsageError("edge index out of range");
      ideal = ss::mesh_edge_ideal(src.mesh, src.spec, e);
      label = "J(edge " + std::to_string(src.mesh.edges()[e][0]) + "," + std::to_string(src.mesh.edges()[e][1]) + ")";
    } else {
      int v = *o.vertex;
      if (v < 0 || static_cast<std::size_t>(v) >= src.mesh.num_vertices()) throw UsageError("vertex index out of range");
      ss::VertexIdealVariant var;
      if (o.variant == "full") var = ss::VertexIdealVariant::Full;
      else if (o.variant == "bar") var = ss::VertexIdealVariant::Bar;
      else if (o.variant == "tilde") var = ss::VertexIdealVariant::Tilde;
      else throw UsageError("unknown variant '" + o.variant + "'");
      std::vector<int> ord;
      if (var == ss::VertexIdealVariant::Tilde) ord = ss::vertex_ordering(src.mesh);
      ideal = ss::vertex_ideal(src.mesh, src.spec, v, var, var == ss::VertexIdealVariant::Tilde ? &ord : nullptr);
      label = "J_" + o.variant + "(vertex " + std::to_string(v) + ")";
    }
  }
  if (fmt == Format::Json) {
    json out = ss::to_json(ideal);
    json dims = json::array();
    for (int d : degrees) dims.push_back({{"d", d}, {"dim", ideal.graded_dim(d)}});
    out["dims"] = dims;
    out["label"] = label;
    std::cout << out.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    std::cout << "d,dim\n";
    for (int d : degrees) std::cout << d << ',' << ideal.graded_dim(d) << "\n";
  } else {
    std::cout << label << "\ngenerators:\n";
    for (const auto& g : ideal.generators()) std::cout << "  " << g << "\n";
    std::cout << "graded dimensions:\n";
    for (int d : degrees) std::cout << "  d=" << d << ": " << ideal.graded_dim(d) << "\n";
  }
  return 0;
}

// ---- mesh output ------------------------------------------------------------

int run_refine(const Options& o) {
  auto src = load_source(o);
  auto [r, s] = require_rs(o);
  auto ps = ss::powell_sabin_6split(src.mesh, r, s);
  std::cout << ss::to_json(ps.refined, &ps.spec).dump(2) << "\n";
  return 0;
}

int run_gen(const Options& o) {
  if (o.gen.empty()) throw UsageError("gen needs a generator name");
  bool has_rs = o.r.has_value() || o.gen.rfind("ps6:", 0) == 0 || o.gen == "argyris-demo";
  if (has_rs) {
    auto src = load_source(o);
    std::cout << ss::to_json(src.mesh, &src.spec).dump(2) << "\n";
  } else {
    bool star = false;
    std::cout << ss::to_json(builtin_mesh(o.gen, star)).dump(2) << "\n";
  }
  return 0;
}

int run_validate(const Options& o) {
  auto fmt = parse_format(o.format);
  if (o.mesh_path.empty() == o.gen.empty()) throw UsageError("give exactly one of --mesh or --gen");
  ss::Mesh m;
  if (!o.mesh_path.empty()) {
    m = ss::load_mesh_file(o.mesh_path).mesh;
  } else {
    bool star = false;
    m = o.gen.rfind("ps6:", 0) == 0 ? ss::powell_sabin_6split(builtin_mesh(o.gen.substr(4), star), 0, 0).refined
                                    : builtin_mesh(o.gen, star);
  }
  auto rep = ss::validate_disk(m);
  auto c = m.counts();
  std::optional<std::vector<int>> ord;
  if (rep.ok) ord = ss::vertex_ordering(m);
  if (fmt == Format::Json) {
    json j = {{"ok", rep.ok},
              {"failed", rep.failed},
              {"detail", rep.detail},
              {"f0", c.f0},
              {"f1", c.f1},
              {"f2", c.f2},
              {"f0_interior", c.f0_interior},
              {"f1_interior", c.f1_interior}};
    j["ordering"] = ord ? json(*ord) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    std::cout << "ok,failed,f0,f1,f2,f0_interior,f1_interior\n"
              << (rep.ok ? "true" : "false") << ',' << rep.failed << ',' << c.f0 << ',' << c.f1 << ',' << c.f2 << ','
              << c.f0_interior << ',' << c.f1_interior << "\n";
  } else {
    std::cout << (rep.ok ? "valid disk" : "not a disk: " + rep.failed + " (" + rep.detail + ")") << "\n"
              << "f0=" << c.f0 << " f1=" << c.f1 << " f2=" << c.f2 << " f0_interior=" << c.f0_interior
              << " f1_interior=" << c.f1_interior << "\n";
    if (ord) {
      std::cout << "vertex ordering:";
      for (int v : *ord) std::cout << ' ' << v;
      std::cout << "\n";
    }
  }
  return rep.ok ? 0 : 1;
}

void add_mesh_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--mesh", o.mesh_path, "mesh JSON file");
  cmd->add_option("--gen", o.gen,
                  "builtin mesh: triangle, two-triangles, morgan-scott, argyris-demo, star:crossed, star:<t>-generic, "
                  "random:<seed>[:<n>], or ps6:<name> for its Powell-Sabin split");
}

void add_smoothness_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-r", o.r, "edge smoothness");
  cmd->add_option("-s", o.s, "vertex supersmoothness (default: r)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensions, bounds and ideals of superspline spaces on planar triangulations"};
  app.require_subcommand(1);
  Options o;

  auto* dim = app.add_subcommand("dim", "dimension report per degree");
  auto* table = app.add_subcommand("table", "all columns for a degree range");
  for (auto* cmd : {dim, table}) {
    add_mesh_options(cmd, o);
    add_smoothness_options(cmd, o);
    cmd->add_option("-d", o.degrees, "degree or range a..b")->required();
    cmd->add_option("--format", o.format, "text, csv or json");
    cmd->add_flag("--check", o.check, "verify the Euler identity and the bound ordering on every row");
    cmd->add_flag("--allow-large", o.allow_large, "permit degrees above 30");
  }
  dim->add_option("--method", o.method, "exact, lb51, lb52, ub53, formula or all");

  auto* ideal = app.add_subcommand("ideal", "generators and graded dimensions of an edge or vertex ideal");
  add_mesh_options(ideal, o);
  add_smoothness_options(ideal, o);
  ideal->add_option("--s2", o.s2, "supersmoothness at the second endpoint (canonical frame)");
  ideal->add_flag("--canonical", o.canonical, "edge ideal in the frame (x, y, z)");
  ideal->add_option("--edge", o.edge, "edge index or endpoint pair i,j");
  ideal->add_option("--vertex", o.vertex, "interior vertex index");
  ideal->add_option("--variant", o.variant, "vertex ideal variant: full, bar or tilde");
  ideal->add_option("-d", o.degrees, "degree or range a..b")->required();
  ideal->add_option("--format", o.format, "text, csv or json");
  ideal->add_flag("--allow-large", o.allow_large, "permit degrees above 30");

  auto* refine = app.add_subcommand("refine", "Powell-Sabin 6-split of a mesh, as mesh JSON");
  add_mesh_options(refine, o);
  add_smoothness_options(refine, o);

  auto* gen = app.add_subcommand("gen", "emit a builtin mesh as JSON");
  gen->add_option("name", o.gen, "generator name")->required();
  add_smoothness_options(gen, o);

  auto* validate = app.add_subcommand("validate", "check that a mesh is a triangulated disk");
  add_mesh_options(validate, o);
  validate->add_option("--format", o.format, "text, csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*table) {
      if (o.method == "exact") o.method = "all";
      return run_dim(o);
    }
    if (*dim) return run_dim(o);
    if (*ideal) return run_ideal(o);
    if (*refine) return run_refine(o);
    if (*gen) return run_gen(o);
    if (*validate) return run_validate(o);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ss::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 1;
  } catch (const ss::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
