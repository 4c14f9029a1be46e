#include "dphase/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dphase/errors.hpp"

namespace dphase {

namespace {

const std::vector<std::pair<std::string, std::string>>& schema() {
  static const std::vector<std::pair<std::string, std::string>> defaults = {
      {"beta", "1.0"},
      {"domain.a", "0.0"},
      {"domain.b", "1.0"},
      {"domain.collar", "1.0"},
      {"lambda", "0.1"},
      {"mesh.diag_depth", "4"},
      {"mesh.n_collar", "32"},
      {"mesh.n_interior", "64"},
      {"phase1.family", "power"},
      {"phase1.p", "3.0"},
      {"phase1.s", "0.4"},
      {"phase2.family", "power"},
      {"phase2.p", "4.0"},
      {"phase2.s", "0.6"},
      {"reaction.q", "2.0"},
      {"seed", "42"},
      {"solver.max_iters", "50000"},
      {"solver.rho", "0.5"},
      {"solver.t0", "2.0"},
      {"solver.tol", "1e-6"},
  };
  return defaults;
}

bool known_key(const std::string& key) {
  for (const auto& [k, v] : schema())
    if (k == key) return true;
  return false;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::size_t offset = 0;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::string entry = trim(body);
    if (!entry.empty()) {
      auto eq = body.find('=');
      if (eq == std::string::npos)
        throw ParseError("config line " + std::to_string(line_no) +
                             ": expected key = value",
                         offset);
      std::string key = trim(body.substr(0, eq));
      std::string value = trim(body.substr(eq + 1));
      if (!known_key(key))
        throw ParseError("config line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'",
                         offset + body.find_first_not_of(" \t"));
      if (value.empty())
        throw ParseError("config line " + std::to_string(line_no) +
                             ": empty value for '" + key + "'",
                         offset + eq);
      if (cfg.values_.count(key))
        throw ParseError("config line " + std::to_string(line_no) +
                             ": duplicate key '" + key + "'",
                         offset);
      cfg.values_[key] = value;
    }
    offset += line.size() + 1;
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

const std::string& RunConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  for (const auto& [k, v] : schema())
    if (k == key) return v;
  throw std::invalid_argument("config key '" + key + "' is not in the schema");
}

double RunConfig::get_double(const std::string& key) const {
  const std::string& s = get_string(key);
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size())
    throw std::invalid_argument("config key '" + key +
                                "': malformed number '" + s + "'");
  return v;
}

long RunConfig::get_long(const std::string& key) const {
  const std::string& s = get_string(key);
  std::size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size())
    throw std::invalid_argument("config key '" + key +
                                "': malformed integer '" + s + "'");
  return v;
}

std::uint64_t RunConfig::seed() const {
  return static_cast<std::uint64_t>(get_long("seed"));
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : schema()) out.emplace_back(k, get_string(k));
  return out;
}

namespace {

MusielakFamily make_family(const std::string& which, const std::string& kind,
                           const std::string& p_text, Box box) {
  Expression p = Expression::parse(p_text);
  if (kind == "power") return MusielakFamily::power(std::move(p), box);
  if (kind == "powerlog") return MusielakFamily::power_log(std::move(p), box);
  throw std::invalid_argument(which + ".family must be 'power' or 'powerlog', got '" +
                              kind + "'");
}

}  // namespace

Problem RunConfig::make_problem() const {
  MeshSpec mspec;
  mspec.a = get_double("domain.a");
  mspec.b = get_double("domain.b");
  mspec.collar = get_double("domain.collar");
  mspec.n_interior = static_cast<int>(get_long("mesh.n_interior"));
  mspec.n_collar = static_cast<int>(get_long("mesh.n_collar"));
  mspec.diag_depth = static_cast<int>(get_long("mesh.diag_depth"));
  Mesh mesh = Mesh::build(mspec);
  Box box = mesh.box();
  Box omega = mesh.omega();

  PhaseSpec ph1{make_family("phase1", get_string("phase1.family"),
                            get_string("phase1.p"), box),
                OrderField(Expression::parse(get_string("phase1.s")), box)};
  PhaseSpec ph2{make_family("phase2", get_string("phase2.family"),
                            get_string("phase2.p"), box),
                OrderField(Expression::parse(get_string("phase2.s")), box)};
  ExponentField beta(Expression::parse(get_string("beta")), box, "beta");
  ReactionSpec reaction(
      ExponentField(Expression::parse(get_string("reaction.q")), omega, "q"));

  SolverParams solver;
  solver.tol = get_double("solver.tol");
  solver.max_iters = get_long("solver.max_iters");
  solver.rho = get_double("solver.rho");
  solver.t0 = get_double("solver.t0");

  return Problem(std::move(mesh), std::move(ph1), std::move(ph2),
                 std::move(beta), std::move(reaction), get_double("lambda"),
                 solver, seed());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_solution_csv(const std::string& path, const Mesh& mesh,
                        const GridFunction& u) {
  check_grid_function(u, mesh);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "x,u,region\n";
  const auto& cells = mesh.cells();
  for (std::size_t c = 0; c < cells.size(); ++c)
    out << format_double(cells[c].mid) << ',' << format_double(u[c]) << ','
        << (cells[c].region == Region::interior ? "interior" : "exterior")
        << '\n';
}

GridFunction read_solution_csv(const std::string& path, const Mesh& mesh) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,u,region")
    throw std::runtime_error("solution file '" + path +
                             "': expected header 'x,u,region'");
  GridFunction u;
  const auto& cells = mesh.cells();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    std::string sx, su, region;
    if (!std::getline(ls, sx, ',') || !std::getline(ls, su, ',') ||
        !std::getline(ls, region))
      throw std::runtime_error("solution file: malformed row " +
                               std::to_string(row + 2));
    if (row >= cells.size())
      throw std::runtime_error("solution file has more rows than mesh cells");
    double x = std::stod(sx);
    if (std::fabs(x - cells[row].mid) >
        1e-12 * (1.0 + std::fabs(cells[row].mid)))
      throw std::runtime_error("solution file row " + std::to_string(row + 2) +
                               ": x does not match the mesh node");
    u.push_back(std::stod(su));
    ++row;
  }
  if (u.size() != cells.size())
    throw std::runtime_error("solution file has fewer rows than mesh cells");
  return u;
}

void write_report(const std::string& path, const RunConfig& cfg,
                  const SolveReport& rep) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "branch=" << rep.branch << '\n';
  out << "lambda=" << format_double(rep.lambda) << '\n';
  out << "energy=" << format_double(rep.energy) << '\n';
  out << "gradient_sup_norm=" << format_double(rep.gradient_sup_norm) << '\n';
  out << "neumann_sup_residual=" << format_double(rep.neumann_sup_residual)
      << '\n';
  out << "norm=" << format_double(rep.norm_of_minimizer) << '\n';
  out << "iterations=" << rep.iterations << '\n';
  out << "lambda_star_estimate=" << format_double(rep.lambda_star_estimate)
      << '\n';
  out << "lambda_hat_star_estimate="
      << format_double(rep.lambda_hat_star_estimate) << '\n';
  out << "embedding_constant_estimate="
      << format_double(rep.embedding_constant_estimate) << '\n';
  out << "rho=" << format_double(rep.rho) << '\n';
  out << "nontrivial=" << (rep.nontrivial ? 1 : 0) << '\n';
  out << "ball_violation=" << (rep.ball_violation ? 1 : 0) << '\n';
  out << "truncation_tail_estimate="
      << format_double(rep.truncation_tail_estimate) << '\n';
  for (const auto& w : rep.warnings) out << "warning=" << w << '\n';
  for (const auto& [k, v] : cfg.resolved())
    out << "config." << k << '=' << v << '\n';
}

}  // namespace dphase
