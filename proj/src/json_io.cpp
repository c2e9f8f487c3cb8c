#include "ambar/json_io.hpp"

#include <stdexcept>

namespace ambar {

using nlohmann::json;

std::string to_string(Verdict v) { return v == Verdict::confirmed ? "confirmed" : "violated"; }

std::string to_string(Branch b) { return b == Branch::trivial ? "trivial" : "spurious"; }

std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::none: return "none";
    case Degeneracy::coincide: return "coincide";
    case Degeneracy::undefined: return "undefined";
  }
  return "none";
}

void to_json(json& j, const Spectrum& s) { j = json{{"values", s.values}, {"tol", s.tol}}; }

void from_json(const json& j, Spectrum& s) {
  s.values = j.at("values").get<std::vector<double>>();
  s.tol = j.value("tol", kDefaultTol);
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (s.values[i] < s.values[i - 1]) throw std::invalid_argument("spectrum must be ascending");
  }
}

void to_json(json& j, const JacobiMatrix& m) {
  j = json{{"n", m.size()},
           {"a", std::vector<double>(m.off_diagonal().begin(), m.off_diagonal().end())},
           {"b", std::vector<double>(m.diagonal().begin(), m.diagonal().end())}};
}

void to_json(json& j, const FloquetMatrix& m) {
  j = json{{"n", m.size()},
           {"b", std::vector<double>(m.diagonal().begin(), m.diagonal().end())},
           {"theta", m.theta()}};
}

void to_json(json& j, const BoundaryPerturbation& p) { j = json{{"b", p.b}, {"B", p.B}}; }

void to_json(json& j, const CandidatePair& c) {
  j = json{{"b1", c.b1},
           {"b2", c.b2},
           {"branch", to_string(c.branch)},
           {"degenerate", to_string(c.degenerate)}};
}

void to_json(json& j, const VerificationReport& r) {
  j = json{{"theorem", r.theorem},
           {"instance", r.instance},
           {"verdict", to_string(r.verdict)},
           {"status", r.status},
           {"witness", r.witness}};
}

void to_json(json& j, const GridSpec& g) {
  j = json{{"lo", g.lo}, {"hi", g.hi}, {"step", g.step}, {"points_per_axis", g.points()}};
}

void to_json(json& j, const OracleResult& r) {
  json sols = json::array();
  for (const auto& s : r.solutions) {
    sols.push_back({{"k", s.k}, {"b1", s.b1}, {"b2", s.b2}, {"residual", s.residual}});
  }
  j = json{{"n", r.n},
           {"grid", r.grid},
           {"evaluated", r.evaluated},
           {"seeds", r.seeds},
           {"solutions", std::move(sols)}};
}

void to_json(json& j, const Poly<double>& p) { j = p.coefficients(); }

void to_json(json& j, const Poly<Rational>& p) {
  j = json::array();
  for (const auto& q : p.coefficients()) j.push_back(to_string(q));
}

std::size_t MatrixSpec::dimension() const {
  if (n) return *n;
  if (!b.empty()) return b.size();
  if (!a.empty()) return a.size() + 1;
  throw std::invalid_argument("matrix needs n or a diagonal");
}

JacobiMatrix MatrixSpec::jacobi() const {
  const std::size_t dim = dimension();
  if (dim == 0) throw std::invalid_argument("dimension must be >= 1");
  std::vector<double> diag = b.empty() ? std::vector<double>(dim, 0.0) : b;
  std::vector<double> off = a.empty() ? std::vector<double>(dim - 1, 1.0) : a;
  if (diag.size() != dim) throw std::invalid_argument("b has length " + std::to_string(diag.size()) + ", expected " + std::to_string(dim));
  return apply_boundary(JacobiMatrix(std::move(off), std::move(diag)), boundary);
}

FloquetMatrix MatrixSpec::floquet() const {
  const std::size_t dim = dimension();
  if (!a.empty()) throw std::invalid_argument("Floquet matrices have unit off-diagonal");
  if (boundary.b != 0.0 || boundary.B != 0.0) {
    throw std::invalid_argument("boundary perturbation does not apply to Floquet matrices");
  }
  std::vector<double> diag = b.empty() ? std::vector<double>(dim, 0.0) : b;
  return make_floquet(dim, std::move(diag), theta.value_or(0.0));
}

void to_json(json& j, const MatrixSpec& s) {
  j = json::object();
  if (s.n) j["n"] = *s.n;
  if (!s.a.empty()) j["a"] = s.a;
  if (!s.b.empty()) j["b"] = s.b;
  if (s.boundary.b != 0.0 || s.boundary.B != 0.0) j["boundary"] = s.boundary;
  if (s.theta) j["theta"] = *s.theta;
}

void from_json(const json& j, MatrixSpec& s) {
  if (j.contains("n")) s.n = j.at("n").get<std::size_t>();
  if (j.contains("a")) s.a = j.at("a").get<std::vector<double>>();
  if (j.contains("b")) s.b = j.at("b").get<std::vector<double>>();
  if (j.contains("boundary")) {
    const auto& bc = j.at("boundary");
    s.boundary.b = bc.value("b", 0.0);
    s.boundary.B = bc.value("B", 0.0);
  }
  if (j.contains("theta")) s.theta = j.at("theta").get<double>();
}

}  // namespace ambar
