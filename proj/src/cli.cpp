#include "ambar/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ambar/charpoly.hpp"
#include "ambar/spectra.hpp"

namespace ambar::cli {

using nlohmann::json;

namespace {

// Random diagonal entries are uniform on [-3, 3]. The mapping from raw 64-bit
// draws is fixed here so outputs do not depend on the standard library's
// distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  long integer(long lo, long hi) {
    return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::vector<double> diagonal(std::size_t n) {
    std::vector<double> b(n);
    for (auto& x : b) x = uniform(-3.0, 3.0);
    return b;
  }

 private:
  std::mt19937_64 gen_;
};

std::size_t require_n(const RunConfig& c, std::size_t min_n) {
  std::size_t n = 0;
  try {
    n = c.matrix.dimension();
  } catch (const std::invalid_argument&) {
    throw UsageError("command '" + c.command + "' needs --n or --b");
  }
  if (n < min_n) {
    throw UsageError("command '" + c.command + "' needs n >= " + std::to_string(min_n));
  }
  return n;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string poly_to_string(const Poly<Rational>& p) {
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (mag != 1 || i == 0) s += to_string(mag);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

json dense_rows(const JacobiMatrix& m) {
  const auto d = to_dense(m);
  json rows = json::array();
  for (std::size_t i = 0; i < d.n; ++i) {
    rows.push_back(std::vector<double>(d.data.begin() + i * d.n, d.data.begin() + (i + 1) * d.n));
  }
  return rows;
}

json base_document(const RunConfig& c) {
  return json{{"command", c.command}, {"config", c}};
}

RunResult verdict_result(json doc, bool ok) {
  doc["verdict"] = ok ? "confirmed" : "violated";
  return {ok ? 0 : 1, std::move(doc)};
}

RunResult run_charpoly(const RunConfig& c) {
  json doc = base_document(c);
  if (c.matrix.theta) {
    const FloquetMatrix m = c.matrix.floquet();
    const auto p = charpoly(m);
    doc["matrix"] = m;
    doc["charpoly"] = p;
    doc["finite"] = p.is_finite();
    doc["mode"] = "float";
  } else if (c.exact) {
    const JacobiMatrix m = c.matrix.jacobi();
    const auto p = charpoly_exact(m);
    doc["matrix"] = m;
    doc["charpoly"] = p;
    doc["charpoly_text"] = poly_to_string(p);
    doc["finite"] = true;
    doc["mode"] = "exact";
  } else {
    const JacobiMatrix m = c.matrix.jacobi();
    const auto p = charpoly(m);
    doc["matrix"] = m;
    doc["charpoly"] = p;
    doc["finite"] = p.is_finite();
    doc["mode"] = "float";
  }
  return {0, std::move(doc)};
}

RunResult run_spectrum(const RunConfig& c) {
  json doc = base_document(c);
  const JacobiMatrix m = c.matrix.jacobi();
  const Spectrum s = eigenvalues(m, c.tol.eig);
  doc["matrix"] = m;
  doc["spectrum"] = s;
  if (s.size() > 1) doc["min_gap"] = s.min_gap();
  return {0, std::move(doc)};
}

RunResult run_floquet_spectrum(const RunConfig& c) {
  json doc = base_document(c);
  require_n(c, 3);
  const FloquetMatrix m = c.matrix.floquet();
  const Spectrum s = eigenvalues(m, c.tol.eig);
  doc["matrix"] = m;
  doc["spectrum"] = s;
  const auto b = m.diagonal();
  if (std::all_of(b.begin(), b.end(), [](double x) { return x == 0.0; })) {
    doc["recovered_angles"] = recover_floquet_angle(s, m.size(), c.tol.match);
  }
  return {0, std::move(doc)};
}

json verify_trial(const RunConfig& c, std::size_t trial, Sampler& rng) {
  const std::string& th = c.theorem;
  const bool given_b = !c.matrix.b.empty();
  if (th == "amb1") {
    const std::size_t n = require_n(c, 1);
    const auto b = given_b ? c.matrix.b : rng.diagonal(n);
    return verify_amb_dirichlet(b, c.tol);
  }
  if (th == "nzbc") {
    const std::size_t n = require_n(c, 2);
    const double bc = c.matrix.boundary.b != 0.0 ? c.matrix.boundary.b : rng.uniform(-3.0, 3.0);
    std::vector<double> rest = given_b ? std::vector<double>(c.matrix.b.begin() + 1, c.matrix.b.end())
                                       : rng.diagonal(n - 1);
    return verify_known_boundary(bc, rest, c.tol);
  }
  if (th == "amb2") {
    const std::size_t n = require_n(c, 3);
    const double phi = c.phi ? *c.phi : rng.unit();
    // Alternate the two directions: odd trials put the free matrix or its
    // transpose on the left, even trials a random potential and angle.
    if (!given_b && trial % 2 == 1) {
      const double theta = rng.unit() < 0.5 ? phi : 1.0 - phi;
      return verify_floquet_uniqueness(std::vector<double>(n, 0.0), theta, phi, c.tol);
    }
    const auto b = given_b ? c.matrix.b : rng.diagonal(n);
    const double theta = c.matrix.theta ? *c.matrix.theta : rng.unit();
    return verify_floquet_uniqueness(b, theta, phi, c.tol);
  }
  if (th == "lemma") {
    const std::size_t n = require_n(c, 2);
    std::vector<double> b = c.matrix.b;
    if (!given_b) {
      b.resize(n);
      for (auto& x : b) x = static_cast<double>(rng.integer(-5, 5));
    }
    return verify_coefficient_identities(b);
  }
  if (th == "factorization") {
    const std::size_t n = require_n(c, 4);
    Rational b1(rng.integer(-20, 20), static_cast<unsigned long>(rng.integer(1, 9)));
    Rational b2(rng.integer(-20, 20), static_cast<unsigned long>(rng.integer(1, 9)));
    b1.canonicalize();
    b2.canonicalize();
    return verify_two_site_factorization(n, b1, b2);
  }
  throw UsageError("unknown theorem '" + th + "'");
}

RunResult run_verify(const RunConfig& c) {
  json doc = base_document(c);
  doc["theorem"] = c.theorem;
  json reports = json::array();
  if (c.theorem == "counterexample") {
    reports.push_back(verify_counterexample(c.tol));
  } else if (c.theorem == "amb3") {
    const std::size_t n = require_n(c, 2);
    if (c.k) {
      reports.push_back(eliminate_spurious(n, *c.k, c.tol));
    } else {
      for (std::size_t k = 1; k < n; ++k) reports.push_back(eliminate_spurious(n, k, c.tol));
    }
  } else {
    if (c.trials == 0) throw UsageError("--trials must be positive");
    Sampler rng(c.seed);
    for (std::size_t t = 0; t < c.trials; ++t) reports.push_back(verify_trial(c, t, rng));
  }
  std::size_t violated = 0;
  for (const auto& r : reports) violated += r.at("verdict") == "violated" ? 1 : 0;
  doc["runs"] = reports.size();
  doc["confirmed"] = reports.size() - violated;
  doc["violated"] = violated;
  doc["reports"] = std::move(reports);
  return verdict_result(std::move(doc), violated == 0);
}

RunResult run_solve_amb3(const RunConfig& c) {
  json doc = base_document(c);
  const std::size_t n = require_n(c, 2);
  if (!c.k) throw UsageError("solve-amb3 needs --k");
  const std::size_t k = *c.k;
  if (k < 1 || k + 1 > n) throw UsageError("--k must satisfy 1 <= k <= n-1");
  const Spectrum sf = eigenvalues(make_free(n), c.tol.eig);
  const double lk = c.lambda_k.value_or(sf[k - 1]);
  const double lk1 = c.lambda_k1.value_or(sf[k]);
  doc["lambda_k"] = lk;
  doc["lambda_k1"] = lk1;
  doc["candidates"] = amb3_candidates(lk, lk1, c.tol.match);
  const CandidatePair sol = amb3_solve(n, k, lk, lk1, c.tol);
  doc["b1"] = sol.b1;
  doc["b2"] = sol.b2;
  doc["branch"] = to_string(sol.branch);
  doc["degeneracy"] = to_string(classify_free_pair(n, k));
  return {0, std::move(doc)};
}

RunResult run_oracle_scan(const RunConfig& c) {
  json doc = base_document(c);
  const std::size_t n = require_n(c, 2);
  if (n > 10) throw UsageError("oracle-scan supports n <= 10");
  OracleOptions opts;
  opts.workers = 0;
  const OracleResult res = brute_force_isospectral_search(n, c.grid, opts);
  json nonzero = json::array();
  for (const auto& s : res.solutions) {
    if (std::hypot(s.b1, s.b2) > 1e-6) nonzero.push_back({{"k", s.k}, {"b1", s.b1}, {"b2", s.b2}});
  }
  doc["result"] = res;
  doc["nonzero_solutions"] = nonzero;
  return verdict_result(std::move(doc), nonzero.empty());
}

RunResult run_counterexample(const RunConfig& c) {
  json doc = base_document(c);
  const VerificationReport r = verify_counterexample(c.tol);
  const double s5 = std::sqrt(5.0);
  doc["A"] = dense_rows(make_schrodinger(3, {2.0, 0.0, 0.0}));
  doc["B"] = dense_rows(make_schrodinger(3, {-2.0 / (1.0 + s5), 1.0, (1.0 + s5) / 2.0}));
  doc["B_symbolic"] = json::array({json::array({"-2/(1+sqrt(5))", "1", "0"}),
                                   json::array({"1", "1", "1"}),
                                   json::array({"0", "1", "(1+sqrt(5))/2"})});
  doc["shared_charpoly"] = poly_to_string(
      charpoly(make_schrodinger<Rational>(3, {Rational(2), Rational(0), Rational(0)})));
  doc["report"] = r;
  return verdict_result(std::move(doc), r.verdict == Verdict::confirmed);
}

void flatten(const json& j, const std::string& prefix, int precision,
             std::vector<std::pair<std::string, std::string>>& rows) {
  auto scalar = [&](const json& v) -> std::string {
    if (v.is_number_float()) return format_number(v.get<double>(), precision);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "null";
    return v.dump();
  };
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      flatten(v, prefix.empty() ? key : prefix + "." + key, precision, rows);
    }
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
    if (flat) {
      std::string s;
      for (const auto& v : j) s += (s.empty() ? "" : " ") + scalar(v);
      rows.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) {
        flatten(j[i], prefix + "[" + std::to_string(i) + "]", precision, rows);
      }
    }
  } else {
    rows.emplace_back(prefix, scalar(j));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

// Every flag binds to the same config; subcommands select `command`.
void add_common_options(CLI::App& app, RunConfig& c, std::vector<double>& boundary) {
  app.add_option("--n", c.matrix.n, "matrix dimension");
  app.add_option("--b", c.matrix.b, "diagonal entries, comma separated")->delimiter(',');
  app.add_option("--a", c.matrix.a, "off-diagonal entries, comma separated")->delimiter(',');
  app.add_option("--boundary", boundary, "boundary perturbation b,B")->delimiter(',')->expected(1, 2);
  app.add_option("--theta", c.matrix.theta, "Floquet angle in turns");
  app.add_option("--phi", c.phi, "angle of the free Floquet matrix (verify amb2)");
  app.add_option("--k", c.k, "1-based eigenvalue index");
  app.add_option("--lambda-k", c.lambda_k, "k-th eigenvalue (solve-amb3)");
  app.add_option("--lambda-k1", c.lambda_k1, "(k+1)-th eigenvalue (solve-amb3)");
  app.add_option("--trials", c.trials, "random trials for verify");
  app.add_option("--tol", c.tol.eig, "eigenvalue bracket width");
  app.add_option("--tol-match", c.tol.match, "shared-eigenvalue tolerance");
  app.add_option("--seed", c.seed, "random seed");
  app.add_flag("--exact", c.exact, "exact rational characteristic polynomial");
  app.add_option("--lo", c.grid.lo, "oracle grid lower bound");
  app.add_option("--hi", c.grid.hi, "oracle grid upper bound");
  app.add_option("--step", c.grid.step, "oracle grid step");
  app.add_option("--format", c.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--precision", c.precision, "digits in table/csv output");
  app.add_option("--out", c.out, "write output to this file");
}

int emit(const RunConfig& c, const RunResult& r, std::ostream& out, std::ostream& err) {
  const std::string text = render(r.output, c.format, c.precision);
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << c.out << " for writing\n";
      return 2;
    }
    f << text;
  }
  return r.exit_code;
}

}  // namespace

void to_json(json& j, const RunConfig& c) {
  j = json{{"command", c.command},
           {"matrix", c.matrix},
           {"theorem", c.theorem},
           {"trials", c.trials},
           {"tol", c.tol.eig},
           {"tol_match", c.tol.match},
           {"seed", c.seed},
           {"exact", c.exact},
           {"grid", json{{"lo", c.grid.lo}, {"hi", c.grid.hi}, {"step", c.grid.step}}},
           {"format", c.format},
           {"precision", c.precision}};
  if (c.phi) j["phi"] = *c.phi;
  if (c.k) j["k"] = *c.k;
  if (c.lambda_k) j["lambda_k"] = *c.lambda_k;
  if (c.lambda_k1) j["lambda_k1"] = *c.lambda_k1;
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  c.command = j.at("command").get<std::string>();
  c.matrix = j.contains("matrix") ? j.at("matrix").get<MatrixSpec>() : j.get<MatrixSpec>();
  if (j.contains("phi")) c.phi = j.at("phi").get<double>();
  if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
  if (j.contains("lambda_k")) c.lambda_k = j.at("lambda_k").get<double>();
  if (j.contains("lambda_k1")) c.lambda_k1 = j.at("lambda_k1").get<double>();
  c.theorem = j.value("theorem", std::string{});
  c.trials = j.value("trials", std::size_t{1});
  c.tol.eig = j.value("tol", kDefaultTol);
  c.tol.match = j.value("tol_match", 1e-9);
  c.seed = j.value("seed", std::uint64_t{0});
  c.exact = j.value("exact", false);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid.lo = g.value("lo", c.grid.lo);
    c.grid.hi = g.value("hi", c.grid.hi);
    c.grid.step = g.value("step", c.grid.step);
  }
  c.format = j.value("format", std::string{"json"});
  c.precision = j.value("precision", 12);
  c.out = j.value("out", std::string{});
}

RunResult execute(const RunConfig& c) {
  if (!(c.tol.eig > 0.0) || !(c.tol.match > 0.0)) throw UsageError("tolerances must be positive");
  try {
    if (c.command == "charpoly") return run_charpoly(c);
    if (c.command == "spectrum") return run_spectrum(c);
    if (c.command == "floquet-spectrum") return run_floquet_spectrum(c);
    if (c.command == "verify") {
      if (c.theorem.empty()) throw UsageError("verify needs --theorem");
      return run_verify(c);
    }
    if (c.command == "solve-amb3") return run_solve_amb3(c);
    if (c.command == "oracle-scan") return run_oracle_scan(c);
    if (c.command == "counterexample") return run_counterexample(c);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown command '" + c.command + "'");
}

std::string render(const json& doc, const std::string& format, int precision) {
  if (format == "json") return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", precision, rows);
  std::string s;
  if (format == "csv") {
    s = "key,value\n";
    for (const auto& [k, v] : rows) s += csv_field(k) + "," + csv_field(v) + "\n";
    return s;
  }
  if (format == "table") {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    for (const auto& [k, v] : rows) s += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return s;
  }
  throw UsageError("unknown format '" + format + "'");
}

BatchSummary run_batch(std::istream& in, std::ostream& out, unsigned workers) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }

  struct Slot {
    json result;
    int status = 0;  // 0 passed, 1 failed, 2 invalid
  };
  std::vector<Slot> slots(lines.size());
  auto work = [&](std::size_t i) {
    json entry{{"line", i + 1}};
    try {
      const RunConfig c = json::parse(lines[i]).get<RunConfig>();
      const RunResult r = execute(c);
      entry["exit_code"] = r.exit_code;
      entry["result"] = r.output;
      slots[i] = {std::move(entry), r.exit_code == 0 ? 0 : 1};
    } catch (const std::exception& e) {
      entry["error"] = e.what();
      entry["invalid"] = true;
      slots[i] = {std::move(entry), 2};
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(lines.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < lines.size(); i += workers) work(i);
      });
    }
  }

  BatchSummary sum;
  for (const auto& s : slots) {
    out << s.result.dump() << "\n";
    ++sum.runs;
    if (s.status == 0) ++sum.passed;
    if (s.status == 1) ++sum.failed;
    if (s.status == 2) ++sum.invalid;
  }
  out << json{{"summary", {{"runs", sum.runs},
                           {"passed", sum.passed},
                           {"failed", sum.failed},
                           {"invalid", sum.invalid}}}}
             .dump()
      << "\n";
  return sum;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Direct and inverse spectral computations for finite Jacobi matrices"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<double> boundary;
  std::string batch_file;
  std::string config_file;
  unsigned batch_workers = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"charpoly", "characteristic polynomial (exact with --exact, Floquet with --theta)"},
      {"spectrum", "eigenvalues of a Jacobi matrix"},
      {"floquet-spectrum", "eigenvalues of a Floquet matrix, with multiplicity"},
      {"verify", "check a uniqueness theorem on given or random instances"},
      {"solve-amb3", "recover (b1, b2) from two consecutive eigenvalues"},
      {"oracle-scan", "brute-force grid search for two-eigenvalue matches"},
      {"counterexample", "the isospectral pair with boundary condition 2"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_options(*sub, config, boundary);
    if (name == "verify") {
      sub->add_option("--theorem", config.theorem,
                      "amb1, nzbc, amb2, amb3, counterexample, lemma or factorization")
          ->required();
    }
    subs[name] = sub;
  }
  CLI::App* run = app.add_subcommand("run", "run a JSON config file");
  run->add_option("--config", config_file, "JSON config")->required()->check(CLI::ExistingFile);
  run->add_option("--format", config.format, "override output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  run->add_option("--out", config.out, "write output to this file");
  CLI::App* batch = app.add_subcommand("batch", "newline-delimited JSON configs");
  batch->add_option("--file", batch_file, "config list")->required()->check(CLI::ExistingFile);
  batch->add_option("--workers", batch_workers, "parallel workers (0 = all cores)");
  batch->add_option("--out", config.out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (batch->parsed()) {
      std::ifstream in(batch_file);
      if (config.out.empty()) {
        const auto s = run_batch(in, out, batch_workers);
        return s.failed ? 1 : (s.invalid ? 2 : 0);
      }
      std::ofstream f(config.out, std::ios::binary);
      const auto s = run_batch(in, f, batch_workers);
      return s.failed ? 1 : (s.invalid ? 2 : 0);
    }
    if (run->parsed()) {
      std::ifstream in(config_file);
      RunConfig from_file = json::parse(in).get<RunConfig>();
      if (run->count("--format")) from_file.format = config.format;
      if (run->count("--out")) from_file.out = config.out;
      return emit(from_file, execute(from_file), out, err);
    }
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) config.command = name;
    }
    if (!boundary.empty()) {
      config.matrix.boundary.b = boundary[0];
      config.matrix.boundary.B = boundary.size() > 1 ? boundary[1] : 0.0;
    }
    return emit(config, execute(config), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ambar::cli
