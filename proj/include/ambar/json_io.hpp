#pragma once

// JSON encodings shared by the CLI and the verification reports.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ambar/charpoly.hpp"
#include "ambar/inverse.hpp"
#include "ambar/operators.hpp"
#include "ambar/spectra.hpp"
#include "json.hpp"

namespace ambar {

std::string to_string(Verdict v);
std::string to_string(Branch b);
std::string to_string(Degeneracy d);

void to_json(nlohmann::json& j, const Spectrum& s);
void to_json(nlohmann::json& j, const JacobiMatrix& m);
void to_json(nlohmann::json& j, const FloquetMatrix& m);
void to_json(nlohmann::json& j, const BoundaryPerturbation& p);
void to_json(nlohmann::json& j, const CandidatePair& c);
void to_json(nlohmann::json& j, const VerificationReport& r);
void to_json(nlohmann::json& j, const GridSpec& g);
void to_json(nlohmann::json& j, const OracleResult& r);

/// Coefficients ascending: numbers for float polys, "p/q" strings for exact.
void to_json(nlohmann::json& j, const Poly<double>& p);
void to_json(nlohmann::json& j, const Poly<Rational>& p);

void from_json(const nlohmann::json& j, Spectrum& s);

/// Matrix description with explicit field names:
///   {"n": 4, "a": [...], "b": [...], "boundary": {"b": 1, "B": 0}, "theta": 0.25}
/// `a` defaults to all ones, `b` to all zeros; `theta` selects a Floquet matrix.
struct MatrixSpec {
  std::optional<std::size_t> n;
  std::vector<double> a;
  std::vector<double> b;
  BoundaryPerturbation boundary;
  std::optional<double> theta;

  std::size_t dimension() const;
  JacobiMatrix jacobi() const;
  FloquetMatrix floquet() const;
};

void to_json(nlohmann::json& j, const MatrixSpec& s);
void from_json(const nlohmann::json& j, MatrixSpec& s);

}  // namespace ambar
