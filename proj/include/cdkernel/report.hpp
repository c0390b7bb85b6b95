#pragma once

#include "cdkernel/contract.hpp"
#include "cdkernel/holomaps.hpp"
#include "cdkernel/jetcurv.hpp"

#include <json.hpp>

#include <string>

namespace cdk {

/// Comma-separated complex literals: "a", "a+bi", "a-bi", "bi", "i", "-i".
/// Throws a parse error naming the offending position.
DomainPoint parse_point(const std::string& text);

// JSON serialization. Complex scalars become {"re":..., "im":...}, matrices
// row-major nested arrays. Floating values keep 17 significant digits so that
// identical inputs give byte-identical reports.
nlohmann::json to_json(Complex c);
nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const HermitianMatrix& m);
nlohmann::json to_json(const PDVerdict& v);
nlohmann::json to_json(const JetMatrix& jm);
nlohmann::json to_json(const CurvatureMatrix& cm);
nlohmann::json to_json(const LocalTuple& t);
nlohmann::json to_json(const WallachResult& w);
nlohmann::json to_json(const ContractivityReport& r);
nlohmann::json to_json(const PaNorm& p);

Complex complex_from_json(const nlohmann::json& j);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Serialize with doubles rendered at 17 significant digits.
std::string dump_deterministic(const nlohmann::json& j, int indent = 2);

/// Reads CDKERNEL_TOL; falls back to `fallback` when unset or malformed.
double env_tolerance(double fallback);

const char* error_code_name(ErrorCode c);

}  // namespace cdk
