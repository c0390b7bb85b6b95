#include "cdkernel/report.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace cdk {

namespace {

Complex parse_complex_literal(const std::string& tok, size_t pos_base) {
  // forms: a | a+bi | a-bi | bi | i | -i
  std::string t;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty())
    throw Error(ErrorCode::Parse,
                "empty coordinate at position " + std::to_string(pos_base));
  auto fail = [&]() -> Complex {
    throw Error(ErrorCode::Parse, "malformed complex literal '" + tok +
                                      "' at position " + std::to_string(pos_base));
  };
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_real = [&](const std::string& s) -> double {
    if (s.empty()) return fail().real();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail();
    return v;
  };
  auto parse_imag = [&](std::string s) -> double {
    // s ends with 'i'; bare "i"/"+i"/"-i" mean +-1
    if (s.empty() || s.back() != 'i') return fail().real();
    s.pop_back();
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (t.back() == 'i') {
    if (split == std::string::npos) return Complex(0.0, parse_imag(t));
    return Complex(parse_real(t.substr(0, split)), parse_imag(t.substr(split)));
  }
  if (split != std::string::npos) fail();  // "a+b" without i
  return Complex(parse_real(t), 0.0);
}

}  // namespace

DomainPoint parse_point(const std::string& text) {
  DomainPoint pt;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string tok = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    pt.push_back(parse_complex_literal(tok, start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return pt;
}

nlohmann::json to_json(Complex c) {
  return nlohmann::json{{"re", c.real()}, {"im", c.imag()}};
}

nlohmann::json to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }

nlohmann::json to_json(const PDVerdict& v) {
  return nlohmann::json{{"class", pd_class_name(v.cls)},
                        {"min_eigenvalue", v.min_eigenvalue},
                        {"max_eigenvalue", v.max_eigenvalue}};
}

namespace {

nlohmann::json point_json(const DomainPoint& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p) arr.push_back(to_json(c));
  return arr;
}

}  // namespace

nlohmann::json to_json(const JetMatrix& jm) {
  nlohmann::json idx = nlohmann::json::array();
  for (const auto& mi : jm.index_list) idx.push_back(mi);
  return nlohmann::json{{"point", point_json(jm.point)},
                        {"lambda", jm.lambda},
                        {"order", jm.order},
                        {"index_list", std::move(idx)},
                        {"gram", to_json(jm.gram)}};
}

nlohmann::json to_json(const CurvatureMatrix& cm) {
  return nlohmann::json{{"point", point_json(cm.point)},
                        {"lambda", cm.lambda},
                        {"H", to_json(cm.H)}};
}

nlohmann::json to_json(const LocalTuple& t) {
  nlohmann::json nmats = nlohmann::json::array();
  for (const auto& n : t.N) nmats.push_back(to_json(n));
  return nlohmann::json{{"point", point_json(t.point)},
                        {"A", to_json(t.A)},
                        {"N", std::move(nmats)}};
}

nlohmann::json to_json(const WallachResult& w) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : w.verdicts) verdicts.push_back(to_json(v));
  nlohmann::json j{{"max_order", w.max_order},
                   {"index", w.index},
                   {"saturated", w.saturated},
                   {"verdicts", std::move(verdicts)}};
  // matrix-size counting includes the constant row/column, so the same
  // result reads one higher in that convention
  j["index_matrix_convention"] = w.index + 1;
  return j;
}

nlohmann::json to_json(const ContractivityReport& r) {
  return nlohmann::json{{"test", r.test_name},
                        {"lambda", r.lambda},
                        {"verdict", r.verdict},
                        {"computed_threshold", r.computed_threshold},
                        {"claimed_threshold", r.claimed_threshold},
                        {"discrepancy", r.discrepancy},
                        {"notes", r.notes}};
}

nlohmann::json to_json(const PaNorm& p) {
  return nlohmann::json{{"formula", p.formula}, {"direct", p.direct}};
}

Complex complex_from_json(const nlohmann::json& j) {
  return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::Parse, "matrix json must be a nonempty array");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j.at(i).at(k));
  return m;
}

namespace {

void dump_rec(const nlohmann::json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int d) { out.append(static_cast<size_t>(indent) * d, ' '); };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n";
      pad(depth);
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        dump_rec(el, out, indent, depth + 1);
      }
      out += "\n";
      pad(depth);
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

double env_tolerance(double fallback) {
  const char* env = std::getenv("CDKERNEL_TOL");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || v <= 0.0) return fallback;
  return v;
}

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Argument: return "argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Branch: return "branch";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::UnsupportedOrder: return "unsupported-order";
    case ErrorCode::Symmetry: return "symmetry";
    case ErrorCode::Step: return "step";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace cdk
