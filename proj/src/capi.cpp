#include "cdkernel.h"

#include "cdkernel/contract.hpp"
#include "cdkernel/holomaps.hpp"
#include "cdkernel/jetcurv.hpp"
#include "cdkernel/report.hpp"
#include "cdkernel/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace {

thread_local std::string g_last_error;

cdk_status status_for(cdk::ErrorCode c) {
  switch (c) {
    case cdk::ErrorCode::Argument: return CDK_ERR_ARGUMENT;
    case cdk::ErrorCode::Domain: return CDK_ERR_DOMAIN;
    case cdk::ErrorCode::Branch: return CDK_ERR_BRANCH;
    case cdk::ErrorCode::Singular: return CDK_ERR_SINGULAR;
    case cdk::ErrorCode::UnsupportedOrder: return CDK_ERR_UNSUPPORTED_ORDER;
    case cdk::ErrorCode::Symmetry: return CDK_ERR_SYMMETRY;
    case cdk::ErrorCode::Step: return CDK_ERR_STEP;
    case cdk::ErrorCode::Parse: return CDK_ERR_PARSE;
  }
  return CDK_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
cdk_status guarded(char** json_out, Fn&& fn) {
  if (!json_out) {
    g_last_error = "null output pointer";
    return CDK_ERR_ARGUMENT;
  }
  *json_out = nullptr;
  try {
    nlohmann::json j = fn();
    *json_out = dup_string(cdk::dump_deterministic(j));
    return CDK_OK;
  } catch (const cdk::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CDK_ERR_INTERNAL;
  }
}

cdk::DomainPoint parse_checked(const cdk::KernelSpec& k, const char* text) {
  if (!text) throw cdk::Error(cdk::ErrorCode::Argument, "null point string");
  cdk::DomainPoint p = cdk::parse_point(text);
  cdk::validate_point(k.domain, p);
  return p;
}

}  // namespace

struct cdk_kernel {
  cdk::KernelSpec spec;
};

extern "C" {

cdk_status cdk_kernel_create(const char* domain, double lambda, int truncation,
                             cdk_kernel** out) {
  if (!out || !domain) {
    g_last_error = "null argument";
    return CDK_ERR_ARGUMENT;
  }
  *out = nullptr;
  try {
    cdk::KernelSpec spec = cdk::KernelSpec::make(
        domain, lambda, truncation > 0 ? truncation : 20);
    *out = new cdk_kernel{spec};
    return CDK_OK;
  } catch (const cdk::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CDK_ERR_INTERNAL;
  }
}

void cdk_kernel_destroy(cdk_kernel* k) { delete k; }

const char* cdk_last_error(void) { return g_last_error.c_str(); }

void cdk_string_free(char* s) { std::free(s); }

cdk_status cdk_eval(const cdk_kernel* k, const char* point_z,
                    const char* point_w, char** json_out) {
  return guarded(json_out, [&] {
    if (!k) throw cdk::Error(cdk::ErrorCode::Argument, "null kernel");
    cdk::DomainPoint z = parse_checked(k->spec, point_z);
    cdk::DomainPoint w = parse_checked(k->spec, point_w);
    return nlohmann::json{{"value", cdk::to_json(cdk::eval_polarized(k->spec, z, w))}};
  });
}

cdk_status cdk_jet_gram(const cdk_kernel* k, const char* point, int order,
                        char** json_out) {
  return guarded(json_out, [&] {
    if (!k) throw cdk::Error(cdk::ErrorCode::Argument, "null kernel");
    return cdk::to_json(
        cdk::jet_gram(k->spec, parse_checked(k->spec, point), order));
  });
}

cdk_status cdk_curvature(const cdk_kernel* k, const char* point,
                         char** json_out) {
  return guarded(json_out, [&] {
    if (!k) throw cdk::Error(cdk::ErrorCode::Argument, "null kernel");
    return cdk::to_json(
        cdk::curvature(k->spec, parse_checked(k->spec, point)));
  });
}

cdk_status cdk_local_tuple(const cdk_kernel* k, const char* point,
                           char** json_out) {
  return guarded(json_out, [&] {
    if (!k) throw cdk::Error(cdk::ErrorCode::Argument, "null kernel");
    return cdk::to_json(
        cdk::local_tuple(k->spec, parse_checked(k->spec, point)));
  });
}

cdk_status cdk_wallach(const cdk_kernel* k, const char* point, int max_order,
                       char** json_out) {
  return guarded(json_out, [&] {
    if (!k) throw cdk::Error(cdk::ErrorCode::Argument, "null kernel");
    return cdk::to_json(
        cdk::wallach_index(k->spec, parse_checked(k->spec, point), max_order));
  });
}

cdk_status cdk_contract_test(const char* test_name, double lambda,
                             char** json_out) {
  return guarded(json_out, [&] {
    if (!test_name)
      throw cdk::Error(cdk::ErrorCode::Argument, "null test name");
    return cdk::to_json(cdk::contract_test(test_name, lambda));
  });
}

cdk_status cdk_pa_norm(const char* values, double lambda, int r, int s,
                       char** json_out) {
  return guarded(json_out, [&] {
    if (!values) throw cdk::Error(cdk::ErrorCode::Argument, "null values");
    return cdk::to_json(cdk::pa_norm(cdk::parse_point(values), lambda, r, s));
  });
}

cdk_status cdk_check_transform(const char* a, const char* z, const char* w,
                               char** json_out) {
  return guarded(json_out, [&] {
    if (!a || !z || !w)
      throw cdk::Error(cdk::ErrorCode::Argument, "null argument");
    auto one = [](const char* t) {
      cdk::DomainPoint p = cdk::parse_point(t);
      if (p.size() != 1)
        throw cdk::Error(cdk::ErrorCode::Parse, "expected one complex value");
      return p[0];
    };
    cdk::KernelSpec k = cdk::KernelSpec::make("disc", 1.0);
    cdk::MobiusMap map{one(a)};
    double residual = cdk::check_kernel_transform(k, map, one(z), one(w));
    return nlohmann::json{{"residual", residual}};
  });
}

cdk_status cdk_det_expansion(int r, int s, const char* entries,
                             char** json_out) {
  return guarded(json_out, [&] {
    if (!entries) throw cdk::Error(cdk::ErrorCode::Argument, "null entries");
    cdk::DomainPoint v = cdk::parse_point(entries);
    if (static_cast<int>(v.size()) != r * s)
      throw cdk::Error(cdk::ErrorCode::Argument, "expected r*s entries");
    cdk::ComplexMatrix z(r, s);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) z(i, j) = v[i * s + j];
    cdk::DetExpansion d = cdk::det_expansion_remainder(z);
    nlohmann::json j{{"remainder", d.remainder}};
    if (d.has_closed_r2) j["closed_r2"] = d.closed_r2;
    return j;
  });
}

cdk_status cdk_verify_all(uint64_t seed, char** json_out, int* all_ok) {
  if (all_ok) *all_ok = 0;
  return guarded(json_out, [&] {
    auto results = cdk::run_acceptance(seed);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"inconclusive", r.inconclusive},
                     {"detail", r.detail}});
    bool ok = cdk::all_passed(results);
    if (all_ok) *all_ok = ok ? 1 : 0;
    return nlohmann::json{{"seed", seed}, {"all_passed", ok},
                          {"criteria", std::move(arr)}};
  });
}

}  // extern "C"
