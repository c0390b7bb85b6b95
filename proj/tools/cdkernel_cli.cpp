// Command-line front end. Links only the public C API.

#include "cdkernel.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void print_error(cdk_status st) {
  nlohmann::json err{{"error", cdk_last_error()},
                     {"status", static_cast<int>(st)}};
  std::cerr << err.dump(2) << "\n";
}

struct KernelHandle {
  cdk_kernel* k = nullptr;
  ~KernelHandle() { cdk_kernel_destroy(k); }
};

struct JsonOut {
  char* s = nullptr;
  ~JsonOut() { cdk_string_free(s); }
};

int emit(cdk_status st, const JsonOut& out) {
  if (st != CDK_OK) {
    print_error(st);
    return st == CDK_ERR_ARGUMENT || st == CDK_ERR_PARSE ? kExitUsage
                                                         : kExitFailure;
  }
  std::cout << out.s << "\n";
  return kExitOk;
}

int make_kernel(const std::string& domain, double lambda, int truncation,
                KernelHandle& h) {
  cdk_status st = cdk_kernel_create(domain.c_str(), lambda, truncation, &h.k);
  if (st != CDK_OK) {
    print_error(st);
    return kExitUsage;
  }
  return kExitOk;
}

// "start:stop:step" or a single value
bool parse_range(const std::string& text, std::vector<double>& out) {
  auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    try {
      out.push_back(std::stod(text));
    } catch (...) {
      return false;
    }
    return true;
  }
  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) return false;
  try {
    double start = std::stod(text.substr(0, c1));
    double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    double step = std::stod(text.substr(c2 + 1));
    if (step <= 0.0 || stop < start) return false;
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  } catch (...) {
    return false;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Powered reproducing kernels: jets, curvature, localized "
               "tuples, contractivity thresholds"};
  app.require_subcommand(1);

  std::string kernel = "disc", point = "0", point_w, output = "json";
  double lambda = 1.0;
  int order = 1, max_order = 4, truncation = 0;
  std::uint64_t seed = 0;

  auto add_kernel_opts = [&](CLI::App* sub, bool with_point = true) {
    sub->add_option("--kernel", kernel,
                    "disc | polydisc:n | ball:n | matrix-ball:rxs | omega2 | "
                    "omega2:normalized | omega3");
    sub->add_option("--lambda", lambda, "kernel power, > 0");
    sub->add_option("--truncation", truncation, "series truncation (omega3)");
    if (with_point)
      sub->add_option("--point", point, "comma-separated complex literals");
  };

  auto* jetgram = app.add_subcommand("jetgram", "jet Grammian at a point");
  add_kernel_opts(jetgram);
  jetgram->add_option("--order", order, "jet order, 1..4");

  auto* curv = app.add_subcommand("curvature", "curvature matrix at a point");
  add_kernel_opts(curv);

  auto* tuple = app.add_subcommand("local-tuple",
                                   "A(w) and the nilpotent matrices N_k(w)");
  add_kernel_opts(tuple);

  auto* wallach = app.add_subcommand(
      "wallach", "largest jet order with positive definite Grammian");
  add_kernel_opts(wallach);
  wallach->add_option("--max-order", max_order, "orders to test, 1..4");

  std::string test_name, lambda_range;
  auto* contract = app.add_subcommand(
      "contract", "contractivity test verdict and bisection threshold");
  contract->add_option("--test", test_name,
                       "omega2-contract | omega2-cc | omega3-contract | "
                       "omega3-cc | ball:N | nu:RxS | nu-cc:RxS")
      ->required();
  contract->add_option("--lambda", lambda_range,
                       "single value or start:stop:step (emits CSV)")
      ->required();

  std::string values;
  int pr = 1, ps = 1;
  auto* panorm = app.add_subcommand(
      "pa-norm", "tensor-assembled polynomial norm: formula vs direct");
  panorm->add_option("--values", values, "r*s complex literals, row-major")
      ->required();
  panorm->add_option("--lambda", lambda);
  panorm->add_option("--rows", pr)->required();
  panorm->add_option("--cols", ps)->required();

  std::string map_a = "0", tz = "0", tw = "0";
  auto* transform = app.add_subcommand(
      "check-transform", "disc kernel transformation-rule residual");
  transform->add_option("--mobius", map_a, "Möbius parameter a, |a| < 1");
  transform->add_option("--z", tz);
  transform->add_option("--w", tw);

  std::string entries;
  auto* detexp = app.add_subcommand(
      "det-expansion", "det(I - ZZ*) expansion remainder");
  detexp->add_option("--rows", pr)->required();
  detexp->add_option("--cols", ps)->required();
  detexp->add_option("--entries", entries, "r*s complex literals, row-major")
      ->required();

  auto* beval = app.add_subcommand("bergman-eval",
                                   "polarized kernel value K^lambda(z, w)");
  add_kernel_opts(beval);
  beval->add_option("--point-w", point_w,
                    "second slot; defaults to the first point");

  auto* verify = app.add_subcommand("verify-all", "run the conformance suite");
  verify->add_option("--seed", seed, "seed for randomized checks");

  CLI11_PARSE(app, argc, argv);

  if (jetgram->parsed()) {
    KernelHandle h;
    if (int rc = make_kernel(kernel, lambda, truncation, h)) return rc;
    JsonOut out;
    return emit(cdk_jet_gram(h.k, point.c_str(), order, &out.s), out);
  }
  if (curv->parsed()) {
    KernelHandle h;
    if (int rc = make_kernel(kernel, lambda, truncation, h)) return rc;
    JsonOut out;
    return emit(cdk_curvature(h.k, point.c_str(), &out.s), out);
  }
  if (tuple->parsed()) {
    KernelHandle h;
    if (int rc = make_kernel(kernel, lambda, truncation, h)) return rc;
    JsonOut out;
    return emit(cdk_local_tuple(h.k, point.c_str(), &out.s), out);
  }
  if (wallach->parsed()) {
    KernelHandle h;
    if (int rc = make_kernel(kernel, lambda, truncation, h)) return rc;
    JsonOut out;
    return emit(cdk_wallach(h.k, point.c_str(), max_order, &out.s), out);
  }
  if (contract->parsed()) {
    std::vector<double> lambdas;
    if (!parse_range(lambda_range, lambdas)) {
      std::cerr << nlohmann::json{{"error", "bad lambda range"}}.dump(2)
                << "\n";
      return kExitUsage;
    }
    if (lambdas.size() == 1) {
      JsonOut out;
      return emit(cdk_contract_test(test_name.c_str(), lambdas[0], &out.s),
                  out);
    }
    std::printf(
        "lambda,verdict,computed_threshold,claimed_threshold,discrepancy\n");
    for (double l : lambdas) {
      JsonOut out;
      cdk_status st = cdk_contract_test(test_name.c_str(), l, &out.s);
      if (st != CDK_OK) {
        print_error(st);
        return kExitFailure;
      }
      auto j = nlohmann::json::parse(out.s);
      std::printf("%.17g,%d,%.17g,%.17g,%d\n", l,
                  j["verdict"].get<bool>() ? 1 : 0,
                  j["computed_threshold"].get<double>(),
                  j["claimed_threshold"].get<double>(),
                  j["discrepancy"].get<bool>() ? 1 : 0);
    }
    return kExitOk;
  }
  if (panorm->parsed()) {
    JsonOut out;
    return emit(cdk_pa_norm(values.c_str(), lambda, pr, ps, &out.s), out);
  }
  if (transform->parsed()) {
    JsonOut out;
    return emit(
        cdk_check_transform(map_a.c_str(), tz.c_str(), tw.c_str(), &out.s),
        out);
  }
  if (detexp->parsed()) {
    JsonOut out;
    return emit(cdk_det_expansion(pr, ps, entries.c_str(), &out.s), out);
  }
  if (beval->parsed()) {
    KernelHandle h;
    if (int rc = make_kernel(kernel, lambda, truncation, h)) return rc;
    JsonOut out;
    const std::string& w = point_w.empty() ? point : point_w;
    return emit(cdk_eval(h.k, point.c_str(), w.c_str(), &out.s), out);
  }
  if (verify->parsed()) {
    JsonOut out;
    int ok = 0;
    cdk_status st = cdk_verify_all(seed, &out.s, &ok);
    if (st != CDK_OK) {
      print_error(st);
      return kExitFailure;
    }
    std::cout << out.s << "\n";
    return ok ? kExitOk : kExitFailure;
  }
  return kExitUsage;
}
