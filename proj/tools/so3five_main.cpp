#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "so3five/identities.hpp"
#include "so3five/io.hpp"

namespace {

using namespace so3five;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOpts {
  std::string mode = "exact";
  double tolerance = 1e-9;
  std::string out;
};

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw input_error("--mode must be exact or float");
}

Scalar parse_t(const std::string& text, Mode m) {
  return Scalar::parse(text, m);
}

void emit(const Json& doc, const std::string& out) {
  std::string body = doc.dump(2);
  body.push_back('\n');
  if (out.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw input_error("cannot open output file: " + out);
    f.write(body.data(), static_cast<std::streamoff>(body.size()));
  }
}

int run_verify(const CommonOpts& common, bool inject_defect) {
  IdentityOptions opts;
  opts.mode = parse_mode(common.mode);
  opts.tolerance = common.tolerance;
  opts.inject_defect = inject_defect;
  auto results = run_identity_suite(opts);
  bool all_pass = true;
  double worst = 0.0;
  for (const auto& r : results) {
    std::printf("%-62s %s", r.name.c_str(), r.pass ? "PASS" : "FAIL");
    if (opts.mode == Mode::floating || !r.pass)
      std::printf("  (residual %.3g)", r.residual);
    std::printf("\n");
    worst = std::max(worst, r.residual);
    if (!r.pass) {
      all_pass = false;
      std::printf("first failing identity: %s\n", r.name.c_str());
      break;
    }
  }
  if (all_pass)
    std::printf("%zu identities verified, max residual %.3g\n", results.size(),
                worst);
  return all_pass ? kExitOk : kExitVerificationFailure;
}

int run_report(const StructureInput& in, const CommonOpts& common) {
  Scalar tol = in.mode == Mode::exact ? Scalar::zero(Mode::exact)
                                      : Scalar::floating(common.tolerance);
  StructureReport rep = is_normal(in.torsion, in.curvature, tol);
  Json doc = report_document(rep, in.mode, common.tolerance);
  emit(doc, common.out);
  if (!rep.probe_agrees) {
    std::fprintf(stderr,
                 "warning: direct probe disagrees with the condition verdicts\n");
    return kExitVerificationFailure;
  }
  return kExitOk;
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open input file: " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "so3five: exact verifier for irreducible SO(3)-structure data on R^5\n"
      "Decides normality and CR-integrability of the twistor-space almost\n"
      "contact structures from torsion/curvature input; all identities are\n"
      "checked in exact arithmetic over Q(sqrt2, sqrt3) unless float mode is\n"
      "selected."};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--mode", common.mode, "scalar mode: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tolerance", common.tolerance,
                 "residual tolerance (float mode only, default 1e-9)");
  app.add_option("--out", common.out, "write the JSON document to this path");

  auto* verify = app.add_subcommand(
      "verify-identities", "run the full identity suite of the kernel");
  bool inject_defect = false;
  verify
      ->add_flag("--inject-defect", inject_defect,
                 "testing aid: flip one sign so the suite must fail")
      ->group("");

  auto* example = app.add_subcommand(
      "example",
      "analyze a built-in example: flat, symmetric (K = lambda P, lambda = t), "
      "or so12 (the homogeneous space (SO(3) x SO(1,2))/SO(2))");
  std::string example_name;
  std::string t_text = "1";
  bool emit_input = false;
  example->add_option("name", example_name, "flat | symmetric | so12")
      ->required();
  example->add_option("--t", t_text, "parameter t (rational, default 1)");
  example->add_flag("--emit-input", emit_input,
                    "print the example as a structure file instead of analyzing");

  auto* analyze = app.add_subcommand(
      "analyze", "load a structure file and run all checkers");
  std::string analyze_path;
  analyze->add_option("file", analyze_path, "structure JSON file")->required();

  auto* decompose = app.add_subcommand(
      "decompose", "emit the curvature decomposition (A, rho-, s, eta)");
  std::string decompose_path;
  decompose->add_option("file", decompose_path, "structure JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(common, inject_defect);

    if (example->parsed()) {
      Mode m = parse_mode(common.mode);
      Scalar t = parse_t(t_text, m);
      StructureInput in = builtin_example(example_name, t);
      if (emit_input) {
        emit(dump_structure(in), common.out);
        return kExitOk;
      }
      return run_report(in, common);
    }

    if (analyze->parsed()) {
      Json j = read_json_file(analyze_path);
      StructureInput in = load_structure(j, common.tolerance);
      return run_report(in, common);
    }

    if (decompose->parsed()) {
      Json j = read_json_file(decompose_path);
      StructureInput in = load_structure(j, common.tolerance);
      Json doc = decompose_document(in.curvature, in.mode, common.tolerance);
      emit(doc, common.out);
      return kExitOk;
    }
  } catch (const input_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const parse_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const precondition_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const mode_mismatch& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerificationFailure;
  }
  return kExitOk;
}
