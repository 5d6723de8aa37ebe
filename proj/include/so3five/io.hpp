#ifndef SO3FIVE_IO_HPP
#define SO3FIVE_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "so3five/analysis.hpp"

namespace so3five {

inline constexpr const char* kToolName = "so3five";
inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Parsed structure file: scalar mode, torsion components, curvature payload,
/// optional adapted frame override and parameter bindings.
struct StructureInput {
  Mode mode = Mode::exact;
  TorsionTensor torsion{Mode::exact};
  CurvatureMap curvature{Mode::exact};
};

struct input_error : std::invalid_argument {
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// scalar <-> JSON value (string in exact mode, number in float mode)
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Mode m);

StructureInput load_structure(const Json& j, double float_tolerance);
Json dump_structure(const StructureInput& in);

/// report of is_normal / is_cr_integrable with tool metadata
Json report_document(const StructureReport& rep, Mode mode, double tolerance);
/// decomposition document with reconstruction residual
Json decompose_document(const CurvatureMap& k, Mode mode, double tolerance);

/// built-in examples ("flat", "symmetric", "so12"); t is the parameter (the
/// symmetric surrogate uses it as the P-scale lambda)
StructureInput builtin_example(const std::string& name, const Scalar& t);

}  // namespace so3five

#endif
