#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "luq/equiv3.hpp"
#include "luq/lu_action.hpp"

namespace luq {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Tensors serialize as nested arrays with the first index outermost;
/// matrices as rows; complex entries as [re, im] pairs.
json to_json(const Hypermatrix& t);
Hypermatrix hypermatrix_from_json(const json& j);

json to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
/// Throws ParseError on schema problems; DensityMatrix invariant violations
/// propagate as InvalidState with the violated residual named.
DensityMatrix state_from_json(const json& j);

json rep_to_json(const TensorRep& rep);
TensorRep rep_from_json(const json& j);

json to_json(const IdentityReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const ConditionLedger& l);

/// FNV-1a 64-bit over raw bytes, as a fixed-width hex string.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace luq
