#pragma once

// JSON readers and writers for the on-disk formats: states (dense or Pauli
// form), witnesses, separability classes, X states, stabilizer sets and
// separable decompositions.

#include <string>

#include <json.hpp>

#include "sepcert/bloch_opt.hpp"
#include "sepcert/decomp.hpp"
#include "sepcert/graph_states.hpp"
#include "sepcert/xstate.hpp"

namespace sepcert {

using json = nlohmann::json;

/// { "n": int, "format": "dense" | "pauli", "dense": [[re, im], ...] row-major,
/// "pauli": [{"string": "XZII", "coeff": real}, ...] }.
DensityMatrix state_from_json(const json& j);
json state_to_json(const DensityMatrix& rho, const std::string& format = "dense");

/// { "n": int, "terms": [{"string": ..., "coeff": ...}], "constant": real|null }.
WitnessSpec witness_from_json(const json& j);
json witness_to_json(const WitnessSpec& w);

/// { "n": int, "partitions": [["12","3","4"], ...] }; blocks are strings of
/// qubit digits. class_from_name handles the shorthands "full", "tri", "bi".
SeparabilityClass class_from_json(const json& j);
SeparabilityClass class_from_name(int n, const std::string& name);
Partition partition_from_json(int n, const json& blocks);
json partition_to_json(const Partition& p);

/// { "diag": [8 reals], "anti": [4 reals] }.
XState xstate_from_json(const json& j);
json xstate_to_json(const XState& x);

/// { "n": int, "generators": [{"sign": 1, "string": "XZII"}, ...] }.
StabilizerSet stabilizers_from_json(const json& j);

/// { "components": [{"weight": ..., "partition": [...], "factors": [...]}] };
/// factor i carries the state of block i of the partition.
SeparableDecomposition decomposition_from_json(int n, const json& j);
json decomposition_to_json(const SeparableDecomposition& d);

/// File wrappers; throw InputError on unreadable files or malformed JSON.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace sepcert
