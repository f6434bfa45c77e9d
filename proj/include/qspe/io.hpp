// JSON forms of the library's data types.
//
//   unitary       {"dim": d, "re": [[...]], "im": [[...]]}   row-major d x d
//   state         {"n": n, "re": [...], "im": [...]}
//   mesh program  {"dim": d, "crossings": [{"layer", "top_mode", "theta",
//                  "phi"}, ...], "output_phases": [...]}
//   energy        {"total_j": x, "elements": [{"label", "joules"}, ...]}
//   circuit       {"n": n, "gates": [{"kind": "cnot", "c": i, "t": j} |
//                                     {"kind": "sqo", "q": i, "params": [a, b, c]}]}
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspe/circuits.hpp"
#include "qspe/energy.hpp"
#include "qspe/mesh.hpp"
#include "qspe/montecarlo.hpp"
#include "qspe/verify.hpp"

namespace qspe {

using Json = nlohmann::json;

/// Malformed or unreadable input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json unitary_to_json(const ComplexMatrix& u);
/// Throws FormatError on a missing field or shape mismatch.
ComplexMatrix unitary_from_json(const Json& j);

Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json program_to_json(const MeshProgram& p);
MeshProgram program_from_json(const Json& j);

Json energy_to_json(const EnergyReport& r);
Json block_cost_to_json(const BlockCost& b);

Json circuit_to_json(const GateCircuit& c);
GateCircuit circuit_from_json(const Json& j);

Json fit_to_json(const FitResult& f);

Json sweep_rows_to_json(const std::vector<SweepRow>& rows);
Json count_rows_to_json(const std::vector<CountRow>& rows);

/// Reads and parses a JSON file; FormatError on I/O or parse failure.
Json read_json_file(const std::string& path);

}  // namespace qspe
