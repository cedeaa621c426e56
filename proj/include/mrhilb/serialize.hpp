#pragma once

#include <iosfwd>

#include <json.hpp>

#include "mrhilb/approximation.hpp"
#include "mrhilb/models.hpp"
#include "mrhilb/scaling_solver.hpp"

namespace mrhilb {

using ordered_json = nlohmann::ordered_json;

// StateVector <-> JSON record {space, rep, level, offset, re[], im[]}.
ordered_json vector_to_json(const StateVector& v);
StateVector vector_from_json(const ordered_json& j,
                             const std::shared_ptr<const ModelSpace>& space);

ordered_json to_json(const UnitarityReport& r);
ordered_json to_json(const CommutationReport& r);
ordered_json to_json(const OrthonormalityReport& r);
ordered_json to_json(const CrossOrthogonalityReport& r);
ordered_json to_json(const KInvertibilityReport& r);
ordered_json to_json(const DecompositionReport& r);
ordered_json to_json(const IntersectionDiagnostic& r);
ordered_json to_json(const DensityDiagnostic& r);
ordered_json to_json(const ModuliSolution& r);
ordered_json to_json(const ScalingSolveReport& r);

// Grid/coefficient CSV: one "index,re,im" row per stored cell.
void write_cells_csv(std::ostream& os, const StateVector& v);
// Reads rows written by write_cells_csv into a vector at the given level.
StateVector read_cells_csv(std::istream& is,
                           const std::shared_ptr<const ModelSpace>& space,
                           int level);

// Detail-coefficient CSV: "j,k,re,im" rows.
void write_detail_csv(std::ostream& os, const DecompositionReport& r);
void read_detail_csv(std::istream& is, DecompositionReport& r);

}  // namespace mrhilb
