#pragma once

// JSON descriptions of algebras and modules:
//   {p, basis:[names], unit, mul:[[i, j, [[k, c], ...]], ...], aug:[...], weights:[...]}
// Modules use the same keys without unit and aug; "mul" is then the action
// b_i * m_j. Only nonzero products are listed. An algebra may carry
// "filtration": [[vector, ...], ...] (spans of Fil^1, Fil^2, ...) instead of weights.

#include "json.hpp"

#include "grext/algebra.hpp"

namespace grext {

using Json = nlohmann::json;

AlgebraData algebra_data_from_json(const Json& j);
Json to_json(const AlgebraData& d);
Json to_json(const FilteredAlgebra& a);
FilteredAlgebra algebra_from_json(const Json& j);

ModuleData module_data_from_json(const Json& j);
Json to_json(const ModuleData& d);
Json to_json(const FilteredModule& m);
FilteredModule module_from_json(const FilteredAlgebra& a, const Json& j);

Json to_json(const FpMatrix& m);

}  // namespace grext
