#pragma once

// JSON encodings shared by the CLI and its input/output files.

#include <json.hpp>

#include "gaussgeom/gaussian_geometry.hpp"
#include "gaussgeom/invariant_family.hpp"
#include "gaussgeom/poly_correspondence.hpp"
#include "gaussgeom/symcone.hpp"
#include "gaussgeom/verdict.hpp"

namespace gaussgeom {

using Json = nlohmann::ordered_json;

// {"n": int, "vech": [...]}
Json to_json(const SymMat& m);
SymMat symmat_from_json(const Json& j);

// {"mean", "std_error", "samples"}
Json to_json(const McEstimate& e);

// {"check", "n", "point", "max_violation", "tol", "pass"}; point is null when absent.
Json to_json(const Verdict& v);

// {"n", "valence": 3, "basis": "vech-lex", "entries": [{"idx": [a,b,c], "val"}]}
// One entry per non-decreasing index triple.
Json to_json(const RawCubicTensor& t);
/// Missing triples are zero; decreasing or duplicated indices are rejected.
RawCubicTensor raw_cubic_from_json(const Json& j);

// {"n", "basis": "power-sum", "coeffs": {"p3", "p2p1"?, "p1^3"?}}
Json to_json(const SymCubicPoly& p);
SymCubicPoly sym_cubic_poly_from_json(const Json& j);

}  // namespace gaussgeom
