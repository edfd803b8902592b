#pragma once

// JSON forms of the domain types. Complex numbers are [re, im]; the point
// at infinity is the string "inf".

#include <json.hpp>

#include "ncat/flux.hpp"
#include "ncat/solver.hpp"
#include "ncat/surface.hpp"

namespace ncat {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json extended_to_json(const ExtendedComplex& z);
ExtendedComplex extended_from_json(const json& j);
json poly_to_json(const Poly& p);

/// {"vectors": [[x,y,z],...], "weights": [...]}; vectors within 1e-6 of
/// unit length are normalized, others rejected with InvalidInput.
FluxData flux_from_json(const json& j);
json flux_to_json(const FluxData& d);

json type_to_json(const TypeClass& t);
json obstructions_to_json(const ObstructionReport& r);
json verification_to_json(const VerificationReport& r);
json oracles_to_json(const OracleReport& r);
json weierstrass_to_json(const WeierstrassData& w);

/// Candidate with its Weierstrass data, branch status and verification.
json candidate_to_json(const SolutionCandidate& c, double tol_residual = 1e-9);
SolutionCandidate candidate_from_json(const json& j);
/// Accepts one candidate, an array of them, or an object with "solutions".
std::vector<SolutionCandidate> candidates_from_json(const json& j);

json family_to_json(const FamilySolution& f);

/// Fields of SamplingConfig by name; missing fields keep their defaults.
SamplingConfig sampling_from_json(const json& j);

}  // namespace ncat
