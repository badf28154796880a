#pragma once

#include "hopftwist/cohomology.hpp"
#include "hopftwist/deformation.hpp"
#include "hopftwist/invariants.hpp"
#include "hopftwist/presentation.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace hopftwist {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hopftwist/1";

// Malformed or inconsistent input documents.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every document carries {"schema": kSchema, "kind": ...}. Scalars use the exactalg text
// syntax with z = zeta_N for the document's N; sparse tensors are lists of
// [[out legs..., in legs...], "coef"] sorted by multi-index.
Json hopf_to_json(const HopfAlgebraData& h);
HopfAlgebraData hopf_from_json(const Json& j);

// parent_ref names the parent's file relative to the deformation's; with an empty
// reference the parent is embedded.
Json deformation_to_json(const Deformation& w, const std::string& parent_ref = {});
// Relative parent references are resolved against base_dir.
Deformation deformation_from_json(const Json& j, const std::filesystem::path& base_dir);

// {"group": spec | {"table": [[...]], "labels": [...]}, "N": n, "exponents": [[...]]}, or one of
// the names v4-nondeg, z3z3-zeta-jk.
Json cocycle_to_json(const MuNCocycle& c, const std::string& group_spec);
MuNCocycle cocycle_from_json(const Json& j);
MuNCocycle named_cocycle(const std::string& name);
FiniteGroup group_from_json(const Json& j);

Json fingerprint_to_json(const Fingerprint& f);
Fingerprint fingerprint_from_json(const Json& j);
// A list of {"l", "sigma", "f", "hs"} with labels, or {"specs": [...]}.
std::vector<InvariantSpec> specs_from_json(const Json& j, const std::vector<std::string>& f_labels, const std::vector<std::string>& h_labels);
Json spec_to_json(const InvariantSpec& s, const std::vector<std::string>& f_labels, const std::vector<std::string>& h_labels);

Json report_to_json(const VerifyReport& r);

// {"generators": ["x", ...], "relations": [[["x x", "1"], ["", "-1"]], ...], "basis": ["", "x", ...],
//  "completion_degree": d, "N": n}; words are generator labels separated by spaces.
PresentedAlgebra presentation_from_json(const Json& j);
Json algebra_to_json(const PresentedAlgebra& a);

Json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const Json& j);
// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace hopftwist
