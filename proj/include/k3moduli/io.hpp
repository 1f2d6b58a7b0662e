#pragma once

#include <string>

#include "json.hpp"
#include "k3moduli/cech.hpp"
#include "k3moduli/dp_twist.hpp"
#include "k3moduli/moduli.hpp"

namespace k3moduli::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "k3moduli 1.0.0";
inline constexpr const char* kReportSchema = "k3moduli/report/v1";

// Exact scalar round trips.  Integers are emitted as JSON numbers while they
// fit losslessly in a double-backed reader (|x| <= 2^53) and as decimal
// strings beyond that; rationals are always "p/q" strings.  Floating-point
// input is rejected everywhere.
json int_to_json(const Int& x);
Int int_from_json(const json& j, const std::string& what);
json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j, const std::string& what);

json intvec_to_json(const IntVec& v);
IntVec intvec_from_json(const json& j, const std::string& what);
json ratvec_to_json(const RatVec& v);
RatVec ratvec_from_json(const json& j, const std::string& what);
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, const std::string& what);

// Builds a surface from a spec document: either {"picard_rank_one": 2k} or
// {"ns_gram": [[..]], "embedding": [[..]]}.  Distinct diagnostics for
// malformed documents, non-even gram, non-isometric and non-primitive
// embeddings.
K3Surface parse_surface_spec(const json& spec);

MukaiVector parse_mukai_vector(const json& jv, const K3Surface& x);

struct CommandOutcome {
    json report;
    int exit_code = 0;  // 0 all checks pass, 2 a verified identity failed
};

// Dispatch for the CLI subcommands: analyze-moduli, brauer-order,
// brauer-kernel, dp-check, cech-h2, twist-class.
CommandOutcome run_command(const std::string& command, const json& input);

std::string render_machine(const json& report);
std::string render_human(const json& report);

}  // namespace k3moduli::io
