#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "domainwall/model.hpp"
#include "domainwall/profile.hpp"
#include "domainwall/singular_limit.hpp"
#include "domainwall/validation.hpp"

namespace domainwall::io {

/// Column header of profile CSV files, in order.
inline constexpr std::string_view kProfileHeader =
    "x,u,v,du_dx,dv_dx,w1,w2,phi1,phi2,ham_residual";
inline constexpr std::string_view kReducedHeader = "x,phi1,phi2,w1";

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);
/// Strict parse of a whole field; throws InvalidArgument on trailing garbage.
double parse_double(std::string_view text);

/// Profile CSV: `# key=value` metadata lines (lambda, coupling, eps, L, n,
/// center), the header line, then one row per node.
void write_profile_csv(std::ostream& out, const CartesianProfile& profile);
void write_profile_csv(const std::filesystem::path& path, const CartesianProfile& profile);
/// Throws SchemaMismatch on a wrong header and MalformedFile (with line number)
/// on anything else that does not parse.
CartesianProfile read_profile_csv(std::istream& in);
CartesianProfile read_profile_csv(const std::filesystem::path& path);

void write_reduced_csv(std::ostream& out, const ReducedSolution& reduced);
void write_reduced_csv(const std::filesystem::path& path, const ReducedSolution& reduced);

/// Column-array form of a profile, for the json output format.
nlohmann::json profile_to_json(const CartesianProfile& profile);
nlohmann::json reduced_to_json(const ReducedSolution& reduced);

/// Fixed key sets of the JSON documents below.
const std::vector<std::string>& report_keys();
const std::vector<std::string>& rate_study_keys();
const std::vector<std::string>& spectrum_keys();

nlohmann::json report_to_json(const ValidationReport& report, const CartesianProfile& profile);
nlohmann::json rate_study_to_json(const RateStudy& study);
/// Analytic spectrum plus the eigenvalues of the finite-difference Jacobian.
nlohmann::json spectrum_to_json(EquilibriumSide side, const ModelParams& params);

/// Writes text to a file, throwing Error when the file cannot be opened.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace domainwall::io
