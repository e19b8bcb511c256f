#pragma once

#include "freearr/arrangement.hpp"
#include "freearr/verify.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace freearr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "freearr-certificate/1";

/// {"lines": [[a, b, c], ...]} with entries given as decimal or "p/q" strings (bare integers are accepted too).
/// Lines are canonicalized on read. Throws ParseError, ZeroForm, DuplicateLine.
Arrangement arrangement_from_json(const Json& doc);
Json arrangement_to_json(const Arrangement& arrangement);
Arrangement parse_arrangement(const std::string& text);
Arrangement load_arrangement(const std::filesystem::path& path);
void save_arrangement(const Arrangement& arrangement, const std::filesystem::path& path);

Json derivation_to_json(const Derivation& theta);
Derivation derivation_from_json(const Json& doc);

Json certificate_to_json(const FreenessCertificate& certificate);
FreenessCertificate certificate_from_json(const Json& doc);
FreenessCertificate load_certificate(const std::filesystem::path& path);
void save_certificate(const FreenessCertificate& certificate, const std::filesystem::path& path);

/// Sparse {"i,j,k": "p/q"} map of the nonzero coefficients of a form of the given degree.
Json form_to_json(const RationalVector& coeffs, int degree);
RationalVector form_from_json(const Json& doc, int degree);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const Json& doc, const std::filesystem::path& path);

}  // namespace freearr
