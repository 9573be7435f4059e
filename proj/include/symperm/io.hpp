#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "symperm/families.hpp"
#include "symperm/inequality.hpp"
#include "symperm/permanent.hpp"
#include "symperm/symmetric.hpp"

namespace symperm::io {

using nlohmann::json;

/// 12 significant digits, shortest of plain/scientific (printf %.12g); -0 prints as 0.
std::string format_number(double x);
/// 12 significant digits in scientific form with a bare exponent: 1.00000000000e0. Zero prints as 0.
std::string format_scientific(double x);
/// "re + imi" / "re - imi" using format_scientific for both parts.
std::string format_complex(const Complex &z);

// All loaders throw ValidationError on malformed documents.
json complex_to_json(const Complex &z);
Complex complex_from_json(const json &j);

json to_json(const ComplexMatrix &m);
json to_json(const MultisetColumns &cols);
json to_json(const SymmetricState &s);
json to_json(const ProductState &p);

ComplexMatrix matrix_from_json(const json &j);
MultisetColumns multiset_from_json(const json &j);
SymmetricState symmetric_state_from_json(const json &j);
ProductState product_state_from_json(const json &j);

/// One line-delimited record per violating trial.
std::string violations_to_jsonl(std::string_view target, const std::vector<TrialViolation> &records);

/// Header s,tan_theta,theta,lambda_direct,lambda_paper_prefactor,e_sin2 and one row per point.
std::string sweep_to_csv(const std::vector<WWBarPoint> &points);

json read_json_file(const std::filesystem::path &path);
/// Throws std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path &path, std::string_view text);

/// 64-bit FNV-1a, hex encoded.
std::string checksum(std::string_view bytes);

} // namespace symperm::io
