#pragma once

// JSON encodings. Complex numbers are [re, im] pairs; matrices are row-major
// lists of rows. Doubles are written in shortest round-trip form, so a
// write/read cycle is bit-exact.
//
//   algebra shape   {"block_dims": [d1, ...]}
//   AlgebraElement  {"block_dims": [...], "blocks": [matrix, ...]}
//   ModuleVector    {"algebra": shape, "rank": n, "entries": [AlgebraElement, ...]}
//   ModuleOperator  {"algebra": shape, "rank": n, "block_mats": [matrix, ...]}
//   frame           {"algebra": shape, "rank": n, "vectors": [ModuleVector, ...]}
//   symbol          {"algebra": shape, "values": [[[re,im] x B], ...]}
//
// Decoding throws ParseError for malformed documents and ShapeMismatch for
// well-formed documents with inconsistent dimensions.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "csframe/errors.hpp"
#include "csframe/multipliers.hpp"

namespace csframe {

using Json = nlohmann::json;

class ParseError : public Error {
 public:
  using Error::Error;
};

Json to_json(const AlgebraShape& shape);
Json to_json(const AlgebraElement& a);
Json to_json(const ModuleVector& f);
Json to_json(const ModuleOperator& t);
Json to_json(const FrameSystem& frame);
Json to_json(const Symbol& m);
Json to_json(const Matrix& m);

AlgebraShape algebra_shape_from_json(const Json& j);
AlgebraElement algebra_element_from_json(const Json& j);
ModuleVector module_vector_from_json(const Json& j);
ModuleOperator module_operator_from_json(const Json& j);
FrameSystem frame_from_json(const Json& j);
Symbol symbol_from_json(const Json& j);

/// Reads and parses a JSON file. Throws ParseError.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace csframe
