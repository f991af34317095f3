#pragma once

// Map files.
//
// Text form:
//   # comment
//   vertices 8
//   face 1 2 3 4
//   face ...
// JSON form: {"vertices": 8, "faces": [[1,2,3,4], ...]}

#include <string>
#include <string_view>

#include <json.hpp>

#include "semeq/comb_map.hpp"

namespace semeq {

// Both parsers check labels (1..N, each used), face lengths and repeated
// labels within a face. Throw MapFormatError.
FaceListMap parse_map_text(std::string_view text);
FaceListMap parse_map_json(std::string_view text);
// Picks the JSON reader when the first non-blank character is '{'.
FaceListMap parse_map(std::string_view text);
FaceListMap read_map_file(const std::string& path);

// Faces in normalized sorted order (see to_face_list), so equal maps give
// equal files.
std::string format_map_text(const CombMap& m, std::string_view comment = {});
nlohmann::ordered_json map_to_json(const CombMap& m);

void write_map_file(const std::string& path, const CombMap& m, std::string_view comment = {});

}  // namespace semeq
