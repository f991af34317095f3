#pragma once

#include <string>

#include "semeq/comb_map.hpp"
#include "semeq/map_io.hpp"

#ifndef SEMEQ_FIXTURE_DIR
#error "SEMEQ_FIXTURE_DIR must point at the fixtures directory"
#endif

inline std::string fixture_path(const std::string& rel) { return std::string(SEMEQ_FIXTURE_DIR) + "/" + rel; }

inline semeq::CombMap load_fixture(const std::string& rel) {
  return semeq::build_from_faces(semeq::read_map_file(fixture_path(rel)));
}
