#include "semeq/map_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "semeq/error.hpp"

namespace semeq {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw MapFormatError(line > 0 ? "line " + std::to_string(line) + ": " + what : what);
}

int to_int(std::string_view token, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || p != token.data() + token.size()) {
    fail(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return v;
}

void check(const FaceListMap& m) {
  if (m.vertex_count <= 0) fail(0, "vertex count must be positive");
  if (m.faces.empty()) fail(0, "no faces");
  std::vector<char> used(static_cast<std::size_t>(m.vertex_count) + 1, 0);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const Face& face = m.faces[f];
    const std::string where = "face " + std::to_string(f + 1);
    if (face.size() < 3) fail(0, where + " has fewer than 3 vertices");
    for (int v : face) {
      if (v < 1 || v > m.vertex_count) {
        fail(0, where + ": label " + std::to_string(v) + " outside 1.." +
                    std::to_string(m.vertex_count));
      }
      used[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int v = 1; v <= m.vertex_count; ++v) {
    if (!used[static_cast<std::size_t>(v)]) fail(0, "vertex " + std::to_string(v) + " lies on no face");
  }
}

}  // namespace

FaceListMap parse_map_text(std::string_view text) {
  FaceListMap m;
  bool have_count = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string key;
    if (!(words >> key)) continue;
    std::vector<int> values;
    for (std::string tok; words >> tok;) values.push_back(to_int(tok, line));
    if (key == "vertices") {
      if (have_count) fail(line, "duplicate 'vertices' line");
      if (values.size() != 1) fail(line, "'vertices' takes one integer");
      m.vertex_count = values[0];
      have_count = true;
    } else if (key == "face") {
      if (!have_count) fail(line, "'face' before 'vertices'");
      m.faces.push_back(std::move(values));
    } else {
      fail(line, "unknown keyword '" + key + "'");
    }
  }
  if (!have_count) fail(0, "missing 'vertices' line");
  check(m);
  return m;
}

FaceListMap parse_map_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("faces")) {
    fail(0, "expected an object with 'vertices' and 'faces'");
  }
  FaceListMap m;
  try {
    m.vertex_count = doc.at("vertices").get<int>();
    m.faces = doc.at("faces").get<std::vector<Face>>();
  } catch (const nlohmann::json::exception& e) {
    fail(0, std::string("bad map document: ") + e.what());
  }
  check(m);
  return m;
}

FaceListMap parse_map(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_map_json(text);
  return parse_map_text(text);
}

FaceListMap read_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapFormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_map(buf.str());
  } catch (const MapFormatError& e) {
    throw MapFormatError(path + ": " + e.what());
  }
}

std::string format_map_text(const CombMap& m, std::string_view comment) {
  const FaceListMap faces = to_face_list(m);
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  }
  out << "vertices " << faces.vertex_count << '\n';
  for (const Face& f : faces.faces) {
    out << "face";
    for (int v : f) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json map_to_json(const CombMap& m) {
  const FaceListMap faces = to_face_list(m);
  nlohmann::ordered_json j;
  j["vertices"] = faces.vertex_count;
  j["faces"] = faces.faces;
  return j;
}

void write_map_file(const std::string& path, const CombMap& m, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << format_map_text(m, comment);
  if (!out) throw Error("cannot write " + path);
}

}  // namespace semeq
