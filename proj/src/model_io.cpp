#include "ktf/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ktf/error.hpp"

namespace ktf {

namespace {

using nlohmann::json;

AtomMask names_to_mask(const ClosureModel* model,
                       const std::vector<std::string>& atoms,
                       const json& names, const std::string& where) {
  if (!names.is_array()) throw UsageError(where + ": expected a list of atom names");
  AtomMask m(atoms.size());
  for (const auto& n : names) {
    if (!n.is_string()) throw UsageError(where + ": atom names must be strings");
    const auto s = n.get<std::string>();
    std::size_t idx = atoms.size();
    if (model != nullptr) {
      if (auto f = model->find_atom(s)) idx = *f;
    } else {
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (atoms[a] == s) idx = a;
      }
    }
    if (idx == atoms.size()) throw UsageError(where + ": unknown atom '" + s + "'");
    m.set(idx);
  }
  return m;
}

json mask_names(const ClosureModel& model, const AtomMask& s) {
  json out = json::array();
  s.for_each([&](std::size_t a) { out.push_back(model.atom_names()[a]); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

ModelDocument model_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("model file must hold a JSON object");
  for (const char* key : {"n", "atoms", "rows"}) {
    if (!j.contains(key)) throw UsageError(std::string("model file lacks '") + key + "'");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw UsageError("'n' must be a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();
  if (!j["atoms"].is_array()) throw UsageError("'atoms' must be a list");
  std::vector<std::string> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_string()) throw UsageError("atom names must be strings");
    atoms.push_back(a.get<std::string>());
  }
  const auto& rows_j = j["rows"];
  if (!rows_j.is_array() || rows_j.size() != n) {
    throw UsageError("'rows' must hold one list per topology (n = " +
                     std::to_string(n) + ")");
  }
  std::vector<std::vector<AtomMask>> rows;
  for (std::size_t t = 0; t < n; ++t) {
    const auto& tr = rows_j[t];
    if (!tr.is_array() || tr.size() != atoms.size()) {
      throw UsageError("topology " + std::to_string(t + 1) +
                       " must list one closure per atom");
    }
    std::vector<AtomMask> r;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      r.push_back(names_to_mask(nullptr, atoms, tr[a],
                                "row " + std::to_string(t + 1) + "/" + atoms[a]));
    }
    rows.push_back(std::move(r));
  }
  ModelKind kind = ModelKind::PointSpace;
  if (j.contains("kind")) {
    const auto k = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (k == "block") {
      kind = ModelKind::BlockQuotient;
    } else if (k != "point") {
      throw UsageError("'kind' must be \"point\" or \"block\"");
    }
  }
  ModelDocument doc{ClosureModel(std::move(atoms), std::move(rows), kind), "", "",
                    json()};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& key = it.key();
    if (key == "n" || key == "atoms" || key == "rows" || key == "kind") continue;
    if (key == "name" || key == "provenance") {
      if (!it->is_string()) throw UsageError("'" + key + "' must be a string");
      (key == "name" ? doc.name : doc.provenance) = it->get<std::string>();
      continue;
    }
    doc.extra[key] = *it;
  }
  return doc;
}

json model_to_json(const ModelDocument& doc) {
  const auto& m = doc.model;
  json j = doc.extra.is_object() ? doc.extra : json::object();
  j["n"] = m.topology_count();
  j["atoms"] = m.atom_names();
  j["kind"] = m.kind() == ModelKind::BlockQuotient ? "block" : "point";
  json rows = json::array();
  for (std::size_t t = 1; t <= m.topology_count(); ++t) {
    json r = json::array();
    for (std::size_t a = 0; a < m.atom_count(); ++a) {
      r.push_back(mask_names(m, m.row(t, a)));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.provenance.empty()) j["provenance"] = doc.provenance;
  return j;
}

json model_to_json(const ClosureModel& model) {
  return model_to_json(ModelDocument{model, "", "", json()});
}

std::string serialize_model(const ModelDocument& doc) {
  return model_to_json(doc).dump(2) + "\n";
}

std::string serialize_model(const ClosureModel& model) {
  return model_to_json(model).dump(2) + "\n";
}

ModelDocument parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid model JSON: ") + e.what());
  }
  return model_from_json(j);
}

ModelDocument load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

AtomMask parse_mask(const ClosureModel& model, std::string_view text) {
  text = trim(text);
  const std::size_t width = model.atom_count();
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    AtomMask m(width);
    std::size_t bit = 0;
    for (std::size_t p = text.size(); p-- > 2;) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[p])));
      int v;
      if (c >= '0' && c <= '9') {
        v = c - '0';
      } else if (c >= 'a' && c <= 'f') {
        v = c - 'a' + 10;
      } else {
        throw UsageError("bad hex digit in mask '" + std::string(text) + "'");
      }
      for (int b = 0; b < 4; ++b, ++bit) {
        if (((v >> b) & 1) == 0) continue;
        if (bit >= width) {
          throw UsageError("mask '" + std::string(text) + "' has bits beyond " +
                           std::to_string(width) + " atoms");
        }
        m.set(bit);
      }
    }
    return m;
  }
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw UsageError("unbalanced braces in mask");
    text = trim(text.substr(1, text.size() - 2));
  }
  AtomMask m(width);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto name = trim(text.substr(0, comma));
    if (name.empty()) throw UsageError("empty atom name in mask");
    const auto idx = model.find_atom(name);
    if (!idx) throw UsageError("unknown atom '" + std::string(name) + "'");
    m.set(*idx);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (trim(text).empty()) throw UsageError("trailing comma in mask");
  }
  return m;
}

std::string format_mask(const ClosureModel& model, const AtomMask& s) {
  model.check_mask(s);
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t a) {
    if (!first) out += ",";
    out += model.atom_names()[a];
    first = false;
  });
  return out + "}";
}

json mask_to_json(const ClosureModel& model, const AtomMask& s) {
  model.check_mask(s);
  return mask_names(model, s);
}

}  // namespace ktf
