#include "iontrap/catalog.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace iontrap {

using nlohmann::json;

namespace {

// Collects issues while walking the document so one load reports them all.
class Validator {
public:
  std::vector<CatalogIssue> issues;

  void fail(const std::string &path, std::string message) {
    issues.push_back({path, std::move(message)});
  }

  bool expect_object(const json &node, const std::string &path) {
    if (node.is_object())
      return true;
    fail(path, "expected an object");
    return false;
  }

  void reject_unknown(const json &node, const std::string &path,
                      std::initializer_list<std::string_view> known) {
    for (const auto &[key, value] : node.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        fail(path + "/" + key, "unknown field");
  }

  const json *field(const json &node, const std::string &path, std::string_view key) {
    const auto it = node.find(std::string(key));
    if (it == node.end()) {
      fail(path + "/" + std::string(key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::string string_field(const json &node, const std::string &path, std::string_view key,
                           bool non_empty = false) {
    const json *v = field(node, path, key);
    if (!v)
      return {};
    if (!v->is_string()) {
      fail(path + "/" + std::string(key), "expected a string");
      return {};
    }
    std::string s = v->get<std::string>();
    if (non_empty && s.empty())
      fail(path + "/" + std::string(key), "must not be empty");
    return s;
  }

  double positive_number(const json &node, const std::string &path, std::string_view key) {
    const json *v = field(node, path, key);
    if (!v)
      return 0.0;
    if (!v->is_number()) {
      fail(path + "/" + std::string(key), "expected a number");
      return 0.0;
    }
    const double x = v->get<double>();
    if (!(x > 0.0) || !std::isfinite(x))
      fail(path + "/" + std::string(key), "must be a finite number > 0");
    return x;
  }

  HalfInteger half_integer(const json &node, const std::string &path, std::string_view key) {
    const std::string text = string_field(node, path, key);
    if (text.empty())
      return {};
    try {
      const HalfInteger h = HalfInteger::parse(text);
      if (h.twice() < 0)
        fail(path + "/" + std::string(key), "must be >= 0");
      return h;
    } catch (const DomainError &e) {
      fail(path + "/" + std::string(key), e.what());
      return {};
    }
  }

  LevelDesignation level(const json &node, const std::string &path) {
    LevelDesignation out;
    if (!expect_object(node, path))
      return out;
    reject_unknown(node, path, {"term", "j"});
    out.term = string_field(node, path, "term", true);
    out.j = half_integer(node, path, "j");
    return out;
  }

  TransitionRecord transition(const json &node, const std::string &path) {
    TransitionRecord t;
    if (!expect_object(node, path))
      return t;
    reject_unknown(node, path,
                   {"label", "multipole", "wavelength_m", "lifetime_s", "lower", "upper",
                    "provenance"});
    t.label = string_field(node, path, "label", true);
    const std::string multipole = string_field(node, path, "multipole");
    if (!multipole.empty()) {
      try {
        t.multipole = parse_multipole(multipole);
      } catch (const DomainError &e) {
        fail(path + "/multipole", e.what());
      }
    }
    t.wavelength_m = positive_number(node, path, "wavelength_m");
    t.lifetime_s = positive_number(node, path, "lifetime_s");
    if (const json *v = field(node, path, "lower"))
      t.lower = level(*v, path + "/lower");
    if (const json *v = field(node, path, "upper"))
      t.upper = level(*v, path + "/upper");
    t.provenance = string_field(node, path, "provenance", true);
    return t;
  }

  IonSpecies species(const json &node, const std::string &path) {
    IonSpecies s;
    if (!expect_object(node, path))
      return s;
    reject_unknown(node, path,
                   {"name", "mass_kg", "ionization_degree", "nuclear_spin", "transitions"});
    s.name = string_field(node, path, "name", true);
    s.mass_kg = positive_number(node, path, "mass_kg");
    if (const json *v = field(node, path, "ionization_degree")) {
      if (!v->is_number_integer() || v->get<long long>() < 1)
        fail(path + "/ionization_degree", "must be an integer >= 1");
      else
        s.ionization_degree = v->get<int>();
    }
    s.nuclear_spin = half_integer(node, path, "nuclear_spin");
    if (const json *v = field(node, path, "transitions")) {
      if (!v->is_array()) {
        fail(path + "/transitions", "expected an array");
      } else {
        std::set<std::string> labels;
        for (std::size_t i = 0; i < v->size(); ++i) {
          const std::string tpath = path + "/transitions/" + std::to_string(i);
          s.transitions.push_back(transition((*v)[i], tpath));
          const std::string &label = s.transitions.back().label;
          if (!label.empty() && !labels.insert(label).second)
            fail(tpath + "/label", "duplicate transition label '" + label + "'");
        }
      }
    }
    return s;
  }
};

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json level_to_json(const LevelDesignation &level) {
  return json{{"term", level.term}, {"j", level.j.str()}};
}

} // namespace

double TransitionRecord::wavenumber() const { return 2.0 * constants::pi / wavelength_m; }

const TransitionRecord &IonSpecies::transition(std::string_view label) const {
  for (const auto &t : transitions)
    if (t.label == label)
      return t;
  throw DomainError("species '" + name + "' has no transition '" + std::string(label) + "'");
}

const IonSpecies &Catalog::find(std::string_view name) const {
  for (const auto &s : species)
    if (s.name == name)
      return s;
  throw DomainError("catalog has no species '" + std::string(name) + "'");
}

CatalogError::CatalogError(std::string source, std::vector<CatalogIssue> issues, int line,
                           int column)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << source;
        if (line > 0)
          os << ":" << line << ":" << column;
        os << ": ";
        for (std::size_t i = 0; i < issues.size(); ++i) {
          if (i)
            os << "; ";
          if (!issues[i].path.empty())
            os << issues[i].path << ": ";
          os << issues[i].message;
        }
        return os.str();
      }()),
      source_(std::move(source)), issues_(std::move(issues)), line_(line), column_(column) {}

std::string CatalogError::to_json() const {
  json out;
  out["source"] = source_;
  if (line_ > 0) {
    out["line"] = line_;
    out["column"] = column_;
  }
  out["issues"] = json::array();
  for (const auto &issue : issues_)
    out["issues"].push_back({{"path", issue.path}, {"message", issue.message}});
  return out.dump();
}

Catalog parse_catalog(std::string_view text, std::string_view source) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }))
    return {};

  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw CatalogError(std::string(source), {{"", "JSON syntax error: " + std::string(e.what())}},
                       line, column);
  }

  Validator v;
  Catalog catalog;
  if (v.expect_object(doc, "")) {
    v.reject_unknown(doc, "", {"schema_version", "species"});
    if (const json *ver = v.field(doc, "", "schema_version")) {
      if (!ver->is_number_integer() || ver->get<long long>() != kCatalogSchemaVersion)
        v.fail("/schema_version",
               "unsupported schema version (expected " + std::to_string(kCatalogSchemaVersion) + ")");
    }
    if (const json *list = v.field(doc, "", "species")) {
      if (!list->is_array()) {
        v.fail("/species", "expected an array");
      } else {
        std::set<std::string> names;
        for (std::size_t i = 0; i < list->size(); ++i) {
          const std::string path = "/species/" + std::to_string(i);
          catalog.species.push_back(v.species((*list)[i], path));
          const std::string &name = catalog.species.back().name;
          if (!name.empty() && !names.insert(name).second)
            v.fail(path + "/name", "duplicate species name '" + name + "'");
        }
      }
    }
  }
  if (!v.issues.empty())
    throw CatalogError(std::string(source), std::move(v.issues));
  return catalog;
}

Catalog load_catalog(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CatalogError(path.string(), {{"", "cannot open file"}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), path.string());
}

std::string serialize_catalog(const Catalog &catalog) {
  json doc;
  doc["schema_version"] = catalog.schema_version;
  doc["species"] = json::array();
  for (const auto &s : catalog.species) {
    json js{{"name", s.name},
            {"mass_kg", s.mass_kg},
            {"ionization_degree", s.ionization_degree},
            {"nuclear_spin", s.nuclear_spin.str()},
            {"transitions", json::array()}};
    for (const auto &t : s.transitions) {
      js["transitions"].push_back({{"label", t.label},
                                   {"multipole", std::string(to_string(t.multipole))},
                                   {"wavelength_m", t.wavelength_m},
                                   {"lifetime_s", t.lifetime_s},
                                   {"lower", level_to_json(t.lower)},
                                   {"upper", level_to_json(t.upper)},
                                   {"provenance", t.provenance}});
    }
    doc["species"].push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

TransitionSpec to_transition_spec(const TransitionRecord &record, HalfInteger m_j,
                                  HalfInteger m_j_upper) {
  TransitionSpec spec;
  spec.multipole = record.multipole;
  spec.j = record.lower.j;
  spec.m_j = m_j;
  spec.j_upper = record.upper.j;
  spec.m_j_upper = m_j_upper;
  spec.einstein_a = record.einstein_a();
  spec.wavenumber = record.wavenumber();
  spec.validate();
  return spec;
}

} // namespace iontrap
