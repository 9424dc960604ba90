#pragma once

#include "iontrap/angular.hpp"
#include "iontrap/transitions.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iontrap {

inline constexpr int kCatalogSchemaVersion = 1;

struct LevelDesignation {
  std::string term;  // e.g. "4s 2S1/2"
  HalfInteger j;
};

/// One line of an ion's level diagram. SI units throughout.
struct TransitionRecord {
  std::string label;
  Multipole multipole = Multipole::E1;
  double wavelength_m = 0.0;
  double lifetime_s = 0.0;  // reciprocal of the Einstein A coefficient
  LevelDesignation lower;
  LevelDesignation upper;
  std::string provenance;

  double einstein_a() const { return 1.0 / lifetime_s; }
  /// k_12 = 2 pi / wavelength
  double wavenumber() const;
};

struct IonSpecies {
  std::string name;
  double mass_kg = 0.0;
  int ionization_degree = 1;
  HalfInteger nuclear_spin;
  std::vector<TransitionRecord> transitions;

  /// Throws DomainError if no transition has this label.
  const TransitionRecord &transition(std::string_view label) const;
};

struct Catalog {
  int schema_version = kCatalogSchemaVersion;
  std::vector<IonSpecies> species;

  /// Throws DomainError if no species has this name.
  const IonSpecies &find(std::string_view name) const;
};

/// A single schema or invariant violation. `path` is a JSON pointer into the
/// document, e.g. "/species/0/transitions/1/lifetime_s".
struct CatalogIssue {
  std::string path;
  std::string message;
};

/// Parse or validation failure. Syntax errors carry a 1-based line and
/// column; validation errors list every offending field.
class CatalogError : public std::runtime_error {
public:
  CatalogError(std::string source, std::vector<CatalogIssue> issues, int line = 0, int column = 0);

  const std::string &source() const noexcept { return source_; }
  const std::vector<CatalogIssue> &issues() const noexcept { return issues_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

  /// Single-line JSON rendering of the issue list.
  std::string to_json() const;

private:
  std::string source_;
  std::vector<CatalogIssue> issues_;
  int line_;
  int column_;
};

/// An empty (or whitespace-only) document is an empty catalog.
Catalog parse_catalog(std::string_view text, std::string_view source = "<memory>");
Catalog load_catalog(const std::filesystem::path &path);

/// Pretty-printed JSON, two-space indent, trailing newline.
std::string serialize_catalog(const Catalog &catalog);

/// Bridges a catalog line to a transition-strength computation. Throws
/// DomainError if either m exceeds its level's j.
TransitionSpec to_transition_spec(const TransitionRecord &record, HalfInteger m_j,
                                  HalfInteger m_j_upper);

} // namespace iontrap
