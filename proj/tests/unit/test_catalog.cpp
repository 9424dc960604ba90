#include <doctest.h>

#include "iontrap/catalog.hpp"
#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace iontrap;

namespace {

const char *kOne = R"({
  "schema_version": 1,
  "species": [{
    "name": "X+",
    "mass_kg": 6.6e-26,
    "ionization_degree": 1,
    "nuclear_spin": "0",
    "transitions": [{
      "label": "S-D",
      "multipole": "E2",
      "wavelength_m": 729e-9,
      "lifetime_s": 1.0,
      "lower": {"term": "S1/2", "j": "1/2"},
      "upper": {"term": "D3/2", "j": "3/2"},
      "provenance": "synthetic"
    }]
  }]
})";

std::string replace(std::string text, const std::string &from, const std::string &to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::vector<CatalogIssue> issues_of(const std::string &text) {
  try {
    parse_catalog(text);
  } catch (const CatalogError &e) {
    return e.issues();
  }
  return {};
}

} // namespace

TEST_CASE("empty document is an empty catalog") {
  CHECK(parse_catalog("").species.empty());
  CHECK(parse_catalog("  \n\t").species.empty());
}

TEST_CASE("derived wavenumber and A coefficient") {
  const Catalog c = parse_catalog(kOne);
  const TransitionRecord &t = c.find("X+").transition("S-D");
  CHECK(t.wavenumber() == doctest::Approx(2.0 * constants::pi / 729e-9).epsilon(1e-15));
  CHECK(t.wavenumber() == doctest::Approx(8.618e6).epsilon(1e-3));
  CHECK(t.einstein_a() == 1.0);
  CHECK(t.lower.j == HalfInteger::from_twice(1));
  CHECK_THROWS_AS(c.find("Y+"), DomainError);
  CHECK_THROWS_AS(c.find("X+").transition("nope"), DomainError);
}

TEST_CASE("invariant violations name the field") {
  auto issues = issues_of(replace(kOne, "\"lifetime_s\": 1.0", "\"lifetime_s\": 0"));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "/species/0/transitions/0/lifetime_s");

  issues = issues_of(replace(kOne, "\"wavelength_m\": 729e-9", "\"wavelength_m\": -1"));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "/species/0/transitions/0/wavelength_m");

  issues = issues_of(replace(kOne, "\"provenance\": \"synthetic\"", "\"provenance\": \"\""));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "/species/0/transitions/0/provenance");

  issues = issues_of(replace(kOne, "\"ionization_degree\": 1", "\"ionization_degree\": 0"));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "/species/0/ionization_degree");

  issues = issues_of(replace(kOne, "\"mass_kg\": 6.6e-26", "\"mass_kg\": 0"));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "/species/0/mass_kg");
}

TEST_CASE("all problems are reported together") {
  std::string text = replace(kOne, "\"lifetime_s\": 1.0", "\"lifetime_s\": -2");
  text = replace(text, "\"wavelength_m\": 729e-9", "\"wavelength_nm\": 729");
  text = replace(text, "\"multipole\": \"E2\"", "\"multipole\": \"M1\"");
  const auto issues = issues_of(text);
  CHECK(issues.size() == 4);  // unknown key, missing key, bad value, bad multipole
}

TEST_CASE("schema version is enforced") {
  CHECK(issues_of(replace(kOne, "\"schema_version\": 1", "\"schema_version\": 2")).size() == 1);
}

TEST_CASE("syntax errors carry line and column") {
  const std::string broken = "{\n  \"schema_version\": 1,\n  \"species\": [ oops ]\n}";
  try {
    parse_catalog(broken, "broken.json");
    FAIL("expected CatalogError");
  } catch (const CatalogError &e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
    CHECK(e.source() == "broken.json");
    CHECK(std::string(e.what()).find("broken.json:3:") == 0);
    const auto j = nlohmann::json::parse(e.to_json());
    CHECK(j["line"] == 3);
  }
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), CatalogError);
}

TEST_CASE("shipped files load and round-trip") {
  int files = 0;
  for (const auto &entry : std::filesystem::directory_iterator(IONTRAP_DATA_DIR "/species")) {
    if (entry.path().extension() != ".json")
      continue;
    ++files;
    CAPTURE(entry.path().string());
    const Catalog c = load_catalog(entry.path());
    CHECK_FALSE(c.species.empty());
    for (const auto &s : c.species)
      for (const auto &t : s.transitions)
        CHECK(t.provenance.find("verify before use") != std::string::npos);

    std::ifstream in(entry.path());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(nlohmann::json::parse(serialize_catalog(c)) == nlohmann::json::parse(buf.str()));
    CHECK(serialize_catalog(parse_catalog(serialize_catalog(c))) == serialize_catalog(c));
  }
  CHECK(files >= 1);
}

TEST_CASE("catalog line to transition spec") {
  const Catalog c = parse_catalog(kOne);
  const TransitionRecord &t = c.species[0].transitions[0];
  const TransitionSpec spec =
      to_transition_spec(t, HalfInteger::parse("-1/2"), HalfInteger::parse("1/2"));
  CHECK(spec.multipole == Multipole::E2);
  CHECK(spec.einstein_a == 1.0);
  CHECK(spec.wavenumber == t.wavenumber());
  CHECK_THROWS_AS(to_transition_spec(t, HalfInteger::parse("-1/2"), HalfInteger::parse("5/2")),
                  DomainError);

  // Units flow through: Omega_0 from the catalog equals the hand evaluation.
  LaserGeometry g;
  g.field_amplitude = 1e4;
  g.angular_freq = constants::speed_of_light * t.wavenumber();
  const double sigma = geometric_factor(spec, g);
  const double k = 2.0 * M_PI / 729e-9;
  const double hand = 1.602176634e-19 * 1e4 / (1.054571817e-34 * std::sqrt(299792458.0 * 7.2973525693e-3)) *
                      std::sqrt(1.0 / (k * k * k)) * sigma;
  CHECK(rabi_frequency(spec, g) == doctest::Approx(hand).epsilon(1e-12));
}
