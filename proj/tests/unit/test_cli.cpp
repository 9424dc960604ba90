#include <doctest.h>

#include "cli.hpp"
#include "output.hpp"
#include "units.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace iontrap;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / "iontrap_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

bool single_json_line(const std::string &text) {
  if (text.empty() || text.back() != '\n' || text.find('\n') != text.size() - 1)
    return false;
  const auto j = nlohmann::json::parse(text, nullptr, false);
  return !j.is_discarded() && j.contains("error") && j.contains("message");
}

} // namespace

TEST_CASE("unit parsing") {
  const double two_pi = 2.0 * constants::pi;
  CHECK(cli::parse_angular_frequency("3.5") == 3.5);
  CHECK(cli::parse_angular_frequency("3.5rad/s") == 3.5);
  CHECK(cli::parse_angular_frequency("2pi*500kHz") == doctest::Approx(two_pi * 500e3));
  CHECK(cli::parse_angular_frequency("2pi*1.2MHz") == doctest::Approx(two_pi * 1.2e6));
  CHECK_THROWS_AS(cli::parse_angular_frequency("500kHz"), DomainError);
  CHECK_THROWS_AS(cli::parse_angular_frequency("500Hz"), DomainError);
  CHECK_THROWS_AS(cli::parse_angular_frequency("fast"), DomainError);
  CHECK(cli::parse_mass("39.96u") == doctest::Approx(39.96 * constants::atomic_mass_unit));
  CHECK(cli::parse_mass("1e-25kg") == 1e-25);
  CHECK(cli::parse_length("729nm") == doctest::Approx(729e-9));
  CHECK(cli::parse_angle("90deg") == doctest::Approx(constants::pi / 2));
  CHECK(cli::parse_time("5us") == doctest::Approx(5e-6));
  CHECK_THROWS_AS(cli::parse_length("3 furlongs"), DomainError);
}

TEST_CASE("number formatting uses 12 significant digits") {
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(1e-20) == "1e-20");
  CHECK(cli::json_number(1.0 / 3.0).dump() == "0.333333333333");
}

TEST_CASE("equilibrium rows") {
  Result r = run({"equilibrium", "-N", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "ion_count,ion,u\n2,1,-0.629960524947\n2,2,0.629960524947\n");

  r = run({"equilibrium", "-N", "1"});
  CHECK(r.out == "ion_count,ion,u\n1,1,0\n");

  r = run({"equilibrium", "-N", "10", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["positions"].size() == 10);

  r = run({"equilibrium", "-N", "3", "--trap-freq", "2pi*1MHz", "--mass", "40u"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("ion_count,ion,u,position_m\n", 0) == 0);
}

TEST_CASE("modes table") {
  const Result r = run({"modes", "-N", "3"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "p,mu,b_1,b_2,b_3,s_1,s_2,s_3");
  CHECK(first == "1,1,0.57735026919,0.57735026919,0.57735026919,1,1,1");
  CHECK(run({"modes", "-N", "1"}).out == "p,mu,b_1,s_1\n1,1,1,1\n");
}

TEST_CASE("sigma and minsep-fit") {
  Result r = run({"sigma", "--n-max", "3"});
  CHECK(r.out == "ion_count,sigma\n2,0.57735026919\n3,0.699900022446\n");
  r = run({"sigma", "--n-min", "1", "--n-max", "3"});
  CHECK(r.code == 1);
  CHECK(single_json_line(r.err));

  r = run({"minsep-fit"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["points"].size() == 9);
  CHECK(j["fit"]["prefactor"].get<double>() == doctest::Approx(1.83631663257));
}

TEST_CASE("validity report") {
  const Result r = run({"validity", "--rabi", "0.1", "--eta", "1", "--trap-freq", "1", "-N", "2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["p_ext_bound"].get<double>() == doctest::Approx(0.0230940107676));
  CHECK(j["condition_satisfied"] == false);
  CHECK(j["inputs"]["ions"] == 2);
}

TEST_CASE("rabi from a shipped catalog") {
  const Result r = run({"rabi", "--catalog", IONTRAP_DATA_DIR "/species/ca40.json", "--species",
                        "40Ca+", "--transition", "S1/2-D3/2", "--mj", "-1/2", "--mj-upper", "3/2",
                        "--trap-freq", "2pi*1MHz", "--placement", "antinode", "-N", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["sigma"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));
  CHECK(j["kind"] == "U");
  CHECK(j["modes"].size() == 2);

  const Result bad = run({"rabi", "--catalog", IONTRAP_DATA_DIR "/species/ca40.json",
                          "--species", "40Ca+", "--transition", "S1/2-D3/2", "--mj", "-1/2",
                          "--mj-upper", "5/2", "--trap-freq", "1"});
  CHECK(bad.code == 1);
  CHECK(single_json_line(bad.err));
}

TEST_CASE("simulate") {
  Result r = run({"simulate", "--rabi", "0.05", "--eta", "1", "-N", "2", "--periods", "1",
                  "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["max_p_ext"].get<double>() <= j["report"]["p_ext_bound"].get<double>());
  CHECK(j["report"]["envelope"]["satisfied"] == true);
  CHECK(j["series"].size() > 100);

  r = run({"simulate", "--rabi", "0.05", "--eta", "1", "--periods", "1", "--duration", "3"});
  CHECK(r.code == 2);
  CHECK(single_json_line(r.err));
}

TEST_CASE("errors are one JSON line with a nonzero exit") {
  for (const std::vector<std::string> &args :
       std::vector<std::vector<std::string>>{{},
                                             {"equilibrium"},
                                             {"equilibrium", "-N", "0"},
                                             {"equilibrium", "-N", "51"},
                                             {"equilibrium", "-N", "3", "--format", "xml"},
                                             {"equilibrium", "-N", "3", "--trap-freq", "500Hz",
                                              "--mass", "40u"},
                                             {"bogus"},
                                             {"validity", "--rabi", "1", "--eta", "1",
                                              "--trap-freq", "1", "-N", "1"},
                                             {"validity", "--rabi", "1", "--eta", "1",
                                              "--trap-freq", "1", "-N", "3", "--threshold", "2"},
                                             {"rabi", "--catalog", "/nonexistent.json", "--species",
                                              "a", "--transition", "b", "--mj", "1/2",
                                              "--mj-upper", "1/2", "--trap-freq", "1"}}) {
    const Result r = run(args);
    CAPTURE(r.err);
    CHECK(r.code != 0);
    CHECK(single_json_line(r.err));
    CHECK(r.out.empty());
  }
}

TEST_CASE("file output writes a manifest and reruns are byte-identical") {
  const fs::path a = scratch("modes_a.csv"), b = scratch("modes_b.csv");
  REQUIRE(run({"modes", "-N", "7", "-o", a.string()}).code == 0);
  REQUIRE(run({"modes", "-N", "7", "-o", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == run({"modes", "-N", "7"}).out);

  const auto manifest = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["subcommand"] == "modes");
  CHECK(manifest["parameters"]["ions"] == 7);
  CHECK(manifest["outputs"][0] == a.string());
  CHECK(manifest.contains("tool_version"));
  CHECK(manifest.contains("timestamp"));
}
