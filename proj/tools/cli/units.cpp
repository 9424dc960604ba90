#include "units.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <utility>

namespace iontrap::cli {

namespace {

struct Suffix {
  std::string_view text;
  double scale;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text, std::string_view what) {
  throw DomainError("cannot parse '" + std::string(text) + "' as " + std::string(what));
}

// Splits "<number><suffix>" at the end of the longest numeric prefix.
std::pair<double, std::string_view> split_number(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || !std::isfinite(value))
    bad(text, what);
  return {value, trim(std::string_view(ptr, s.data() + s.size() - ptr))};
}

double with_suffixes(std::string_view text, std::string_view what,
                     std::initializer_list<Suffix> suffixes) {
  const auto [value, rest] = split_number(text, what);
  if (rest.empty())
    return value;
  for (const auto &s : suffixes)
    if (rest == s.text)
      return value * s.scale;
  bad(text, what);
}

} // namespace

double parse_number(std::string_view text) { return with_suffixes(text, "a number", {}); }

double parse_angular_frequency(std::string_view text) {
  const std::string_view s = trim(text);
  constexpr std::string_view two_pi = "2pi*";
  if (s.substr(0, two_pi.size()) == two_pi) {
    const double hz = with_suffixes(s.substr(two_pi.size()), "a frequency",
                                    {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}});
    return 2.0 * constants::pi * hz;
  }
  const auto [value, rest] = split_number(s, "an angular frequency");
  if (rest.empty() || rest == "rad/s")
    return value;
  if (rest.size() >= 2 && rest.substr(rest.size() - 2) == "Hz")
    throw DomainError("frequency '" + std::string(text) +
                      "' is ambiguous; write 2pi*" + std::string(s) + " or give rad/s");
  bad(text, "an angular frequency");
}

double parse_mass(std::string_view text) {
  return with_suffixes(text, "a mass", {{"kg", 1.0}, {"u", constants::atomic_mass_unit}});
}

double parse_length(std::string_view text) {
  return with_suffixes(text, "a length", {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}});
}

double parse_angle(std::string_view text) {
  return with_suffixes(text, "an angle", {{"rad", 1.0}, {"deg", constants::pi / 180.0}});
}

double parse_time(std::string_view text) {
  return with_suffixes(text, "a time", {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}});
}

} // namespace iontrap::cli
