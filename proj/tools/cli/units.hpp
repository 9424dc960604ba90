#pragma once

#include <string_view>

namespace iontrap::cli {

// All parsers throw DomainError with the offending text on failure.

/// Canonical unit rad/s. Accepts a plain number (rad/s), "<x>rad/s", or the
/// literal form "2pi*<x><prefix>Hz" with prefix one of "", k, M, G. A bare
/// "<x>Hz" is rejected because it is ambiguous with angular frequency.
double parse_angular_frequency(std::string_view text);

/// Canonical unit kg. Accepts a plain number (kg), "<x>kg", or "<x>u".
double parse_mass(std::string_view text);

/// Canonical unit m. Accepts a plain number (m) or "<x>m", "<x>mm",
/// "<x>um", "<x>nm".
double parse_length(std::string_view text);

/// Canonical unit rad. Accepts a plain number (rad), "<x>rad" or "<x>deg".
double parse_angle(std::string_view text);

/// Canonical unit s. Accepts a plain number (s) or "<x>s", "<x>ms", "<x>us".
double parse_time(std::string_view text);

/// Plain number with no unit.
double parse_number(std::string_view text);

} // namespace iontrap::cli
