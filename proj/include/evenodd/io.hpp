#pragma once

// Interchange formats: pulse-program and catalog JSON, spectrum and FID CSV,
// and the flat key = value configuration file.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "evenodd/boolfun.hpp"
#include "evenodd/coherence.hpp"
#include "evenodd/pulse.hpp"

namespace evenodd {

nlohmann::ordered_json to_json(const PulseProgram& program);
/// Throws ParseError on schema violations.
PulseProgram pulse_program_from_json(const nlohmann::json& j);

/// [{index, diagonal, parity}, ...] for U1..U16.
nlohmann::ordered_json catalog_json();

/// Fixed-format number used in every CSV so identical inputs give identical
/// bytes.
std::string format_number(double v);

/// "frequency_hz,amp_re,amp_im", preceded by "# amplitude_scale=<s>" when a
/// plotting scale is given.
void write_spectrum_csv(std::ostream& out, const LineSpectrum& lines,
                        std::optional<double> amplitude_scale = std::nullopt);
LineSpectrum read_spectrum_csv(std::istream& in);

/// "t_s,re,im".
void write_fid_csv(std::ostream& out, const std::vector<Complexd>& fid, double dwell);

/// key = value lines; '#' starts a comment; values may be double-quoted.
/// Keys are returned lower-cased. Throws ParseError with the line number.
std::map<std::string, std::string> parse_config(std::istream& in);

}  // namespace evenodd
