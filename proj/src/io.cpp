#include "evenodd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace evenodd {

namespace {

using ojson = nlohmann::ordered_json;

std::string target_tag(Target t) {
  switch (t) {
    case Target::Qubit1:
      return "qubit1";
    case Target::Qubit2:
      return "qubit2";
    case Target::Both:
      break;
  }
  return "both";
}

Target parse_target(const std::string& s) {
  if (s == "qubit1") return Target::Qubit1;
  if (s == "qubit2") return Target::Qubit2;
  if (s == "both") return Target::Both;
  throw ParseError("unknown pulse target '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ojson to_json(const PulseProgram& program) {
  ojson events = ojson::array();
  for (const auto& e : program.events) {
    if (const auto* p = std::get_if<RfPulse>(&e)) {
      events.push_back({{"kind", "rf"},
                        {"target", target_tag(p->target)},
                        {"flip_rad", p->flip},
                        {"phase_rad", p->phase}});
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      events.push_back({{"kind", "delay"}, {"duration_s", d->duration}});
    } else {
      events.push_back({{"kind", "noop"}});
    }
  }
  const ProgramMetadata& m = program.metadata;
  ojson meta = {
      {"gate", m.gate},
      {"j_hz", m.j},
      {"nu1_hz", m.nu1},
      {"nu2_hz", m.nu2},
      {"pulse_durations_us",
       {{"qubit1", {{"nucleus", m.qubit1_label}, {"selective_pulse_us", m.qubit1_pulse_us}}},
        {"qubit2", {{"nucleus", m.qubit2_label}, {"selective_pulse_us", m.qubit2_pulse_us}}}}},
  };
  return {{"frame", std::string(to_string(program.frame))},
          {"events", std::move(events)},
          {"metadata", std::move(meta)}};
}

PulseProgram pulse_program_from_json(const nlohmann::json& j) {
  try {
    PulseProgram program;
    program.frame = parse_frame(j.at("frame").get<std::string>());
    for (const auto& e : j.at("events")) {
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "rf") {
        program.events.push_back(RfPulse{parse_target(e.at("target").get<std::string>()),
                                         e.at("flip_rad").get<double>(),
                                         e.at("phase_rad").get<double>()});
      } else if (kind == "delay") {
        const double d = e.at("duration_s").get<double>();
        if (!(d > 0.0)) throw ParseError("delay duration must be positive");
        program.events.push_back(Delay{d});
      } else if (kind == "noop") {
        program.events.push_back(NoOp{});
      } else {
        throw ParseError("unknown event kind '" + kind + "'");
      }
    }
    if (program.events.empty()) throw ParseError("pulse program has no events");
    if (j.contains("metadata")) {
      const auto& m = j.at("metadata");
      program.metadata.gate = m.value("gate", "");
      program.metadata.j = m.value("j_hz", 0.0);
      program.metadata.nu1 = m.value("nu1_hz", 0.0);
      program.metadata.nu2 = m.value("nu2_hz", 0.0);
      if (m.contains("pulse_durations_us")) {
        const auto& p = m.at("pulse_durations_us");
        program.metadata.qubit1_label = p.at("qubit1").value("nucleus", "19F");
        program.metadata.qubit1_pulse_us = p.at("qubit1").value("selective_pulse_us", 22.1);
        program.metadata.qubit2_label = p.at("qubit2").value("nucleus", "1H");
        program.metadata.qubit2_pulse_us = p.at("qubit2").value("selective_pulse_us", 12.7);
      }
    }
    return program;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed pulse program JSON: ") + ex.what());
  }
}

ojson catalog_json() {
  ojson out = ojson::array();
  for (const auto& e : catalog()) {
    out.push_back({{"index", e.index},
                   {"diagonal", e.diagonal},
                   {"parity", std::string(to_string(e.parity))}});
  }
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const LineSpectrum& lines,
                        std::optional<double> amplitude_scale) {
  if (amplitude_scale) out << "# amplitude_scale=" << format_number(*amplitude_scale) << '\n';
  out << "frequency_hz,amp_re,amp_im\n";
  for (const auto& l : lines) {
    out << format_number(l.frequency_hz) << ',' << format_number(l.amplitude.real()) << ','
        << format_number(l.amplitude.imag()) << '\n';
  }
}

LineSpectrum read_spectrum_csv(std::istream& in) {
  LineSpectrum lines;
  std::string row;
  bool header = false;
  while (std::getline(in, row)) {
    if (row.empty() || row[0] == '#') continue;
    if (!header) {
      if (trim(row) != "frequency_hz,amp_re,amp_im")
        throw ParseError("unexpected spectrum CSV header: " + row);
      header = true;
      continue;
    }
    std::istringstream fields(row);
    std::string f, re, im;
    if (!std::getline(fields, f, ',') || !std::getline(fields, re, ',') ||
        !std::getline(fields, im))
      throw ParseError("malformed spectrum row: " + row);
    lines.push_back({std::stod(f), {std::stod(re), std::stod(im)}});
  }
  return lines;
}

void write_fid_csv(std::ostream& out, const std::vector<Complexd>& fid, double dwell) {
  out << "t_s,re,im\n";
  for (std::size_t n = 0; n < fid.size(); ++n) {
    out << format_number(double(n) * dwell) << ',' << format_number(fid[n].real()) << ','
        << format_number(fid[n].imag()) << '\n';
  }
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string body = line;
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') continue;  // section headers carry no meaning here
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(number) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(number) + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    out[key] = value;
  }
  return out;
}

}  // namespace evenodd
