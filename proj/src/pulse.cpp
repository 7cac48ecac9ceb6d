#include "evenodd/pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace evenodd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

std::string_view target_name(Target t) {
  switch (t) {
    case Target::Qubit1:
      return "q1";
    case Target::Qubit2:
      return "q2";
    case Target::Both:
      break;
  }
  return "both";
}

RfPulse rf(Target t, double flip, double phase) { return {t, flip, phase}; }

void append(PulseProgram& into, const PulseProgram& from) {
  into.events.insert(into.events.end(), from.events.begin(), from.events.end());
}

void validate(const RfPulse& p) {
  if (!(p.flip > 0.0 && p.flip <= 2 * kPi + kAngleSlack) || !std::isfinite(p.phase))
    throw Error("RF flip angle must be in (0, 2pi], got " + std::to_string(p.flip));
}

void validate(const Delay& d) {
  if (!(d.duration > 0.0) || !std::isfinite(d.duration))
    throw Error("delay duration must be positive, got " + std::to_string(d.duration));
}

}  // namespace

std::string_view to_string(Frame f) {
  return f == Frame::DoublyRotating ? "rotating" : "hardware";
}

Frame parse_frame(std::string_view text) {
  const std::string t = lower(text);
  if (t == "rotating" || t == "doubly-rotating" || t == "doublyrotating")
    return Frame::DoublyRotating;
  if (t == "hardware" || t == "hardware-faithful" || t == "hardwarefaithful")
    return Frame::HardwareFaithful;
  throw ParseError("unknown frame '" + std::string(text) + "' (expected rotating|hardware)");
}

GateSymbol GateSymbol::hadamard(Target t, bool inverse) {
  GateSymbol g;
  g.target_ = t;
  g.inverse_ = inverse;
  return g;
}

GateSymbol GateSymbol::uf(int index) {
  if (index < 1 || index > 16) throw UnsupportedGate("U" + std::to_string(index));
  GateSymbol g;
  g.index_ = index;
  return g;
}

GateSymbol GateSymbol::parse(std::string_view text) {
  const std::string t = lower(text);
  static const std::map<std::string, std::pair<Target, bool>> kHadamards = {
      {"h1", {Target::Qubit1, false}},     {"h2", {Target::Qubit2, false}},
      {"h12", {Target::Both, false}},      {"h1inv", {Target::Qubit1, true}},
      {"h2inv", {Target::Qubit2, true}},   {"h12inv", {Target::Both, true}},
      {"h1^-1", {Target::Qubit1, true}},   {"h2^-1", {Target::Qubit2, true}},
      {"h12^-1", {Target::Both, true}},
  };
  if (auto it = kHadamards.find(t); it != kHadamards.end())
    return hadamard(it->second.first, it->second.second);
  if (t.size() >= 2 && t.size() <= 3 && t[0] == 'u' &&
      std::all_of(t.begin() + 1, t.end(), [](char c) { return std::isdigit(c) != 0; })) {
    const int index = std::stoi(t.substr(1));
    if (index >= 1 && index <= 16) return uf(index);
  }
  throw UnsupportedGate(std::string(text));
}

std::string GateSymbol::name() const {
  if (!is_hadamard()) return "U" + std::to_string(index_);
  std::string n = target_ == Target::Qubit1 ? "h1" : target_ == Target::Qubit2 ? "h2" : "h12";
  return inverse_ ? n + "inv" : n;
}

Mat4d GateSymbol::ideal_matrix() const {
  if (!is_hadamard()) return diagonal_matrix(catalog_entry(index_).diagonal);
  const Mat4d h = pseudo_hadamard<double>(target_);
  return inverse_ ? Mat4d(h.adjoint()) : h;
}

std::vector<GateSymbol> supported_gates() {
  std::vector<GateSymbol> out;
  for (bool inv : {false, true})
    for (Target t : {Target::Qubit1, Target::Qubit2, Target::Both})
      out.push_back(GateSymbol::hadamard(t, inv));
  for (int i = 1; i <= 16; ++i) out.push_back(GateSymbol::uf(i));
  return out;
}

PulseProgram composite_z(double theta, Target target) {
  if (!(theta != 0.0 && std::abs(theta) <= 2 * kPi + kAngleSlack))
    throw Error("composite-z angle must be nonzero and within [-2pi, 2pi]");
  PulseProgram p;
  p.events = {
      rf(target, kPi / 2, kPhaseMinusX),
      rf(target, std::abs(theta), theta > 0 ? kPhaseY : kPhaseMinusY),
      rf(target, kPi / 2, kPhaseX),
  };
  p.metadata.gate = "z(" + std::to_string(theta) + ")";
  return p;
}

PulseProgram compile_gate(const GateSymbol& gate, const SpinSystemParams& params,
                          const CompileOptions& options) {
  PulseProgram program;
  program.frame = options.frame;
  program.metadata.gate = gate.name();
  program.metadata.j = params.j;
  program.metadata.nu1 = params.nu1;
  program.metadata.nu2 = params.nu2;

  if (gate.is_hadamard()) {
    program.events.push_back(
        rf(gate.target(), kPi / 2, gate.is_inverse() ? kPhaseMinusY : kPhaseY));
    return program;
  }

  const SignDiagonal& d = catalog_entry(gate.uf_index()).diagonal;
  // Signs relative to |00>; a global sign is not observable.
  const bool flip_q2 = d[1] * d[0] < 0;
  const bool flip_q1 = d[2] * d[0] < 0;
  const bool separable = d[0] * d[3] == d[1] * d[2];

  if (separable) {
    if (flip_q1 && flip_q2) {
      append(program, composite_z(kPi, Target::Both));
    } else if (flip_q1) {
      append(program, composite_z(kPi, Target::Qubit1));
    } else if (flip_q2) {
      append(program, composite_z(kPi, Target::Qubit2));
    } else {
      program.events.push_back(NoOp{});
    }
    return program;
  }

  // Entangling: z(+-pi/2) on each spin, then coupling evolution for 1/(2J),
  // which contributes diag(e^{-i pi/4}, e^{i pi/4}, e^{i pi/4}, e^{-i pi/4}).
  if (!(params.j > 0.0)) throw Error("entangling gates need a positive scalar coupling J");
  const double tau = 1.0 / (2.0 * params.j);
  append(program, composite_z(flip_q1 ? kPi / 2 : -kPi / 2, Target::Qubit1));
  append(program, composite_z(flip_q2 ? kPi / 2 : -kPi / 2, Target::Qubit2));
  if (options.frame == Frame::HardwareFaithful && options.refocus) {
    program.events.push_back(Delay{tau / 2});
    program.events.push_back(rf(Target::Both, kPi, kPhaseY));
    program.events.push_back(Delay{tau / 2});
  } else {
    program.events.push_back(Delay{tau});
  }
  return program;
}

Mat4d event_propagator(const PulseEvent& event, const SpinSystemParams& params, Frame frame) {
  return std::visit(
      [&](const auto& e) -> Mat4d {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RfPulse>) {
          validate(e);
          return on_target<double>(transverse_rotation<double>(e.flip, e.phase), e.target);
        } else if constexpr (std::is_same_v<T, Delay>) {
          validate(e);
          SpinSystemParams active = params;
          if (frame == Frame::DoublyRotating) active.nu1 = active.nu2 = 0.0;
          return diagonal_exp<double>(2.0 * kPi * e.duration * free_energies_hz(active));
        } else {
          return Mat4d::Identity();
        }
      },
      event);
}

Mat4d program_propagator(const PulseProgram& program, const SpinSystemParams& params) {
  Mat4d u = Mat4d::Identity();
  for (const auto& e : program.events) u = event_propagator(e, params, program.frame) * u;
  return u;
}

int refocusing_pulses(const PulseProgram& program) {
  int n = 0;
  for (std::size_t k = 1; k < program.events.size(); ++k) {
    if (!std::holds_alternative<Delay>(program.events[k - 1])) continue;
    if (const auto* p = std::get_if<RfPulse>(&program.events[k]);
        p && p->target == Target::Both && std::abs(p->flip - kPi) < 1e-12 &&
        std::abs(p->phase - kPhaseY) < 1e-12)
      ++n;
  }
  return n;
}

Mat4d frame_flip() {
  return on_target<double>(transverse_rotation<double>(kPi, kPhaseY), Target::Both);
}

std::vector<std::pair<double, double>> offset_probe_grid() {
  return {{100.0, -150.0}, {0.0, 0.0}, {-250.0, 437.5}};
}

double offset_dependence(const GateSymbol& gate, const SpinSystemParams& params, bool refocus) {
  const PulseProgram program =
      compile_gate(gate, params, {Frame::HardwareFaithful, refocus});
  const auto grid = offset_probe_grid();
  auto at = [&](const std::pair<double, double>& nu) {
    return program_propagator(program, {nu.first, nu.second, params.j});
  };
  const Mat4d reference = at(grid.front());
  double worst = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k)
    worst = std::max(worst, align_global_phase<double>(at(grid[k]), reference).residual);
  return worst;
}

CompilationReport verify_compilation(const GateSymbol& gate, const SpinSystemParams& params,
                                     const CompileOptions& options) {
  CompilationReport report{gate, compile_gate(gate, params, options)};
  const Mat4d achieved = program_propagator(report.program, params);

  Mat4d expected = gate.ideal_matrix();
  if (options.frame == Frame::HardwareFaithful) {
    for (int k = refocusing_pulses(report.program); k > 0; --k) {
      expected = frame_flip() * expected;
      report.frame_flip_applied = true;
    }
  }
  const auto al = align_global_phase<double>(achieved, expected);
  report.achieved_phase = al.phase;
  report.residual = al.residual;
  if (!(al.residual <= kPropagatorTol)) throw CompilationMismatch(gate.name(), al.residual);

  if (options.frame == Frame::HardwareFaithful) {
    const double drift = offset_dependence(gate, params, options.refocus);
    if (!(drift <= kPropagatorTol)) throw CompilationMismatch(gate.name(), drift);
  }
  return report;
}

Mat4d run_pulse_algorithm(BoolFn2 f, InitialState init, const SpinSystemParams& params,
                          const CompileOptions& options) {
  const GateSymbol oracle = GateSymbol::uf(catalog_entry_for(f).index);
  auto symbol_for = [&](Gate g) {
    switch (g) {
      case Gate::H1:
        return GateSymbol::hadamard(Target::Qubit1);
      case Gate::H2:
        return GateSymbol::hadamard(Target::Qubit2);
      case Gate::H12:
        return GateSymbol::hadamard(Target::Both);
      case Gate::H1Inv:
        return GateSymbol::hadamard(Target::Qubit1, true);
      case Gate::H2Inv:
        return GateSymbol::hadamard(Target::Qubit2, true);
      case Gate::H12Inv:
        return GateSymbol::hadamard(Target::Both, true);
      case Gate::Oracle:
        break;
    }
    return oracle;
  };

  Mat4d rho = initial_state(init);
  int flips = 0;
  for (Gate g : canonical_word()) {
    const CompilationReport report = verify_compilation(symbol_for(g), params, options);
    rho = conjugate_evolve<double>(rho, program_propagator(report.program, params));
    flips += options.frame == Frame::HardwareFaithful ? refocusing_pulses(report.program) : 0;
  }
  if (flips > 0) {
    Mat4d correction = Mat4d::Identity();
    for (int k = 0; k < flips; ++k) correction = frame_flip() * correction;
    rho = correction.adjoint() * rho * correction;
  }
  return rho;
}

std::string describe(const PulseProgram& program) {
  std::ostringstream out;
  out << std::fixed;
  int q1 = 0, q2 = 0, delays = 0;
  int n = 0;
  for (const auto& e : program.events) {
    out << std::setw(3) << ++n << "  ";
    if (const auto* p = std::get_if<RfPulse>(&e)) {
      out << "rf     " << std::left << std::setw(5) << target_name(p->target) << std::right
          << std::setprecision(2) << std::setw(7) << p->flip * 180.0 / kPi << " deg  phase "
          << std::setw(7) << p->phase * 180.0 / kPi << " deg";
      if (p->target == Target::Qubit1)
        out << "  (" << std::setprecision(1) << program.metadata.qubit1_pulse_us << " us "
            << program.metadata.qubit1_label << ")";
      if (p->target == Target::Qubit2)
        out << "  (" << std::setprecision(1) << program.metadata.qubit2_pulse_us << " us "
            << program.metadata.qubit2_label << ")";
      q1 += p->target != Target::Qubit2;
      q2 += p->target != Target::Qubit1;
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      out << "delay  " << std::setprecision(3) << d->duration * 1e3 << " ms";
      ++delays;
    } else {
      out << "noop";
    }
    out << '\n';
  }
  out << "spin rotations: q1=" << q1 << " q2=" << q2 << ", delays: " << delays << '\n';
  return out.str();
}

}  // namespace evenodd
