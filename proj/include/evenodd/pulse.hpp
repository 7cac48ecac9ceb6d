#pragma once

// NMR realization: pulse programs built from ideal instantaneous RF rotations
// and free-evolution delays, their propagators, and compilation of the
// algorithm's gate set into them.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evenodd/algorithm.hpp"
#include "evenodd/boolfun.hpp"
#include "evenodd/coherence.hpp"
#include "evenodd/qmat.hpp"

namespace evenodd {

/// Phase angles of the transverse rotation axis.
inline constexpr double kPhaseX = 0.0;
inline constexpr double kPhaseY = std::numbers::pi / 2;
inline constexpr double kPhaseMinusX = std::numbers::pi;
inline constexpr double kPhaseMinusY = 3 * std::numbers::pi / 2;

struct RfPulse {
  Target target = Target::Both;
  double flip = 0.0;   // rad, in (0, 2pi]
  double phase = 0.0;  // rad, 0 = x, pi/2 = y
};

struct Delay {
  double duration = 0.0;  // s, > 0
};

/// The do-nothing program element; its propagator is the identity.
struct NoOp {};

using PulseEvent = std::variant<RfPulse, Delay, NoOp>;

/// DoublyRotating: offsets vanish during delays and no refocusing pulse is
/// emitted. HardwareFaithful: offsets act during delays and each coupling
/// delay is split by a nonselective (pi)_y pulse.
enum class Frame { DoublyRotating, HardwareFaithful };

std::string_view to_string(Frame f);
Frame parse_frame(std::string_view text);

struct ProgramMetadata {
  std::string gate;
  double j = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::string qubit1_label = "19F";
  std::string qubit2_label = "1H";
  double qubit1_pulse_us = 22.1;
  double qubit2_pulse_us = 12.7;
};

struct PulseProgram {
  std::vector<PulseEvent> events;
  Frame frame = Frame::DoublyRotating;
  ProgramMetadata metadata;
};

/// A gate the compiler knows: pseudo-Hadamards (and inverses) on a target,
/// or catalog entry U1..U16.
class GateSymbol {
 public:
  static GateSymbol hadamard(Target t, bool inverse = false);
  static GateSymbol uf(int index);
  /// "h1", "h2", "h12", "h12inv" (or "h12^-1"), "U1".."U16" (case-insensitive).
  static GateSymbol parse(std::string_view text);

  bool is_hadamard() const { return index_ == 0; }
  bool is_inverse() const { return inverse_; }
  Target target() const { return target_; }
  int uf_index() const { return index_; }
  std::string name() const;
  /// The gate matrix the program must reproduce up to global phase.
  Mat4d ideal_matrix() const;

  friend bool operator==(const GateSymbol&, const GateSymbol&) = default;

 private:
  Target target_ = Target::Both;
  bool inverse_ = false;
  int index_ = 0;  // 0 for pseudo-Hadamards
};

/// All 22 supported gates: six pseudo-Hadamards then U1..U16.
std::vector<GateSymbol> supported_gates();

/// exp(-i theta Iz) on the target as (pi/2)_-x, (|theta|)_+-y, (pi/2)_x in
/// time order, i.e. the operator product [pi/2]_x [theta]_y [pi/2]_-x.
/// theta in [-2pi, 2pi], nonzero.
PulseProgram composite_z(double theta, Target target);

struct CompileOptions {
  Frame frame = Frame::DoublyRotating;
  /// Emit the mid-delay nonselective pi pulse in the hardware frame. Turning
  /// this off exists for negative tests.
  bool refocus = true;
};

/// Throws UnsupportedGate via GateSymbol::parse for unknown names.
PulseProgram compile_gate(const GateSymbol& gate, const SpinSystemParams& params,
                          const CompileOptions& options = {});

Mat4d event_propagator(const PulseEvent& event, const SpinSystemParams& params, Frame frame);

/// Product of event propagators, first event rightmost.
Mat4d program_propagator(const PulseProgram& program, const SpinSystemParams& params);
/// Same, with the program's own offsets/J replaced by `params`.
inline Mat4d program_propagator(const PulseProgram& program) {
  return program_propagator(program, SpinSystemParams{program.metadata.nu1,
                                                      program.metadata.nu2, program.metadata.j});
}

/// Number of nonselective pi refocusing pulses (those following a delay).
int refocusing_pulses(const PulseProgram& program);

/// Propagator of the nonselective (pi)_y pulse.
Mat4d frame_flip();

struct CompilationReport {
  GateSymbol gate;
  PulseProgram program;
  double achieved_phase = 0.0;
  double residual = 0.0;
  bool frame_flip_applied = false;
};

/// Offset pairs used to probe refocusing in the hardware frame.
std::vector<std::pair<double, double>> offset_probe_grid();

/// Largest global-phase-aligned difference between hardware-frame
/// propagators of `gate` across offset_probe_grid(). Zero for gates without
/// delays.
double offset_dependence(const GateSymbol& gate, const SpinSystemParams& params,
                         bool refocus = true);

/// Compiles and checks the program propagator against the ideal gate (times
/// the frame flip when the hardware frame refocuses). Throws
/// CompilationMismatch carrying the residual.
CompilationReport verify_compilation(const GateSymbol& gate, const SpinSystemParams& params,
                                     const CompileOptions& options = {});

/// The full gate word executed at pulse level. In the hardware frame the
/// accumulated frame flips are undone by conjugating the final state.
Mat4d run_pulse_algorithm(BoolFn2 f, InitialState init, const SpinSystemParams& params,
                          const CompileOptions& options = {});

/// One human-readable line per event.
std::string describe(const PulseProgram& program);

}  // namespace evenodd
