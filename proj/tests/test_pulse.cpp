#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "evenodd/errors.hpp"
#include "evenodd/pulse.hpp"
#include "oracles.hpp"

using namespace evenodd;

namespace {

constexpr double kPi = std::numbers::pi;

oracle::M4 iz_on(Target t) {
  switch (t) {
    case Target::Qubit1:
      return oracle::kron(oracle::iz(), oracle::id2());
    case Target::Qubit2:
      return oracle::kron(oracle::id2(), oracle::iz());
    case Target::Both:
      break;
  }
  return oracle::kron(oracle::iz(), oracle::id2()) + oracle::kron(oracle::id2(), oracle::iz());
}

oracle::M4 hamiltonian(const SpinSystemParams& p) {
  const oracle::M4 z1 = oracle::kron(oracle::iz(), oracle::id2());
  const oracle::M4 z2 = oracle::kron(oracle::id2(), oracle::iz());
  return 2 * kPi * (p.nu1 * z1 + p.nu2 * z2 + p.j * z1 * z2);
}

int count_rf(const PulseProgram& p) {
  int n = 0;
  for (const auto& e : p.events) n += std::holds_alternative<RfPulse>(e);
  return n;
}

}  // namespace

TEST(CompositeZ, MatchesExponentialOnGrid) {
  for (Target t : {Target::Qubit1, Target::Qubit2, Target::Both}) {
    for (int k = 1; k <= 16; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double theta = sign * k * kPi / 8;
        const Mat4d u = program_propagator(composite_z(theta, t), SpinSystemParams{});
        EXPECT_LT(oracle::phase_distance(u, oracle::expm(iz_on(t), theta)), 1e-9)
            << "theta=" << theta;
        // Exact, not just up to phase.
        EXPECT_LE(max_abs(u - oracle::expm(iz_on(t), theta)), 1e-12);
      }
    }
  }
}

TEST(CompositeZ, EventOrderAndDomain) {
  const PulseProgram p = composite_z(kPi / 2, Target::Qubit1);
  ASSERT_EQ(p.events.size(), 3u);
  EXPECT_DOUBLE_EQ(std::get<RfPulse>(p.events[0]).phase, kPhaseMinusX);
  EXPECT_DOUBLE_EQ(std::get<RfPulse>(p.events[1]).phase, kPhaseY);
  EXPECT_DOUBLE_EQ(std::get<RfPulse>(p.events[2]).phase, kPhaseX);
  EXPECT_DOUBLE_EQ(std::get<RfPulse>(composite_z(-1.0, Target::Both).events[1]).phase,
                   kPhaseMinusY);
  EXPECT_THROW(composite_z(0.0, Target::Both), Error);
  EXPECT_THROW(composite_z(7.0, Target::Both), Error);
  EXPECT_NO_THROW(composite_z(2 * kPi, Target::Both));
}

TEST(Delay, MatchesHamiltonianExponential) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> nu(-500.0, 500.0), jj(0.5, 20.0), t(1e-4, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    const SpinSystemParams p{nu(rng), nu(rng), jj(rng)};
    const double d = t(rng);
    const Mat4d u = event_propagator(Delay{d}, p, Frame::HardwareFaithful);
    EXPECT_LE(max_abs(u - (oracle::C(0, -d) * hamiltonian(p)).exp()), 1e-10);
    const Mat4d r = event_propagator(Delay{d}, p, Frame::DoublyRotating);
    EXPECT_LE(max_abs(r - (oracle::C(0, -d) * hamiltonian({0.0, 0.0, p.j})).exp()), 1e-10);
  }
}

TEST(Delay, HalfOverJIsTheCouplingGate) {
  const SpinSystemParams p;
  const Mat4d u = event_propagator(Delay{1.0 / (2 * p.j)}, p, Frame::DoublyRotating);
  const Complexd m = std::polar(1.0, -kPi / 4), q = std::polar(1.0, kPi / 4);
  EXPECT_LE(std::abs(u(0, 0) - m) + std::abs(u(1, 1) - q) + std::abs(u(2, 2) - q) +
                std::abs(u(3, 3) - m),
            1e-12);
}

TEST(Events, Validation) {
  EXPECT_THROW(event_propagator(RfPulse{Target::Both, 0.0, 0.0}, {}, Frame::DoublyRotating),
               Error);
  EXPECT_THROW(event_propagator(Delay{-1.0}, {}, Frame::DoublyRotating), Error);
  EXPECT_THROW(event_propagator(Delay{0.0}, {}, Frame::DoublyRotating), Error);
  EXPECT_LE(max_abs(event_propagator(NoOp{}, {}, Frame::HardwareFaithful) - Mat4d::Identity()),
            0.0);
}

TEST(GateSymbolTest, Parse) {
  EXPECT_EQ(GateSymbol::parse("h1"), GateSymbol::hadamard(Target::Qubit1));
  EXPECT_EQ(GateSymbol::parse("H12"), GateSymbol::hadamard(Target::Both));
  EXPECT_EQ(GateSymbol::parse("h12^-1"), GateSymbol::hadamard(Target::Both, true));
  EXPECT_EQ(GateSymbol::parse("h2inv"), GateSymbol::hadamard(Target::Qubit2, true));
  EXPECT_EQ(GateSymbol::parse("U9"), GateSymbol::uf(9));
  EXPECT_EQ(GateSymbol::parse("u16"), GateSymbol::uf(16));
  for (const char* bad : {"h3", "U0", "U17", "U", "cnot", ""})
    EXPECT_THROW(GateSymbol::parse(bad), UnsupportedGate) << bad;
  EXPECT_EQ(supported_gates().size(), 22u);
}

TEST(Compile, HadamardsAreSingleNinetyPulses) {
  const PulseProgram p = compile_gate(GateSymbol::hadamard(Target::Both), {});
  ASSERT_EQ(p.events.size(), 1u);
  const RfPulse r = std::get<RfPulse>(p.events[0]);
  EXPECT_DOUBLE_EQ(r.flip, kPi / 2);
  EXPECT_DOUBLE_EQ(r.phase, kPhaseY);
  EXPECT_DOUBLE_EQ(
      std::get<RfPulse>(compile_gate(GateSymbol::hadamard(Target::Qubit1, true), {}).events[0])
          .phase,
      kPhaseMinusY);
}

TEST(Compile, AllGatesReproduceTheirMatrices) {
  for (Frame frame : {Frame::DoublyRotating, Frame::HardwareFaithful}) {
    for (const GateSymbol& g : supported_gates()) {
      const CompilationReport r = verify_compilation(g, {}, {frame, true});
      EXPECT_LT(r.residual, 1e-9) << g.name();
      EXPECT_LT(unitarity_residual(program_propagator(r.program, SpinSystemParams{})), 1e-10);
    }
  }
}

TEST(Compile, RotatingFrameDiagonalsIndependentOracle) {
  for (int i = 1; i <= 16; ++i) {
    const PulseProgram p = compile_gate(GateSymbol::uf(i), {});
    const Mat4d u = program_propagator(p, SpinSystemParams{});
    oracle::M4 d = oracle::M4::Zero();
    for (int x = 0; x < 4; ++x) d(x, x) = double(catalog_entry(i).diagonal[std::size_t(x)]);
    EXPECT_LT(oracle::phase_distance(u, d), 1e-9) << "U" << i;
  }
}

TEST(Compile, U9GlobalPhase) {
  const CompilationReport r = verify_compilation(GateSymbol::uf(9), {});
  const Complexd phase = std::polar(1.0, r.achieved_phase);
  EXPECT_LE(std::abs(phase + std::polar(1.0, kPi / 4)), 1e-9);
}

TEST(Compile, EventCounts) {
  EXPECT_EQ(count_rf(compile_gate(GateSymbol::uf(4), {})), 3);
  EXPECT_EQ(count_rf(compile_gate(GateSymbol::uf(1), {})), 0);
  EXPECT_TRUE(std::holds_alternative<NoOp>(compile_gate(GateSymbol::uf(5), {}).events[0]));
  const PulseProgram hw = compile_gate(GateSymbol::uf(9), {}, {Frame::HardwareFaithful, true});
  EXPECT_EQ(count_rf(hw), 7);
  EXPECT_EQ(refocusing_pulses(hw), 1);
  EXPECT_EQ(refocusing_pulses(compile_gate(GateSymbol::uf(4), {}, {Frame::HardwareFaithful})),
            0);
  EXPECT_NE(describe(hw).find("spin rotations: q1=4 q2=4"), std::string::npos);
  EXPECT_NE(describe(compile_gate(GateSymbol::uf(4), {})).find("q1=3 q2=3"), std::string::npos);
}

TEST(Compile, DelayFollowsCoupling) {
  const SpinSystemParams p{100.0, -150.0, 10.0};
  const PulseProgram prog = compile_gate(GateSymbol::uf(12), p);
  double total = 0.0;
  for (const auto& e : prog.events)
    if (const auto* d = std::get_if<Delay>(&e)) total += d->duration;
  EXPECT_NEAR(total, 0.05, 1e-15);
  EXPECT_THROW(compile_gate(GateSymbol::uf(9), {100.0, -150.0, 0.0}), Error);
}

TEST(Hardware, FrameFlipIsInvolution) {
  EXPECT_LE(max_abs(Mat4d(frame_flip() * frame_flip()) - Mat4d::Identity()), 1e-15);
}

TEST(Hardware, RefocusingRemovesOffsetDependence) {
  for (int i = 9; i <= 16; ++i) {
    EXPECT_LE(offset_dependence(GateSymbol::uf(i), {}, true), 1e-9);
    EXPECT_GT(offset_dependence(GateSymbol::uf(i), {}, false), 1e-3);
  }
}

TEST(Hardware, OffsetIndependenceOnRandomOffsets) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> nu(-1000.0, 1000.0);
  const PulseProgram p =
      compile_gate(GateSymbol::uf(11), {}, {Frame::HardwareFaithful, true});
  const Mat4d ref = program_propagator(p, SpinSystemParams{});
  for (int trial = 0; trial < 10; ++trial) {
    const Mat4d u = program_propagator(p, SpinSystemParams{nu(rng), nu(rng), 6.1});
    EXPECT_LT(oracle::phase_distance(u, ref), 1e-9);
  }
}

TEST(Hardware, MissingRefocusingFailsVerification) {
  EXPECT_THROW(
      verify_compilation(GateSymbol::uf(9), {}, {Frame::HardwareFaithful, false}),
      CompilationMismatch);
}

TEST(PulseAlgorithm, RotatingFrameReproducesIdealMatrices) {
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto s : {InitialState::pseudopure(), InitialState::thermal()}) {
      const Mat4d pulse = run_pulse_algorithm(f, s, {}, {Frame::DoublyRotating, true});
      EXPECT_LE(max_abs(pulse - run_sequence(f, s)), 1e-9) << f.to_string();
    }
  }
}

TEST(PulseAlgorithm, HardwareFrameClassifiesLikeIdeal) {
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto s : {InitialState::pseudopure(), InitialState::thermal()}) {
      const Mat4d rho = run_pulse_algorithm(f, s, {}, {Frame::HardwareFaithful, true});
      EXPECT_EQ(classify_from_readout(rho), parity(f)) << f.to_string();
    }
  }
}

TEST(FrameText, RoundTrip) {
  EXPECT_EQ(parse_frame(to_string(Frame::HardwareFaithful)), Frame::HardwareFaithful);
  EXPECT_EQ(parse_frame("rotating"), Frame::DoublyRotating);
  EXPECT_THROW(parse_frame("lab"), ParseError);
}
