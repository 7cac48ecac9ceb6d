#include <gtest/gtest.h>

#include <random>

#include "evenodd/algorithm.hpp"
#include "evenodd/errors.hpp"
#include "oracles.hpp"

using namespace evenodd;

namespace {

// zeta by truth-table code (bit i = f(i)), frozen from the ket simulation.
constexpr std::array<int, 16> kZeta = {1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1};

Mat4d projector(const oracle::V4& psi) { return psi * psi.adjoint(); }

const std::vector<InitialState> kStates = {InitialState::pseudopure(), InitialState::thermal(),
                                           {2.0, 3.0}};

}  // namespace

TEST(Hadamard, ConventionsAreTransposes) {
  const Mat2d a = pseudo_hadamard_1q<double>(HadamardConvention::KetAction);
  const Mat2d b = pseudo_hadamard_1q<double>(HadamardConvention::DisplayedMatrix);
  EXPECT_LE(max_abs(a - oracle::h_ket()), 1e-15);
  EXPECT_LE(max_abs(Mat2d(a.transpose()) - b), 1e-15);
  EXPECT_LE(unitarity_residual(a), 1e-15);
}

TEST(InitialStateTest, Presets) {
  const Mat4d thermal = initial_state(InitialState::thermal());
  EXPECT_EQ(thermal(0, 0), Complexd(1.0));
  EXPECT_EQ(thermal(3, 3), Complexd(-1.0));
  EXPECT_EQ(thermal(1, 1), Complexd(0.0));
  EXPECT_THROW(initial_state(0.0, 0.0), ZeroState);
}

TEST(Sequence, PseudopureMatchesKetSimulation) {
  for (BoolFn2 f : BoolFn2::all()) {
    const Mat4d rho = run_sequence(f, InitialState::pseudopure());
    const Mat4d expected = projector(oracle::final_ket(oracle::outputs(f.code())));
    EXPECT_LE(max_abs(rho - expected), 1e-12) << f.to_string();
  }
}

TEST(Sequence, HandDerivedAnchors) {
  const double s = std::sqrt(0.5);
  oracle::V4 even(s, s, 0, 0), odd(s, 0, 0, s);
  EXPECT_LE(max_abs(run_sequence(BoolFn2::parse("0b0000"), InitialState::pseudopure()) -
                    projector(even)),
            1e-12);
  EXPECT_LE(max_abs(run_sequence(BoolFn2::parse("0b0111"), InitialState::pseudopure()) -
                    projector(odd)),
            1e-12);
}

TEST(Sequence, ZetaTable) {
  for (BoolFn2 f : BoolFn2::all()) EXPECT_EQ(zeta_of(f), kZeta[f.code()]) << f.to_string();
}

TEST(Sequence, PseudopureOutputsHaveExpectedShape) {
  const double s = std::sqrt(0.5);
  for (BoolFn2 f : BoolFn2::all()) {
    const Mat4d rho = run_sequence(f, InitialState::pseudopure());
    EXPECT_TRUE(is_pure_state(rho));
    const int z = kZeta[f.code()];
    const oracle::V4 psi = parity(f) == Parity::Even ? oracle::V4(s, z * s, 0, 0)
                                                     : oracle::V4(s, 0, 0, z * s);
    EXPECT_LE(max_abs(rho - projector(psi)), 1e-12) << f.to_string();
  }
}

TEST(Sequence, SharedZetaTemplateMatchesPseudopure) {
  for (BoolFn2 f : BoolFn2::all()) {
    const FormMatch m = match_output_form(run_sequence(f, InitialState::pseudopure()), 1.0, 0.0);
    EXPECT_EQ(m.kind, parity(f) == Parity::Even ? FormKind::EvenForm : FormKind::OddForm);
    EXPECT_EQ(m.zeta, kZeta[f.code()]);
  }
}

TEST(Sequence, EvenThermalOutputIsInPhaseDoublet) {
  for (BoolFn2 f : BoolFn2::all()) {
    if (parity(f) != Parity::Even) continue;
    const Mat4d rho = run_sequence(f, InitialState::thermal());
    const double z = kZeta[f.code()];
    EXPECT_NEAR(rho(1, 0).real(), z / 2, 1e-12);
    EXPECT_NEAR(rho(3, 2).real(), z / 2, 1e-12);
    EXPECT_EQ(match_output_form(rho, 1.0, -1.0, FormReading::SharedZeta).kind, FormKind::NoMatch);
  }
}

TEST(Sequence, OppositeZetaReadingMatchesAllStates) {
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto& s : kStates) {
      const FormMatch m =
          match_output_form(run_sequence(f, s), s.k1, s.k2, FormReading::OppositeZeta);
      EXPECT_EQ(m.kind, parity(f) == Parity::Even ? FormKind::EvenForm : FormKind::OddForm)
          << f.to_string() << " k1=" << s.k1 << " k2=" << s.k2;
      EXPECT_EQ(m.zeta, kZeta[f.code()]);
    }
  }
}

TEST(Sequence, OddOutputsMatchTemplateForAllStates) {
  for (BoolFn2 f : BoolFn2::all()) {
    if (parity(f) != Parity::Odd) continue;
    for (const auto& s : kStates)
      EXPECT_EQ(match_output_form(run_sequence(f, s), s.k1, s.k2).kind, FormKind::OddForm);
  }
}

TEST(Sequence, LinearInInitialWeights) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> w(-3.0, 3.0);
  for (BoolFn2 f : BoolFn2::all()) {
    const Mat4d a = run_sequence(f, {1.0, 0.0});
    const Mat4d b = run_sequence(f, {0.0, 1.0});
    for (int trial = 0; trial < 5; ++trial) {
      const double k1 = w(rng), k2 = w(rng);
      EXPECT_LE(max_abs(run_sequence(f, {k1, k2}) - (k1 * a + k2 * b)), 1e-12);
    }
  }
}

TEST(Sequence, GlobalSignOfOracleIsIrrelevant) {
  for (BoolFn2 f : BoolFn2::all()) {
    SignDiagonal d = sign_diagonal(f);
    for (int& x : d) x = -x;
    PhaseOracle neg(d);
    EXPECT_LE(max_abs(run_sequence(neg, InitialState::thermal()) -
                      run_sequence(f, InitialState::thermal())),
              1e-15);
  }
}

TEST(Sequence, TwoOracleCalls) {
  for (BoolFn2 f : BoolFn2::all()) {
    PhaseOracle o(f);
    run_sequence(o, InitialState::thermal());
    EXPECT_EQ(o.calls(), 2);
    EXPECT_EQ(classify_quantum(f, InitialState::pseudopure()).oracle_calls, 2);
  }
}

TEST(Sequence, OracleApplyMatchesConjugation) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  Mat4d rho;
  for (int i = 0; i < 16; ++i) rho(i / 4, i % 4) = {n(rng), n(rng)};
  for (BoolFn2 f : BoolFn2::all()) {
    PhaseOracle o(f);
    const Mat4d u = encode_uf<double>(f);
    EXPECT_LE(max_abs(o.apply(rho) - Mat4d(u * rho * u.adjoint())), 1e-14);
  }
}

TEST(Sequence, ClassificationIndependentOfHadamardConvention) {
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto& s : kStates) {
      PhaseOracle a(f), b(f);
      const Mat4d ket = run_sequence(a, s, HadamardConvention::KetAction);
      const Mat4d shown = run_sequence(b, s, HadamardConvention::DisplayedMatrix);
      EXPECT_EQ(classify_from_readout(ket), parity(f));
      EXPECT_EQ(classify_from_readout(shown), parity(f));
    }
  }
}

TEST(Sequence, GateMatrixHasNoOracleMatrix) {
  EXPECT_THROW(gate_matrix(Gate::Oracle), Error);
  EXPECT_LE(max_abs(Mat4d(gate_matrix(Gate::H12) * gate_matrix(Gate::H12Inv)) -
                    Mat4d::Identity()),
            1e-15);
}

TEST(Overlap, EvenAndOddStatesAreNotOrthogonal) {
  const Mat4d even = run_sequence(BoolFn2::parse("0b0000"), InitialState::pseudopure());
  const Mat4d odd = run_sequence(BoolFn2::parse("0b0111"), InitialState::pseudopure());
  EXPECT_NEAR(state_overlap(even, odd), 0.25, 1e-12);
  EXPECT_NEAR(std::sqrt(state_overlap(even, odd)), 0.5, 1e-12);
  EXPECT_NEAR(state_overlap(even, even), 1.0, 1e-12);
  EXPECT_NE(classify_from_readout(even), classify_from_readout(odd));
  EXPECT_THROW(state_overlap(initial_state(InitialState::thermal()), even), NotPure);
}
