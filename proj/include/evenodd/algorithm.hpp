#pragma once

// The ideal gate-level even/odd algorithm on a mixed two-qubit state.

#include <vector>

#include "evenodd/boolfun.hpp"
#include "evenodd/coherence.hpp"
#include "evenodd/qmat.hpp"

namespace evenodd {

/// Which of the two transposed readings of the single-qubit pseudo-Hadamard
/// is used. KetAction maps |0> -> (|0>+|1>)/sqrt2, |1> -> (|1>-|0>)/sqrt2 and
/// is the one a (90)_y pulse realizes.
enum class HadamardConvention { KetAction, DisplayedMatrix };

template <typename Scalar = double>
Mat2<Scalar> pseudo_hadamard_1q(HadamardConvention convention = HadamardConvention::KetAction) {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Mat2<Scalar> h;
  if (convention == HadamardConvention::KetAction) {
    h << s, -s, s, s;
  } else {
    h << s, s, -s, s;
  }
  return h;
}

/// h(x)I, I(x)h or h(x)h.
template <typename Scalar = double>
Mat4<Scalar> pseudo_hadamard(Target target,
                             HadamardConvention convention = HadamardConvention::KetAction) {
  return on_target<Scalar>(pseudo_hadamard_1q<Scalar>(convention), target);
}

/// Weights of |00><00| and |11><11| in the initial deviation density matrix.
struct InitialState {
  double k1 = 1.0;
  double k2 = 0.0;

  static constexpr InitialState pseudopure() { return {1.0, 0.0}; }
  static constexpr InitialState thermal() { return {1.0, -1.0}; }
};

/// diag(k1, 0, 0, k2). Throws ZeroState when both weights vanish.
Mat4d initial_state(double k1, double k2);
inline Mat4d initial_state(InitialState s) { return initial_state(s.k1, s.k2); }

/// Phase oracle U_f that counts how often it is applied.
class PhaseOracle {
 public:
  explicit PhaseOracle(BoolFn2 f) : diagonal_(sign_diagonal(f)) {}
  explicit PhaseOracle(const SignDiagonal& diagonal) : diagonal_(diagonal) {}

  Mat4d matrix() const { return diagonal_matrix(diagonal_); }
  /// U_f rho U_f^dagger.
  Mat4d apply(const Mat4d& rho);
  int calls() const { return calls_; }

 private:
  SignDiagonal diagonal_;
  int calls_ = 0;
};

enum class Gate { H1, H2, H12, H1Inv, H2Inv, H12Inv, Oracle };

using GateWord = std::vector<Gate>;

/// h(1,2), U_f, h(2), U_f, [h(1,2)]^-1 in circuit (time) order.
GateWord canonical_word();

Mat4d gate_matrix(Gate g, HadamardConvention convention = HadamardConvention::KetAction);

/// Applies the word left to right; each Oracle symbol calls `oracle` once.
Mat4d run_word(const GateWord& word, PhaseOracle& oracle, const Mat4d& rho0,
               HadamardConvention convention = HadamardConvention::KetAction);

Mat4d run_sequence(PhaseOracle& oracle, InitialState init,
                   HadamardConvention convention = HadamardConvention::KetAction);
Mat4d run_sequence(BoolFn2 f, InitialState init,
                   HadamardConvention convention = HadamardConvention::KetAction);

enum class FormKind { EvenForm, OddForm, NoMatch };
enum class BlockOrder { K1Top, K2Top };

/// SharedZeta: both even-form blocks [[k, z k], [z k, k]]/2 share one sign z.
/// OppositeZeta: the block holding k1 carries z and the one holding k2
/// carries -z. The gate sequence produces the latter.
enum class FormReading { SharedZeta, OppositeZeta };

struct FormMatch {
  FormKind kind = FormKind::NoMatch;
  int zeta = 0;                           // +-1 when matched
  BlockOrder block_order = BlockOrder::K1Top;  // meaningful for EvenForm only
};

/// Tries the even templates (both signs, both block placements) then the odd
/// template diag((k1+k2)/2 at |00>,|11>) with corners z(k1-k2)/2.
FormMatch match_output_form(const Mat4d& rho, double k1, double k2,
                            FormReading reading = FormReading::SharedZeta, double tol = 1e-10);

/// Sign of the output superposition for the pseudopure input.
int zeta_of(BoolFn2 f);

/// tr(a b) for two rank-1 unit-trace projectors. Throws NotPure.
double state_overlap(const Mat4d& a, const Mat4d& b);

bool is_pure_state(const Mat4d& rho, double tol = 1e-10);

struct QuantumResult {
  Parity parity = Parity::Even;
  int oracle_calls = 0;
};

/// run_sequence followed by the spectral readout.
QuantumResult classify_quantum(BoolFn2 f, InitialState init,
                               const SpinSystemParams& params = {});

}  // namespace evenodd
