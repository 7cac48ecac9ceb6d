#include "evenodd/algorithm.hpp"

#include <cmath>

namespace evenodd {

Mat4d initial_state(double k1, double k2) {
  if (k1 == 0.0 && k2 == 0.0) throw ZeroState();
  Mat4d rho = Mat4d::Zero();
  rho(0, 0) = k1;
  rho(3, 3) = k2;
  return rho;
}

Mat4d PhaseOracle::apply(const Mat4d& rho) {
  ++calls_;
  // Diagonal conjugation: rho_rc -> d_r d_c rho_rc.
  Mat4d out = rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) *= double(diagonal_[r] * diagonal_[c]);
  return out;
}

GateWord canonical_word() {
  return {Gate::H12, Gate::Oracle, Gate::H2, Gate::Oracle, Gate::H12Inv};
}

Mat4d gate_matrix(Gate g, HadamardConvention convention) {
  switch (g) {
    case Gate::H1:
      return pseudo_hadamard<double>(Target::Qubit1, convention);
    case Gate::H2:
      return pseudo_hadamard<double>(Target::Qubit2, convention);
    case Gate::H12:
      return pseudo_hadamard<double>(Target::Both, convention);
    case Gate::H1Inv:
      return pseudo_hadamard<double>(Target::Qubit1, convention).adjoint();
    case Gate::H2Inv:
      return pseudo_hadamard<double>(Target::Qubit2, convention).adjoint();
    case Gate::H12Inv:
      return pseudo_hadamard<double>(Target::Both, convention).adjoint();
    case Gate::Oracle:
      break;
  }
  throw Error("the oracle has no fixed matrix");
}

Mat4d run_word(const GateWord& word, PhaseOracle& oracle, const Mat4d& rho0,
               HadamardConvention convention) {
  Mat4d rho = rho0;
  for (Gate g : word) {
    rho = g == Gate::Oracle ? oracle.apply(rho)
                            : conjugate_evolve<double>(rho, gate_matrix(g, convention));
  }
  return rho;
}

Mat4d run_sequence(PhaseOracle& oracle, InitialState init, HadamardConvention convention) {
  return run_word(canonical_word(), oracle, initial_state(init), convention);
}

Mat4d run_sequence(BoolFn2 f, InitialState init, HadamardConvention convention) {
  PhaseOracle oracle(f);
  return run_sequence(oracle, init, convention);
}

namespace {

Mat4d even_template(double top, int top_zeta, double bottom, int bottom_zeta) {
  Mat4d t = Mat4d::Zero();
  t(0, 0) = t(1, 1) = top / 2;
  t(0, 1) = t(1, 0) = top_zeta * top / 2;
  t(2, 2) = t(3, 3) = bottom / 2;
  t(2, 3) = t(3, 2) = bottom_zeta * bottom / 2;
  return t;
}

Mat4d odd_template(double k1, double k2, int zeta) {
  Mat4d t = Mat4d::Zero();
  t(0, 0) = t(3, 3) = (k1 + k2) / 2;
  t(0, 3) = t(3, 0) = zeta * (k1 - k2) / 2;
  return t;
}

}  // namespace

FormMatch match_output_form(const Mat4d& rho, double k1, double k2, FormReading reading,
                            double tol) {
  for (int zeta : {1, -1}) {
    const int k2_zeta = reading == FormReading::SharedZeta ? zeta : -zeta;
    if (max_abs(rho - even_template(k1, zeta, k2, k2_zeta)) <= tol)
      return {FormKind::EvenForm, zeta, BlockOrder::K1Top};
    if (max_abs(rho - even_template(k2, k2_zeta, k1, zeta)) <= tol)
      return {FormKind::EvenForm, zeta, BlockOrder::K2Top};
  }
  for (int zeta : {1, -1}) {
    if (max_abs(rho - odd_template(k1, k2, zeta)) <= tol) return {FormKind::OddForm, zeta};
  }
  return {};
}

int zeta_of(BoolFn2 f) {
  const InitialState init = InitialState::pseudopure();
  const FormMatch m = match_output_form(run_sequence(f, init), init.k1, init.k2);
  if (m.kind == FormKind::NoMatch) throw Error("pseudopure output of " + f.to_string() +
                                              " matches neither output form");
  return m.zeta;
}

bool is_pure_state(const Mat4d& rho, double tol) {
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return max_abs(Mat4d(rho * rho) - rho) <= tol;
}

double state_overlap(const Mat4d& a, const Mat4d& b) {
  if (!is_pure_state(a) || !is_pure_state(b)) throw NotPure();
  return (a * b).trace().real();
}

QuantumResult classify_quantum(BoolFn2 f, InitialState init, const SpinSystemParams& params) {
  PhaseOracle oracle(f);
  const Mat4d rho = run_sequence(oracle, init);
  return {classify_from_readout(rho, params), oracle.calls()};
}

}  // namespace evenodd
