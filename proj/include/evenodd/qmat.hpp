#pragma once

// Fixed-size complex linear algebra for one and two spin-1/2 systems.
//
// Basis order for 4x4 operators is (|00>, |01>, |10>, |11>) with qubit 1 as
// the most significant (left) label. Everything here is templated on the real
// scalar type; the rest of the library instantiates `double`.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "evenodd/errors.hpp"

namespace evenodd {

template <typename Scalar>
using Mat2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

using Complexd = std::complex<double>;
using Mat2d = Mat2<double>;
using Mat4d = Mat4<double>;

/// Tolerance for propagator equivalence checks.
inline constexpr double kPropagatorTol = 1e-9;
/// Tolerance for exact algebraic identities.
inline constexpr double kAlgebraTol = 1e-12;
/// Unitarity precondition used by conjugate_evolve.
inline constexpr double kUnitaryTol = 1e-10;

/// Spin-1/2 target selector shared by gates and RF pulses.
enum class Target { Qubit1, Qubit2, Both };

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Kronecker product a (x) b; `a` acts on qubit 1.
template <typename Scalar>
Mat4<Scalar> tensor(const Mat2<Scalar>& a, const Mat2<Scalar>& b) {
  Mat4<Scalar> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
  return out;
}

template <typename Scalar>
Mat4<Scalar> on_qubit1(const Mat2<Scalar>& a) {
  return tensor<Scalar>(a, Mat2<Scalar>::Identity());
}

template <typename Scalar>
Mat4<Scalar> on_qubit2(const Mat2<Scalar>& b) {
  return tensor<Scalar>(Mat2<Scalar>::Identity(), b);
}

/// Lifts a single-spin operator: A(x)I, I(x)A, or the nonselective A(x)A.
template <typename Scalar>
Mat4<Scalar> on_target(const Mat2<Scalar>& a, Target t) {
  switch (t) {
    case Target::Qubit1:
      return on_qubit1<Scalar>(a);
    case Target::Qubit2:
      return on_qubit2<Scalar>(a);
    case Target::Both:
      break;
  }
  return tensor<Scalar>(a, a);
}

/// Sum of single-spin generators over the targeted spins, e.g. Iz1 + Iz2.
template <typename Scalar>
Mat4<Scalar> generator_on_target(const Mat2<Scalar>& g, Target t) {
  if (t == Target::Both) return on_qubit1<Scalar>(g) + on_qubit2<Scalar>(g);
  return on_target<Scalar>(g, t);
}

template <typename Derived>
typename Derived::RealScalar unitarity_residual(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return max_abs(Plain(u * u.adjoint()) - Plain::Identity(u.rows(), u.cols()));
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::RealScalar tol = kAlgebraTol) {
  return max_abs(m - m.adjoint()) <= tol;
}

/// u * rho * u^dagger. Throws NonUnitaryOperator when u is not unitary
/// within kUnitaryTol.
template <typename Scalar>
Mat4<Scalar> conjugate_evolve(const Mat4<Scalar>& rho, const Mat4<Scalar>& u) {
  const Scalar residual = unitarity_residual(u);
  if (!(residual <= Scalar(kUnitaryTol))) throw NonUnitaryOperator(double(residual));
  return u * rho * u.adjoint();
}

template <typename Scalar>
struct PhaseAlignment {
  Scalar phase = 0;     // in [0, 2pi)
  Scalar residual = 0;  // |a - e^{i phase} b|_max
};

/// Aligns `b` to `a` with the phase read off the largest-magnitude entry of
/// `b`. Throws DegenerateComparison when `b` is zero.
template <typename Scalar>
PhaseAlignment<Scalar> align_global_phase(const Mat4<Scalar>& a, const Mat4<Scalar>& b) {
  Eigen::Index r = 0, c = 0;
  const Scalar bmax = b.cwiseAbs().maxCoeff(&r, &c);
  if (bmax == Scalar(0)) throw DegenerateComparison();
  Scalar phi = std::abs(a(r, c)) == Scalar(0) ? Scalar(0) : std::arg(a(r, c) / b(r, c));
  if (phi < Scalar(0)) phi += Scalar(2) * std::numbers::pi_v<Scalar>;
  return {phi, max_abs(a - std::polar(Scalar(1), phi) * b)};
}

/// Returns phi with |a - e^{i phi} b|_max <= tol, if one exists.
template <typename Scalar>
std::optional<Scalar> equal_up_to_global_phase(const Mat4<Scalar>& a, const Mat4<Scalar>& b,
                                               Scalar tol) {
  const PhaseAlignment<Scalar> al = align_global_phase(a, b);
  if (al.residual <= tol) return al.phase;
  return std::nullopt;
}

// Spin-1/2 operators (eigenvalues +-1/2). |0> is the m = +1/2 state.

template <typename Scalar>
Mat2<Scalar> spin_x() {
  Mat2<Scalar> m;
  m << 0, 0.5, 0.5, 0;
  return m;
}

template <typename Scalar>
Mat2<Scalar> spin_y() {
  using C = std::complex<Scalar>;
  Mat2<Scalar> m;
  m << C(0), C(0, -0.5), C(0, 0.5), C(0);
  return m;
}

template <typename Scalar>
Mat2<Scalar> spin_z() {
  Mat2<Scalar> m;
  m << 0.5, 0, 0, -0.5;
  return m;
}

/// I+ = |0><1|.
template <typename Scalar>
Mat2<Scalar> spin_raise() {
  Mat2<Scalar> m;
  m << 0, 1, 0, 0;
  return m;
}

/// exp(-i flip (cos(phase) Ix + sin(phase) Iy)) in closed form.
template <typename Scalar>
Mat2<Scalar> transverse_rotation(Scalar flip, Scalar phase) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(flip / 2);
  const Scalar s = std::sin(flip / 2);
  // -i s (cos(phase) sx + sin(phase) sy); off-diagonals carry e^{-+i phase}
  Mat2<Scalar> m;
  m << C(c), C(0, -s) * std::polar(Scalar(1), -phase), C(0, -s) * std::polar(Scalar(1), phase),
      C(c);
  return m;
}

/// exp(-i theta Iz).
template <typename Scalar>
Mat2<Scalar> z_rotation(Scalar theta) {
  Mat2<Scalar> m = Mat2<Scalar>::Zero();
  m(0, 0) = std::polar(Scalar(1), -theta / 2);
  m(1, 1) = std::polar(Scalar(1), theta / 2);
  return m;
}

/// exp(-i H) for a diagonal H given by its real eigenvalues.
template <typename Scalar>
Mat4<Scalar> diagonal_exp(const Eigen::Matrix<Scalar, 4, 1>& energies) {
  Mat4<Scalar> m = Mat4<Scalar>::Zero();
  for (int k = 0; k < 4; ++k) m(k, k) = std::polar(Scalar(1), -energies(k));
  return m;
}

}  // namespace evenodd
