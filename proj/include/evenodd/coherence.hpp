#pragma once

// Readout of a two-spin deviation density matrix: coherence orders, stick
// spectra, free-induction-decay simulation and the spectral parity test.

#include <array>
#include <vector>

#include "evenodd/boolfun.hpp"
#include "evenodd/qmat.hpp"

namespace evenodd {

/// Offsets of both spins in the rotating frame and their scalar coupling.
struct SpinSystemParams {
  double nu1 = 100.0;   // Hz
  double nu2 = -150.0;  // Hz
  double j = 6.1;       // Hz
};

/// Total magnetic number in single-spin quanta: |00> -> +1, |01>,|10> -> 0,
/// |11> -> -1.
int magnetic_number(int basis_index);

/// M(row) - M(col), in [-2, 2].
int coherence_order(int row, int col);

/// Sum of |entry| per coherence order p = -2..2.
struct CoherenceProfile {
  std::array<double, 5> magnitude{};

  double at(int p) const { return magnitude[std::size_t(p + 2)]; }
  double single_quantum() const { return at(-1) + at(1); }
  double double_quantum() const { return at(-2) + at(2); }
  double total() const;
};

CoherenceProfile decompose(const Mat4d& rho);

struct SpectralLine {
  double frequency_hz = 0.0;
  Complexd amplitude;
};

/// Lines sorted by ascending frequency.
using LineSpectrum = std::vector<SpectralLine>;

/// Diagonal of the free Hamiltonian divided by 2*pi (Hz), in basis order:
/// nu1*Iz1 + nu2*Iz2 + j*Iz1*Iz2.
Eigen::Vector4d free_energies_hz(const SpinSystemParams& params);

/// One line per nonzero single-quantum element seen by I1+ + I2+ detection.
/// A qubit-2 transition sits at nu2 + j/2 when qubit 1 is |0> and at
/// nu2 - j/2 when it is |1>; qubit-1 lines are placed the same way.
LineSpectrum analytic_lines(const Mat4d& rho, const SpinSystemParams& params);

struct Acquisition {
  double dwell = 1e-3;  // s
  int npoints = 4096;   // power of two in [2^6, 2^16]
};

/// s(t_n) = tr(U(t_n) rho U(t_n)^dagger (I1+ + I2+)), t_n = n * dwell, under
/// the free Hamiltonian with no relaxation. Throws BadAcquisition.
std::vector<Complexd> simulate_fid(const Mat4d& rho, const SpinSystemParams& params,
                                   const Acquisition& acq = {});

/// Normalized DFT, bins ordered by ascending frequency over [-1/(2 dwell),
/// 1/(2 dwell)).
struct DftSpectrum {
  std::vector<double> frequency_hz;
  std::vector<Complexd> value;
  double bin_width_hz = 0.0;
};

DftSpectrum dft_spectrum(const std::vector<Complexd>& fid, double dwell);

struct PeakPicking {
  double relative = 1e-6;
  double absolute_floor = 1e-9;
};

/// Local maxima of |DFT| above max(relative * peak, absolute_floor).
LineSpectrum spectrum_from_fid(const std::vector<Complexd>& fid, double dwell,
                               const PeakPicking& picking = {});

/// Even when the observed single-quantum signal exceeds 1e-6 of the
/// entrywise 1-norm, Odd when only double-quantum coherence is present.
/// Anything else raises AmbiguousReadout.
Parity classify_from_readout(const Mat4d& rho, const SpinSystemParams& params = {});

}  // namespace evenodd
