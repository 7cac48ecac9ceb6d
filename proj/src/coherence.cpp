#include "evenodd/coherence.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace evenodd {

namespace {

// m_z of qubit `q` (1 or 2) in basis state `k`.
double spin_m(int k, int q) {
  const int bit = q == 1 ? (k >> 1) & 1 : k & 1;
  return bit == 0 ? 0.5 : -0.5;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

int magnetic_number(int basis_index) {
  static constexpr std::array<int, 4> kM = {1, 0, 0, -1};
  return kM.at(std::size_t(basis_index));
}

int coherence_order(int row, int col) { return magnetic_number(row) - magnetic_number(col); }

double CoherenceProfile::total() const {
  double s = 0.0;
  for (double m : magnitude) s += m;
  return s;
}

CoherenceProfile decompose(const Mat4d& rho) {
  CoherenceProfile profile;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      profile.magnitude[std::size_t(coherence_order(r, c) + 2)] += std::abs(rho(r, c));
  return profile;
}

Eigen::Vector4d free_energies_hz(const SpinSystemParams& p) {
  Eigen::Vector4d e;
  for (int k = 0; k < 4; ++k) {
    const double m1 = spin_m(k, 1);
    const double m2 = spin_m(k, 2);
    e(k) = p.nu1 * m1 + p.nu2 * m2 + p.j * m1 * m2;
  }
  return e;
}

LineSpectrum analytic_lines(const Mat4d& rho, const SpinSystemParams& p) {
  constexpr double kSuppress = 1e-12;
  LineSpectrum lines;
  auto add = [&](double freq, Complexd amp) {
    if (std::abs(amp) >= kSuppress) lines.push_back({freq, amp});
  };
  for (int partner = 0; partner < 2; ++partner) {
    const double shift = p.j * (partner == 0 ? 0.5 : -0.5);
    // qubit 2 flips with qubit 1 held at `partner`: rho(|partner 1>, |partner 0>)
    add(p.nu2 + shift, rho(2 * partner + 1, 2 * partner));
    // qubit 1 flips with qubit 2 held at `partner`: rho(|1 partner>, |0 partner>)
    add(p.nu1 + shift, rho(2 + partner, partner));
  }
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    return a.frequency_hz < b.frequency_hz;
  });
  return lines;
}

std::vector<Complexd> simulate_fid(const Mat4d& rho, const SpinSystemParams& params,
                                   const Acquisition& acq) {
  if (!(acq.dwell > 0.0) || !std::isfinite(acq.dwell))
    throw BadAcquisition("dwell time must be positive");
  if (!is_power_of_two(acq.npoints) || acq.npoints < (1 << 6) || acq.npoints > (1 << 16))
    throw BadAcquisition("npoints must be a power of two in [64, 65536], got " +
                         std::to_string(acq.npoints));

  const Mat4d detect = on_qubit1<double>(spin_raise<double>()) +
                       on_qubit2<double>(spin_raise<double>());
  const Eigen::Vector4d energies = free_energies_hz(params);

  std::vector<Complexd> fid(std::size_t(acq.npoints));
  for (int n = 0; n < acq.npoints; ++n) {
    const double t = n * acq.dwell;
    const Mat4d u = diagonal_exp<double>(2.0 * std::numbers::pi * t * energies);
    fid[std::size_t(n)] = (u * rho * u.adjoint() * detect).trace();
  }
  return fid;
}

DftSpectrum dft_spectrum(const std::vector<Complexd>& fid, double dwell) {
  const std::size_t n = fid.size();
  std::vector<Complexd> raw;
  Eigen::FFT<double> fft;
  fft.fwd(raw, fid);

  DftSpectrum out;
  out.bin_width_hz = 1.0 / (double(n) * dwell);
  out.frequency_hz.resize(n);
  out.value.resize(n);
  // fftshift: output slot i holds raw bin (i + n/2) mod n.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (i + n / 2) % n;
    const double signed_k = k < (n + 1) / 2 ? double(k) : double(k) - double(n);
    out.frequency_hz[i] = signed_k * out.bin_width_hz;
    out.value[i] = raw[k] / double(n);
  }
  return out;
}

LineSpectrum spectrum_from_fid(const std::vector<Complexd>& fid, double dwell,
                               const PeakPicking& picking) {
  LineSpectrum lines;
  if (fid.empty()) return lines;
  const DftSpectrum s = dft_spectrum(fid, dwell);
  const std::size_t n = s.value.size();

  std::vector<double> mag(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(s.value[i]);
    peak = std::max(peak, mag[i]);
  }
  const double threshold = std::max(picking.relative * peak, picking.absolute_floor);
  for (std::size_t i = 0; i < n; ++i) {
    if (mag[i] <= threshold) continue;
    const double left = n > 1 ? mag[(i + n - 1) % n] : 0.0;
    const double right = n > 1 ? mag[(i + 1) % n] : 0.0;
    if (mag[i] > left && mag[i] >= right) lines.push_back({s.frequency_hz[i], s.value[i]});
  }
  return lines;
}

Parity classify_from_readout(const Mat4d& rho, const SpinSystemParams& params) {
  const CoherenceProfile profile = decompose(rho);
  const double threshold = 1e-6 * profile.total();

  // Each observed line is one half of a +-1 coherence pair.
  double observed = 0.0;
  for (const auto& line : analytic_lines(rho, params)) observed += 2.0 * std::abs(line.amplitude);

  const bool single = observed > threshold;
  const bool dbl = profile.double_quantum() > threshold;
  if (single && !dbl) return Parity::Even;
  if (!single && dbl) return Parity::Odd;

  std::ostringstream msg;
  msg << "readout shows " << (single ? "both" : "neither")
      << " single- and double-quantum signatures (SQ " << observed << ", DQ "
      << profile.double_quantum() << ", threshold " << threshold << ")";
  throw AmbiguousReadout(msg.str());
}

}  // namespace evenodd
