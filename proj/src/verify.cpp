#include "evenodd/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "evenodd/algorithm.hpp"
#include "evenodd/boolfun.hpp"
#include "evenodd/pulse.hpp"

namespace evenodd {

namespace {

// Thrown by check() to end a group with a message.
struct GroupFailure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw GroupFailure{what};
}

Mat2d random_mat2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat2d m;
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = {n(rng), n(rng)};
  return m;
}

Mat4d random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat4d m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = {n(rng), n(rng)};
  return (m + m.adjoint()) / 2.0;
}

Eigen::Vector4d sorted_eigenvalues(const Mat4d& h) {
  Eigen::SelfAdjointEigenSolver<Mat4d> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

// Exhaustive search for diag(a) (x) diag(b) = s * diag(d) over +-1 factors.
bool separable_by_search(const SignDiagonal& d) {
  for (int mask = 0; mask < 32; ++mask) {
    const int a0 = mask & 1 ? -1 : 1, a1 = mask & 2 ? -1 : 1;
    const int b0 = mask & 4 ? -1 : 1, b1 = mask & 8 ? -1 : 1;
    const int s = mask & 16 ? -1 : 1;
    if (a0 * b0 == s * d[0] && a0 * b1 == s * d[1] && a1 * b0 == s * d[2] &&
        a1 * b1 == s * d[3])
      return true;
  }
  return false;
}

const std::vector<InitialState>& presets() {
  static const std::vector<InitialState> p = {InitialState::pseudopure(),
                                              InitialState::thermal()};
  return p;
}

void group_qmat() {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2d a = random_mat2(rng), b = random_mat2(rng);
    const Complexd alpha(std::normal_distribution<double>()(rng), 0.7);
    check(max_abs(tensor<double>(alpha * a, b) - alpha * tensor<double>(a, b)) <= 1e-12,
          "tensor is not bilinear");
  }
  for (const auto& e : catalog()) {
    const Mat4d u = diagonal_matrix(e.diagonal);
    for (int trial = 0; trial < 4; ++trial) {
      const Mat4d rho = random_hermitian(rng);
      const Mat4d out = conjugate_evolve<double>(rho, u);
      check(is_hermitian(out, 1e-10), "evolution broke Hermiticity");
      check(std::abs(out.trace() - rho.trace()) <= 1e-10, "evolution changed the trace");
      check((sorted_eigenvalues(out) - sorted_eigenvalues(rho)).cwiseAbs().maxCoeff() <= 1e-10,
            "evolution changed the spectrum");
    }
  }
  const Mat4d m = tensor<double>(random_mat2(rng), random_mat2(rng));
  const Complexd p1 = std::polar(1.0, 0.4), p2 = std::polar(1.0, -2.1);
  check(equal_up_to_global_phase<double>(m, m, 1e-9).has_value(), "phase match not reflexive");
  check(equal_up_to_global_phase<double>(Mat4d(p1 * m), m, 1e-9).has_value() &&
            equal_up_to_global_phase<double>(m, Mat4d(p1 * m), 1e-9).has_value(),
        "phase match not symmetric");
  check(equal_up_to_global_phase<double>(Mat4d(p2 * p1 * m), m, 1e-9).has_value(),
        "phase match not transitive");
}

void group_boolfun() {
  std::set<SignDiagonal> seen;
  int separable = 0;
  for (const auto& e : catalog()) {
    seen.insert(e.diagonal);
    const Mat4d u = diagonal_matrix(e.diagonal);
    const bool sep = is_separable(u);
    check(sep == separable_by_search(e.diagonal), "shortcut disagrees with factor search for U" +
                                                      std::to_string(e.index));
    check(sep == (e.parity == Parity::Even), "separability does not track parity for U" +
                                                 std::to_string(e.index));
    separable += sep;
  }
  check(seen.size() == 16, "catalog diagonals are not distinct");
  check(separable == 8, "expected 8 separable oracles");
  std::set<int> indices;
  for (BoolFn2 f : BoolFn2::all()) {
    const Mat4d u = encode_uf<double>(f);
    check(max_abs(Mat4d(u * u) - Mat4d::Identity()) <= 1e-12, "U_f is not involutory");
    check(max_abs(u - u.adjoint()) <= 1e-12, "U_f is not Hermitian");
    indices.insert(catalog_entry_for(f).index);
  }
  check(indices.size() == 16, "functions do not map one-to-one onto the catalog");
}

void group_output_form() {
  const std::vector<InitialState> states = {InitialState::pseudopure(),
                                            InitialState::thermal(), {2.0, 3.0}};
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto& s : states) {
      const Mat4d rho = run_sequence(f, s);
      const FormMatch m = match_output_form(rho, s.k1, s.k2, FormReading::OppositeZeta);
      const FormKind want = parity(f) == Parity::Even ? FormKind::EvenForm : FormKind::OddForm;
      check(m.kind == want, "output of " + f.to_string() + " does not have the " +
                                std::string(to_string(parity(f))) + " form");
      check(rho == run_sequence(f, s), "run_sequence is not deterministic");
    }
    // U_f -> -U_f leaves the output unchanged.
    SignDiagonal neg = sign_diagonal(f);
    for (int& d : neg) d = -d;
    PhaseOracle flipped(neg);
    check(max_abs(run_sequence(flipped, InitialState::thermal()) -
                  run_sequence(f, InitialState::thermal())) <= 1e-12,
          "output depends on the global sign of U_f");
    const Mat4d pure = run_sequence(f, InitialState::pseudopure());
    check(is_pure_state(pure), "pseudopure input did not stay pure for " + f.to_string());
  }
}

void group_oracle_calls() {
  for (BoolFn2 f : BoolFn2::all()) {
    PhaseOracle oracle(f);
    run_sequence(oracle, InitialState::thermal());
    check(oracle.calls() == 2, "quantum run used " + std::to_string(oracle.calls()) + " calls");
    check(classical_classify(f).calls == 4, "classical run did not use 4 calls");
  }
}

void group_readout(const SpinSystemParams& spin) {
  for (BoolFn2 f : BoolFn2::all()) {
    for (const auto& s : presets()) {
      const Mat4d rho = run_sequence(f, s);
      check(classify_from_readout(rho, spin) == parity(f),
            "readout misclassifies " + f.to_string());
      const CoherenceProfile prof = decompose(rho);
      for (int p = 1; p <= 2; ++p)
        check(std::abs(prof.at(p) - prof.at(-p)) <= 1e-12, "coherence profile not symmetric");
      if (parity(f) == Parity::Odd && s.k2 == -1.0) {
        check(prof.single_quantum() < 1e-12, "odd thermal output has single-quantum terms");
        check(std::abs(std::abs(rho(0, 3)) - 1.0) <= 1e-12, "odd thermal corner is not 1");
      }
    }
  }
}

void group_fid(const SpinSystemParams& spin) {
  const Acquisition acq;
  const double bin = 1.0 / (acq.npoints * acq.dwell);
  for (const auto& e : catalog()) {
    const BoolFn2 f = function_for(e);
    for (const auto& s : presets()) {
      const Mat4d rho = run_sequence(f, s);
      const LineSpectrum expect = analytic_lines(rho, spin);
      const LineSpectrum got = spectrum_from_fid(simulate_fid(rho, spin, acq), acq.dwell);
      check(got.size() == expect.size(), "FID spectrum line count differs for U" +
                                             std::to_string(e.index));
      for (std::size_t k = 0; k < got.size(); ++k) {
        check(std::abs(got[k].frequency_hz - expect[k].frequency_hz) <= bin,
              "FID line frequency off by more than one bin");
        check((got[k].amplitude.real() > 0) == (expect[k].amplitude.real() > 0),
              "FID line sign differs");
      }
    }
  }
}

void group_composite_z() {
  for (Target t : {Target::Qubit1, Target::Qubit2, Target::Both}) {
    for (int k = 1; k <= 16; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double theta = sign * k * std::numbers::pi / 8;
        const Mat4d direct = on_target<double>(z_rotation<double>(theta), t);
        const Mat4d pulses = program_propagator(composite_z(theta, t), SpinSystemParams{});
        check(equal_up_to_global_phase<double>(pulses, direct, 1e-9).has_value(),
              "composite-z mismatch at k=" + std::to_string(k));
      }
    }
  }
}

void group_compilation(const VerifyOptions& o) {
  for (Frame frame : {Frame::DoublyRotating, Frame::HardwareFaithful}) {
    for (const GateSymbol& g : supported_gates()) {
      const CompilationReport r = verify_compilation(g, o.spin, {frame, !o.drop_refocusing});
      check(unitarity_residual(program_propagator(r.program, o.spin)) < 1e-10,
            g.name() + " propagator is not unitary");
    }
  }
}

void group_offset_independence(const VerifyOptions& o) {
  for (int i = 9; i <= 16; ++i) {
    const GateSymbol g = GateSymbol::uf(i);
    check(offset_dependence(g, o.spin, !o.drop_refocusing) <= 1e-9,
          g.name() + " hardware propagator depends on the offsets");
    check(offset_dependence(g, o.spin, false) > 1e-9,
          "removing the refocusing pulse did not expose offset dependence for " + g.name());
  }
}

void group_enumerate_agreement(const VerifyOptions& o) {
  for (BoolFn2 f : BoolFn2::all()) {
    const int index = catalog_entry_for(f).index;
    SignDiagonal d = sign_diagonal(f);
    if (o.flip_uf_sign && *o.flip_uf_sign == index) d[0] = -d[0];
    for (const auto& s : presets()) {
      PhaseOracle oracle(d);
      const Parity ideal = classify_from_readout(run_sequence(oracle, s), o.spin);
      check(ideal == classical_classify(f).parity,
            "ideal quantum parity disagrees with classical for " + f.to_string());
      for (Frame frame : {Frame::DoublyRotating, Frame::HardwareFaithful}) {
        const Mat4d rho = run_pulse_algorithm(f, s, o.spin, {frame, !o.drop_refocusing});
        check(classify_from_readout(rho, o.spin) == ideal,
              "pulse-level parity disagrees with ideal for " + f.to_string());
      }
    }
  }
}

}  // namespace

std::vector<GroupResult> run_verification(const VerifyOptions& options) {
  const std::vector<std::pair<std::string, std::function<void()>>> groups = {
      {"qmat-identities", group_qmat},
      {"separability", group_boolfun},
      {"output-form", group_output_form},
      {"oracle-calls", group_oracle_calls},
      {"readout", [&] { group_readout(options.spin); }},
      {"fid-vs-analytic", [&] { group_fid(options.spin); }},
      {"composite-z", group_composite_z},
      {"compilation", [&] { group_compilation(options); }},
      {"offset-independence", [&] { group_offset_independence(options); }},
      {"enumerate-agreement", [&] { group_enumerate_agreement(options); }},
  };
  std::vector<GroupResult> results;
  for (const auto& [name, body] : groups) {
    GroupResult r{name, true, "ok"};
    try {
      body();
    } catch (const GroupFailure& f) {
      r = {name, false, f.what};
    } catch (const std::exception& ex) {
      r = {name, false, ex.what()};
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace evenodd
