#pragma once

// Command implementations behind the `evenodd` executable. Each command
// writes to the given streams and returns the process exit code so it can be
// driven from tests.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "evenodd/algorithm.hpp"
#include "evenodd/boolfun.hpp"
#include "evenodd/coherence.hpp"
#include "evenodd/pulse.hpp"
#include "evenodd/verify.hpp"

namespace evenodd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

enum class InitKind { Thermal, Pseudopure, Custom };
enum class Mode { Ideal, Pulse };

struct RunConfig {
  std::optional<BoolFn2> function;
  std::optional<int> index;
  InitKind init = InitKind::Thermal;
  std::optional<double> k1;
  std::optional<double> k2;
  Mode mode = Mode::Ideal;
  Frame frame = Frame::DoublyRotating;
  SpinSystemParams spin;
  Acquisition acquisition;
  std::string out;
  bool json = false;
  std::string qubit1_label = "19F";
  std::string qubit2_label = "1H";
};

/// Applies one key/value pair using the flag names without dashes
/// ("function", "init", "nu1", ...). Throws ParseError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a key = value file into `cfg`. Throws ParseError.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Throws ParseError when the init selection is inconsistent.
InitialState resolve_init(const RunConfig& cfg);
/// --function or --index; throws ParseError when neither or both are set.
BoolFn2 resolve_function(const RunConfig& cfg);

struct ClassificationRecord {
  BoolFn2 function;
  int catalog_index = 0;
  SubClass subclass;
  Parity classical = Parity::Even;
  Parity quantum = Parity::Even;
  int classical_calls = 0;
  int quantum_calls = 0;
  int zeta = 0;
  bool separable = false;
  CoherenceProfile profile;
};

ClassificationRecord make_record(BoolFn2 f, const RunConfig& cfg);
nlohmann::ordered_json to_json(const ClassificationRecord& r);

/// Final deviation density matrix for the configured pipeline.
Mat4d simulate(BoolFn2 f, const RunConfig& cfg);

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compile(const std::string& gate, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

struct SpectrumOptions {
  bool from_fid = false;
  std::string fid_out;
};

int cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv, layers defaults < $EVENODD_CONFIG (or --config) < flags, and
/// dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evenodd::cli
