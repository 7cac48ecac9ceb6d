#pragma once

// Boolean functions {0,1}^2 -> {0,1}, their phase-oracle encodings, and the
// sixteen-entry U_f catalog.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evenodd/qmat.hpp"

namespace evenodd {

/// Truth table over inputs (00, 01, 10, 11), the same order as the Mat4 basis.
class BoolFn2 {
 public:
  constexpr BoolFn2() = default;

  /// Outputs listed in basis order; each entry must be 0 or 1.
  static BoolFn2 from_outputs(const std::array<int, 4>& outputs);
  /// Bit i of `code` is f(input i).
  static BoolFn2 from_code(unsigned code);
  /// "0bxxxx" read left to right as f(00) f(01) f(10) f(11). The "0b"
  /// prefix is optional.
  static BoolFn2 parse(std::string_view text);

  /// All sixteen functions ordered by code().
  static std::array<BoolFn2, 16> all();

  int operator()(int input) const { return (bits_ >> input) & 1; }
  std::uint8_t code() const { return bits_; }
  int ones() const;
  std::string to_string() const;

  friend bool operator==(BoolFn2, BoolFn2) = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class Parity { Even, Odd };

std::string_view to_string(Parity p);

struct SubClass {
  int ones = 0;
  int zeros = 0;
  friend bool operator==(const SubClass&, const SubClass&) = default;
};

Parity parity(BoolFn2 f);
SubClass subclass(BoolFn2 f);
/// "[ones,zeros]".
std::string to_string(const SubClass& s);

/// Four +-1 signs; the diagonal of a phase oracle.
using SignDiagonal = std::array<int, 4>;

SignDiagonal sign_diagonal(BoolFn2 f);
Mat4d diagonal_matrix(const SignDiagonal& d);

/// diag((-1)^f(00), (-1)^f(01), (-1)^f(10), (-1)^f(11)).
template <typename Scalar = double>
Mat4<Scalar> encode_uf(BoolFn2 f) {
  Mat4<Scalar> u = Mat4<Scalar>::Zero();
  for (int x = 0; x < 4; ++x) u(x, x) = f(x) ? Scalar(-1) : Scalar(1);
  return u;
}

/// True iff u is A(x)B up to global phase. Requires u diagonal with +-1
/// entries; for that family this is d00*d11 == d01*d10.
bool is_separable(const Mat4d& u);

/// Reads the +-1 diagonal out of a matrix, or throws NotDiagonalPmOne.
SignDiagonal diagonal_signs(const Mat4d& u);

struct UfCatalogEntry {
  int index = 0;  // 1..16
  SignDiagonal diagonal{};
  Parity parity = Parity::Even;
};

/// U1..U16. U5..U8 = -U1..-U4 and U13..U16 = -U9..-U12.
const std::vector<UfCatalogEntry>& catalog();
const UfCatalogEntry& catalog_entry(int index);
/// The unique entry whose diagonal is +-encode_uf(f).
const UfCatalogEntry& catalog_entry_for(BoolFn2 f);
/// The function whose encoding equals the entry's diagonal exactly.
BoolFn2 function_for(const UfCatalogEntry& entry);

/// Evaluates a function and counts how many times it was queried.
class CountingFunction {
 public:
  explicit CountingFunction(BoolFn2 f) : f_(f) {}
  int operator()(int input) {
    ++calls_;
    return f_(input);
  }
  int calls() const { return calls_; }

 private:
  BoolFn2 f_;
  int calls_ = 0;
};

struct ClassicalResult {
  Parity parity = Parity::Even;
  int calls = 0;
};

/// Exhaustive evaluation at all four inputs.
ClassicalResult classical_classify(BoolFn2 f);

}  // namespace evenodd
