#include "evenodd/boolfun.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace evenodd {

BoolFn2 BoolFn2::from_outputs(const std::array<int, 4>& outputs) {
  unsigned code = 0;
  for (int x = 0; x < 4; ++x) {
    if (outputs[x] != 0 && outputs[x] != 1)
      throw ParseError("truth-table entries must be 0 or 1");
    code |= unsigned(outputs[x]) << x;
  }
  return from_code(code);
}

BoolFn2 BoolFn2::from_code(unsigned code) {
  if (code > 15) throw ParseError("truth-table code out of range: " + std::to_string(code));
  BoolFn2 f;
  f.bits_ = std::uint8_t(code);
  return f;
}

BoolFn2 BoolFn2::parse(std::string_view text) {
  std::string_view body = text;
  if (body.starts_with("0b") || body.starts_with("0B")) body.remove_prefix(2);
  if (body.size() != 4)
    throw ParseError("truth table must have 4 binary digits: '" + std::string(text) + "'");
  std::array<int, 4> outputs{};
  for (int x = 0; x < 4; ++x) {
    if (body[x] != '0' && body[x] != '1')
      throw ParseError("truth table must have 4 binary digits: '" + std::string(text) + "'");
    outputs[x] = body[x] - '0';
  }
  return from_outputs(outputs);
}

std::array<BoolFn2, 16> BoolFn2::all() {
  std::array<BoolFn2, 16> out;
  for (unsigned c = 0; c < 16; ++c) out[c] = from_code(c);
  return out;
}

int BoolFn2::ones() const { return std::popcount(unsigned(bits_)); }

std::string BoolFn2::to_string() const {
  std::string s = "0b";
  for (int x = 0; x < 4; ++x) s += char('0' + (*this)(x));
  return s;
}

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity(BoolFn2 f) { return f.ones() % 2 == 0 ? Parity::Even : Parity::Odd; }

SubClass subclass(BoolFn2 f) { return {f.ones(), 4 - f.ones()}; }

std::string to_string(const SubClass& s) {
  return "[" + std::to_string(s.ones) + "," + std::to_string(s.zeros) + "]";
}

SignDiagonal sign_diagonal(BoolFn2 f) {
  SignDiagonal d{};
  for (int x = 0; x < 4; ++x) d[x] = f(x) ? -1 : 1;
  return d;
}

Mat4d diagonal_matrix(const SignDiagonal& d) {
  Mat4d u = Mat4d::Zero();
  for (int x = 0; x < 4; ++x) u(x, x) = double(d[x]);
  return u;
}

SignDiagonal diagonal_signs(const Mat4d& u) {
  SignDiagonal d{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != c && std::abs(u(r, c)) > kAlgebraTol) throw NotDiagonalPmOne();
    }
    const Complexd v = u(r, r);
    if (std::abs(v - 1.0) <= kAlgebraTol) {
      d[r] = 1;
    } else if (std::abs(v + 1.0) <= kAlgebraTol) {
      d[r] = -1;
    } else {
      throw NotDiagonalPmOne();
    }
  }
  return d;
}

bool is_separable(const Mat4d& u) {
  const SignDiagonal d = diagonal_signs(u);
  return d[0] * d[3] == d[1] * d[2];
}

namespace {

std::vector<UfCatalogEntry> build_catalog() {
  const std::array<SignDiagonal, 4> even = {{
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, 1, -1},
      {1, -1, -1, 1},
  }};
  const std::array<SignDiagonal, 4> odd = {{
      {1, -1, -1, -1},
      {-1, 1, -1, -1},
      {-1, -1, 1, -1},
      {-1, -1, -1, 1},
  }};
  auto negated = [](SignDiagonal d) {
    for (int& s : d) s = -s;
    return d;
  };
  std::vector<UfCatalogEntry> out;
  for (const auto& d : even) out.push_back({int(out.size()) + 1, d, Parity::Even});
  for (const auto& d : even) out.push_back({int(out.size()) + 1, negated(d), Parity::Even});
  for (const auto& d : odd) out.push_back({int(out.size()) + 1, d, Parity::Odd});
  for (const auto& d : odd) out.push_back({int(out.size()) + 1, negated(d), Parity::Odd});
  return out;
}

}  // namespace

const std::vector<UfCatalogEntry>& catalog() {
  static const std::vector<UfCatalogEntry> entries = build_catalog();
  return entries;
}

const UfCatalogEntry& catalog_entry(int index) {
  if (index < 1 || index > 16)
    throw ParseError("catalog index must be in 1..16, got " + std::to_string(index));
  return catalog()[std::size_t(index - 1)];
}

const UfCatalogEntry& catalog_entry_for(BoolFn2 f) {
  const SignDiagonal d = sign_diagonal(f);
  for (const auto& e : catalog()) {
    if (e.diagonal == d) return e;
  }
  // Unreachable: the catalog covers all sixteen sign patterns.
  throw Error("no catalog entry for " + f.to_string());
}

BoolFn2 function_for(const UfCatalogEntry& entry) {
  std::array<int, 4> outputs{};
  for (int x = 0; x < 4; ++x) outputs[x] = entry.diagonal[x] < 0 ? 1 : 0;
  return BoolFn2::from_outputs(outputs);
}

ClassicalResult classical_classify(BoolFn2 f) {
  CountingFunction oracle(f);
  int sum = 0;
  for (int x = 0; x < 4; ++x) sum += oracle(x);
  return {sum % 2 == 0 ? Parity::Even : Parity::Odd, oracle.calls()};
}

}  // namespace evenodd
