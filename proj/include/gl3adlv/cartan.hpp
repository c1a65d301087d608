#pragma once

#include <array>
#include <string>

#include "gl3adlv/latmat.hpp"

namespace gl3 {

/// Dominant cocharacter of the diagonal torus: m[0] >= m[1] >= m[2].
struct Cocharacter {
  std::array<int, 3> m{0, 0, 0};

  Cocharacter() = default;
  Cocharacter(int a, int b, int c) : m{a, b, c} {}
  explicit Cocharacter(const std::array<int, 3>& v) : m(v) {}

  bool dominant() const { return m[0] >= m[1] && m[1] >= m[2]; }
  int sum() const { return m[0] + m[1] + m[2]; }
  bool operator==(const Cocharacter&) const = default;
  bool operator<(const Cocharacter& o) const { return m < o.m; }
  Cocharacter shifted(int c) const { return {m[0] + c, m[1] + c, m[2] + c}; }
  /// lambda -> -w0(lambda), the dominant representative of the inverse
  Cocharacter negated_reversed() const { return {-m[2], -m[1], -m[0]}; }
  std::string str() const;
};

/// Cocharacter modulo central integral shifts, normalized so the entry sum
/// lies in {0, 1, 2}.
struct CochClass {
  std::array<int, 3> e{0, 0, 0};

  static CochClass of(const std::array<int, 3>& v);
  static CochClass of(const Cocharacter& c) { return of(c.m); }

  Cocharacter rep() const { return Cocharacter(e); }
  int sum() const { return e[0] + e[1] + e[2]; }
  bool operator==(const CochClass&) const = default;
  bool operator<(const CochClass& o) const { return e < o.e; }
  CochClass inverse() const { return of(std::array<int, 3>{-e[2], -e[1], -e[0]}); }
  std::string str() const;
};

/// inv(x, y): the dominant cocharacter with x^{-1} y in K t^lambda K.
Cocharacter inv(const Mat3& x, const Mat3& y);

/// Relative position of two homothety classes, computed at the given
/// precision; throws InsufficientPrecision when the windows run out.
CochClass inv_prime_at(const Vertex& v, const Vertex& w, int prec);

/// Same with internal precision retry.
CochClass inv_prime(const Vertex& v, const Vertex& w);

/// Dominance order on cocharacters of equal sum.
bool dominance_leq(const Cocharacter& a, const Cocharacter& b);

/// Induced order on classes: holds when some (necessarily unique) central
/// shift equalizing the sums puts the representatives in dominance order.
bool class_leq(const CochClass& a, const CochClass& b);

} // namespace gl3
