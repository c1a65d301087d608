#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gl3 {

/// Element of F_{p^(s*m)}, encoded as base-p digits of its coordinate vector
/// with respect to the power basis of the defining modulus (LSB first).
using felem = std::uint32_t;

/// Arithmetic context for F_{q^m} with q = p^s, built on the lexicographically
/// smallest irreducible modulus of degree s*m over F_p.  The relative
/// Frobenius is x -> x^q; its fixed set is the copy of F_q inside F_{q^m}.
///
/// Immutable after construction; all operations are pure.
class FieldCtx {
public:
  FieldCtx(int p, int s, int m);

  int p() const { return p_; }
  int s() const { return s_; }
  int m() const { return m_; }
  int degree() const { return deg_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return order_; }

  /// Monic modulus, ascending coefficients, length degree()+1.
  const std::vector<int>& modulus() const { return modulus_; }

  felem zero() const { return 0; }
  felem one() const { return 1; }

  felem add(felem a, felem b) const;
  felem sub(felem a, felem b) const;
  felem neg(felem a) const;
  felem mul(felem a, felem b) const;
  felem inv(felem a) const; // throws std::domain_error on zero
  felem pow(felem a, std::uint64_t e) const;

  /// a -> a^{q^k}
  felem frobenius(felem a, int k = 1) const;

  bool in_base_field(felem a) const { return frobenius(a) == a; }

  /// The q elements fixed by Frobenius, sorted by code.
  const std::vector<felem>& base_field_elems() const { return base_elems_; }

  felem from_digits(const std::vector<int>& digits) const;
  std::vector<int> digits(felem a) const;
  std::string to_string(felem a) const;

  /// Uniform element from a raw 64-bit draw.
  felem sample(std::uint64_t r) const { return felem(r % order_); }

private:
  int p_, s_, m_, deg_;
  std::uint64_t q_, order_;
  std::vector<int> modulus_;
  std::vector<felem> exp_; // exp_[i] = g^i, i in [0, order-2]
  std::vector<std::uint32_t> log_;
  std::vector<felem> base_elems_;

  felem mul_poly(felem a, felem b) const; // table-free, used at setup
};

} // namespace gl3
