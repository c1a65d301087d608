#pragma once

#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "gl3adlv/field.hpp"

namespace gl3 {

/// Raised when a computation needs coefficients beyond the tracked window.
/// Callers retry with doubled precision, up to the global cap.
class InsufficientPrecision : public std::exception {
public:
  explicit InsufficientPrecision(int prec, std::string what = "window exhausted")
      : prec_(prec), what_(std::move(what)) {}
  int prec() const { return prec_; }
  const char* what() const noexcept override { return what_.c_str(); }

private:
  int prec_;
  std::string what_;
};

constexpr int kPrecisionCap = 64;

/// Retry helper: calls fn(prec), doubling prec on InsufficientPrecision until
/// the cap is exceeded.
template <class Fn>
auto with_precision_retry(int prec0, Fn&& fn) {
  int prec = prec0 < 1 ? 1 : prec0;
  for (;;) {
    try {
      return fn(prec);
    } catch (const InsufficientPrecision&) {
      if (prec >= kPrecisionCap) throw;
      prec = std::min(prec * 2, kPrecisionCap);
    }
  }
}

/// Truncated Laurent series over F_{q^m}: coefficients are exact on the
/// window [lo, prec); exponents below lo carry coefficient zero; exponents at
/// or above prec are unknown.  Canonical zero has an empty coefficient vector
/// and lo == prec.  Nonzero series are normalized so the lowest stored
/// coefficient is nonzero, hence lo equals the valuation.
class TSeries {
public:
  TSeries(const FieldCtx& F, int prec); // zero to precision prec
  static TSeries monomial(const FieldCtx& F, int exp, felem c, int prec);
  static TSeries from_terms(const FieldCtx& F,
                            const std::vector<std::pair<int, felem>>& terms,
                            int prec);

  const FieldCtx& field() const { return *F_; }
  int lo() const { return lo_; }
  int prec() const { return prec_; }
  bool zero_window() const { return c_.empty(); }

  /// Coefficient at exponent e; throws InsufficientPrecision if e >= prec.
  felem coeff(int e) const;

  /// Valuation; throws InsufficientPrecision when the window is all zero.
  int valuation() const;

  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator*(const TSeries& o) const;
  TSeries negated() const;
  TSeries invert() const;   // throws InsufficientPrecision on zero window
  TSeries sigma(int k = 1) const;
  TSeries shifted(int k) const;          // multiply by t^k
  TSeries truncated(int new_prec) const; // shrink window
  TSeries scaled(felem c) const;

  /// Equality of coefficients on the intersection of windows.
  bool equals_window(const TSeries& o) const;

  /// Exact terms visible in the window, sorted by exponent.
  std::vector<std::pair<int, felem>> terms() const;

  std::string str() const;

private:
  const FieldCtx* F_;
  int lo_, prec_;
  std::vector<felem> c_; // c_[i] is the coefficient of t^(lo_+i)

  void normalize();
};

TSeries operator*(felem c, const TSeries& s);

} // namespace gl3
