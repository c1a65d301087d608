#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gl3adlv/series.hpp"

namespace gl3 {

/// 3x3 matrix of truncated Laurent series, row major.
class Mat3 {
public:
  explicit Mat3(const FieldCtx& F, int prec); // zero matrix
  static Mat3 identity(const FieldCtx& F, int prec);
  static Mat3 diag_t(const FieldCtx& F, const std::array<int, 3>& exps, int prec);
  static Mat3 scalar_t(const FieldCtx& F, int exp, int prec); // t^exp * I

  const FieldCtx& field() const { return *F_; }
  TSeries& at(int i, int j) { return e_[i * 3 + j]; }
  const TSeries& at(int i, int j) const { return e_[i * 3 + j]; }

  Mat3 operator*(const Mat3& o) const;
  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  TSeries det() const;
  Mat3 inverse() const; // adjugate over determinant
  Mat3 sigma(int k = 1) const;
  Mat3 scaled_t(int exp) const; // multiply by t^exp

  bool equals_window(const Mat3& o) const;
  std::string str() const;

private:
  const FieldCtx* F_;
  std::array<TSeries, 9> e_;
};

struct SmithResult {
  Mat3 k1;                   // in GL3(O)
  std::array<int, 3> lambda; // dominant: lambda[0] >= lambda[1] >= lambda[2]
  Mat3 k2;                   // in GL3(O)
};

/// Cartan decomposition M = k1 * t^lambda * k2 over the valuation ring.
/// Pivot at each step is a minimal-valuation entry, ties broken by (row, col).
/// Throws InsufficientPrecision when the windows cannot certify a pivot.
SmithResult smith_decompose(const Mat3& M);

/// Exact Laurent polynomial entry, sorted terms, nonzero coefficients.
struct PolyEntry {
  std::vector<std::pair<int, felem>> terms;
  bool operator==(const PolyEntry&) const = default;
  bool operator<(const PolyEntry& o) const { return terms < o.terms; }
};

/// Canonical column Hermite data of a lattice basis: upper triangular with
/// pivots t^d[i] at (i,i) and off-diagonal entries reduced mod the pivot
/// power of their row (all exponents of off[i][j] are < d[i]).
struct HermiteData {
  std::array<int, 3> d;
  // off[0] = entry (0,1), off[1] = entry (0,2), off[2] = entry (1,2)
  std::array<PolyEntry, 3> off;
  bool operator==(const HermiteData&) const = default;
  bool operator<(const HermiteData& o) const;
};

/// Exact Hermite normal form of an invertible series matrix.  Requires the
/// windows to determine the lattice; throws InsufficientPrecision otherwise.
HermiteData hermite_exact(const Mat3& M);

/// Same, materialized as a Mat3 at the given precision.
Mat3 hermite_form(const Mat3& M);

/// Homothety class of a lattice: Hermite data normalized so that
/// d[0]+d[1]+d[2] lies in {0,1,2}.  The residue is the vertex type.
class Vertex {
public:
  Vertex() = default;
  Vertex(const FieldCtx& F, HermiteData h); // normalizes homothety

  const FieldCtx& field() const { return *F_; }
  const HermiteData& data() const { return h_; }
  int type() const { return (h_.d[0] + h_.d[1] + h_.d[2]); }
  Mat3 basis(int prec) const;

  bool operator==(const Vertex& o) const { return h_ == o.h_; }
  bool operator!=(const Vertex& o) const { return !(h_ == o.h_); }
  bool operator<(const Vertex& o) const { return h_ < o.h_; }

  bool is_rational() const; // fixed by the relative Frobenius
  std::string str() const;

private:
  const FieldCtx* F_ = nullptr;
  HermiteData h_{};
};

/// Canonical vertex of the lattice spanned by the columns of M.
Vertex vertex_of(const Mat3& M);

/// Same with internal precision retry, rebuilding from a generator.
Vertex vertex_of_retry(const FieldCtx& F, int prec0,
                       const std::function<Mat3(int)>& make);

Vertex act(const Mat3& g, const Vertex& v);
Vertex sigma_vertex(const Vertex& v);

/// Standard vertices [Lambda], [tO+O+O], [tO+tO+O].
Vertex standard_vertex(const FieldCtx& F, int which);

/// Enumerates, exactly once each, every homothety class with a representative
/// L satisfying t^N Lambda <= L <= t^-N Lambda and v(det) = eta.  Output order
/// is lexicographic on the diagonal pattern, then on entry digit lists, and is
/// independent of the shard count.  With rational_only, coefficients are drawn
/// from the sigma-fixed base field.
void enumerate_lattices(const FieldCtx& F, int N, int eta,
                        const std::function<void(const Vertex&)>& cb,
                        bool rational_only = false, int shards = 1);

std::uint64_t count_lattices(const FieldCtx& F, int N, int eta);

} // namespace gl3
