#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl3adlv/building.hpp"

namespace gl3 {

enum class BTag { one, b1, b2 };

std::optional<BTag> parse_btag(const std::string& s); // "1" | "b1" | "b2"
std::string to_string(BTag b);

/// One of the three basic sigma-conjugacy representatives.
struct BasicB {
  BTag tag = BTag::one;

  static BasicB make(BTag t) { return BasicB{t}; }

  int eta() const;        // valuation of the determinant: 0, 1, 2
  int newton_num() const; // numerator of the central Newton slope over 3
  int defect() const;     // 0 for b = 1, else 2

  Mat3 matrix(const FieldCtx& F, int prec) const;

  /// Group element of determinant valuation one commuting with b-sigma;
  /// translates the eta-level grading by one step.
  Mat3 shift_a1(const FieldCtx& F, int prec) const;
};

/// x^{-1} b sigma(x)
Mat3 sigma_conj(const Mat3& x, const BasicB& b);

/// Is the homothety class P a point of X_lambda(b)?  Well defined on classes
/// because central shifts cancel.  Internal precision retry.
bool membership(const Vertex& P, const Cocharacter& lambda, const BasicB& b);

/// Same against an explicit twisting matrix (used by the central-shift check).
bool membership_with(const Vertex& P, const Cocharacter& lambda,
                     const std::function<Mat3(const FieldCtx&, int)>& bmat,
                     const FieldCtx& F);

struct NonEmpty {
  bool value;
  std::string reason;
};

/// Exact non-emptiness criterion (determinant equality plus the two
/// slope inequalities, which are automatic for dominant lambda).
NonEmpty nonempty(const Cocharacter& lambda, const BasicB& b);

/// Dimension of X_lambda(b); throws std::domain_error when empty.
int dimension(const Cocharacter& lambda, const BasicB& b);

struct MEntry {
  CochClass cls;
  int m_I;   // min{e1-e2,   e2-e3}
  int m_II;  // min{e1-e2+1, e2-e3}
  int m_III; // min{e1-e2,   e2-e3+1}
  int anchor_type() const { return ((-cls.sum()) % 3 + 3) % 3; }
};

/// The finite set of anchor classes M_lambda(b), sorted.
std::vector<MEntry> compute_M(const Cocharacter& lambda, const BasicB& b);

/// The component index set: equal to M for b = 1, and the filtered subset
/// for the superbasic classes.
std::vector<MEntry> compute_M_prime(const Cocharacter& lambda, const BasicB& b);

enum class Position { I, II, III, CM_II, CM_III, D_I, D_II, Dp_I, Dp_III };
std::string to_string(Position p);

enum class Branch { none, II, III };
std::string to_string(Branch b);

struct StratumLabel {
  Position pos;
  int j; // -1 when the stratum family carries no bend parameter
};

struct ComponentKey {
  BTag b;
  int eta_level;
  Vertex anchor;
  CochClass mu;
  Branch branch;
  bool operator==(const ComponentKey&) const = default;
  bool operator<(const ComponentKey& o) const;
  std::string str() const;
};

/// The component keys of a point (usually one; several only in the
/// overlapping b = 1, m2 = 0 walls).  eta_level is the determinant valuation
/// of the intended lattice representative.
std::vector<std::pair<ComponentKey, StratumLabel>> assign_component(
    const Vertex& P, int eta_level, const Cocharacter& lambda, const BasicB& b,
    int anchor_shell);

/// The cocharacter produced by a stratum with anchor class mu, label
/// (pos, j); inverse of the label recovery.
Cocharacter stratum_lambda(const CochClass& mu, Position pos, int j,
                           const BasicB& b);

/// All lattice-shell points of X_lambda(b) at the given eta level.
void enumerate_points(const Cocharacter& lambda, const BasicB& b,
                      const FieldCtx& F, int N, int eta,
                      const std::function<void(const Vertex&)>& cb,
                      int shards = 1);

struct Geometry {
  enum Kind {
    Point,
    Affine,        // A^d
    GmAffine,      // Gm x A^d
    OmegaAffine,   // Omega x A^d
    OmegaGmAffine, // Omega x Gm x A^d
    P2MinusRatBundle, // rank-d affine bundle over P^2 minus rational points
    XIBundle          // rank-d affine bundle over X_I
  } kind;
  int d;
  std::string str() const;
  bool dl_times_affine() const {
    return kind == Point || kind == Affine || kind == OmegaAffine ||
           kind == XIBundle;
  }
};

/// Geometry of the component indexed by mu (from the classification tables).
Geometry component_geometry(const Cocharacter& lambda, const BasicB& b,
                            const MEntry& mu);

/// Hypothesized F_{q^m}-point count of a component (product formula; the
/// bundle cases assume count multiplicativity).
std::uint64_t predicted_count(const Geometry& g, int q, int m);

std::uint64_t count_omega(int q, int m);       // complement of rational lines
std::uint64_t count_p2_minus_rat(int q, int m);
std::uint64_t count_xI(int q, int m);          // flags in position I with sigma-image

struct FibrationCase {
  bool value;
  std::string family; // matched parameter family, empty when value is false
  int r;
};

/// Membership of lambda in the closed-form list of classes whose nonempty
/// X_lambda(b) is a disjoint union of A^n-fibrations over
/// Deligne-Lusztig varieties.
FibrationCase fibration_case(const Cocharacter& lambda, const BasicB& b);

/// membership(P, lambda, b) == membership(P, lambda + (c,c,c), t^c b)
bool central_shift_check(const Vertex& P, const Cocharacter& lambda,
                         const BasicB& b, int c);

/// Deterministic witness search: a point of X_lambda(b), if one is found
/// within the attempt budget, sampling anchored cell coordinates.
std::optional<Vertex> find_point(const Cocharacter& lambda, const BasicB& b,
                                 const FieldCtx& F, std::uint64_t seed,
                                 int attempts);

/// Counter-based deterministic generator (split by re-keying).
struct CounterRng {
  std::uint64_t key;
  std::uint64_t ctr = 0;
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next();
};

} // namespace gl3
