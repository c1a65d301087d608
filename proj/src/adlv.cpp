#include "gl3adlv/adlv.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gl3 {

// ---------------------------------------------------------------------------
// Counter-based deterministic generator (splitmix-style output function)

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key(seed ^ (stream * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull)) {}

std::uint64_t CounterRng::next() {
  std::uint64_t z = key + (++ctr) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Basic representatives

std::optional<BTag> parse_btag(const std::string& s) {
  if (s == "1" || s == "one") return BTag::one;
  if (s == "b1") return BTag::b1;
  if (s == "b2") return BTag::b2;
  return std::nullopt;
}

std::string to_string(BTag b) {
  switch (b) {
    case BTag::one: return "1";
    case BTag::b1: return "b1";
    case BTag::b2: return "b2";
  }
  return "?";
}

int BasicB::eta() const {
  switch (tag) {
    case BTag::one: return 0;
    case BTag::b1: return 1;
    case BTag::b2: return 2;
  }
  return 0;
}

int BasicB::newton_num() const { return eta(); }

int BasicB::defect() const { return tag == BTag::one ? 0 : 2; }

Mat3 BasicB::matrix(const FieldCtx& F, int prec) const {
  if (tag == BTag::one) return Mat3::identity(F, prec);
  Mat3 m(F, prec);
  auto mono = [&](int exp) { return TSeries::monomial(F, exp, 1, prec); };
  if (tag == BTag::b1) {
    m.at(0, 2) = mono(1);
    m.at(1, 0) = mono(0);
    m.at(2, 1) = mono(0);
  } else {
    m.at(0, 1) = mono(1);
    m.at(1, 2) = mono(1);
    m.at(2, 0) = mono(0);
  }
  return m;
}

Mat3 BasicB::shift_a1(const FieldCtx& F, int prec) const {
  if (tag == BTag::one) return Mat3::diag_t(F, {1, 0, 0}, prec);
  // for b1 the element is b1 itself; for b2 it is t * b2^{-1}, which works
  // out to the same matrix
  return BasicB{BTag::b1}.matrix(F, prec);
}

Mat3 sigma_conj(const Mat3& x, const BasicB& b) {
  int prec = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prec = std::max(prec, x.at(i, j).prec());
  return x.inverse() * (b.matrix(x.field(), prec) * x.sigma());
}

// ---------------------------------------------------------------------------
// Membership

namespace {

int vertex_spread(const Vertex& v) {
  int s = 1;
  for (int di : v.data().d) s = std::max(s, std::abs(di));
  return s;
}

} // namespace

bool membership_with(const Vertex& P, const Cocharacter& lambda,
                     const std::function<Mat3(const FieldCtx&, int)>& bmat,
                     const FieldCtx& F) {
  int prec0 = std::max(2 * std::max(std::abs(lambda.m[0]), std::abs(lambda.m[2])) + 4,
                       4 * vertex_spread(P) + 8);
  return with_precision_retry(std::min(prec0, kPrecisionCap), [&](int prec) {
    Mat3 x = P.basis(prec);
    Mat3 g = x.inverse() * (bmat(F, prec) * x.sigma());
    return Cocharacter(smith_decompose(g).lambda) == lambda;
  });
}

bool membership(const Vertex& P, const Cocharacter& lambda, const BasicB& b) {
  if (lambda.sum() != b.eta()) return false;
  return membership_with(
      P, lambda,
      [&](const FieldCtx& F, int prec) { return b.matrix(F, prec); },
      P.field());
}

// ---------------------------------------------------------------------------
// Non-emptiness and dimension

NonEmpty nonempty(const Cocharacter& lambda, const BasicB& b) {
  if (!lambda.dominant())
    throw std::invalid_argument("lambda must be dominant");
  int sum = lambda.sum();
  if (sum != b.eta()) {
    std::ostringstream os;
    os << "determinant mismatch: |lambda| = " << sum << " but v(det b) = "
       << b.eta();
    return {false, os.str()};
  }
  int nu = b.newton_num(); // Newton vector is (nu/3, nu/3, nu/3)
  if (3 * lambda.m[0] < nu)
    return {false, "slope inequality m1 >= nu/3 fails"};
  if (3 * (lambda.m[0] + lambda.m[1]) < 2 * nu)
    return {false, "slope inequality m1+m2 >= 2nu/3 fails"};
  return {true, "determinant equality and slope inequalities hold"};
}

int dimension(const Cocharacter& lambda, const BasicB& b) {
  if (!nonempty(lambda, b).value)
    throw std::domain_error("dimension of empty variety");
  int d = lambda.m[0] - lambda.m[2] - b.defect() / 2;
  return d;
}

// ---------------------------------------------------------------------------
// Anchor class sets

namespace {

MEntry make_entry(int e1, int e3) {
  // representative with e2 = 0
  MEntry me;
  me.cls = CochClass::of(std::array<int, 3>{e1, 0, e3});
  me.m_I = std::min(e1, -e3);
  me.m_II = std::min(e1 + 1, -e3);
  me.m_III = std::min(e1, -e3 + 1);
  return me;
}

} // namespace

std::vector<MEntry> compute_M(const Cocharacter& lambda, const BasicB& b) {
  std::vector<MEntry> out;
  if (!lambda.dominant() || lambda.sum() != b.eta()) return out;
  int m1 = lambda.m[0], m2 = lambda.m[1], m3 = lambda.m[2];
  int diff = 0;       // required e1 - e3
  auto cond = [&](const MEntry& me) {
    switch (b.tag) {
      case BTag::one:
        if (m2 == 0) return true;
        return me.m_I >= std::abs(m2);
      case BTag::b1:
        if (m2 == 0) return true;
        if (m2 < 0) return me.m_I >= -m2;
        return std::max(me.m_II, me.m_III) >= m2;
      case BTag::b2:
        if (m2 == 1) return true;
        if (m2 < 1) return std::max(me.m_II, me.m_III) >= 1 - m2;
        return me.m_I >= m2 - 1;
    }
    return false;
  };
  switch (b.tag) {
    case BTag::one:
      diff = (m2 > 0) ? -m3 : m1;
      break;
    case BTag::b1:
      diff = (m2 > 0) ? -m3 : m1 - 1;
      break;
    case BTag::b2:
      diff = (m2 > 1) ? -m3 : m1 - 1;
      break;
  }
  if (diff < 0) return out;
  for (int e1 = 0; e1 <= diff; ++e1) {
    MEntry me = make_entry(e1, e1 - diff);
    if (cond(me)) out.push_back(me);
  }
  std::sort(out.begin(), out.end(),
            [](const MEntry& a, const MEntry& b2) { return a.cls < b2.cls; });
  return out;
}

std::vector<MEntry> compute_M_prime(const Cocharacter& lambda, const BasicB& b) {
  std::vector<MEntry> M = compute_M(lambda, b);
  int m2 = lambda.m[1];
  if (b.tag == BTag::b1 && m2 > 0) {
    std::vector<MEntry> out;
    for (auto& me : M)
      if (me.m_II >= m2) out.push_back(me);
    return out;
  }
  if (b.tag == BTag::b2 && m2 < 1) {
    std::vector<MEntry> out;
    for (auto& me : M)
      if (me.m_III >= 1 - m2) out.push_back(me);
    return out;
  }
  return M;
}

// ---------------------------------------------------------------------------
// Stratum labels and component keys

std::string to_string(Position p) {
  switch (p) {
    case Position::I: return "I";
    case Position::II: return "II";
    case Position::III: return "III";
    case Position::CM_II: return "CM-II";
    case Position::CM_III: return "CM-III";
    case Position::D_I: return "D-I";
    case Position::D_II: return "D-II";
    case Position::Dp_I: return "D'-I";
    case Position::Dp_III: return "D'-III";
  }
  return "?";
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::none: return "-";
    case Branch::II: return "II";
    case Branch::III: return "III";
  }
  return "?";
}

bool ComponentKey::operator<(const ComponentKey& o) const {
  auto t = [](const ComponentKey& k) {
    return std::make_tuple((int)k.b, k.eta_level, k.mu, (int)k.branch);
  };
  if (t(*this) != t(o)) return t(*this) < t(o);
  return anchor < o.anchor;
}

std::string ComponentKey::str() const {
  std::ostringstream os;
  os << "{b=" << to_string(b) << " eta=" << eta_level << " anchor="
     << anchor.str() << " mu=" << mu.str() << " branch=" << to_string(branch)
     << "}";
  return os.str();
}

Cocharacter stratum_lambda(const CochClass& mu, Position pos, int j,
                           const BasicB& b) {
  int diff = mu.e[0] - mu.e[2];
  switch (b.tag) {
    case BTag::one:
      switch (pos) {
        case Position::I: return {diff, 0, -diff};
        case Position::II: return {diff, -j, -diff + j};
        case Position::III: return {diff - j, j, -diff};
        default: break;
      }
      break;
    case BTag::b1:
      switch (pos) {
        case Position::CM_II:
        case Position::CM_III:
        case Position::D_I: return {diff + 1, 0, -diff};
        case Position::II:
        case Position::III: return {diff + 1 - j, j, -diff};
        case Position::D_II: return {diff + 1, -j, -diff + j};
        default: break;
      }
      break;
    case BTag::b2:
      switch (pos) {
        case Position::Dp_I:
        case Position::CM_II:
        case Position::CM_III: return {diff + 1, 1, -diff};
        case Position::II:
        case Position::III: return {diff + 1, 1 - j, -diff + j};
        case Position::Dp_III: return {diff + 1 - j, 1 + j, -diff};
        default: break;
      }
      break;
  }
  throw std::invalid_argument("label not defined for this b");
}

namespace {

// standard vertices cycle under the superbasic elements:
// b1 : L0 -> L1 -> L2 -> L0, and b2 runs the cycle backwards
int b2_image(int which) { return (which + 2) % 3; }

int std_index(const FieldCtx& F, const Vertex& v) {
  for (int k = 0; k < 3; ++k)
    if (standard_vertex(F, k) == v) return k;
  return -1;
}

Mat3 shift_pow(const BasicB& b, const FieldCtx& F, int k, int prec) {
  Mat3 s = b.shift_a1(F, prec);
  if (k < 0) {
    s = s.inverse();
    k = -k;
  }
  Mat3 r = Mat3::identity(F, prec);
  while (k-- > 0) r = r * s;
  return r;
}

// branch of a superbasic stratum observed geometrically via the first chamber
std::optional<LinkPos> observe_branch(const Vertex& Q, const Vertex& P0) {
  FirstChamberResult fc = first_chamber(Q, P0);
  if (!fc.is_chamber) return std::nullopt;
  Chamber cm = main_chamber(P0.field());
  LinkPos pos = chamber_relpos(cm, *fc.chamber, Q);
  return pos;
}

} // namespace

std::vector<std::pair<ComponentKey, StratumLabel>> assign_component(
    const Vertex& P, int eta_level, const Cocharacter& lambda, const BasicB& b,
    int anchor_shell) {
  const FieldCtx& F = P.field();
  int m2 = lambda.m[1];
  std::vector<MEntry> M = compute_M(lambda, b);
  std::vector<std::pair<ComponentKey, StratumLabel>> out;

  // translate to eta-level zero
  Vertex P0 = P;
  if (eta_level != 0) {
    int prec = 4 * vertex_spread(P) + 8 + 2 * std::abs(eta_level);
    P0 = with_precision_retry(prec, [&](int pr) {
      return vertex_of(shift_pow(b, F, -eta_level, pr) * P.basis(pr));
    });
  }

  auto find_entry = [&](const CochClass& c) -> const MEntry* {
    for (auto& me : M)
      if (me.cls == c) return &me;
    return nullptr;
  };

  if (b.tag == BTag::one) {
    // anchors are rational vertices near P0; search the relative shell
    int R = 1;
    for (auto& me : M) R = std::max({R, me.cls.e[0], -me.cls.e[2]});
    R = std::max(R, anchor_shell);
    int prec = 4 * (vertex_spread(P0) + R) + 8;
    std::set<Vertex> cands;
    for (int eta_rel = -3 * R; eta_rel <= 3 * R; ++eta_rel)
      enumerate_lattices(F, R, eta_rel, [&](const Vertex& rel) {
        Vertex Q = with_precision_retry(prec, [&](int pr) {
          return vertex_of(P0.basis(pr) * rel.basis(pr));
        });
        if (Q.is_rational()) cands.insert(Q);
      });
    for (const Vertex& Q : cands) {
      CochClass c = inv_prime(Q, P0);
      const MEntry* me = find_entry(c);
      if (!me) continue;
      Position pos = m2 == 0 ? Position::I : (m2 < 0 ? Position::II : Position::III);
      int j = m2 == 0 ? -1 : std::abs(m2);
      if (stratum_lambda(c, pos, std::max(j, 0), b) != lambda) continue;
      out.push_back({ComponentKey{b.tag, eta_level, Q, c, Branch::none},
                     StratumLabel{pos, j}});
    }
    return out;
  }

  // superbasic: anchors are the three standard vertices
  std::set<ComponentKey> seen;
  for (int k = 0; k < 3; ++k) {
    Vertex Q = standard_vertex(F, k);
    CochClass c = inv_prime(Q, P0);
    const MEntry* me = find_entry(c);
    if (!me) continue;
    const auto& e = c.e;
    bool wall = (e[0] == e[1]) || (e[1] == e[2]);
    bool zero = (e[0] == e[1]) && (e[1] == e[2]);
    Position pos;
    int j = -1;
    Branch branch = Branch::none;
    if (b.tag == BTag::b1) {
      if (m2 < 0) {
        pos = Position::D_II;
        j = -m2;
      } else if (m2 == 0) {
        if (zero)
          pos = Position::D_I;
        else if (wall)
          pos = (e[0] > e[1]) ? Position::CM_II : Position::CM_III;
        else
          pos = Position::D_I;
      } else {
        j = m2;
        bool feas2 = me->m_II >= m2, feas3 = me->m_III >= m2;
        if (feas2 && feas3 && !wall && !zero) {
          auto ob = observe_branch(Q, P0);
          pos = (ob && *ob == LinkPos::III) ? Position::III : Position::II;
        } else {
          pos = feas2 ? Position::II : Position::III;
        }
        branch = (pos == Position::II) ? Branch::II : Branch::III;
      }
    } else { // b2
      if (m2 > 1) {
        pos = Position::Dp_III;
        j = m2 - 1;
      } else if (m2 == 1) {
        if (zero)
          pos = Position::Dp_I;
        else if (wall)
          pos = (e[0] > e[1]) ? Position::CM_II : Position::CM_III;
        else
          pos = Position::Dp_I;
      } else {
        j = 1 - m2;
        bool feas2 = me->m_II >= j, feas3 = me->m_III >= j;
        if (feas2 && feas3 && !wall && !zero) {
          auto ob = observe_branch(Q, P0);
          pos = (ob && *ob == LinkPos::II) ? Position::II : Position::III;
        } else {
          pos = feas3 ? Position::III : Position::II;
        }
        branch = (pos == Position::II) ? Branch::II : Branch::III;
      }
    }
    // canonicalize the doubled superbasic labels: for b1 report the II
    // description, for b2 the III description
    Vertex anchor = Q;
    CochClass mu = c;
    if (b.tag == BTag::b1 && pos == Position::III && m2 > 0) {
      int ki = std_index(F, Q);
      anchor = standard_vertex(F, (ki + 2) % 3); // b1^{-1} Q
      mu = CochClass::of(std::array<int, 3>{e[0], e[1] + 1, e[2]});
      pos = Position::II;
      branch = Branch::II;
    } else if (b.tag == BTag::b2 && pos == Position::II && m2 < 1) {
      int ki = std_index(F, Q);
      anchor = standard_vertex(F, b2_image(ki)); // b2 Q
      mu = CochClass::of(std::array<int, 3>{e[0], e[1] - 1, e[2]});
      pos = Position::III;
      branch = Branch::III;
    }
    ComponentKey key{b.tag, eta_level, anchor, mu, branch};
    if (seen.insert(key).second)
      out.push_back({key, StratumLabel{pos, j}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point enumeration

void enumerate_points(const Cocharacter& lambda, const BasicB& b,
                      const FieldCtx& F, int N, int eta,
                      const std::function<void(const Vertex&)>& cb,
                      int shards) {
  enumerate_lattices(
      F, N, eta,
      [&](const Vertex& v) {
        if (membership(v, lambda, b)) cb(v);
      },
      false, shards);
}

// ---------------------------------------------------------------------------
// Geometry of components and point-count hypotheses

std::string Geometry::str() const {
  std::ostringstream os;
  switch (kind) {
    case Point: return "point";
    case Affine: os << "A^" << d; break;
    case GmAffine: os << "Gm x A^" << d; break;
    case OmegaAffine: os << "Omega x A^" << d; break;
    case OmegaGmAffine: os << "Omega x Gm x A^" << d; break;
    case P2MinusRatBundle: os << "A^" << d << "-bundle over P2 minus rational points"; break;
    case XIBundle: os << "A^" << d << "-bundle over X_I"; break;
  }
  return os.str();
}

Geometry component_geometry(const Cocharacter& lambda, const BasicB& b,
                            const MEntry& mu) {
  int m1 = lambda.m[0], m2 = lambda.m[1], m3 = lambda.m[2];
  const auto& e = mu.cls.e;
  bool zero = (e[0] == e[1]) && (e[1] == e[2]);
  bool wall = (e[0] == e[1]) || (e[1] == e[2]);
  if (b.tag == BTag::one) {
    if (m2 == 0) {
      if (zero) return {Geometry::Point, 0};
      if (wall) return {Geometry::P2MinusRatBundle, m1 - m3 - 2};
      return {Geometry::XIBundle, m1 - m3 - 3};
    }
    int a = std::abs(m2);
    if (mu.m_I == a) return {Geometry::OmegaAffine, m1 - m3 - 2};
    return {Geometry::OmegaGmAffine, m1 - m3 - 3};
  }
  if (zero) return {Geometry::Point, 0};
  int crit; // the minimum that pins the stratum family down
  if (b.tag == BTag::b1) {
    if (m2 == 0)
      return wall ? Geometry{Geometry::Affine, m1 - m3 - 1}
                  : Geometry{Geometry::GmAffine, m1 - m3 - 2};
    crit = (m2 < 0) ? mu.m_I - (-m2) : mu.m_II - m2;
  } else {
    if (m2 == 1)
      return wall ? Geometry{Geometry::Affine, m1 - m3 - 1}
                  : Geometry{Geometry::GmAffine, m1 - m3 - 2};
    crit = (m2 > 1) ? mu.m_I - (m2 - 1) : mu.m_III - (1 - m2);
  }
  if (crit == 0) return {Geometry::Affine, m1 - m3 - 1};
  return {Geometry::GmAffine, m1 - m3 - 2};
}

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::pair<int, int> split_prime_power(int q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int s = 0, v = q;
    while (v % p == 0) { v /= p; ++s; }
    if (v != 1) throw std::invalid_argument("q is not a prime power");
    return {p, s};
  }
  throw std::invalid_argument("bad q");
}

// all projective points of P^2(F_{q^m}) as normalized coordinate triples
std::vector<std::array<felem, 3>> proj_points(const FieldCtx& F) {
  std::vector<std::array<felem, 3>> pts;
  std::uint64_t n = F.order();
  for (felem y = 0; y < n; ++y)
    for (felem z = 0; z < n; ++z) pts.push_back({1, y, z});
  for (felem z = 0; z < n; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});
  return pts;
}

} // namespace

std::uint64_t count_omega(int q, int m) {
  auto [p, s] = split_prime_power(q);
  FieldCtx F(p, s, m);
  const auto& base = F.base_field_elems();
  std::uint64_t cnt = 0;
  for (auto& pt : proj_points(F)) {
    bool on_rational_line = false;
    for (felem a : base) {
      for (felem b : base)
        for (felem c : base) {
          if (a == 0 && b == 0 && c == 0) continue;
          felem v = F.add(F.add(F.mul(a, pt[0]), F.mul(b, pt[1])),
                          F.mul(c, pt[2]));
          if (v == 0) { on_rational_line = true; break; }
        }
      if (on_rational_line) break;
    }
    if (!on_rational_line) ++cnt;
  }
  return cnt;
}

std::uint64_t count_p2_minus_rat(int q, int m) {
  std::uint64_t qm = upow(q, m);
  return qm * qm + qm - (std::uint64_t)q * q - q;
}

std::uint64_t count_xI(int q, int m) {
  auto [p, s] = split_prime_power(q);
  FieldCtx F(p, s, m);
  auto pts = proj_points(F);
  std::uint64_t cnt = 0;
  auto dot = [&](const std::array<felem, 3>& a, const std::array<felem, 3>& b) {
    return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])),
                 F.mul(a[2], b[2]));
  };
  for (auto& v : pts)
    for (auto& nrm : pts) {
      if (dot(v, nrm) != 0) continue; // flags: line spanned by v inside n^perp
      std::array<felem, 3> sv{F.frobenius(v[0]), F.frobenius(v[1]),
                              F.frobenius(v[2])};
      std::array<felem, 3> sn{F.frobenius(nrm[0]), F.frobenius(nrm[1]),
                              F.frobenius(nrm[2])};
      if (dot(v, sn) != 0 && dot(sv, nrm) != 0) ++cnt;
    }
  return cnt;
}

std::uint64_t predicted_count(const Geometry& g, int q, int m) {
  std::uint64_t qm = upow((std::uint64_t)q, m);
  std::uint64_t fiber = upow(qm, g.d);
  switch (g.kind) {
    case Geometry::Point: return 1;
    case Geometry::Affine: return fiber;
    case Geometry::GmAffine: return (qm - 1) * fiber;
    case Geometry::OmegaAffine: return count_omega(q, m) * fiber;
    case Geometry::OmegaGmAffine: return count_omega(q, m) * (qm - 1) * fiber;
    case Geometry::P2MinusRatBundle: return count_p2_minus_rat(q, m) * fiber;
    case Geometry::XIBundle: return count_xI(q, m) * fiber;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Fibration family list

FibrationCase fibration_case(const Cocharacter& lambda, const BasicB& b) {
  struct Fam {
    const char* name;
    std::array<int, 3> (*at)(int);
  };
  static const Fam one_fams[] = {
      {"(2r,-r,-r)", [](int r) { return std::array<int, 3>{2 * r, -r, -r}; }},
      {"(r,r,-2r)", [](int r) { return std::array<int, 3>{r, r, -2 * r}; }},
      {"(2r+3,-r-1,-r-2)",
       [](int r) { return std::array<int, 3>{2 * r + 3, -r - 1, -r - 2}; }},
      {"(r+2,r+1,-2r-3)",
       [](int r) { return std::array<int, 3>{r + 2, r + 1, -2 * r - 3}; }},
  };
  static const Fam b1_fams[] = {
      {"(2r+1,-r,-r)",
       [](int r) { return std::array<int, 3>{2 * r + 1, -r, -r}; }},
      {"(r+1,r+1,-2r-1)",
       [](int r) { return std::array<int, 3>{r + 1, r + 1, -2 * r - 1}; }},
      {"(r+1,r,-2r)",
       [](int r) { return std::array<int, 3>{r + 1, r, -2 * r}; }},
      {"(2r+2,-r,-r-1)",
       [](int r) { return std::array<int, 3>{2 * r + 2, -r, -r - 1}; }},
  };
  static const Fam b2_fams[] = {
      {"(r+1,r+1,-2r)",
       [](int r) { return std::array<int, 3>{r + 1, r + 1, -2 * r}; }},
      {"(2r+2,-r,-r)",
       [](int r) { return std::array<int, 3>{2 * r + 2, -r, -r}; }},
      {"(2r+1,-r+1,-r)",
       [](int r) { return std::array<int, 3>{2 * r + 1, -r + 1, -r}; }},
      {"(r+2,r+1,-2r-1)",
       [](int r) { return std::array<int, 3>{r + 2, r + 1, -2 * r - 1}; }},
  };
  const Fam* fams = one_fams;
  size_t nf = 4;
  if (b.tag == BTag::b1) fams = b1_fams;
  if (b.tag == BTag::b2) fams = b2_fams;
  int bound = std::abs(lambda.m[0]) + std::abs(lambda.m[2]) + 3;
  for (size_t i = 0; i < nf; ++i)
    for (int r = 0; r <= bound; ++r)
      if (fams[i].at(r) == lambda.m) return {true, fams[i].name, r};
  return {false, "", 0};
}

// ---------------------------------------------------------------------------
// Central shift check and witness search

bool central_shift_check(const Vertex& P, const Cocharacter& lambda,
                         const BasicB& b, int c) {
  bool lhs = membership(P, lambda, b);
  Cocharacter shifted = lambda.shifted(c);
  bool rhs = membership_with(
      P, shifted,
      [&](const FieldCtx& F, int prec) {
        return Mat3::scalar_t(F, c, prec) * b.matrix(F, prec);
      },
      P.field());
  return lhs == rhs;
}

std::optional<Vertex> find_point(const Cocharacter& lambda, const BasicB& b,
                                 const FieldCtx& F, std::uint64_t seed,
                                 int attempts) {
  if (!nonempty(lambda, b).value) return std::nullopt;
  std::vector<MEntry> M = compute_M(lambda, b);
  if (M.empty()) return std::nullopt;
  CounterRng rng(seed, 17);
  int L = std::max(std::abs(lambda.m[0]), std::abs(lambda.m[2]));

  // deterministic diagonal seeds first
  for (int v0 = -L; v0 <= L; ++v0)
    for (int v1 = -L; v1 <= L; ++v1)
      for (int v2 = -L; v2 <= L; ++v2) {
        HermiteData h;
        h.d = {v0, v1, v2};
        Vertex P(F, h);
        if (membership(P, lambda, b)) return P;
      }

  int prec = 4 * L + 12;
  for (int round = 0; round < attempts; ++round) {
    const MEntry& me = M[round % M.size()];
    int diff = me.cls.e[0] - me.cls.e[2];
    int deg = diff + 1;
    // random element of K: random polynomial entries, unit determinant
    Mat3 k(F, prec);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::vector<std::pair<int, felem>> terms;
        for (int e = 0; e < deg; ++e)
          terms.emplace_back(e, F.sample(rng.next()));
        k.at(i, j) = TSeries::from_terms(F, terms, prec);
      }
    try {
      if (k.det().valuation() != 0) continue;
    } catch (const InsufficientPrecision&) {
      continue;
    }
    // anchor at the standard vertex of matching type
    Mat3 anchor =
        standard_vertex(F, me.anchor_type()).basis(prec);
    Mat3 cand = anchor * (k * Mat3::diag_t(F, me.cls.e, prec));
    try {
      Vertex P = vertex_of(cand);
      if (membership(P, lambda, b)) return P;
    } catch (const InsufficientPrecision&) {
      continue;
    }
  }
  return std::nullopt;
}

} // namespace gl3
