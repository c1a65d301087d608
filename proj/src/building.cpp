#include "gl3adlv/building.hpp"

#include <algorithm>
#include <stdexcept>

namespace gl3 {

std::string to_string(LinkPos p) {
  switch (p) {
    case LinkPos::I: return "I";
    case LinkPos::II: return "II";
    case LinkPos::III: return "III";
    case LinkPos::Deg0: return "DEG0";
    case LinkPos::Deg1: return "DEG1";
  }
  return "?";
}

bool Chamber::contains(const Vertex& x) const {
  return v[0] == x || v[1] == x || v[2] == x;
}

namespace {

const CochClass kEdgePlane = CochClass{{1, 0, 0}}; // codim-1 sublattice
const CochClass kEdgeLine = CochClass{{1, 1, 0}};  // codim-2 sublattice

bool chain_ok(const Vertex& l0, const Vertex& l1, const Vertex& l2) {
  return inv_prime(l0, l1) == kEdgePlane && inv_prime(l0, l2) == kEdgeLine &&
         inv_prime(l1, l2) == kEdgePlane;
}

} // namespace

bool is_chamber(const Vertex& a, const Vertex& b, const Vertex& c) {
  if (a == b || a == c || b == c) return false;
  return chain_ok(a, b, c) || chain_ok(a, c, b);
}

Chamber make_chamber(const Vertex& a, const Vertex& b, const Vertex& c) {
  if (!is_chamber(a, b, c)) throw std::invalid_argument("not a chamber");
  return Chamber{{a, b, c}};
}

Chamber main_chamber(const FieldCtx& F) {
  return Chamber{{standard_vertex(F, 0), standard_vertex(F, 1),
                  standard_vertex(F, 2)}};
}

Vertex project(const Vertex& Q, const Vertex& P, const CochClass& mu) {
  int spread = 4;
  for (auto* vx : {&Q, &P})
    for (int di : vx->data().d) spread = std::max(spread, 2 * std::abs(di));
  return with_precision_retry(2 * spread + 8, [&](int prec) {
    Mat3 qb = Q.basis(prec);
    SmithResult s = smith_decompose(qb.inverse() * P.basis(prec));
    const auto& lam = s.lambda;
    const auto& e = mu.e;
    if (!(lam[0] - e[0] >= lam[1] - e[1] && lam[1] - e[1] >= lam[2] - e[2]))
      throw std::invalid_argument("projection direction not below inv(Q,P)");
    Mat3 target = qb * s.k1 * Mat3::diag_t(Q.field(), e, prec);
    return vertex_of(target);
  });
}

FirstChamberResult first_chamber(const Vertex& Q, const Vertex& P) {
  CochClass cls = inv_prime(Q, P);
  const auto& e = cls.e;
  if (e[0] == e[1] && e[1] == e[2])
    throw std::invalid_argument("first_chamber: vertices coincide");
  if (e[0] > e[1] && e[1] > e[2]) {
    Vertex va = project(Q, P, kEdgePlane);
    Vertex vb = project(Q, P, kEdgeLine);
    return FirstChamberResult{true, Chamber{{Q, va, vb}}, va};
  }
  if (e[0] == e[1]) { // segment in the [1,1,0] direction
    Vertex vb = project(Q, P, kEdgeLine);
    return FirstChamberResult{false, std::nullopt, vb};
  }
  Vertex va = project(Q, P, kEdgePlane); // e[1] == e[2]
  return FirstChamberResult{false, std::nullopt, va};
}

// ---------------------------------------------------------------------------
// Residue flags

namespace {

using FVec = std::array<felem, 3>;

// rank of a set of vectors over the residue field
int rank_of(const FieldCtx& F, std::vector<FVec> cols) {
  int rank = 0;
  for (int r = 0; r < 3 && rank < (int)cols.size(); ++r) {
    int pivot = -1;
    for (int c = rank; c < (int)cols.size(); ++c)
      if (cols[c][r] != 0) { pivot = c; break; }
    if (pivot < 0) continue;
    std::swap(cols[rank], cols[pivot]);
    felem inv_p = F.inv(cols[rank][r]);
    for (int c = 0; c < (int)cols.size(); ++c) {
      if (c == rank || cols[c][r] == 0) continue;
      felem f = F.mul(cols[c][r], inv_p);
      for (int i = 0; i < 3; ++i)
        cols[c][i] = F.sub(cols[c][i], F.mul(f, cols[rank][i]));
    }
    ++rank;
  }
  return rank;
}

int dim_meet(const FieldCtx& F, const std::vector<FVec>& a,
             const std::vector<FVec>& b) {
  std::vector<FVec> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return rank_of(F, a) + rank_of(F, b) - rank_of(F, all);
}

struct ResidueFlag {
  std::vector<FVec> line;  // 1 spanning vector
  std::vector<FVec> plane; // 2 spanning vectors
};

// flag cut out by chamber c in the residue L0 / t L0 of vertex p
ResidueFlag residue_flag(const Chamber& c, const Vertex& p, int prec) {
  const FieldCtx& F = p.field();
  Mat3 l0 = p.basis(prec);
  Mat3 l0inv = l0.inverse();
  ResidueFlag flag;
  for (const Vertex& w : c.v) {
    if (w == p) continue;
    Mat3 x = l0inv * w.basis(prec);
    SmithResult s = smith_decompose(x);
    CochClass cls = CochClass::of(Cocharacter(s.lambda));
    int shift;
    bool is_line;
    if (cls == kEdgePlane) {
      shift = 1 - s.lambda[0];
      is_line = false;
    } else if (cls == kEdgeLine) {
      shift = 1 - s.lambda[0];
      is_line = true;
    } else {
      throw std::invalid_argument("chamber vertex not incident to base vertex");
    }
    Mat3 y = x.scaled_t(shift);
    // reduce the columns mod t and keep a basis of the column space
    std::vector<FVec> cols;
    for (int j = 0; j < 3; ++j) {
      FVec col;
      for (int i = 0; i < 3; ++i) col[i] = y.at(i, j).coeff(0);
      if (col[0] || col[1] || col[2]) cols.push_back(col);
    }
    int want = is_line ? 1 : 2;
    if (rank_of(F, cols) != want)
      throw InsufficientPrecision(prec, "residue reduction rank mismatch");
    if (is_line)
      flag.line = cols;
    else
      flag.plane = cols;
  }
  if (flag.line.empty() || flag.plane.empty())
    throw std::invalid_argument("base vertex not found in chamber");
  return flag;
}

} // namespace

LinkPos chamber_relpos(const Chamber& c1, const Chamber& c2, const Vertex& p) {
  if (!c1.contains(p) || !c2.contains(p))
    throw std::invalid_argument("chambers do not share the given vertex");
  const FieldCtx& F = p.field();
  int spread = 4;
  for (const Chamber* c : {&c1, &c2})
    for (const Vertex& w : c->v)
      for (int di : w.data().d) spread = std::max(spread, 2 * std::abs(di));
  return with_precision_retry(2 * spread + 8, [&](int prec) {
    ResidueFlag f = residue_flag(c1, p, prec);
    ResidueFlag g = residue_flag(c2, p, prec);
    int r11 = dim_meet(F, f.line, g.line);
    int r22 = dim_meet(F, f.plane, g.plane);
    if (r11 == 1 && r22 == 2) return LinkPos::Deg0;
    if (r11 == 1 || r22 == 2) return LinkPos::Deg1;
    int r12 = dim_meet(F, f.line, g.plane);
    int r21 = dim_meet(F, g.line, f.plane);
    if (r12 == 0 && r21 == 0) return LinkPos::I;
    return r21 == 1 ? LinkPos::II : LinkPos::III;
  });
}

// ---------------------------------------------------------------------------
// Composition of relative positions

int kottwitz_bound(const CochClass& e, const CochClass& f, LinkPos pos) {
  switch (pos) {
    case LinkPos::I:
      return 0;
    case LinkPos::II:
      return std::min(e.e[0] - e.e[1], f.e[1] - f.e[2]);
    case LinkPos::III:
      return std::min(f.e[0] - f.e[1], e.e[1] - e.e[2]);
    default:
      throw std::invalid_argument("composition undefined for degenerate positions");
  }
}

CochClass kottwitz_compose(const CochClass& e, const CochClass& f, LinkPos pos,
                           int j) {
  int m = kottwitz_bound(e, f, pos);
  if (j < 0 || j > m || (j == 0 && m != 0 && pos != LinkPos::I))
    throw std::invalid_argument("bend parameter out of range");
  std::array<int, 3> r;
  switch (pos) {
    case LinkPos::I:
      r = {f.e[0] - e.e[2], f.e[1] - e.e[1], f.e[2] - e.e[0]};
      break;
    case LinkPos::II:
      r = {f.e[0] - e.e[2], f.e[1] - e.e[1] - j, f.e[2] - e.e[0] + j};
      break;
    case LinkPos::III:
      r = {f.e[0] - e.e[2] - j, f.e[1] - e.e[1] + j, f.e[2] - e.e[0]};
      break;
    default:
      throw std::invalid_argument("composition undefined for degenerate positions");
  }
  if (!(r[0] >= r[1] && r[1] >= r[2]))
    throw std::logic_error("composed cocharacter not dominant");
  return CochClass::of(r);
}

std::vector<CochClass> predict_inv_set(const CochClass& e, const CochClass& f,
                                       LinkPos pos) {
  std::vector<CochClass> out;
  if (pos == LinkPos::I) {
    out.push_back(kottwitz_compose(e, f, pos, 0));
    return out;
  }
  int m = kottwitz_bound(e, f, pos);
  if (m == 0) {
    out.push_back(kottwitz_compose(e, f, pos, 0));
    return out;
  }
  for (int j = 1; j <= m; ++j) out.push_back(kottwitz_compose(e, f, pos, j));
  return out;
}

} // namespace gl3
