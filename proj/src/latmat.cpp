#include "gl3adlv/latmat.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gl3 {

// ---------------------------------------------------------------------------
// Mat3

Mat3::Mat3(const FieldCtx& F, int prec)
    : F_(&F),
      e_{TSeries(F, prec), TSeries(F, prec), TSeries(F, prec),
         TSeries(F, prec), TSeries(F, prec), TSeries(F, prec),
         TSeries(F, prec), TSeries(F, prec), TSeries(F, prec)} {}

Mat3 Mat3::identity(const FieldCtx& F, int prec) {
  Mat3 m(F, prec);
  for (int i = 0; i < 3; ++i) m.at(i, i) = TSeries::monomial(F, 0, 1, prec);
  return m;
}

Mat3 Mat3::diag_t(const FieldCtx& F, const std::array<int, 3>& exps, int prec) {
  Mat3 m(F, prec);
  for (int i = 0; i < 3; ++i)
    m.at(i, i) = TSeries::monomial(F, exps[i], 1, prec + exps[i]);
  return m;
}

Mat3 Mat3::scalar_t(const FieldCtx& F, int exp, int prec) {
  return diag_t(F, {exp, exp, exp}, prec);
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r(*F_, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TSeries acc = at(i, 0) * o.at(0, j);
      acc = acc + at(i, 1) * o.at(1, j);
      acc = acc + at(i, 2) * o.at(2, j);
      r.at(i, j) = acc;
    }
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r(*F_, 1);
  for (int i = 0; i < 9; ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r(*F_, 1);
  for (int i = 0; i < 9; ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

TSeries Mat3::det() const {
  auto minor = [&](int i0, int i1, int j0, int j1) {
    return at(i0, j0) * at(i1, j1) - at(i0, j1) * at(i1, j0);
  };
  return at(0, 0) * minor(1, 2, 1, 2) - at(0, 1) * minor(1, 2, 0, 2) +
         at(0, 2) * minor(1, 2, 0, 1);
}

Mat3 Mat3::inverse() const {
  TSeries idet = det().invert();
  Mat3 adj(*F_, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cofactor expansion written cyclically keeps signs positive
      adj.at(j, i) = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    }
  Mat3 r(*F_, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = adj.at(i, j) * idet;
  return r;
}

Mat3 Mat3::sigma(int k) const {
  Mat3 r = *this;
  for (auto& s : r.e_) s = s.sigma(k);
  return r;
}

Mat3 Mat3::scaled_t(int exp) const {
  Mat3 r = *this;
  for (auto& s : r.e_) s = s.shifted(exp);
  return r;
}

bool Mat3::equals_window(const Mat3& o) const {
  for (int i = 0; i < 9; ++i)
    if (!e_[i].equals_window(o.e_[i])) return false;
  return true;
}

std::string Mat3::str() const {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << "[ ";
    for (int j = 0; j < 3; ++j) os << at(i, j).str() << (j < 2 ? " | " : "");
    os << " ]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith / Cartan decomposition

namespace {

void col_swap(Mat3& A, int a, int b) {
  for (int i = 0; i < 3; ++i) std::swap(A.at(i, a), A.at(i, b));
}
void row_swap(Mat3& A, int a, int b) {
  for (int j = 0; j < 3; ++j) std::swap(A.at(a, j), A.at(b, j));
}
// col dst += f * col src
void col_addmul(Mat3& A, int dst, int src, const TSeries& f) {
  for (int i = 0; i < 3; ++i) A.at(i, dst) = A.at(i, dst) + f * A.at(i, src);
}
// row dst += f * row src
void row_addmul(Mat3& A, int dst, int src, const TSeries& f) {
  for (int j = 0; j < 3; ++j) A.at(dst, j) = A.at(dst, j) + f * A.at(src, j);
}
void col_scale(Mat3& A, int c, const TSeries& u) {
  for (int i = 0; i < 3; ++i) A.at(i, c) = A.at(i, c) * u;
}
void row_scale(Mat3& A, int r, const TSeries& u) {
  for (int j = 0; j < 3; ++j) A.at(r, j) = A.at(r, j) * u;
}

} // namespace

SmithResult smith_decompose(const Mat3& M) {
  const FieldCtx& F = M.field();
  int precI = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) precI = std::max(precI, M.at(i, j).prec());
  Mat3 S = M;
  Mat3 k1 = Mat3::identity(F, precI);
  Mat3 k2 = Mat3::identity(F, precI);
  std::array<int, 3> d{0, 0, 0};

  for (int pos = 0; pos < 3; ++pos) {
    int bi = -1, bj = -1, bv = 0, worst_prec = 1 << 30;
    for (int i = pos; i < 3; ++i)
      for (int j = pos; j < 3; ++j) {
        const TSeries& s = S.at(i, j);
        if (s.zero_window()) {
          worst_prec = std::min(worst_prec, s.prec());
          continue;
        }
        int v = s.valuation();
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0)
      throw InsufficientPrecision(worst_prec, "no visible pivot in smith step");
    if (bi != pos) {
      row_swap(S, bi, pos);
      col_swap(k1, bi, pos);
    }
    if (bj != pos) {
      col_swap(S, bj, pos);
      row_swap(k2, bj, pos);
    }
    int v = S.at(pos, pos).valuation();
    d[pos] = v;
    TSeries u = S.at(pos, pos).shifted(-v); // unit
    TSeries uinv = u.invert();
    row_scale(S, pos, uinv);
    col_scale(k1, pos, u);
    S.at(pos, pos) = TSeries::monomial(F, v, 1, S.at(pos, pos).prec());
    for (int i = pos + 1; i < 3; ++i) {
      const TSeries& e = S.at(i, pos);
      if (e.zero_window()) {
        S.at(i, pos) = TSeries(F, e.prec());
        continue;
      }
      TSeries f = e.shifted(-v).negated(); // -entry / t^v, in O
      row_addmul(S, i, pos, f);
      col_addmul(k1, pos, i, f.negated());
      S.at(i, pos) = TSeries(F, S.at(i, pos).prec());
    }
    for (int j = pos + 1; j < 3; ++j) {
      const TSeries& e = S.at(pos, j);
      if (e.zero_window()) {
        S.at(pos, j) = TSeries(F, e.prec());
        continue;
      }
      TSeries f = e.shifted(-v).negated();
      col_addmul(S, j, pos, f);
      row_addmul(k2, pos, j, f.negated());
      S.at(pos, j) = TSeries(F, S.at(pos, j).prec());
    }
  }

  // d is increasing; conjugate by the order-reversing permutation so the
  // cocharacter is dominant
  row_swap(S, 0, 2);
  col_swap(k1, 0, 2);
  col_swap(S, 0, 2);
  row_swap(k2, 0, 2);
  return SmithResult{k1, {d[2], d[1], d[0]}, k2};
}

// ---------------------------------------------------------------------------
// Exact Hermite form via the truncated ring O/t^B

namespace {

// coefficient vector of length B, index = exponent
using RPoly = std::vector<felem>;

int rval(const RPoly& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return (int)i;
  return (int)a.size();
}

RPoly rmul(const FieldCtx& F, const RPoly& a, const RPoly& b) {
  size_t B = a.size();
  RPoly r(B, 0);
  for (size_t i = 0; i < B; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j + i < B; ++j)
      if (b[j] != 0) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

void rsubmul(const FieldCtx& F, RPoly& dst, const RPoly& f, const RPoly& src) {
  size_t B = dst.size();
  for (size_t i = 0; i < B; ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j + i < B; ++j)
      if (src[j] != 0)
        dst[i + j] = F.sub(dst[i + j], F.mul(f[i], src[j]));
  }
}

RPoly runit_inv(const FieldCtx& F, const RPoly& u) {
  size_t B = u.size();
  RPoly w(B, 0);
  felem u0inv = F.inv(u[0]);
  w[0] = u0inv;
  for (size_t k = 1; k < B; ++k) {
    felem acc = 0;
    for (size_t i = 1; i <= k; ++i)
      if (u[i] != 0) acc = F.add(acc, F.mul(u[i], w[k - i]));
    w[k] = F.neg(F.mul(u0inv, acc));
  }
  return w;
}

RPoly rshift_down(const RPoly& a, int k) {
  RPoly r(a.size(), 0);
  for (size_t i = k; i < a.size(); ++i) r[i - k] = a[i];
  return r;
}

} // namespace

bool HermiteData::operator<(const HermiteData& o) const {
  if (d != o.d) return d < o.d;
  return off < o.off;
}

HermiteData hermite_exact(const Mat3& M) {
  const FieldCtx& F = M.field();
  // scale so all entries live in O, then work modulo t^B for B large enough
  // to determine the lattice and its reduced basis exactly
  int a = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const TSeries& s = M.at(i, j);
      if (!s.zero_window()) a = std::max(a, -s.valuation());
    }
  int vd = M.det().valuation(); // throws if the determinant window is blank
  int vdpp = vd + 3 * a;
  if (vdpp < 0) throw std::invalid_argument("matrix not integral after scaling");
  int B = 2 * vdpp + 1;
  int min_prec = 1 << 30;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) min_prec = std::min(min_prec, M.at(i, j).prec());
  if (min_prec + a < B)
    throw InsufficientPrecision(min_prec, "window too small for exact hermite");

  // g[i][j] = coefficients of t^a * M[i][j] on [0, B)
  std::array<std::array<RPoly, 3>, 3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      RPoly c(B, 0);
      for (auto& [e, x] : M.at(i, j).terms()) {
        int ee = e + a;
        if (ee >= 0 && ee < B) c[ee] = x;
      }
      g[i][j] = std::move(c);
    }

  std::array<int, 3> d{0, 0, 0};
  // eliminate from the bottom row upward; pivot for row i goes to column i
  for (int i = 2; i >= 0; --i) {
    int bj = -1, bv = B;
    for (int j = 0; j <= i; ++j) {
      int v = rval(g[i][j]);
      if (v < bv) {
        bv = v;
        bj = j;
      }
    }
    if (bv >= B)
      throw InsufficientPrecision(min_prec, "no pivot in hermite step");
    if (bj != i)
      for (int r = 0; r < 3; ++r) std::swap(g[r][bj], g[r][i]);
    d[i] = bv;
    RPoly u = rshift_down(g[i][i], bv);
    RPoly uinv = runit_inv(F, u);
    for (int r = 0; r < 3; ++r) g[r][i] = rmul(F, g[r][i], uinv);
    // pivot is now exactly t^bv modulo error beyond the safe range
    g[i][i].assign(B, 0);
    g[i][i][bv] = 1;
    for (int j = 0; j < i; ++j) {
      RPoly f = rshift_down(g[i][j], bv);
      for (int r = 0; r < 3; ++r) rsubmul(F, g[r][j], f, g[r][i]);
      g[i][j].assign(B, 0);
    }
  }
  // reduce above-diagonal entries modulo the row pivot power
  for (int j = 1; j < 3; ++j)
    for (int i = j - 1; i >= 0; --i) {
      RPoly f = rshift_down(g[i][j], d[i]); // the part with exponents >= d[i]
      bool any = false;
      for (felem x : f)
        if (x) { any = true; break; }
      if (any)
        for (int r = 0; r <= i; ++r) rsubmul(F, g[r][j], f, g[r][i]);
      // clean arithmetic noise at or beyond the pivot power
      for (int e = d[i]; e < B; ++e) g[i][j][e] = 0;
    }

  HermiteData h;
  for (int i = 0; i < 3; ++i) h.d[i] = d[i] - a;
  auto grab = [&](int i, int j) {
    PolyEntry p;
    for (int e = 0; e < B; ++e)
      if (g[i][j][e] != 0) p.terms.emplace_back(e - a, g[i][j][e]);
    return p;
  };
  h.off[0] = grab(0, 1);
  h.off[1] = grab(0, 2);
  h.off[2] = grab(1, 2);
  if (h.d[0] + h.d[1] + h.d[2] != vd)
    throw std::logic_error("hermite pivot sum mismatch");
  return h;
}

Mat3 hermite_form(const Mat3& M) {
  HermiteData h = hermite_exact(M);
  const FieldCtx& F = M.field();
  int prec = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prec = std::max(prec, M.at(i, j).prec());
  Mat3 H(F, prec);
  for (int i = 0; i < 3; ++i)
    H.at(i, i) = TSeries::monomial(F, h.d[i], 1, prec);
  H.at(0, 1) = TSeries::from_terms(F, h.off[0].terms, prec);
  H.at(0, 2) = TSeries::from_terms(F, h.off[1].terms, prec);
  H.at(1, 2) = TSeries::from_terms(F, h.off[2].terms, prec);
  return H;
}

// ---------------------------------------------------------------------------
// Vertex

Vertex::Vertex(const FieldCtx& F, HermiteData h) : F_(&F), h_(std::move(h)) {
  int sum = h_.d[0] + h_.d[1] + h_.d[2];
  int tau = ((sum % 3) + 3) % 3;
  int r = (sum - tau) / 3;
  if (r != 0) {
    for (auto& di : h_.d) di -= r;
    for (auto& entry : h_.off)
      for (auto& [e, c] : entry.terms) e -= r;
  }
}

Mat3 Vertex::basis(int prec) const {
  Mat3 H(*F_, prec);
  for (int i = 0; i < 3; ++i)
    H.at(i, i) = TSeries::monomial(*F_, h_.d[i], 1, prec);
  H.at(0, 1) = TSeries::from_terms(*F_, h_.off[0].terms, prec);
  H.at(0, 2) = TSeries::from_terms(*F_, h_.off[1].terms, prec);
  H.at(1, 2) = TSeries::from_terms(*F_, h_.off[2].terms, prec);
  return H;
}

bool Vertex::is_rational() const {
  for (auto& entry : h_.off)
    for (auto& [e, c] : entry.terms)
      if (!F_->in_base_field(c)) return false;
  return true;
}

std::string Vertex::str() const {
  std::ostringstream os;
  os << "V(d=[" << h_.d[0] << "," << h_.d[1] << "," << h_.d[2] << "]";
  const char* names[3] = {"(0,1)", "(0,2)", "(1,2)"};
  for (int k = 0; k < 3; ++k) {
    if (h_.off[k].terms.empty()) continue;
    os << " " << names[k] << "=";
    for (auto& [e, c] : h_.off[k].terms)
      os << F_->to_string(c) << "t^" << e << ";";
  }
  os << ")";
  return os.str();
}

Vertex vertex_of(const Mat3& M) { return Vertex(M.field(), hermite_exact(M)); }

Vertex vertex_of_retry(const FieldCtx&, int prec0,
                       const std::function<Mat3(int)>& make) {
  return with_precision_retry(prec0, [&](int prec) { return vertex_of(make(prec)); });
}

Vertex act(const Mat3& g, const Vertex& v) {
  int prec = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prec = std::max(prec, g.at(i, j).prec());
  return vertex_of(g * v.basis(prec));
}

Vertex sigma_vertex(const Vertex& v) {
  HermiteData h = v.data();
  const FieldCtx& F = v.field();
  for (auto& entry : h.off)
    for (auto& [e, c] : entry.terms) c = F.frobenius(c);
  return Vertex(F, h);
}

Vertex standard_vertex(const FieldCtx& F, int which) {
  HermiteData h;
  h.d = {0, 0, 0};
  if (which >= 1) h.d[0] = 1;
  if (which >= 2) h.d[1] = 1;
  return Vertex(F, h);
}

// ---------------------------------------------------------------------------
// Lattice enumeration

namespace {

// exact Laurent polynomials as sorted term lists
using LP = std::vector<std::pair<int, felem>>;

LP lp_sub(const FieldCtx& F, const LP& a, const LP& b) {
  std::map<int, felem> acc;
  for (auto& [e, c] : a) acc[e] = F.add(acc.count(e) ? acc[e] : 0, c);
  for (auto& [e, c] : b) acc[e] = F.sub(acc.count(e) ? acc[e] : 0, c);
  LP r;
  for (auto& [e, c] : acc)
    if (c != 0) r.emplace_back(e, c);
  return r;
}

LP lp_mul(const FieldCtx& F, const LP& a, const LP& b) {
  std::map<int, felem> acc;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      felem prod = F.mul(ca, cb);
      auto it = acc.find(ea + eb);
      if (it == acc.end())
        acc[ea + eb] = prod;
      else
        it->second = F.add(it->second, prod);
    }
  LP r;
  for (auto& [e, c] : acc)
    if (c != 0) r.emplace_back(e, c);
  return r;
}

LP lp_shift(LP a, int k) {
  for (auto& [e, c] : a) e += k;
  return a;
}

int lp_minexp(const LP& a) { return a.empty() ? 1 << 30 : a.front().first; }

// does the lattice with basis H contain t^N * Lambda?
bool contains_shell(const FieldCtx& F, const std::array<int, 3>& d,
                    const LP& h01, const LP& h02, const LP& h12, int N) {
  for (int j = 0; j < 3; ++j) {
    LP rhs0 = (j == 0) ? LP{{N, 1}} : LP{};
    LP rhs1 = (j == 1) ? LP{{N, 1}} : LP{};
    LP rhs2 = (j == 2) ? LP{{N, 1}} : LP{};
    LP x2 = lp_shift(rhs2, -d[2]);
    if (lp_minexp(x2) < 0) return false;
    LP x1 = lp_shift(lp_sub(F, rhs1, lp_mul(F, h12, x2)), -d[1]);
    if (lp_minexp(x1) < 0) return false;
    LP acc = lp_sub(F, rhs0, lp_mul(F, h01, x1));
    acc = lp_sub(F, acc, lp_mul(F, h02, x2));
    LP x0 = lp_shift(acc, -d[0]);
    if (lp_minexp(x0) < 0) return false;
  }
  return true;
}

struct SlotSpec {
  int entry; // 0 -> (0,1), 1 -> (0,2), 2 -> (1,2)
  int exp;
};

void run_pattern(const FieldCtx& F, const std::array<int, 3>& d, int N,
                 const std::vector<felem>& elems,
                 const std::function<void(const Vertex&)>& cb) {
  std::vector<SlotSpec> slots;
  int lo01 = std::max(-N, d[0] + d[1] - N);
  int lo12 = std::max(-N, d[1] + d[2] - N);
  int lo02 = -N;
  for (int e = lo01; e < d[0]; ++e) slots.push_back({0, e});
  for (int e = lo02; e < d[0]; ++e) slots.push_back({1, e});
  for (int e = lo12; e < d[1]; ++e) slots.push_back({2, e});

  std::vector<size_t> idx(slots.size(), 0);
  for (;;) {
    LP h01, h02, h12;
    for (size_t k = 0; k < slots.size(); ++k) {
      felem c = elems[idx[k]];
      if (c == 0) continue;
      LP* dst = slots[k].entry == 0 ? &h01 : slots[k].entry == 1 ? &h02 : &h12;
      dst->emplace_back(slots[k].exp, c);
    }
    if (contains_shell(F, d, h01, h02, h12, N)) {
      HermiteData h;
      h.d = d;
      h.off[0].terms = h01;
      h.off[1].terms = h02;
      h.off[2].terms = h12;
      cb(Vertex(F, h));
    }
    // little-endian odometer
    size_t k = 0;
    while (k < idx.size()) {
      if (++idx[k] < elems.size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
    if (idx.empty()) break;
  }
}

} // namespace

void enumerate_lattices(const FieldCtx& F, int N, int eta,
                        const std::function<void(const Vertex&)>& cb,
                        bool rational_only, int shards) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::vector<felem> elems;
  if (rational_only)
    elems = F.base_field_elems();
  else
    for (felem a = 0; a < F.order(); ++a) elems.push_back(a);

  std::vector<std::array<int, 3>> patterns;
  for (int d0 = -N; d0 <= N; ++d0)
    for (int d1 = -N; d1 <= N; ++d1) {
      int d2 = eta - d0 - d1;
      if (d2 < -N || d2 > N) continue;
      patterns.push_back({d0, d1, d2});
    }

  if (shards <= 1) {
    for (auto& d : patterns) run_pattern(F, d, N, elems, cb);
    return;
  }
  std::vector<std::vector<Vertex>> results(patterns.size());
  std::vector<std::thread> workers;
  int nth = std::min<int>(shards, (int)patterns.size());
  for (int tid = 0; tid < nth; ++tid)
    workers.emplace_back([&, tid] {
      for (size_t pi = tid; pi < patterns.size(); pi += nth)
        run_pattern(F, patterns[pi], N, elems,
                    [&](const Vertex& v) { results[pi].push_back(v); });
    });
  for (auto& w : workers) w.join();
  for (auto& vec : results)
    for (auto& v : vec) cb(v);
}

std::uint64_t count_lattices(const FieldCtx& F, int N, int eta) {
  std::uint64_t n = 0;
  enumerate_lattices(F, N, eta, [&](const Vertex&) { ++n; });
  return n;
}

} // namespace gl3
