#include "gl3adlv/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gl3 {

TSeries::TSeries(const FieldCtx& F, int prec) : F_(&F), lo_(prec), prec_(prec) {}

TSeries TSeries::monomial(const FieldCtx& F, int exp, felem c, int prec) {
  TSeries s(F, prec);
  if (c != 0 && exp < prec) {
    s.lo_ = exp;
    s.c_ = {c};
  }
  return s;
}

TSeries TSeries::from_terms(const FieldCtx& F,
                            const std::vector<std::pair<int, felem>>& terms,
                            int prec) {
  int lo = prec;
  for (auto& [e, c] : terms)
    if (c != 0 && e < lo) lo = e;
  TSeries s(F, prec);
  if (lo == prec) return s;
  s.lo_ = lo;
  s.c_.assign(prec - lo, 0);
  for (auto& [e, c] : terms) {
    if (e >= prec || c == 0) continue;
    s.c_[e - lo] = F.add(s.c_[e - lo], c);
  }
  s.normalize();
  return s;
}

void TSeries::normalize() {
  size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k == c_.size()) {
    c_.clear();
    lo_ = prec_;
    return;
  }
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + k);
    lo_ += (int)k;
  }
}

felem TSeries::coeff(int e) const {
  if (e >= prec_) throw InsufficientPrecision(prec_, "coefficient beyond window");
  if (e < lo_) return 0;
  return c_[e - lo_];
}

int TSeries::valuation() const {
  if (c_.empty()) throw InsufficientPrecision(prec_, "valuation of zero window");
  return lo_;
}

TSeries TSeries::operator+(const TSeries& o) const {
  int prec = std::min(prec_, o.prec_);
  int lo = std::min(lo_, o.lo_);
  if (lo >= prec) return TSeries(*F_, prec);
  TSeries r(*F_, prec);
  r.lo_ = lo;
  r.c_.assign(prec - lo, 0);
  for (int e = lo; e < prec; ++e) {
    felem a = (e >= lo_ && e - lo_ < (int)c_.size()) ? c_[e - lo_] : 0;
    felem b = (e >= o.lo_ && e - o.lo_ < (int)o.c_.size()) ? o.c_[e - o.lo_] : 0;
    r.c_[e - lo] = F_->add(a, b);
  }
  r.normalize();
  return r;
}

TSeries TSeries::negated() const {
  TSeries r = *this;
  for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

TSeries TSeries::operator-(const TSeries& o) const { return *this + o.negated(); }

TSeries TSeries::operator*(const TSeries& o) const {
  if (c_.empty() || o.c_.empty()) {
    // best available bound on the product's window
    int la = c_.empty() ? prec_ : lo_;
    int lb = o.c_.empty() ? o.prec_ : o.lo_;
    int prec = std::min(la + o.prec_, lb + prec_);
    return TSeries(*F_, prec);
  }
  int lo = lo_ + o.lo_;
  int prec = std::min(lo_ + o.prec_, o.lo_ + prec_);
  TSeries r(*F_, prec);
  if (lo >= prec) return r;
  r.lo_ = lo;
  r.c_.assign(prec - lo, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    int ea = lo_ + (int)i;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int e = ea + o.lo_ + (int)j;
      if (e >= prec) break;
      if (o.c_[j] == 0) continue;
      r.c_[e - lo] = F_->add(r.c_[e - lo], F_->mul(c_[i], o.c_[j]));
    }
  }
  r.normalize();
  return r;
}

TSeries TSeries::invert() const {
  int v = valuation(); // throws on zero window
  int len = prec_ - v;
  // unit part u has coefficients c_[0..len), u0 != 0
  std::vector<felem> w(len, 0);
  felem u0inv = F_->inv(c_[0]);
  w[0] = u0inv;
  for (int k = 1; k < len; ++k) {
    felem acc = 0;
    for (int i = 1; i <= k; ++i) {
      felem ui = i < (int)c_.size() ? c_[i] : 0;
      if (ui == 0) continue;
      acc = F_->add(acc, F_->mul(ui, w[k - i]));
    }
    w[k] = F_->neg(F_->mul(u0inv, acc));
  }
  TSeries r(*F_, len - v);
  r.lo_ = -v;
  r.c_ = std::move(w);
  r.normalize();
  return r;
}

TSeries TSeries::sigma(int k) const {
  TSeries r = *this;
  for (auto& c : r.c_) c = F_->frobenius(c, k);
  return r;
}

TSeries TSeries::shifted(int k) const {
  TSeries r = *this;
  r.lo_ += k;
  r.prec_ += k;
  return r;
}

TSeries TSeries::truncated(int new_prec) const {
  if (new_prec >= prec_) return *this;
  TSeries r(*F_, new_prec);
  if (lo_ >= new_prec) return r;
  r.lo_ = lo_;
  r.c_.assign(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), new_prec - lo_));
  r.normalize();
  return r;
}

TSeries TSeries::scaled(felem c) const {
  if (c == 0) return TSeries(*F_, prec_);
  TSeries r = *this;
  for (auto& x : r.c_) x = F_->mul(x, c);
  r.normalize();
  return r;
}

bool TSeries::equals_window(const TSeries& o) const {
  int prec = std::min(prec_, o.prec_);
  int lo = std::min(c_.empty() ? prec_ : lo_, o.c_.empty() ? o.prec_ : o.lo_);
  for (int e = lo; e < prec; ++e) {
    felem a = (e >= lo_ && e - lo_ < (int)c_.size()) ? c_[e - lo_] : 0;
    felem b = (e >= o.lo_ && e - o.lo_ < (int)o.c_.size()) ? o.c_[e - o.lo_] : 0;
    if (a != b) return false;
  }
  return true;
}

std::vector<std::pair<int, felem>> TSeries::terms() const {
  std::vector<std::pair<int, felem>> ts;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) ts.emplace_back(lo_ + (int)i, c_[i]);
  return ts;
}

std::string TSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms()) {
    if (!first) os << " + ";
    first = false;
    os << F_->to_string(c) << "*t^" << e;
  }
  if (first) os << "0";
  os << " + O(t^" << prec_ << ")";
  return os.str();
}

TSeries operator*(felem c, const TSeries& s) { return s.scaled(c); }

} // namespace gl3
