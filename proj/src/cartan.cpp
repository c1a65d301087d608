#include "gl3adlv/cartan.hpp"

#include <algorithm>
#include <sstream>

namespace gl3 {

std::string Cocharacter::str() const {
  std::ostringstream os;
  os << "(" << m[0] << "," << m[1] << "," << m[2] << ")";
  return os.str();
}

CochClass CochClass::of(const std::array<int, 3>& v) {
  std::array<int, 3> s = v;
  std::sort(s.begin(), s.end(), std::greater<int>());
  int sum = s[0] + s[1] + s[2];
  int tau = ((sum % 3) + 3) % 3;
  int r = (sum - tau) / 3;
  return CochClass{{s[0] - r, s[1] - r, s[2] - r}};
}

std::string CochClass::str() const {
  std::ostringstream os;
  os << "[" << e[0] << "," << e[1] << "," << e[2] << "]";
  return os.str();
}

Cocharacter inv(const Mat3& x, const Mat3& y) {
  Mat3 rel = x.inverse() * y;
  return Cocharacter(smith_decompose(rel).lambda);
}

CochClass inv_prime_at(const Vertex& v, const Vertex& w, int prec) {
  return CochClass::of(inv(v.basis(prec), w.basis(prec)));
}

CochClass inv_prime(const Vertex& v, const Vertex& w) {
  int spread = 2;
  for (auto* vx : {&v, &w})
    for (int di : vx->data().d) spread = std::max(spread, 2 * std::abs(di));
  return with_precision_retry(2 * spread + 8, [&](int prec) {
    return inv_prime_at(v, w, prec);
  });
}

bool dominance_leq(const Cocharacter& a, const Cocharacter& b) {
  if (a.sum() != b.sum()) return false;
  return a.m[0] <= b.m[0] && a.m[0] + a.m[1] <= b.m[0] + b.m[1];
}

bool class_leq(const CochClass& a, const CochClass& b) {
  int diff = b.sum() - a.sum();
  if (diff % 3 != 0) return false;
  return dominance_leq(a.rep().shifted(diff / 3), b.rep());
}

} // namespace gl3
