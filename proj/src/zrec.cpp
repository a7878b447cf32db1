#include "tetra/zrec.hpp"

#include "tetra/qcomb.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace tetra {

namespace {

QCoeff qp(int n) { return QCoeff::q_pow(n); }
QCoeff sp(int n) { return QCoeff::s_pow(n); }
QCoeff nq(int n) { return neg_one_pow(n) * qp(n); }
QCoeff sgn(int n) { return neg_one_pow(n); }
QCoeff om(const QCoeff& x) { return QCoeff(1) - x; }

class Table {
 public:
  template <class F>
  QCoeff get(const Index8& k, F&& make) {
    {
      std::shared_lock lk(mu_);
      auto it = t_.find(k);
      if (it != t_.end()) return it->second;
    }
    QCoeff v = make().canonical();
    std::unique_lock lk(mu_);
    return t_.emplace(k, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<Index8, QCoeff> t_;
};

bool negative(const Index8& x) {
  for (int v : x)
    if (v < 0) return true;
  return false;
}

// Both transition coefficients conserve i+j+k and j+2k+l.
bool off_shell(const Index8& x) {
  auto [i, j, k, l, a, b, c, d] = x;
  return i + j + k != a + b + c || j + 2 * k + l != b + 2 * c + d;
}

}  // namespace

QCoeff z_raw(const Index8& x) {
  if (negative(x) || off_shell(x)) return QCoeff(0);
  static Table memo;
  return memo.get(x, [&]() -> QCoeff {
    auto [i, j, k, l, a, b, c, d] = x;
    auto Z = [](int i, int j, int k, int l, int a, int b, int c, int d) { return z_raw({i, j, k, l, a, b, c, d}); };
    if (d >= 1) {
      // Reduces d. The raised c stays below (j+2k+l)/2 by weight conservation,
      // so this phase ends after d steps.
      if (b >= 1 && 2 * (c + 1) > j + 2 * k + l)
        throw std::logic_error("z_raw: phase-one c bound violated");
      QCoeff r = Z(i, j, k, l - 1, a, b, c, d - 1) - bracket(a) * Z(i, j, k, l, a - 1, b + 1, c, d - 1) -
                 sp(2 * a - 2 * b + 1) * om(sgn(b) * qp(b)) * Z(i, j, k, l, a, b - 1, c + 1, d - 1);
      return sgn(b) * qp(c - a) * r;
    }
    if (c >= 1) {
      QCoeff r = sp(2 * l - 2 * j - 3) * om(qp(2)) * Z(i - 1, j, k, l - 2, a, b, c - 1, 0) +
                 qp(l - 2 * k - 2) * om(qp(2 * k + 2)) * Z(i, j - 2, k + 1, l - 2, a, b, c - 1, 0) +
                 sp(2 * l - 2 * k - 1) * om(q()) * Z(i, j - 1, k, l - 1, a, b, c - 1, 0) -
                 qp(l + 1) * Z(i, j, k - 1, l, a, b, c - 1, 0) -
                 om(qp(2 * a)) / om(qp(2)) * sp(-4 * a + 3) * Z(i, j, k, l, a - 1, b + 2, c - 1, 0);
      return qp(b) * r;
    }
    if (b >= 1) {
      QCoeff r = qp(l - j - 1) * om(qp(2)) * Z(i - 1, j, k, l - 1, a, b - 1, 0, 0) +
                 sp(2 * l - 4 * k - 3) * om(qp(2 * k + 2)) * Z(i, j - 2, k + 1, l - 1, a, b - 1, 0, 0) -
                 sgn(l) * qp(-k) * om(nq(l) * om(q())) * Z(i, j - 1, k, l, a, b - 1, 0, 0) +
                 sgn(l + 1) * s() * om(nq(l + 1)) * Z(i, j, k - 1, l + 1, a, b - 1, 0, 0);
      return qp(a) * r;
    }
    // b = c = d = 0 forces j = k = l = 0 and i = a.
    return QCoeff(1);
  });
}

QCoeff z_gamma(const Index8& x) {
  // Z-element (i,j,k,l | a,b,c,d) is the normalized coefficient at (l,k,j,i | d,c,b,a).
  auto [i, j, k, l, a, b, c, d] = x;
  const Index8 r{l, k, j, i, d, c, b, a};
  QCoeff raw = z_raw(r);
  if (raw.is_zero()) return raw;
  auto [I, J, K, L, A, B, C, D] = r;
  QCoeff num = bracket_fact(I, 2) * bracket_fact(J, 1, -1) * bracket_fact(K, 2) * bracket_fact(L, 1, -1);
  QCoeff den = bracket_fact(A, 2) * bracket_fact(B, 1, -1) * bracket_fact(C, 2) * bracket_fact(D, 1, -1);
  return (num / den * raw).canonical();
}

QCoeff x_raw(const Index8& x) {
  if (negative(x) || off_shell(x)) return QCoeff(0);
  auto [i, j, k, l, a, b, c, d] = x;
  if (i > 1 || k > 1 || a > 1 || c > 1) return QCoeff(0);
  static Table memo;
  return memo.get(x, [&]() -> QCoeff {
    auto X = [](int i, int j, int k, int l, int a, int b, int c, int d) { return x_raw({i, j, k, l, a, b, c, d}); };
    const QCoeff op = QCoeff(1) + q();
    if (a == 1) {
      // left multiplication by b1
      return sgn(j + k) * qp(j + 2 * k + l) * X(i - 1, j, k, l, 0, b, c, d) -
             QCoeff((k + 1) % 2 ? 1 : 0) * sp(4 * k + 2 * l + 1) * X(i, j - 2, k + 1, l, 0, b, c, d) +
             om(qp(l + 1)) / om(q()) * nq(k) * X(i, j - 1, k, l + 1, 0, b, c, d) +
             op * om(qp(l + 2)) * om(qp(l + 1)) / (om(q()) * om(qp(2))) * sp(-2 * l - 1) *
                 X(i, j, k - 1, l + 2, 0, b, c, d);
    }
    if (b >= 1) {
      // left multiplication by b2 (a = 0)
      return sgn(j + k) * qp(j + 2 * k + l - 1) * om(qp(2)) * X(i - 1, j, k, l - 1, 0, b - 1, c, d) -
             QCoeff((k + 1) % 2 ? 1 : 0) * sp(4 * k + 2 * l - 1) * om(qp(2)) * X(i, j - 2, k + 1, l - 1, 0, b - 1, c, d) +
             nq(k) * om(op * qp(l)) * X(i, j - 1, k, l, 0, b - 1, c, d) -
             s() * op * om(qp(l + 1)) / om(q()) * X(i, j, k - 1, l + 1, 0, b - 1, c, d);
    }
    if (d >= 1) {
      // left multiplication by b4 at a = b = 0; the other two terms vanish
      return qp(c) * X(i, j, k, l - 1, 0, 0, c, d - 1);
    }
    if (c == 1) {
      // lift from the b4 relation at (a,b,c) = (0,1,0):
      // X^{0,1,0,1} = X_{l-1}^{0,1,0,0} - q^{-1/2}(1+q) X^{0,0,1,0}
      return (X(i, j, k, l - 1, 0, 1, 0, 0) - X(i, j, k, l, 0, 1, 0, 1)) / (sp(-1) * op);
    }
    return QCoeff(1);  // vacuum
  });
}

QCoeff x_oracle(const Index8& x) {
  // X-element (i,j,k,l | a,b,c,d) is the normalized coefficient at (l,k,j,i | d,c,b,a).
  auto [i, j, k, l, a, b, c, d] = x;
  const Index8 r{l, k, j, i, d, c, b, a};
  QCoeff raw = x_raw(r);
  if (raw.is_zero()) return raw;
  auto [I, J, K, L, A, B, C, D] = r;
  QCoeff ratio = bracket_fact(J, -1, -1) * bracket_fact(L, 1) / (bracket_fact(B, -1, -1) * bracket_fact(D, 1));
  return (ratio * raw).canonical();
}

}  // namespace tetra
