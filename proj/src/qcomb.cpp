#include "tetra/qcomb.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace tetra {

namespace {

template <class Key>
class Memo {
 public:
  template <class F>
  QCoeff get(const Key& k, F&& make) {
    {
      std::lock_guard<std::mutex> g(m_);
      auto it = t_.find(k);
      if (it != t_.end()) return it->second;
    }
    QCoeff v = make();
    std::lock_guard<std::mutex> g(m_);
    return t_.emplace(k, std::move(v)).first->second;
  }

 private:
  std::mutex m_;
  std::map<Key, QCoeff> t_;
};

HalfLaurent one_minus_pow(int e) { return HalfLaurent(1) - HalfLaurent::monomial(1, e); }

HalfLaurent poch_poly(int m, int e) {
  HalfLaurent r(1);
  for (int k = 1; k <= m; ++k) r *= one_minus_pow(k * e);
  return r;
}

}  // namespace

QCoeff bracket(int k, int e, int pi) {
  if (k <= 0) return QCoeff(0);
  static Memo<std::tuple<int, int, int>> memo;
  return memo.get({k, e, pi}, [&] {
    // (x^k - y^k)/(x - y) = sum_j x^j y^{k-1-j} with x = pi s^e, y = s^-e
    HalfLaurent r;
    for (int j = 0; j < k; ++j) r += HalfLaurent::monomial((pi < 0 && j % 2) ? -1 : 1, e * (2 * j - k + 1));
    return QCoeff(r);
  });
}

QCoeff bracket_fact(int m, int e, int pi) {
  if (m <= 0) return QCoeff(1);
  static Memo<std::tuple<int, int, int>> memo;
  return memo.get({m, e, pi}, [&] { return bracket_fact(m - 1, e, pi) * bracket(m, e, pi); });
}

QCoeff poch(int m, int e) {
  if (m <= 0) return QCoeff(1);
  static Memo<std::pair<int, int>> memo;
  return memo.get({m, e}, [&] { return QCoeff(poch_poly(m, e)); });
}

QCoeff qbinom(int l, int m, int e) {
  if (m < 0 || m > l) return QCoeff(0);
  if (m == 0 || m == l) return QCoeff(1);
  static Memo<std::tuple<int, int, int>> memo;
  // Pascal rule keeps the value a polynomial.
  return memo.get({l, m, e}, [&] { return qbinom(l - 1, m - 1, e) + QCoeff::s_pow(e * m) * qbinom(l - 1, m, e); });
}

QCoeff curly(const std::vector<int>& top, const std::vector<int>& bot, int e) {
  for (int x : top)
    if (x < 0) return QCoeff(0);
  for (int x : bot)
    if (x < 0) return QCoeff(0);
  std::vector<int> t = top, b = bot;
  std::sort(t.begin(), t.end());
  std::sort(b.begin(), b.end());
  static Memo<std::tuple<std::vector<int>, std::vector<int>, int>> memo;
  return memo.get({t, b, e}, [&] {
    // Pair sorted entries so that most factors cancel before multiplying out.
    HalfLaurent num(1), den(1);
    std::size_t n = std::max(t.size(), b.size());
    t.insert(t.begin(), n - t.size(), 0);
    b.insert(b.begin(), n - b.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = b[i] + 1; k <= t[i]; ++k) num *= one_minus_pow(k * e);
      for (int k = t[i] + 1; k <= b[i]; ++k) den *= one_minus_pow(k * e);
    }
    return QCoeff(num, den).canonical();
  });
}

}  // namespace tetra
