#include "tetra/ops3d.hpp"

#include "tetra/qcomb.hpp"
#include "tetra/zrec.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tetra {

namespace {

constexpr SlotKind kB = SlotKind::Boson, kF = SlotKind::Fermion;

QCoeff qp(int n) { return QCoeff::q_pow(n); }
QCoeff sp(int n) { return QCoeff::s_pow(n); }
QCoeff nq(int n) { return neg_one_pow(n) * qp(n); }  // (-q)^n
QCoeff sgn(int n) { return neg_one_pow(n); }
const QCoeff& one() {
  static const QCoeff v(1);
  return v;
}
QCoeff om(const QCoeff& x) { return one() - x; }  // 1 - x

std::vector<WeightForm> forms3() { return {{{1, 1, 0}}, {{0, 1, 1}}}; }
std::vector<WeightForm> forms4() { return {{{1, 2, 1, 0}}, {{0, 1, 1, 1}}}; }

MultiIndex rev(const MultiIndex& x) { return {x.rbegin(), x.rend()}; }

// J_{i,0,k,l}^{a,0,c,d}
QCoeff j_inner(int i, int k, int l, int a, int c, int d) {
  if (i + k != a + c || k + l != c + d) return QCoeff(0);
  QCoeff r;
  for (int lam = 0; lam <= std::min(i, c); ++lam) {
    const int psi2 = (l + d + 1) * (i + c - 2 * lam) + c - i;
    QCoeff cu = curly({i, k}, {lam, i - lam, c - lam, k - c + lam});
    if (cu.is_zero()) continue;
    r += sgn(c + lam) * curly({d + lam}, {d}, 4) * sp(psi2) * cu;
  }
  return r;
}

}  // namespace

QCoeff apply_variant(const QCoeff& c, QVariant v) {
  switch (v) {
    case QVariant::Q: return c;
    case QVariant::QInv: return c.subst_power(-1);
    case QVariant::Q2: return c.subst_power(2);
    case QVariant::NegQ: return c.subst_unit(1);
  }
  return c;
}

QCoeff elem_R(const MultiIndex& out, const MultiIndex& in) {
  const int i = in[0], j = in[1], k = in[2], b = out[1], c = out[2];
  QCoeff r;
  for (int lam = 0; lam <= b; ++lam) {
    const int mu = b - lam;
    QCoeff bin = qbinom(i, mu, 4) * qbinom(j, lam, 4);
    if (bin.is_zero()) continue;
    const int e = i * (c - j) + (k + 1) * lam + mu * (mu - k);
    r += sgn(lam) * qp(e) * curly({c + mu}, {c}, 4) * bin;
  }
  return r;
}

QCoeff elem_L(const MultiIndex& out, const MultiIndex& in) {
  const int i = in[0], j = in[1], k = in[2], a = out[0], b = out[1];
  const int from = 2 * i + j, to = 2 * a + b;  // (i,j) as a 2-bit code
  switch (from * 4 + to) {
    case 0 * 4 + 0: return one();           // 00 -> 00
    case 3 * 4 + 3: return one();           // 11 -> 11
    case 1 * 4 + 1: return -qp(k + 1);      // 01 -> 01
    case 2 * 4 + 2: return qp(k);           // 10 -> 10
    case 2 * 4 + 1: return om(qp(2 * k));   // 10 -> 01, c = k - 1
    case 1 * 4 + 2: return one();           // 01 -> 10, c = k + 1
  }
  return QCoeff(0);
}

QCoeff elem_N(const MultiIndex& out, const MultiIndex& in) {
  const int i = in[0], j = in[1], k = in[2], a = out[0], c = out[2];
  const int from = 2 * i + k, to = 2 * a + c;
  switch (from * 4 + to) {
    case 0 * 4 + 0: return qp(j);
    case 3 * 4 + 3: return -qp(j + 1);
    case 1 * 4 + 1:
    case 2 * 4 + 2: return one();
    case 3 * 4 + 0: return qp(j) * om(qp(2));  // b = j + 1
    case 0 * 4 + 3: return bracket(j);         // b = j - 1
  }
  return QCoeff(0);
}

QCoeff elem_J(const MultiIndex& out, const MultiIndex& in) {
  const int i = in[0], j = in[1], k = in[2], l = in[3];
  const int a = out[0], b = out[1], c = out[2], d = out[3];
  QCoeff sum;
  for (int al = 0; al <= std::min(a, c); ++al)
    for (int be = 0; be <= b; ++be)
      for (int ga = 0; ga <= b - be; ++ga) {
        QCoeff cu = curly({j, b - be, j + k - al - be, i + j - al - be},
                          {al, be, ga, c - al, a - al, j - al - be, b - be - ga});
        if (cu.is_zero()) continue;
        const int t = al + be + ga;
        QCoeff in0 = j_inner(a + b - t, b + c - t, d, i + j - t, j + k - t, l);
        if (in0.is_zero()) continue;
        const int psi1 = al * (al + 2 * b - 2 * be - 1) + (2 * be - b) * (a + b + c) + ga * (ga - 1) - j * (i + j + k);
        sum += sgn(al + ga) / poch(b - be, 4) * sp(psi1) * in0 * cu;
      }
  return poch(l, 4) / poch(d, 4) * sum;
}

QCoeff elem_X(const MultiIndex& out, const MultiIndex& in) {
  const int j = in[1], l = in[3], a = out[0], b = out[1], c = out[2], d = out[3];
  const QCoeff op = one() + q();
  switch ((2 * j + l) * 4 + (2 * b + d)) {
    // (j,l) -> (b,d)
    case 0 * 4 + 0: return om(om(nq(c)) * qp(a));
    case 2 * 4 + 0: return sgn(c) * sp(a + c - 1) * op;
    case 1 * 4 + 0: return sgn(c + 1) * sp(a + c - 1) * op * om(qp(a + 1));
    case 3 * 4 + 0: return qp(a + c - 1) * op * op;
    case 0 * 4 + 2: return sgn(c + 1) * sp(a - c + 1) * om(qp(a + 1)) * om(nq(c + 1)) / op;
    case 2 * 4 + 2: return qp(a + 1);
    case 1 * 4 + 2: return om(qp(a + 1)) * om(qp(a + 2));
    case 3 * 4 + 2: return sgn(c) * sp(a + c + 1) * op * om(qp(a + 1));
    case 0 * 4 + 1: return sgn(c) * sp(a - c - 1) * om(nq(c + 1)) / op;
    case 2 * 4 + 1: return one();
    case 1 * 4 + 1: return qp(a);
    case 3 * 4 + 1: return sgn(c + 1) * sp(a + c - 1) * op;
    case 0 * 4 + 3: return qp(a - c) * om(nq(c + 1)) * om(nq(c + 2)) / (op * op);
    case 2 * 4 + 3: return sgn(c + 1) * sp(a - c + 1) * om(nq(c + 1)) / op;
    case 1 * 4 + 3: return sgn(c) * sp(a - c + 1) * om(qp(a + 1)) * om(nq(c + 1)) / op;
    case 3 * 4 + 3: return om(om(nq(c + 1)) * qp(a + 1));
  }
  return QCoeff(0);
}

QCoeff elem_Y(const MultiIndex& out, const MultiIndex& in) {
  const int j = in[1], l = in[3], a = out[0], b = out[1], c = out[2], d = out[3];
  const QCoeff op = one() + q(), mq = one() - q();
  switch ((2 * j + l) * 4 + (2 * b + d)) {
    case 0 * 4 + 0: return om(om(qp(c)) * nq(a));
    case 2 * 4 + 0: return sp(a + c - 1) * op;
    case 1 * 4 + 0: return sgn(a) * sp(a + c - 1) * mq * om(nq(a + 1));
    case 3 * 4 + 0: return sgn(a) * qp(a + c - 1) * om(qp(2));
    case 0 * 4 + 2: return sgn(a + 1) * sp(a - c + 1) * om(nq(a + 1)) * om(qp(c + 1)) / op;
    case 2 * 4 + 2: return nq(a + 1);
    case 1 * 4 + 2: return sgn(a) * mq * om(nq(a + 1)) * om(nq(a + 2)) / op;
    case 3 * 4 + 2: return sgn(a) * sp(a + c + 1) * mq * om(nq(a + 1));
    case 0 * 4 + 1: return sp(a - c - 1) * om(qp(c + 1)) / mq;
    case 2 * 4 + 1: return sgn(a) * op / mq;
    case 1 * 4 + 1: return nq(a);
    case 3 * 4 + 1: return -sp(a + c - 1) * op;
    case 0 * 4 + 3: return sgn(a + 1) * qp(a - c) * om(qp(c + 1)) * om(qp(c + 2)) / om(qp(2));
    case 2 * 4 + 3: return sp(a - c + 1) * om(qp(c + 1)) / mq;
    case 1 * 4 + 3: return sgn(a) * sp(a - c + 1) * om(nq(a + 1)) * om(qp(c + 1)) / op;
    case 3 * 4 + 3: return om(om(qp(c + 1)) * nq(a + 1));
  }
  return QCoeff(0);
}

namespace {

SparseOp build(const std::string& base, QVariant v, std::vector<SlotKind> sig, std::vector<WeightForm> forms,
               ElementFn fn) {
  if (v == QVariant::Q) return SparseOp(base, std::move(sig), std::move(forms), std::move(fn));
  return SparseOp(base + variant_suffix(v), std::move(sig), std::move(forms),
                  [fn, v](const MultiIndex& o, const MultiIndex& i) { return apply_variant(fn(o, i), v); });
}

}  // namespace

SparseOp op_R(QVariant v) { return build("R", v, {kB, kB, kB}, forms3(), elem_R); }
SparseOp op_L(QVariant v) { return build("L", v, {kF, kF, kB}, forms3(), elem_L); }
SparseOp op_N(QVariant v) { return build("N", v, {kF, kB, kF}, forms3(), elem_N); }
SparseOp op_J(QVariant v) { return build("J", v, {kB, kB, kB, kB}, forms4(), elem_J); }
SparseOp op_X(QVariant v) { return build("X", v, {kB, kF, kB, kF}, forms4(), elem_X); }
SparseOp op_Y(QVariant v) { return build("Y", v, {kB, kF, kB, kF}, forms4(), elem_Y); }

SparseOp op_M(QVariant v) {
  return build("M", v, {kB, kF, kF}, forms3(),
               [](const MultiIndex& o, const MultiIndex& i) { return elem_L(rev(o), rev(i)); });
}

SparseOp op_Ltilde(QVariant v) {
  // Ltilde_{ijk}^{abc} = L(-q)_{jki}^{bca}; conserves j+k and i+k
  return build("Ltilde", v, {kB, kF, kF}, {{{0, 1, 1}}, {{1, 0, 1}}}, [](const MultiIndex& o, const MultiIndex& i) {
    QCoeff c = apply_variant(elem_L({o[1], o[2], o[0]}, {i[1], i[2], i[0]}), QVariant::NegQ);
    if (!c.is_real()) throw std::logic_error("Ltilde element has an imaginary part");
    return c;
  });
}

SparseOp op_K(QVariant v) {
  // K(q)_{ijkl}^{abcd} = J(q^2)_{lkji}^{dcba}
  return build("K", v, {kB, kB, kB, kB}, {{{0, 1, 2, 1}}, {{1, 1, 1, 0}}},
               [](const MultiIndex& o, const MultiIndex& i) {
                 return apply_variant(elem_J(rev(o), rev(i)), QVariant::Q2);
               });
}

SparseOp op_Z(QVariant v) {
  return build("Z", v, {kB, kB, kB, kB}, forms4(), [](const MultiIndex& o, const MultiIndex& i) {
    return z_gamma({i[0], i[1], i[2], i[3], o[0], o[1], o[2], o[3]});
  });
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"R", "L", "M", "Ltilde", "N", "J", "K", "X", "Y", "Z"};
  return names;
}

SparseOp family(const std::string& name, QVariant v) {
  static std::mutex mu;
  static std::map<std::pair<std::string, QVariant>, SparseOp> cache;
  std::lock_guard g(mu);
  auto it = cache.find({name, v});
  if (it != cache.end()) return it->second;
  SparseOp op;
  if (name == "R") op = op_R(v);
  else if (name == "L") op = op_L(v);
  else if (name == "M") op = op_M(v);
  else if (name == "Ltilde") op = op_Ltilde(v);
  else if (name == "N") op = op_N(v);
  else if (name == "J") op = op_J(v);
  else if (name == "K") op = op_K(v);
  else if (name == "X") op = op_X(v);
  else if (name == "Y") op = op_Y(v);
  else if (name == "Z") op = op_Z(v);
  else throw std::invalid_argument("unknown operator family '" + name + "'");
  return cache.emplace(std::make_pair(name, v), op).first->second;
}

}  // namespace tetra
