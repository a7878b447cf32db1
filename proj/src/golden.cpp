#include "tetra/golden.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/qcomb.hpp"

namespace tetra::golden {

namespace {

QCoeff Q(int n) { return QCoeff::q_pow(n); }
QCoeff S(int n) { return QCoeff::s_pow(n); }
QCoeff sg(int n) { return neg_one_pow(n); }
QCoeff NQ(int n) { return sg(n) * Q(n); }  // (-q)^n
const QCoeff one(1);
QCoeff P(const char* t) { return QCoeff::parse(t); }

// Element lists of X and Y: in = (i, j, k, l), out = (a, b, c, d). Each row
// fixes (j, l, b, d), the shift of i and k against a and c, and the value.
struct Row {
  int j, l, b, d, di, dk;  // i = a + di, k = c + dk
  QCoeff (*value)(int a, int c);
};

const std::vector<Row> x_rows = {
    {0, 0, 0, 0, 0, 0, [](int a, int c) { return one - (one - NQ(c)) * Q(a); }},
    {1, 0, 0, 0, -1, -1, [](int a, int c) { return sg(c) * S(a + c - 1) * (one + q()); }},
    {0, 1, 0, 0, 1, -1, [](int a, int c) { return sg(c + 1) * S(a + c - 1) * (one + q()) * (one - Q(a + 1)); }},
    {1, 1, 0, 0, 0, -2, [](int a, int c) { return Q(a + c - 1) * (one + q()) * (one + q()); }},
    {0, 0, 1, 0, 1, 1,
     [](int a, int c) { return sg(c + 1) * S(a - c + 1) * (one - Q(a + 1)) * (one - NQ(c + 1)) / (one + q()); }},
    {1, 0, 1, 0, 0, 0, [](int a, int) { return Q(a + 1); }},
    {0, 1, 1, 0, 2, 0, [](int a, int) { return (one - Q(a + 1)) * (one - Q(a + 2)); }},
    {1, 1, 1, 0, 1, -1, [](int a, int c) { return sg(c) * S(a + c + 1) * (one + q()) * (one - Q(a + 1)); }},
    {0, 0, 0, 1, -1, 1, [](int a, int c) { return sg(c) * S(a - c - 1) * (one - NQ(c + 1)) / (one + q()); }},
    {1, 0, 0, 1, -2, 0, [](int, int) { return one; }},
    {0, 1, 0, 1, 0, 0, [](int a, int) { return Q(a); }},
    {1, 1, 0, 1, -1, -1, [](int a, int c) { return sg(c + 1) * S(a + c - 1) * (one + q()); }},
    {0, 0, 1, 1, 0, 2,
     [](int a, int c) { return Q(a - c) * (one - NQ(c + 1)) * (one - NQ(c + 2)) / ((one + q()) * (one + q())); }},
    {1, 0, 1, 1, -1, 1, [](int a, int c) { return sg(c + 1) * S(a - c + 1) * (one - NQ(c + 1)) / (one + q()); }},
    {0, 1, 1, 1, 1, 1,
     [](int a, int c) { return sg(c) * S(a - c + 1) * (one - Q(a + 1)) * (one - NQ(c + 1)) / (one + q()); }},
    {1, 1, 1, 1, 0, 0, [](int a, int c) { return one - (one - NQ(c + 1)) * Q(a + 1); }},
};

const std::vector<Row> y_rows = {
    {0, 0, 0, 0, 0, 0, [](int a, int c) { return one - (one - Q(c)) * NQ(a); }},
    {1, 0, 0, 0, -1, -1, [](int a, int c) { return S(a + c - 1) * (one + q()); }},
    {0, 1, 0, 0, 1, -1, [](int a, int c) { return sg(a) * S(a + c - 1) * (one - q()) * (one - NQ(a + 1)); }},
    {1, 1, 0, 0, 0, -2, [](int a, int c) { return sg(a) * Q(a + c - 1) * (one - Q(2)); }},
    {0, 0, 1, 0, 1, 1,
     [](int a, int c) { return sg(a + 1) * S(a - c + 1) * (one - NQ(a + 1)) * (one - Q(c + 1)) / (one + q()); }},
    {1, 0, 1, 0, 0, 0, [](int a, int) { return NQ(a + 1); }},
    {0, 1, 1, 0, 2, 0,
     [](int a, int) { return sg(a) * (one - q()) * (one - NQ(a + 1)) * (one - NQ(a + 2)) / (one + q()); }},
    {1, 1, 1, 0, 1, -1, [](int a, int c) { return sg(a) * S(a + c + 1) * (one - q()) * (one - NQ(a + 1)); }},
    {0, 0, 0, 1, -1, 1, [](int a, int c) { return S(a - c - 1) * (one - Q(c + 1)) / (one - q()); }},
    {1, 0, 0, 1, -2, 0, [](int a, int) { return sg(a) * (one + q()) / (one - q()); }},
    {0, 1, 0, 1, 0, 0, [](int a, int) { return NQ(a); }},
    {1, 1, 0, 1, -1, -1, [](int a, int c) { return -S(a + c - 1) * (one + q()); }},
    {0, 0, 1, 1, 0, 2,
     [](int a, int c) { return sg(a + 1) * Q(a - c) * (one - Q(c + 1)) * (one - Q(c + 2)) / (one - Q(2)); }},
    {1, 0, 1, 1, -1, 1, [](int a, int c) { return S(a - c + 1) * (one - Q(c + 1)) / (one - q()); }},
    {0, 1, 1, 1, 1, 1,
     [](int a, int c) { return sg(a) * S(a - c + 1) * (one - NQ(a + 1)) * (one - Q(c + 1)) / (one + q()); }},
    {1, 1, 1, 1, 0, 0, [](int a, int c) { return one - (one - Q(c + 1)) * NQ(a + 1); }},
};

void add_rows(std::vector<Case>& v, const char* fam, const std::vector<Row>& rows, int n) {
  for (const auto& r : rows)
    for (int a = 0; a <= n; ++a)
      for (int c = 0; c <= n; ++c) {
        const int i = a + r.di, k = c + r.dk;
        if (i < 0 || k < 0) continue;
        v.push_back({fam, fam, {a, r.b, c, r.d}, {i, r.j, k, r.l}, r.value(a, c)});
      }
}

}  // namespace

std::vector<Case> cases(int n) {
  std::vector<Case> v;
  for (int k = 0; k <= n; ++k) {
    v.push_back({"L", "L", {0, 0, k}, {0, 0, k}, one});
    v.push_back({"L", "L", {1, 1, k}, {1, 1, k}, one});
    v.push_back({"L", "L", {0, 1, k}, {0, 1, k}, -Q(k + 1)});
    v.push_back({"L", "L", {1, 0, k}, {1, 0, k}, Q(k)});
    if (k >= 1) v.push_back({"L", "L", {0, 1, k - 1}, {1, 0, k}, one - Q(2 * k)});
    v.push_back({"L", "L", {1, 0, k + 1}, {0, 1, k}, one});
  }
  // M_{ijk}^{abc} = L_{kji}^{cba}, written out
  for (int k = 0; k <= n; ++k) {
    v.push_back({"M", "M", {k, 0, 0}, {k, 0, 0}, one});
    v.push_back({"M", "M", {k, 1, 1}, {k, 1, 1}, one});
    v.push_back({"M", "M", {k, 1, 0}, {k, 1, 0}, -Q(k + 1)});
    v.push_back({"M", "M", {k, 0, 1}, {k, 0, 1}, Q(k)});
    if (k >= 1) v.push_back({"M", "M", {k - 1, 1, 0}, {k, 0, 1}, one - Q(2 * k)});
    v.push_back({"M", "M", {k + 1, 0, 1}, {k, 1, 0}, one});
  }
  for (int j = 0; j <= n; ++j) {
    v.push_back({"N", "N", {0, j, 0}, {0, j, 0}, Q(j)});
    v.push_back({"N", "N", {1, j, 1}, {1, j, 1}, -Q(j + 1)});
    v.push_back({"N", "N", {0, j, 1}, {0, j, 1}, one});
    v.push_back({"N", "N", {1, j, 0}, {1, j, 0}, one});
    v.push_back({"N", "N", {0, j + 1, 0}, {1, j, 1}, Q(j) * (one - Q(2))});
    if (j >= 1) v.push_back({"N", "N", {1, j - 1, 1}, {0, j, 0}, bracket(j)});
  }
  add_rows(v, "X", x_rows, n);
  add_rows(v, "Y", y_rows, n);
  // R agrees with L where both are defined on fermionic-range indices
  for (int k = 0; k <= n; ++k) {
    v.push_back({"RL", "R", {0, 0, k}, {0, 0, k}, one});
    v.push_back({"RL", "R", {0, 1, k}, {0, 1, k}, -Q(k + 1)});
    v.push_back({"RL", "R", {1, 0, k}, {1, 0, k}, Q(k)});
    if (k >= 1) v.push_back({"RL", "R", {0, 1, k - 1}, {1, 0, k}, one - Q(2 * k)});
    v.push_back({"RL", "R", {1, 0, k + 1}, {0, 1, k}, one});
  }
  const MultiIndex z1 = {0, 1, 1, 2}, z2 = {2, 0, 1, 0};
  v.push_back({"Z", "Z", {0, 0, 3, 1}, z1, P("q^4*(1+q)^2*(1+q^2)")});
  v.push_back({"Z", "Z", {0, 1, 1, 2}, z1, P("-q^2*(1-q^4-q^7)")});
  v.push_back({"Z", "Z", {1, 0, 2, 2}, z1, P("-q^3*(1+q)*(1+q+q^2+q^3+q^5)")});
  v.push_back({"Z", "Z", {1, 1, 0, 3}, z1, P("1-q^4-q^7")});
  v.push_back({"Z", "Z", {2, 0, 1, 3}, z1, P("-q^5*(1+q^3)/(1-q)")});
  v.push_back({"Z", "Z", {3, 0, 0, 4}, z1, P("q^2*(1+q)/(1-q)")});
  v.push_back({"Z", "Z", {2, 0, 1, 0}, z2, P("-(1-q^2+q^3)")});
  v.push_back({"Z", "Z", {1, 1, 0, 0}, z2, P("q*(1-q)^2")});
  v.push_back({"Z", "Z", {3, 0, 0, 1}, z2, P("q")});
  return v;
}

Outcome run(const std::vector<Case>& cs) {
  Outcome o;
  std::map<std::string, SparseOp> ops;
  for (const auto& c : cs) {
    auto it = ops.find(c.family);
    if (it == ops.end()) it = ops.emplace(c.family, family(c.family)).first;
    ++o.total;
    const std::string got = it->second.element(c.out, c.in).str(), want = c.expected.str();
    if (got != want)
      o.failures.push_back(c.family + "[" + index_str(c.in) + " -> " + index_str(c.out) + "] got " + got + " want " +
                           want);
  }
  return o;
}

}  // namespace tetra::golden
