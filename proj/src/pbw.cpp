#include "tetra/pbw.hpp"

#include "tetra/qcomb.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tetra::pbw {

// ---------------------------------------------------------------------------
// Cartan data

namespace {

struct TableRow {
  char type;
  const char* nodes;
  const char* case_name;
  std::vector<std::vector<int>> DA;
};

const std::vector<TableRow>& table() {
  static const std::vector<TableRow> t = {
      {'A', "oo", "I", {{2, -1}, {-1, 2}}},
      {'A', "ox", "II", {{2, -1}, {-1, 0}}},
      {'A', "xo", "III", {{0, -1}, {-1, 2}}},
      {'A', "xx", "IV", {{0, -1}, {-1, 0}}},
      {'B', "oo", "I", {{2, -1}, {-1, 1}}},
      {'B', "xo", "II", {{0, -1}, {-1, 1}}},
      {'B', "xb", "III", {{0, -1}, {-1, 1}}},
      {'B', "ob", "IV", {{2, -1}, {-1, 1}}},
      {'A', "ooo", "I", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}},
      {'A', "oox", "II", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 0}}},
      {'A', "oxx", "III", {{2, -1, 0}, {-1, 0, 1}, {0, 1, 0}}},
      {'A', "oxo", "IV", {{2, -1, 0}, {-1, 0, 1}, {0, 1, -2}}},
      {'A', "xox", "V", {{0, -1, 0}, {-1, 2, -1}, {0, -1, 0}}},
      {'A', "xxx", "VI", {{0, 1, 0}, {1, 0, -1}, {0, -1, 0}}},
      {'B', "ooo", "I", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 1}}},
      {'B', "xoo", "II", {{0, -1, 0}, {-1, 2, -1}, {0, -1, 1}}},
      {'B', "xxo", "III", {{0, 1, 0}, {1, 0, -1}, {0, -1, 1}}},
      {'B', "oob", "IV", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 1}}},
      {'B', "oxb", "V", {{2, -1, 0}, {-1, 0, 1}, {0, 1, -1}}},
      {'B', "oxo", "VI", {{2, -1, 0}, {-1, 0, 1}, {0, 1, -1}}},
      {'B', "xob", "VII", {{0, -1, 0}, {-1, 2, -1}, {0, -1, 1}}},
      {'B', "xxb", "VIII", {{0, 1, 0}, {1, 0, -1}, {0, -1, 1}}},
  };
  return t;
}

CartanData from_row(const TableRow& r) {
  CartanData cd;
  cd.type = r.type;
  cd.id = std::string(1, r.type) + ":" + r.nodes;
  cd.case_name = r.case_name;
  cd.DA = r.DA;
  for (const char* c = r.nodes; *c; ++c) cd.parity.push_back(*c == 'o' ? 0 : 1);
  return cd;
}

std::string ascii_nodes(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    auto starts = [&](std::string_view g) { return s.substr(i, g.size()) == g; };
    if (starts("○")) {
      out += 'o';
      i += std::string_view("○").size();
    } else if (starts("⊗")) {
      out += 'x';
      i += std::string_view("⊗").size();
    } else if (starts("●")) {
      out += 'b';
      i += std::string_view("●").size();
    } else {
      out += s[i] == '*' ? 'b' : s[i];
      ++i;
    }
  }
  return out;
}

}  // namespace

const char* root_class_name(RootClass c) {
  switch (c) {
    case RootClass::Even: return "even";
    case RootClass::Iso: return "iso";
    case RootClass::Aniso: return "aniso";
  }
  return "?";
}

int CartanData::form(const Weight& a, const Weight& b) const {
  int f = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) f += a[i] * DA[i][j] * b[j];
  return f;
}

int CartanData::parity_of(const Weight& a) const {
  int p = 0;
  for (int i = 0; i < rank(); ++i) p += a[i] * parity[i];
  return p & 1;
}

RootClass CartanData::root_class(const Weight& a) const {
  if (parity_of(a) == 0) return RootClass::Even;
  return form(a, a) == 0 ? RootClass::Iso : RootClass::Aniso;
}

Weight CartanData::simple(int i) const {
  Weight w(rank(), 0);
  w.at(i - 1) = 1;
  return w;
}

CartanData diagram(std::string_view id) {
  std::string s = ascii_nodes(id);
  // case names: "A(II)", "B3(VI)"
  if (auto lp = s.find('('); lp != std::string::npos && s.back() == ')' && s.find(':') == std::string::npos) {
    char type = s[0];
    int rank = lp > 1 ? std::stoi(s.substr(1, lp - 1)) : 2;
    std::string cname = s.substr(lp + 1, s.size() - lp - 2);
    for (const auto& r : table())
      if (r.type == type && static_cast<int>(std::string_view(r.nodes).size()) == rank && cname == r.case_name)
        return from_row(r);
    throw std::invalid_argument("unknown diagram: " + std::string(id));
  }
  for (const auto& r : table())
    if (s == std::string(1, r.type) + ":" + r.nodes) return from_row(r);
  throw std::invalid_argument("unknown diagram: " + std::string(id));
}

std::vector<std::string> diagram_ids(char type, int rank) {
  std::vector<std::string> out;
  for (const auto& r : table())
    if (r.type == type && static_cast<int>(std::string_view(r.nodes).size()) == rank)
      out.push_back(std::string(1, r.type) + ":" + r.nodes);
  return out;
}

// ---------------------------------------------------------------------------
// Free algebra

AlgElement::AlgElement(const QCoeff& c) {
  if (!c.is_zero()) t_.emplace(Word{}, c.canonical());
}

AlgElement AlgElement::word(Word w, const QCoeff& c) {
  AlgElement x;
  x.add(w, c);
  return x;
}

void AlgElement::add(const Word& w, const QCoeff& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(w, c);
  if (!fresh) {
    it->second = (it->second + c).canonical();
    if (it->second.is_zero()) t_.erase(it);
  } else {
    it->second = it->second.canonical();
  }
}

Weight AlgElement::weight(int rank) const {
  std::optional<Weight> w;
  for (const auto& [word, c] : t_) {
    Weight x(rank, 0);
    for (int l : word) x.at(l - 1)++;
    if (w && *w != x) throw std::logic_error("AlgElement: not homogeneous");
    w = x;
  }
  return w ? *w : Weight(rank, 0);
}

std::size_t AlgElement::length() const { return t_.empty() ? 0 : t_.begin()->first.size(); }

AlgElement AlgElement::operator-() const {
  AlgElement r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

AlgElement& AlgElement::operator+=(const AlgElement& b) {
  for (const auto& [w, c] : b.t_) add(w, c);
  return *this;
}

AlgElement operator+(const AlgElement& a, const AlgElement& b) {
  AlgElement r = a;
  return r += b;
}

AlgElement operator-(const AlgElement& a, const AlgElement& b) { return a + (-b); }

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  AlgElement r;
  for (const auto& [u, cu] : a.t_)
    for (const auto& [v, cv] : b.t_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add(w, cu * cv);
    }
  return r;
}

AlgElement operator*(const QCoeff& c, const AlgElement& a) {
  AlgElement r;
  for (const auto& [w, x] : a.t_) r.add(w, c * x);
  return r;
}

AlgElement AlgElement::pow(int n) const {
  AlgElement r(QCoeff(1));
  for (int k = 0; k < n; ++k) r = r * *this;
  return r;
}

bool operator==(const AlgElement& a, const AlgElement& b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (auto i = a.t_.begin(), j = b.t_.begin(); i != a.t_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

std::string AlgElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*";
    if (w.empty()) os << "1";
    for (int l : w) os << "e" << l;
  }
  return os.str();
}

AlgElement qcomm(const CartanData& cd, const AlgElement& x, const AlgElement& y) {
  if (x.is_zero() || y.is_zero()) return {};
  Weight a = x.weight(cd.rank()), b = y.weight(cd.rank());
  QCoeff c = neg_one_pow(cd.parity_of(a) * cd.parity_of(b)) * QCoeff::q_pow(-cd.form(a, b));
  return x * y - c * (y * x);
}

AlgElement chi(const AlgElement& x) {
  AlgElement r;
  for (const auto& [w, c] : x.terms()) r += AlgElement::word(Word(w.rbegin(), w.rend()), c);
  return r;
}

// ---------------------------------------------------------------------------
// Root vectors

namespace {

struct Tree {
  int letter = 0;  // leaf when nonzero
  std::unique_ptr<Tree> l, r;
};

std::unique_ptr<Tree> parse_seq(std::string_view s, std::size_t& pos);

std::unique_ptr<Tree> parse_atom(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) throw std::invalid_argument("root tree: unexpected end");
  if (s[pos] == '(') {
    ++pos;
    auto t = parse_seq(s, pos);
    if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("root tree: missing ')'");
    ++pos;
    return t;
  }
  if (s[pos] < '1' || s[pos] > '9') throw std::invalid_argument("root tree: bad character");
  auto t = std::make_unique<Tree>();
  t->letter = s[pos++] - '0';
  return t;
}

std::unique_ptr<Tree> parse_seq(std::string_view s, std::size_t& pos) {
  auto t = parse_atom(s, pos);
  while (pos < s.size() && s[pos] != ')') {
    auto node = std::make_unique<Tree>();
    node->l = std::move(t);
    node->r = parse_atom(s, pos);
    t = std::move(node);
  }
  return t;
}

AlgElement expand(const CartanData& cd, const Tree& t) {
  if (t.letter) {
    if (t.letter > cd.rank()) throw std::invalid_argument("root tree: letter exceeds rank");
    return AlgElement::generator(t.letter);
  }
  return qcomm(cd, expand(cd, *t.l), expand(cd, *t.r));
}

QCoeff half_sum() { return s() + QCoeff::s_pow(-1); }

}  // namespace

int RootVector::bracket_exponent() const { return cls == RootClass::Iso ? 2 : norm; }

RootVector root_vector(const CartanData& cd, std::string_view tree) {
  std::size_t pos = 0;
  auto t = parse_seq(tree, pos);
  if (pos != tree.size()) throw std::invalid_argument("root tree: unbalanced ')'");
  RootVector rv;
  rv.tree = std::string(tree);
  rv.weight.assign(cd.rank(), 0);
  for (char c : tree)
    if (c >= '1' && c <= '9') rv.weight.at(c - '1')++;
  rv.norm = cd.form(rv.weight, rv.weight);
  rv.cls = cd.root_class(rv.weight);
  rv.normalized = cd.type == 'B' && rv.weight.back() == 2;
  rv.element = expand(cd, *t);
  if (rv.normalized) rv.element = (QCoeff(1) / half_sum()) * rv.element;
  return rv;
}

namespace {

const std::vector<const char*>& root_trees(const CartanData& cd, int basis) {
  static const std::vector<const char*> a2[2] = {{"1", "21", "2"}, {"2", "12", "1"}};
  static const std::vector<const char*> b2[2] = {{"1", "21", "2(21)", "2"}, {"2", "(12)2", "12", "1"}};
  static const std::vector<const char*> a3[2] = {{"1", "21", "321", "2", "32", "3"},
                                                 {"3", "23", "2", "123", "12", "1"}};
  static const std::vector<const char*> b3[2] = {
      {"1", "21", "321", "3(3(21))", "2(3(3(21)))", "2", "32", "3(32)", "3"},
      {"3", "(23)3", "23", "2", "(((12)3)3)2", "((12)3)3", "123", "12", "1"}};
  if (basis != 1 && basis != 2) throw std::invalid_argument("basis must be 1 or 2");
  int k = basis - 1;
  if (cd.rank() == 2) return cd.type == 'A' ? a2[k] : b2[k];
  if (cd.rank() == 3) return cd.type == 'A' ? a3[k] : b3[k];
  throw std::invalid_argument("PBW roots only for rank 2 and 3");
}

std::mutex g_cache_mu;

}  // namespace

const std::vector<RootVector>& pbw_roots(const CartanData& cd, int basis) {
  static std::map<std::pair<std::string, int>, std::vector<RootVector>> cache;
  const auto& trees = root_trees(cd, basis);
  std::lock_guard lk(g_cache_mu);
  auto key = std::make_pair(cd.id, basis);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<RootVector> out;
  for (const char* t : trees) out.push_back(root_vector(cd, t));
  return cache.emplace(key, std::move(out)).first->second;
}

Weight exponents_weight(const CartanData& cd, int basis, const MultiIndex& exps) {
  const auto& roots = pbw_roots(cd, basis);
  if (exps.size() != roots.size()) throw std::invalid_argument("exponent tuple has wrong length");
  Weight w(cd.rank(), 0);
  for (std::size_t t = 0; t < roots.size(); ++t)
    for (int i = 0; i < cd.rank(); ++i) w[i] += exps[t] * roots[t].weight[i];
  return w;
}

namespace {

void check_exponents(const std::vector<RootVector>& roots, const MultiIndex& exps) {
  if (exps.size() != roots.size()) throw std::invalid_argument("exponent tuple has wrong length");
  for (std::size_t t = 0; t < roots.size(); ++t) {
    if (exps[t] < 0) throw std::invalid_argument("negative exponent");
    if (roots[t].cls == RootClass::Iso && exps[t] > 1)
      throw std::invalid_argument("exponent >= 2 at isotropic root e_" + roots[t].tree);
  }
}

QCoeff divided_power_factor(const RootVector& r, int a) {
  return QCoeff(1) / bracket_fact(a, r.bracket_exponent(), r.cls == RootClass::Even ? 1 : -1);
}

}  // namespace

AlgElement pbw_monomial(const CartanData& cd, int basis, const MultiIndex& exps) {
  const auto& roots = pbw_roots(cd, basis);
  check_exponents(roots, exps);
  AlgElement x(QCoeff(1));
  for (std::size_t t = 0; t < roots.size(); ++t) {
    if (exps[t] == 0) continue;
    x = x * (divided_power_factor(roots[t], exps[t]) * roots[t].element.pow(exps[t]));
  }
  return x;
}

std::vector<MultiIndex> pbw_exponents(const CartanData& cd, int basis, const Weight& w) {
  const auto& roots = pbw_roots(cd, basis);
  std::vector<MultiIndex> out;
  MultiIndex cur(roots.size(), 0);
  auto rec = [&](auto&& self, std::size_t t, Weight rem) -> void {
    if (t == roots.size()) {
      if (std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; })) out.push_back(cur);
      return;
    }
    int cap = roots[t].cls == RootClass::Iso ? 1 : 1 << 20;
    for (int a = 0; a <= cap; ++a) {
      cur[t] = a;
      self(self, t + 1, rem);
      bool ok = true;
      for (int i = 0; i < cd.rank(); ++i) {
        rem[i] -= roots[t].weight[i];
        if (rem[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    cur[t] = 0;
  };
  rec(rec, 0, w);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Quantum shuffle algebra

namespace {

constexpr uint64_t kP = 1000000009ULL;  // prime, 1 mod 4

uint64_t mmul(uint64_t a, uint64_t b) { return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % kP); }
uint64_t madd(uint64_t a, uint64_t b) { return (a + b) % kP; }
uint64_t mneg(uint64_t a) { return a ? kP - a : 0; }
uint64_t mpow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  for (; e; e >>= 1, b = mmul(b, b))
    if (e & 1) r = mmul(r, b);
  return r;
}
uint64_t minv(uint64_t a) {
  if (a == 0) throw ArithmeticError("modular inverse of zero");
  return mpow(a, kP - 2);
}
uint64_t mint(const Int& x) {
  if (x.is_small()) {
    long long v = x.small() % static_cast<long long>(kP);
    return static_cast<uint64_t>(v < 0 ? v + static_cast<long long>(kP) : v);
  }
  mpz_class m = x.to_mpz() % static_cast<unsigned long>(kP);
  if (m < 0) m += static_cast<unsigned long>(kP);
  return m.get_ui();
}
uint64_t sqrt_minus_one() {
  for (uint64_t g = 2;; ++g) {
    uint64_t t = mpow(g, (kP - 1) / 4);
    if (mmul(t, t) == kP - 1) return t;
  }
}

// Evaluation at a point s0 mod p, with i mapped to a square root of -1.
struct ModPoint {
  uint64_t s, si, I;
  explicit ModPoint(uint64_t seed) {
    std::mt19937_64 rng(seed);
    s = 2 + rng() % (kP - 4);
    si = minv(s);
    static const uint64_t root = sqrt_minus_one();
    I = root;
  }
  uint64_t spow(int k) const { return k >= 0 ? mpow(s, k) : mpow(si, -k); }
  uint64_t eval(const GaussInt& g) const { return madd(mint(g.re), mmul(I, mint(g.im))); }
  uint64_t eval(const HalfLaurent& h) const {
    uint64_t acc = 0;
    const auto& c = h.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = madd(mmul(acc, s), eval(*it));
    return h.is_zero() ? 0 : mmul(acc, spow(h.valuation()));
  }
  uint64_t eval(const QCoeff& x) const { return mmul(eval(x.num()), minv(eval(x.den()))); }
};

// Coefficient rings for shuffle products: exact Laurent polynomials in s, or
// values at a ModPoint.
struct ExactRing {
  using V = HalfLaurent;
  V mono(const V& c, int sexp, bool neg) const {
    V r = c.shifted(sexp);
    return neg ? -r : r;
  }
  V mul(const V& a, const V& b) const { return a * b; }
  void add(V& acc, const V& x) const { acc += x; }
  bool zero(const V& v) const { return v.is_zero(); }
  V one() const { return V(GaussInt(1)); }
};

struct ModRing {
  using V = uint64_t;
  const ModPoint* pt;
  V mono(V c, int sexp, bool neg) const {
    V r = mmul(c, pt->spow(sexp));
    return neg ? mneg(r) : r;
  }
  V mul(V a, V b) const { return mmul(a, b); }
  void add(V& acc, V x) const { acc = madd(acc, x); }
  bool zero(V v) const { return v == 0; }
  V one() const { return 1; }
};

template <class R>
using Vec = std::map<Word, typename R::V>;

// Adds cu*cv*(u shuffle v) to out. A letter b of v placed before a letter a
// of u contributes chi(a,b) = (-1)^{p_a p_b} q^{(alpha_a, alpha_b)}.
template <class R>
void shuffle_pair(const R& ring, const CartanData& cd, const Word& u, const Word& v, const typename R::V& c,
                  Vec<R>& out) {
  const int m = static_cast<int>(u.size()), n = static_cast<int>(v.size());
  const int r = cd.rank();
  // suffix sums over u: sform[i*r + b-1] = sum_{t>=i} DA[u_t][b], spar[i] = parity
  std::vector<int> sform((m + 1) * r, 0), spar(m + 1, 0);
  for (int i = m - 1; i >= 0; --i) {
    for (int b = 0; b < r; ++b) sform[i * r + b] = sform[(i + 1) * r + b] + cd.DA[u[i] - 1][b];
    spar[i] = spar[i + 1] ^ cd.parity[u[i] - 1];
  }
  Word cur(m + n);
  auto rec = [&](auto&& self, int i, int j, int e, bool neg) -> void {
    if (i == m && j == n) {
      auto [it, fresh] = out.try_emplace(cur, ring.mono(c, 2 * e, neg));
      if (!fresh) ring.add(it->second, ring.mono(c, 2 * e, neg));
      return;
    }
    if (i < m) {
      cur[i + j] = u[i];
      self(self, i + 1, j, e, neg);
    }
    if (j < n) {
      int b = v[j];
      cur[i + j] = b;
      self(self, i, j + 1, e + sform[i * r + b - 1], neg ^ (spar[i] && cd.parity[b - 1]));
    }
  };
  rec(rec, 0, 0, 0, false);
}

template <class R>
Vec<R> shuffle(const R& ring, const CartanData& cd, const Vec<R>& x, const Vec<R>& y) {
  Vec<R> out;
  for (const auto& [u, cu] : x)
    for (const auto& [v, cv] : y) shuffle_pair(ring, cd, u, v, ring.mul(cu, cv), out);
  for (auto it = out.begin(); it != out.end();) it = ring.zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

template <class R>
Vec<R> word_image(const R& ring, const CartanData& cd, const Word& w) {
  Vec<R> acc{{Word{}, ring.one()}};
  for (int l : w) {
    Vec<R> next;
    for (const auto& [u, cu] : acc) shuffle_pair(ring, cd, u, Word{l}, cu, next);
    acc = std::move(next);
  }
  for (auto it = acc.begin(); it != acc.end();) it = ring.zero(it->second) ? acc.erase(it) : std::next(it);
  return acc;
}

using PolyVec = Vec<ExactRing>;
using ModVec = Vec<ModRing>;

// Polynomial part of an element whose coefficients are Laurent polynomials.
HalfLaurent as_poly(const QCoeff& c) {
  QCoeff x = c.canonical();
  if (!x.is_laurent()) throw std::logic_error("expected a Laurent coefficient");
  const HalfLaurent& d = x.den();
  auto q = HalfLaurent::divexact(x.num(), d);
  if (!q) throw std::logic_error("expected a Laurent coefficient");
  return *q;
}

PolyVec poly_image(const CartanData& cd, const AlgElement& x) {
  ExactRing ring;
  PolyVec out;
  for (const auto& [w, c] : x.terms()) {
    HalfLaurent p = as_poly(c);
    for (auto& [v, cv] : word_image(ring, cd, w)) ring.add(out[v], p * cv);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::map<Word, QCoeff> to_qvec(const PolyVec& v) {
  std::map<Word, QCoeff> out;
  for (const auto& [w, p] : v) out.emplace(w, QCoeff(p));
  return out;
}

// ---------------------------------------------------------------------------
// Exact linear algebra with modular pivot selection

using QVec = std::map<Word, QCoeff>;

std::vector<std::vector<QCoeff>> solve_exact(std::vector<std::vector<QCoeff>> M, std::vector<std::vector<QCoeff>> R) {
  const std::size_t n = M.size(), k = R.empty() ? 0 : R[0].size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::logic_error("singular system in PBW solve");
    std::swap(M[piv], M[col]);
    std::swap(R[piv], R[col]);
    QCoeff inv = (QCoeff(1) / M[col][col]).canonical();
    for (std::size_t j = col; j < n; ++j) M[col][j] = (M[col][j] * inv).canonical();
    for (std::size_t j = 0; j < k; ++j) R[col][j] = (R[col][j] * inv).canonical();
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || M[row][col].is_zero()) continue;
      QCoeff f = M[row][col];
      for (std::size_t j = col; j < n; ++j)
        if (!M[col][j].is_zero()) M[row][j] = (M[row][j] - f * M[col][j]).canonical();
      for (std::size_t j = 0; j < k; ++j)
        if (!R[col][j].is_zero()) R[row][j] = (R[row][j] - f * R[col][j]).canonical();
    }
  }
  return R;  // R[i][j]: coefficient of column i for right-hand side j
}

// Writes each rhs as a combination of cols: result[r][c]. Pivot rows are
// chosen by rank at a random point mod p; the exact answer is then checked
// against every row at a second point.
std::vector<std::vector<QCoeff>> solve_span(const std::vector<const QVec*>& cols, const std::vector<const QVec*>& rhs) {
  const std::size_t n = cols.size();
  std::vector<Word> rows;
  {
    std::map<Word, bool> seen;
    for (const auto* c : cols)
      for (const auto& kv : *c) seen[kv.first] = true;
    for (const auto* c : rhs)
      for (const auto& kv : *c) seen[kv.first] = true;
    for (const auto& kv : seen) rows.push_back(kv.first);
  }
  auto get = [](const QVec& v, const Word& w) -> const QCoeff* {
    auto it = v.find(w);
    return it == v.end() ? nullptr : &it->second;
  };
  ModPoint p1(0x5eed0001);
  std::vector<std::size_t> pivots;
  std::vector<std::vector<uint64_t>> basis;  // reduced row vectors of length n
  std::vector<std::size_t> lead;
  for (std::size_t ri = 0; ri < rows.size() && pivots.size() < n; ++ri) {
    std::vector<uint64_t> v(n, 0);
    for (std::size_t c = 0; c < n; ++c)
      if (const QCoeff* x = get(*cols[c], rows[ri])) v[c] = p1.eval(*x);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (v[lead[b]]) {
        uint64_t f = v[lead[b]];
        for (std::size_t c = 0; c < n; ++c) v[c] = madd(v[c], mneg(mmul(f, basis[b][c])));
      }
    std::size_t l = 0;
    while (l < n && v[l] == 0) ++l;
    if (l == n) continue;
    uint64_t inv = minv(v[l]);
    for (auto& x : v) x = mmul(x, inv);
    basis.push_back(std::move(v));
    lead.push_back(l);
    pivots.push_back(ri);
  }
  if (pivots.size() < n) throw std::logic_error("PBW solve: columns are linearly dependent");

  std::vector<std::vector<QCoeff>> M(n, std::vector<QCoeff>(n)), R(n, std::vector<QCoeff>(rhs.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c)
      if (const QCoeff* x = get(*cols[c], rows[pivots[i]])) M[i][c] = *x;
    for (std::size_t r = 0; r < rhs.size(); ++r)
      if (const QCoeff* x = get(*rhs[r], rows[pivots[i]])) R[i][r] = *x;
  }
  auto sol = solve_exact(std::move(M), std::move(R));
  std::vector<std::vector<QCoeff>> out(rhs.size(), std::vector<QCoeff>(n));
  for (std::size_t r = 0; r < rhs.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) out[r][c] = sol[c][r];

  ModPoint p2(0x5eed0002);
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    std::vector<uint64_t> cv(n);
    for (std::size_t c = 0; c < n; ++c) cv[c] = p2.eval(out[r][c]);
    for (const auto& w : rows) {
      uint64_t lhs = 0;
      if (const QCoeff* x = get(*rhs[r], w)) lhs = p2.eval(*x);
      uint64_t acc = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (cv[c])
          if (const QCoeff* x = get(*cols[c], w)) acc = madd(acc, mmul(cv[c], p2.eval(*x)));
      if (acc != lhs) throw std::logic_error("PBW solve: right-hand side outside the span");
    }
  }
  return out;
}

std::string weight_key(const std::string& id, const Weight& w) {
  std::string k = id;
  for (int x : w) k += "," + std::to_string(x);
  return k;
}

}  // namespace

std::map<Word, QCoeff> shuffle_image(const CartanData& cd, const AlgElement& x) {
  // Group terms by coefficient denominator so the Laurent parts shuffle exactly.
  ExactRing ring;
  std::map<Word, QCoeff> out;
  for (const auto& [w, c] : x.terms()) {
    auto img = word_image(ring, cd, w);
    for (const auto& [v, p] : img) {
      auto [it, fresh] = out.try_emplace(v, c * QCoeff(p));
      if (!fresh) it->second = (it->second + c * QCoeff(p)).canonical();
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

bool vanishes(const CartanData& cd, const AlgElement& x) { return shuffle_image(cd, x).empty(); }

std::vector<Word> normal_words(const CartanData& cd, const Weight& w) {
  static std::map<std::string, std::vector<Word>> cache;
  const std::string key = weight_key(cd.id, w);
  {
    std::lock_guard lk(g_cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<Word> out;
  int total = 0;
  for (int x : w) {
    if (x < 0) return out;
    total += x;
  }
  if (total == 0) {
    out.push_back({});
  } else {
    // Factors of normal words are normal, so candidates extend shorter ones.
    std::vector<Word> cand;
    for (int b = 1; b <= cd.rank(); ++b) {
      if (w[b - 1] == 0) continue;
      Weight sub = w;
      sub[b - 1]--;
      for (Word u : normal_words(cd, sub)) {
        u.push_back(b);
        cand.push_back(std::move(u));
      }
    }
    std::sort(cand.begin(), cand.end());
    ModPoint pt(0x5eed0003);
    ModRing ring{&pt};
    std::map<Word, std::size_t> col;
    std::vector<std::vector<uint64_t>> basis;
    std::vector<std::size_t> lead;
    for (const auto& c : cand) {
      // suffix must be normal too
      Word suf(c.begin() + 1, c.end());
      Weight sw = w;
      sw[c[0] - 1]--;
      auto sn = normal_words(cd, sw);
      if (!std::binary_search(sn.begin(), sn.end(), suf)) continue;
      auto img = word_image(ring, cd, c);
      std::vector<std::pair<std::size_t, uint64_t>> v;
      std::vector<uint64_t> dense(col.size() + img.size(), 0);
      for (const auto& [word, val] : img) {
        auto [it, fresh] = col.try_emplace(word, col.size());
        if (it->second >= dense.size()) dense.resize(it->second + 1, 0);
        dense[it->second] = val;
      }
      for (std::size_t b = 0; b < basis.size(); ++b) {
        uint64_t f = lead[b] < dense.size() ? dense[lead[b]] : 0;
        if (!f) continue;
        if (dense.size() < basis[b].size()) dense.resize(basis[b].size(), 0);
        for (std::size_t j = 0; j < basis[b].size(); ++j)
          if (basis[b][j]) dense[j] = madd(dense[j], mneg(mmul(f, basis[b][j])));
      }
      std::size_t l = 0;
      while (l < dense.size() && dense[l] == 0) ++l;
      if (l == dense.size()) continue;
      uint64_t inv = minv(dense[l]);
      for (auto& x : dense) x = mmul(x, inv);
      basis.push_back(std::move(dense));
      lead.push_back(l);
      out.push_back(c);
    }
  }
  std::lock_guard lk(g_cache_mu);
  return cache.emplace(key, std::move(out)).first->second;
}

AlgElement shuffle_normal_form(const CartanData& cd, const AlgElement& x) {
  if (x.is_zero()) return {};
  Weight w = x.weight(cd.rank());
  auto nw = normal_words(cd, w);
  ExactRing ring;
  std::vector<QVec> imgs;
  for (const auto& u : nw) imgs.push_back(to_qvec(word_image(ring, cd, u)));
  QVec target = shuffle_image(cd, x);
  std::vector<const QVec*> cols;
  for (const auto& v : imgs) cols.push_back(&v);
  auto sol = solve_span(cols, {&target});
  AlgElement out;
  for (std::size_t i = 0; i < nw.size(); ++i) out += AlgElement::word(nw[i], sol[0][i]);
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

void weights_of_length(int rank, int len, std::vector<Weight>& out) {
  Weight w(rank, 0);
  auto rec = [&](auto&& self, int i, int rem) -> void {
    if (i == rank - 1) {
      w[i] = rem;
      out.push_back(w);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      w[i] = v;
      self(self, i + 1, rem - v);
    }
  };
  rec(rec, 0, len);
}

}  // namespace

RewriteSystem RewriteSystem::compile(const CartanData& cd, int max_length) {
  RewriteSystem rs;
  rs.cd_ = cd;
  rs.max_length_ = max_length;
  for (int len = 2; len <= max_length; ++len) {
    std::vector<Weight> ws;
    weights_of_length(cd.rank(), len, ws);
    for (const auto& w : ws) {
      auto nw = normal_words(cd, w);
      for (int b = 1; b <= cd.rank(); ++b) {
        if (w[b - 1] == 0) continue;
        Weight sub = w;
        sub[b - 1]--;
        for (Word u : normal_words(cd, sub)) {
          u.push_back(b);
          if (std::binary_search(nw.begin(), nw.end(), u)) continue;
          Word suf(u.begin() + 1, u.end());
          Weight sw = w;
          sw[u[0] - 1]--;
          auto sn = normal_words(cd, sw);
          if (!std::binary_search(sn.begin(), sn.end(), suf)) continue;
          rs.index_.emplace(u, rs.rules_.size());
          rs.rules_.push_back({u, shuffle_normal_form(cd, AlgElement::word(u))});
          rs.longest_ = std::max(rs.longest_, u.size());
        }
      }
    }
  }
  return rs;
}

AlgElement RewriteSystem::reduce(const AlgElement& x) const {
  std::map<Word, QCoeff, DegLex> work;
  for (const auto& [w, c] : x.terms()) {
    if (static_cast<int>(w.size()) > max_length_)
      throw std::out_of_range("word longer than the compiled rewrite length");
    work.emplace(w, c);
  }
  AlgElement out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Word w = it->first;
    QCoeff c = it->second;
    work.erase(it);
    if (c.is_zero()) continue;
    const Rule* hit = nullptr;
    std::size_t at = 0;
    for (std::size_t i = 0; i < w.size() && !hit; ++i)
      for (std::size_t l = 2; l <= longest_ && i + l <= w.size(); ++l) {
        auto f = index_.find(Word(w.begin() + i, w.begin() + i + l));
        if (f != index_.end()) {
          hit = &rules_[f->second];
          at = i;
          break;
        }
      }
    if (!hit) {
      out += AlgElement::word(w, c);
      continue;
    }
    Word pre(w.begin(), w.begin() + at), post(w.begin() + at + hit->lhs.size(), w.end());
    for (const auto& [v, cv] : hit->rhs.terms()) {
      Word nw = pre;
      nw.insert(nw.end(), v.begin(), v.end());
      nw.insert(nw.end(), post.begin(), post.end());
      auto [jt, fresh] = work.try_emplace(nw, c * cv);
      if (!fresh) jt->second = (jt->second + c * cv).canonical();
    }
  }
  return out;
}

bool RewriteSystem::confluent() const {
  for (int len = 1; len <= max_length_; ++len) {
    std::vector<Weight> ws;
    weights_of_length(cd_.rank(), len, ws);
    for (const auto& w : ws) {
      Word u;
      for (int i = 0; i < cd_.rank(); ++i) u.insert(u.end(), w[i], i + 1);
      do {
        AlgElement x = AlgElement::word(u);
        if (!(reduce(x) == shuffle_normal_form(cd_, x))) return false;
      } while (std::next_permutation(u.begin(), u.end()));
    }
  }
  return true;
}

AlgElement normal_form(const AlgElement& x, const RewriteSystem& rs) { return rs.reduce(x); }

// ---------------------------------------------------------------------------
// Transition matrices

namespace {

// Shuffle image of E^A split as factor * (Laurent vector).
struct Img {
  QCoeff factor;
  QVec vec;
};

Img monomial_image(const CartanData& cd, int basis, const MultiIndex& exps) {
  static std::map<std::string, PolyVec> power_cache;
  const auto& roots = pbw_roots(cd, basis);
  check_exponents(roots, exps);
  ExactRing ring;
  QCoeff factor(1);
  PolyVec acc{{Word{}, ring.one()}};
  for (std::size_t t = 0; t < roots.size(); ++t) {
    int a = exps[t];
    if (a == 0) continue;
    const auto& r = roots[t];
    factor *= divided_power_factor(r, a);
    if (r.normalized) factor *= (QCoeff(1) / half_sum()).pow(a);
    std::string key = cd.id + "|" + std::to_string(basis) + "|" + std::to_string(t) + "|" + std::to_string(a);
    PolyVec pw;
    {
      std::lock_guard lk(g_cache_mu);
      auto it = power_cache.find(key);
      if (it != power_cache.end()) pw = it->second;
    }
    if (pw.empty()) {
      AlgElement raw = r.normalized ? half_sum() * r.element : r.element;
      PolyVec base = poly_image(cd, raw);
      pw = base;
      for (int k = 1; k < a; ++k) pw = shuffle(ring, cd, pw, base);
      std::lock_guard lk(g_cache_mu);
      power_cache.emplace(key, pw);
    }
    acc = shuffle(ring, cd, acc, pw);
  }
  return {factor.canonical(), to_qvec(acc)};
}

}  // namespace

QCoeff TransitionBlock::at(const MultiIndex& a, const MultiIndex& b) const {
  auto it = coeff.find({a, b});
  return it == coeff.end() ? QCoeff(0) : it->second;
}

TransitionBlock transition(const CartanData& cd, int from_basis, int to_basis, const Weight& w) {
  TransitionBlock blk;
  blk.weight = w;
  auto from = pbw_exponents(cd, from_basis, w);
  auto to = pbw_exponents(cd, to_basis, w);
  std::vector<Img> fi, ti;
  for (const auto& a : from) fi.push_back(monomial_image(cd, from_basis, a));
  for (const auto& b : to) ti.push_back(monomial_image(cd, to_basis, b));
  std::vector<const QVec*> cols, rhs;
  for (const auto& x : ti) cols.push_back(&x.vec);
  for (const auto& x : fi) rhs.push_back(&x.vec);
  auto sol = solve_span(cols, rhs);
  blk.from = from;
  for (const auto& b : to) blk.to.emplace_back(b.rbegin(), b.rend());
  std::sort(blk.to.begin(), blk.to.end());
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (sol[i][j].is_zero()) continue;
      QCoeff g = (sol[i][j] * fi[i].factor / ti[j].factor).canonical();
      blk.coeff.emplace(std::make_pair(from[i], MultiIndex(to[j].rbegin(), to[j].rend())), g);
    }
  return blk;
}

TransitionBlock gamma_tilde_from(const TransitionBlock& gamma) {
  TransitionBlock out;
  out.weight = gamma.weight;
  auto rev = [](const MultiIndex& x) { return MultiIndex(x.rbegin(), x.rend()); };
  for (const auto& b : gamma.to) out.from.push_back(rev(b));
  for (const auto& a : gamma.from) out.to.push_back(rev(a));
  std::sort(out.from.begin(), out.from.end());
  std::sort(out.to.begin(), out.to.end());
  for (const auto& [k, v] : gamma.coeff) out.coeff.emplace(std::make_pair(rev(k.first), rev(k.second)), v);
  return out;
}

namespace {

AlgElement serre2(const AlgElement& x, const AlgElement& y) {
  return x * x * y - (q() + q().pow(-1)) * (x * y * x) + y * x * x;
}

AlgElement serre3(const AlgElement& x, const AlgElement& y) {
  QCoeff c = q() + QCoeff(1) + q().pow(-1);
  return x.pow(3) * y - c * (x * x * y * x) + c * (x * y * x * x) - y * x.pow(3);
}

// Quartic relation next to an anisotropic root; sigma = (-1)^{p(y)}.
AlgElement aniso4(const AlgElement& x, const AlgElement& y, const QCoeff& sg) {
  QCoeff c = QCoeff(1) - q() - q().pow(-1);
  return x.pow(3) * y + (sg * c) * (x * x * y * x) + c * (x * y * x * x) + sg * (y * x.pow(3));
}

std::vector<NamedRelation> type_a_relations(const CartanData& cd) {
  auto E = [&](const char* t) { return root_vector(cd, t).element; };
  auto cls = [&](Weight w) { return cd.root_class(w); };
  const int p1 = cd.parity[0], p3 = cd.parity[2];
  std::vector<NamedRelation> out;
  out.push_back({"e_(21)3 = sign e_(23)1", false, E("(21)3") - neg_one_pow(p1 * p3) * E("(23)1")});
  out.push_back({"[e_12, e_32] = 0", false, qcomm(cd, E("12"), E("32"))});
  out.push_back({"[e_2, e_123] = 0", false, qcomm(cd, E("2"), E("123"))});
  if (cls({1, 0, 0}) == RootClass::Even) out.push_back({"serre e_1^2 e_23", false, serre2(E("1"), E("23"))});
  if (cls({0, 1, 1}) == RootClass::Even) out.push_back({"serre e_23^2 e_1", false, serre2(E("23"), E("1"))});
  if (cls({0, 0, 1}) == RootClass::Even) out.push_back({"serre e_3^2 e_21", false, serre2(E("3"), E("21"))});
  if (cls({1, 1, 0}) == RootClass::Even) out.push_back({"serre e_21^2 e_3", false, serre2(E("21"), E("3"))});
  if (cls({1, 1, 0}) == RootClass::Iso) out.push_back({"e_12^2 = 0", false, E("12").pow(2)});
  if (cls({0, 1, 1}) == RootClass::Iso) out.push_back({"e_23^2 = 0", false, E("23").pow(2)});
  return out;
}

std::vector<NamedRelation> type_b_relations(const CartanData& cd) {
  auto E = [&](const char* t) { return root_vector(cd, t).element; };
  auto cls = [&](Weight w) { return cd.root_class(w); };
  auto sg = [](int e) { return neg_one_pow(e); };
  const int p1 = cd.parity[0], p2 = cd.parity[1], p3 = cd.parity[2];
  const auto even = RootClass::Even, iso = RootClass::Iso, aniso = RootClass::Aniso;
  std::vector<NamedRelation> out;
  auto add = [&](std::string n, AlgElement x) { out.push_back({std::move(n), false, std::move(x)}); };

  add("e_(23)1 = sign e_(21)3", E("(23)1") - sg(p1 * p3) * E("(21)3"));
  add("e_((12)3)3 = e_1((23)3)", E("((12)3)3") - E("1((23)3)"));
  add("e_((23)3)1 = e_((21)3)3", E("((23)3)1") - E("((21)3)3"));
  add("e_(1(23))(23) = sign e_2(((12)3)3)", E("(1(23))(23)") - sg((p1 + p2 + p3) * p2) * E("2(((12)3)3)"));
  add("e_(23)((23)1) = sign e_(21)((23)3)",
      E("(23)((23)1)") - sg(p1 * p3 + (p1 + p2) * (p2 + p3)) * E("(21)((23)3)"));
  add("e_((23)3)(21) = e_2(3(3(21)))", E("((23)3)(21)") - E("2(3(3(21)))"));

  add("[e_2, e_123] = 0", qcomm(cd, E("2"), E("123")));
  add("[e_21, e_23] = 0", qcomm(cd, E("21"), E("23")));
  add("[e_23, e_((12)3)3] = 0", qcomm(cd, E("23"), E("((12)3)3")));
  add("[e_(23)1, e_(23)3] = 0", qcomm(cd, E("(23)1"), E("(23)3")));
  add("[e_3, e_((23)3)(21)] = 0", qcomm(cd, E("3"), E("((23)3)(21)")));

  if (cls({1, 0, 0}) == even) add("serre e_1^2 e_23", serre2(E("1"), E("23")));
  if (cls({0, 1, 1}) == even) add("cubic serre e_23^3 e_1", serre3(E("23"), E("1")));
  if (cls({0, 0, 1}) == even) add("cubic serre e_3^3 e_21", serre3(E("3"), E("21")));
  if (cls({1, 1, 0}) == even) add("serre e_21^2 e_3", serre2(E("21"), E("3")));
  if (cls({1, 0, 0}) == even) add("serre e_1^2 e_(23)3", serre2(E("1"), E("(23)3")));
  if (cls({0, 1, 2}) == even) add("serre e_(23)3^2 e_1", serre2(E("(23)3"), E("1")));
  if (cls({0, 1, 0}) == even) add("serre e_2^2 e_((12)3)3", serre2(E("2"), E("((12)3)3")));
  if (cls({1, 1, 2}) == even) add("serre e_((12)3)3^2 e_2", serre2(E("((12)3)3"), E("2")));
  if (cls({1, 1, 0}) == even) add("serre e_21^2 e_(23)3", serre2(E("21"), E("(23)3")));
  if (cls({0, 1, 2}) == even) add("serre e_(23)3^2 e_21", serre2(E("(23)3"), E("21")));

  if (cls({1, 1, 0}) == iso) add("e_21^2 = 0", E("21").pow(2));
  if (cls({0, 1, 2}) == iso) add("e_(23)3^2 = 0", E("(23)3").pow(2));
  if (cls({1, 1, 2}) == iso) add("e_((12)3)3^2 = 0", E("((12)3)3").pow(2));
  if (cls({0, 1, 1}) == aniso) add("quartic e_23^3 e_1", aniso4(E("23"), E("1"), neg_one_pow(p1)));
  if (cls({0, 0, 1}) == aniso) add("quartic e_3^3 e_21", aniso4(E("3"), E("21"), neg_one_pow(p1 + p2)));
  return out;
}

}  // namespace

std::vector<NamedRelation> higher_order_relations(const CartanData& cd) {
  if (cd.rank() != 3) throw std::invalid_argument("higher-order relations are tabulated for rank 3");
  auto base = cd.type == 'A' ? type_a_relations(cd) : type_b_relations(cd);
  std::vector<NamedRelation> out = base;
  for (const auto& r : base) out.push_back({"chi of " + r.name, true, chi(r.element)});
  return out;
}

std::string operator_for(const CartanData& cd) {
  static const std::map<std::string, std::string> m = {
      {"A:oo", "R"}, {"A:ox", "L"}, {"A:xo", "M"}, {"A:xx", "N"},
      {"B:oo", "J"}, {"B:xo", "X"}, {"B:xb", "Y"}, {"B:ob", "Z"},
  };
  auto it = m.find(cd.id);
  if (it == m.end()) throw std::invalid_argument("no 3D operator for diagram " + cd.id);
  return it->second;
}

}  // namespace tetra::pbw
