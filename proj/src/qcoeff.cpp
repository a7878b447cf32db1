#include "tetra/qcoeff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace tetra {

// ---------------------------------------------------------------- Int

Int::Int(const mpz_class& v) { *this = from_mpz(v); }

Int& Int::operator=(const Int& o) {
  if (this == &o) return *this;
  small_ = o.small_;
  big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
  return *this;
}

Int Int::from_mpz(mpz_class v) {
  Int r;
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    r.small_ = mpz_get_si(v.get_mpz_t());
  } else {
    r.big_ = std::make_unique<mpz_class>(std::move(v));
  }
  return r;
}

int Int::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

mpz_class Int::to_mpz() const {
  if (big_) return *big_;
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), small_);
  return r;
}

double Int::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

std::string Int::str() const { return big_ ? big_->get_str() : std::to_string(small_); }

Int Int::operator-() const {
  if (!big_ && small_ != INT64_MIN) return Int(-small_);
  return from_mpz(-to_mpz());
}

Int operator+(const Int& a, const Int& b) {
  int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return Int(r);
  return Int::from_mpz(a.to_mpz() + b.to_mpz());
}

Int operator-(const Int& a, const Int& b) {
  int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return Int(r);
  return Int::from_mpz(a.to_mpz() - b.to_mpz());
}

Int operator*(const Int& a, const Int& b) {
  int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return Int(r);
  return Int::from_mpz(a.to_mpz() * b.to_mpz());
}

bool operator==(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // a big value never fits in int64
}

bool operator<(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_) return a.small_ < b.small_;
  return a.to_mpz() < b.to_mpz();
}

Int Int::divexact(const Int& a, const Int& b) {
  if (b.is_zero()) throw ArithmeticError("integer division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    if (a.small_ % b.small_ != 0) throw ArithmeticError("inexact integer division");
    return Int(a.small_ / b.small_);
  }
  mpz_class x = a.to_mpz(), y = b.to_mpz();
  if (!mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t())) throw ArithmeticError("inexact integer division");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return from_mpz(std::move(q));
}

Int Int::div_round(const Int& a, const Int& b) {
  if (b.is_zero()) throw ArithmeticError("integer division by zero");
  if (!a.big_ && !b.big_) {
    __int128 x = a.small_, y = b.small_;
    if (y < 0) x = -x, y = -y;
    __int128 num = 2 * x + y, den = 2 * y;
    __int128 q = num / den;
    if ((num % den != 0) && (num < 0)) --q;  // floor
    if (q >= INT64_MIN && q <= INT64_MAX) return Int(static_cast<int64_t>(q));
  }
  mpz_class x = a.to_mpz(), y = b.to_mpz();
  if (y < 0) x = -x, y = -y;
  mpz_class num = 2 * x + y, den = 2 * y, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return from_mpz(std::move(q));
}

bool Int::divides(const Int& b, const Int& a) {
  if (b.is_zero()) return a.is_zero();
  if (!a.big_ && !b.big_) {
    if (b.small_ == -1) return true;
    return a.small_ % b.small_ == 0;
  }
  mpz_class x = a.to_mpz(), y = b.to_mpz();
  return mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t()) != 0;
}

Int Int::gcd(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
    uint64_t x = static_cast<uint64_t>(a.small_ < 0 ? -a.small_ : a.small_);
    uint64_t y = static_cast<uint64_t>(b.small_ < 0 ? -b.small_ : b.small_);
    while (y) {
      uint64_t t = x % y;
      x = y;
      y = t;
    }
    return Int(static_cast<int64_t>(x));
  }
  mpz_class g;
  mpz_class x = a.to_mpz(), y = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return from_mpz(std::move(g));
}

std::size_t Int::hash() const {
  if (!big_) return std::hash<int64_t>{}(small_);
  std::size_t h = static_cast<std::size_t>(sgn(*big_));
  mpz_srcptr z = big_->get_mpz_t();
  for (std::size_t i = 0, n = mpz_size(z); i < n; ++i) h = h * 1000003u ^ mpz_getlimbn(z, i);
  return h;
}

// ---------------------------------------------------------------- GaussInt

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Int()};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt& GaussInt::operator+=(const GaussInt& b) {
  re += b.re;
  if (!b.im.is_zero()) im += b.im;
  return *this;
}

GaussInt& GaussInt::operator-=(const GaussInt& b) {
  re -= b.re;
  if (!b.im.is_zero()) im -= b.im;
  return *this;
}

GaussInt GaussInt::unit(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::optional<GaussInt> GaussInt::divexact(const GaussInt& a, const GaussInt& b) {
  if (b.is_zero()) throw ArithmeticError("gaussian division by zero");
  if (b.im.is_zero()) {
    if (!Int::divides(b.re, a.re) || !Int::divides(b.re, a.im)) return std::nullopt;
    return GaussInt(Int::divexact(a.re, b.re), Int::divexact(a.im, b.re));
  }
  GaussInt p = a * b.conj();
  Int n = b.norm();
  if (!Int::divides(n, p.re) || !Int::divides(n, p.im)) return std::nullopt;
  return GaussInt(Int::divexact(p.re, n), Int::divexact(p.im, n));
}

GaussInt GaussInt::gcd(GaussInt a, GaussInt b) {
  if (a.is_real() && b.is_real()) return {Int::gcd(a.re, b.re), Int()};
  while (!b.is_zero()) {
    GaussInt p = a * b.conj();
    Int n = b.norm();
    GaussInt qt(Int::div_round(p.re, n), Int::div_round(p.im, n));
    GaussInt r = a - qt * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a * normalizing_unit(a);
}

GaussInt GaussInt::normalizing_unit(const GaussInt& g) {
  int sr = g.re.sign(), si = g.im.sign();
  if (sr > 0 && si >= 0) return unit(0);
  if (si > 0 && sr <= 0) return unit(3);   // (-i)(a+bi) = b - ai
  if (sr < 0 && si <= 0) return unit(2);
  if (si < 0 && sr >= 0) return unit(1);   // i(a+bi) = -b + ai
  return unit(0);
}

std::string GaussInt::str() const {
  if (im.is_zero()) return re.str();
  std::string imag;
  if (im == Int(1)) imag = "i";
  else if (im == Int(-1)) imag = "-i";
  else imag = im.str() + "i";
  if (re.is_zero()) return imag;
  return "(" + re.str() + (im.sign() > 0 ? "+" : "") + imag + ")";
}

// ---------------------------------------------------------------- HalfLaurent

namespace {

using Coeffs = std::vector<GaussInt>;

const GaussInt& zero_gauss() {
  static const GaussInt z;
  return z;
}

GaussInt times_unit(const GaussInt& g, int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return g;
    case 1: return {-g.im, g.re};
    case 2: return -g;
    default: return {g.im, -g.re};
  }
}

void trim_high(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Strips zeros at both ends, returning how many low zeros were removed.
int trim_both(Coeffs& c) {
  trim_high(c);
  std::size_t k = 0;
  while (k < c.size() && c[k].is_zero()) ++k;
  if (k) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return static_cast<int>(k);
}

GaussInt content_of(const Coeffs& c) {
  GaussInt g;
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? x * GaussInt::normalizing_unit(x) : GaussInt::gcd(g, x);
    if (g.norm() == Int(1)) return GaussInt(1);
  }
  return g;
}

void divide_all(Coeffs& c, const GaussInt& g) {
  if (g.is_one()) return;
  for (auto& x : c) x = *GaussInt::divexact(x, g);
}

// Primitive, valuation-0 part of c.
void make_primitive(Coeffs& c) {
  trim_both(c);
  if (c.empty()) return;
  divide_all(c, content_of(c));
}

// Pseudo-remainder of a by b (both nonempty, deg a >= deg b).
Coeffs pseudo_rem(Coeffs a, const Coeffs& b) {
  const std::size_t m = b.size() - 1;
  const GaussInt& lc = b.back();
  while (a.size() > m && !a.empty()) {
    std::size_t k = a.size() - 1;
    GaussInt t = a[k];
    for (auto& x : a) x = x * lc;
    for (std::size_t j = 0; j <= m; ++j) a[k - m + j] -= t * b[j];
    trim_high(a);
  }
  return a;
}

}  // namespace

HalfLaurent::HalfLaurent(GaussInt c, int exp) {
  if (!c.is_zero()) {
    lo_ = exp;
    c_.push_back(std::move(c));
  }
}

HalfLaurent HalfLaurent::from_terms(int lo, std::vector<GaussInt> coeffs) {
  HalfLaurent r;
  r.lo_ = lo;
  r.c_ = std::move(coeffs);
  r.trim();
  return r;
}

void HalfLaurent::trim() {
  lo_ += trim_both(c_);
  if (c_.empty()) lo_ = 0;
}

bool HalfLaurent::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const GaussInt& g) { return g.is_real(); });
}

const GaussInt& HalfLaurent::coeff_at(int exp) const {
  if (c_.empty() || exp < lo_ || exp > degree()) return zero_gauss();
  return c_[static_cast<std::size_t>(exp - lo_)];
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& b) {
  if (b.is_zero()) return *this;
  if (is_zero()) return *this = b;
  int lo = std::min(lo_, b.lo_), hi = std::max(degree(), b.degree());
  if (lo < lo_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), GaussInt());
    lo_ = lo;
  }
  c_.resize(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t j = 0; j < b.c_.size(); ++j) c_[static_cast<std::size_t>(b.lo_ - lo_) + j] += b.c_[j];
  trim();
  return *this;
}

HalfLaurent operator+(const HalfLaurent& a, const HalfLaurent& b) {
  HalfLaurent r = a;
  r += b;
  return r;
}

HalfLaurent operator-(const HalfLaurent& a, const HalfLaurent& b) {
  HalfLaurent r = a;
  r += -b;
  return r;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  HalfLaurent r;
  r.lo_ = a.lo_ + b.lo_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, GaussInt());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

HalfLaurent HalfLaurent::shifted(int k) const {
  HalfLaurent r = *this;
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

HalfLaurent HalfLaurent::scaled(const GaussInt& g) const {
  if (g.is_zero()) return {};
  HalfLaurent r = *this;
  for (auto& x : r.c_) x = x * g;
  return r;
}

HalfLaurent HalfLaurent::subst_unit(int k) const {
  HalfLaurent r = *this;
  for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = times_unit(r.c_[j], k * (lo_ + static_cast<int>(j)));
  return r;
}

HalfLaurent HalfLaurent::subst_power(int m) const {
  if (m == 0) throw std::invalid_argument("subst_power: exponent 0");
  if (is_zero() || m == 1) return *this;
  int am = m < 0 ? -m : m;
  HalfLaurent r;
  r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(am) + 1, GaussInt());
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j * static_cast<std::size_t>(am)] = c_[j];
  r.lo_ = lo_ * am;
  if (m < 0) {
    std::reverse(r.c_.begin(), r.c_.end());
    r.lo_ = -degree() * am;
  }
  r.trim();
  return r;
}

GaussInt HalfLaurent::content() const { return content_of(c_); }

HalfLaurent HalfLaurent::div_scalar(const GaussInt& g) const {
  HalfLaurent r = *this;
  for (auto& x : r.c_) {
    auto y = GaussInt::divexact(x, g);
    if (!y) throw ArithmeticError("div_scalar: inexact");
    x = std::move(*y);
  }
  return r;
}

std::optional<HalfLaurent> HalfLaurent::divexact(const HalfLaurent& a, const HalfLaurent& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.is_zero()) return HalfLaurent();
  if (a.c_.size() < b.c_.size()) return std::nullopt;
  if (b.c_.size() == 1) {
    HalfLaurent r;
    r.lo_ = a.lo_ - b.lo_;
    r.c_.reserve(a.c_.size());
    for (const auto& x : a.c_) {
      auto y = GaussInt::divexact(x, b.c_[0]);
      if (!y) return std::nullopt;
      r.c_.push_back(std::move(*y));
    }
    return r;
  }
  Coeffs rem = a.c_;
  const std::size_t m = b.c_.size() - 1, n = rem.size() - 1;
  Coeffs quot(n - m + 1);
  for (std::size_t k = n + 1; k-- > m;) {
    if (rem[k].is_zero()) continue;
    auto t = GaussInt::divexact(rem[k], b.c_.back());
    if (!t) return std::nullopt;
    for (std::size_t j = 0; j <= m; ++j) rem[k - m + j] -= *t * b.c_[j];
    quot[k - m] = std::move(*t);
  }
  for (const auto& x : rem)
    if (!x.is_zero()) return std::nullopt;
  return from_terms(a.lo_ - b.lo_, std::move(quot));
}

HalfLaurent HalfLaurent::gcd(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero() || b.is_zero()) {
    const HalfLaurent& x = a.is_zero() ? b : a;
    HalfLaurent r = x.shifted(-x.lo_);
    return r.scaled(GaussInt::normalizing_unit(r.lowest()));
  }
  GaussInt cg = GaussInt::gcd(content_of(a.c_), content_of(b.c_));
  Coeffs pa = a.c_, pb = b.c_;
  make_primitive(pa);
  make_primitive(pb);
  Coeffs g;
  if (pa.size() == 1 || pb.size() == 1) {
    g = {GaussInt(1)};
  } else {
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
      Coeffs r = pseudo_rem(pa, pb);
      make_primitive(r);
      if (r.empty()) {
        g = std::move(pb);
        break;
      }
      if (r.size() == 1) {
        g = {GaussInt(1)};
        break;
      }
      pa = std::move(pb);
      pb = std::move(r);
    }
    GaussInt u = GaussInt::normalizing_unit(g.front());
    for (auto& x : g) x = x * u;
  }
  for (auto& x : g) x = x * cg;
  return from_terms(0, std::move(g));
}

std::complex<double> HalfLaurent::eval(std::complex<double> s) const {
  std::complex<double> r = 0;
  for (std::size_t j = c_.size(); j-- > 0;) r = r * s + c_[j].to_complex();
  return r * std::pow(s, lo_);
}

std::string HalfLaurent::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const GaussInt& c = c_[j];
    if (c.is_zero()) continue;
    int e = lo_ + static_cast<int>(j);
    std::string term;
    if (e == 0) {
      term = c.str();
    } else {
      std::string mono = e == 1 ? "s" : "s^" + std::to_string(e);
      if (c.is_one()) term = mono;
      else if (c == GaussInt(-1)) term = "-" + mono;
      else term = c.str() + "*" + mono;
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

std::size_t HalfLaurent::hash() const {
  std::size_t h = std::hash<int>{}(lo_);
  for (const auto& x : c_) h = (h * 31 + x.re.hash()) * 31 + x.im.hash();
  return h;
}

// ---------------------------------------------------------------- CrystalValue

std::optional<long long> CrystalValue::as_integer() const {
  if (divergent) return std::nullopt;
  auto v = GaussInt::divexact(value.num, value.den);
  if (!v || !v->is_real() || !v->re.is_small()) return std::nullopt;
  return v->re.small();
}

std::string CrystalValue::str() const {
  if (divergent) return "divergent";
  if (auto v = as_integer()) return std::to_string(*v);
  return value.num.str() + "/" + value.den.str();
}

// ---------------------------------------------------------------- QCoeff

QCoeff::QCoeff(HalfLaurent num, HalfLaurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("QCoeff with zero denominator");
  normalize_den();
}

void QCoeff::normalize_den() {
  if (num_.is_zero()) {
    den_ = HalfLaurent(GaussInt(1));
    return;
  }
  int v = den_.valuation();
  if (v != 0) {
    den_ = den_.shifted(-v);
    num_ = num_.shifted(-v);
  }
  GaussInt u = GaussInt::normalizing_unit(den_.lowest());
  if (!u.is_one()) {
    den_ = den_.scaled(u);
    num_ = num_.scaled(u);
  }
  if (den_.is_monomial() && !den_.is_one()) {
    GaussInt g = GaussInt::gcd(num_.content(), den_.lowest());
    if (!g.is_one()) {
      num_ = num_.div_scalar(g);
      den_ = den_.div_scalar(g);
    }
  }
}

bool QCoeff::is_one() const { return num_ == den_; }

QCoeff QCoeff::operator-() const {
  QCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

QCoeff operator+(const QCoeff& a, const QCoeff& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  QCoeff r;
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
  } else if (b.den_.is_one()) {
    r.num_ = a.num_ + b.num_ * a.den_;
    r.den_ = a.den_;
  } else if (a.den_.is_one()) {
    r.num_ = a.num_ * b.den_ + b.num_;
    r.den_ = b.den_;
  } else if (auto t = HalfLaurent::divexact(a.den_, b.den_)) {
    r.num_ = a.num_ + b.num_ * *t;
    r.den_ = a.den_;
  } else if (auto t2 = HalfLaurent::divexact(b.den_, a.den_)) {
    r.num_ = a.num_ * *t2 + b.num_;
    r.den_ = b.den_;
  } else {
    HalfLaurent g = HalfLaurent::gcd(a.den_, b.den_);
    HalfLaurent da = *HalfLaurent::divexact(a.den_, g), db = *HalfLaurent::divexact(b.den_, g);
    r.num_ = a.num_ * db + b.num_ * da;
    r.den_ = da * b.den_;
  }
  r.normalize_den();
  return r;
}

QCoeff operator-(const QCoeff& a, const QCoeff& b) { return a + (-b); }

QCoeff operator*(const QCoeff& a, const QCoeff& b) {
  if (a.is_zero() || b.is_zero()) return {};
  QCoeff r;
  r.num_ = a.num_ * b.num_;
  if (a.den_.is_one()) r.den_ = b.den_;
  else if (b.den_.is_one()) r.den_ = a.den_;
  else r.den_ = a.den_ * b.den_;
  r.normalize_den();
  return r;
}

QCoeff operator/(const QCoeff& a, const QCoeff& b) {
  if (b.is_zero()) throw ArithmeticError("QCoeff division by zero");
  if (a.is_zero()) return {};
  QCoeff r;
  r.num_ = a.num_ * b.den_;
  r.den_ = a.den_ * b.num_;
  r.normalize_den();
  return r;
}

bool operator==(const QCoeff& a, const QCoeff& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

QCoeff QCoeff::pow(int n) const {
  if (n < 0) return (QCoeff(1) / *this).pow(-n);
  QCoeff r(1), base = *this;
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

QCoeff QCoeff::subst_unit(int k) const { return QCoeff(num_.subst_unit(k), den_.subst_unit(k)); }

QCoeff QCoeff::subst_power(int m) const { return QCoeff(num_.subst_power(m), den_.subst_power(m)); }

QCoeff QCoeff::canonical() const {
  QCoeff r = *this;
  if (r.is_zero() || r.den_.is_one()) return r;
  HalfLaurent g = HalfLaurent::gcd(r.num_, r.den_);
  if (!g.is_one()) {
    r.num_ = *HalfLaurent::divexact(r.num_, g);
    r.den_ = *HalfLaurent::divexact(r.den_, g);
  }
  r.normalize_den();
  return r;
}

std::string QCoeff::str() const {
  QCoeff c = canonical();
  if (c.den_.is_one()) return c.num_.str();
  return "(" + c.num_.str() + ")/(" + c.den_.str() + ")";
}

CrystalValue QCoeff::crystal_limit() const {
  CrystalValue v;
  if (num_.is_zero()) {
    v.value = {GaussInt(0), GaussInt(1)};
    return v;
  }
  int vn = num_.valuation(), vd = den_.valuation();
  if (vn > vd) {
    v.value = {GaussInt(0), GaussInt(1)};
  } else if (vn == vd) {
    GaussInt n = num_.lowest(), d = den_.lowest();
    GaussInt g = GaussInt::gcd(n, d);
    v.value = {*GaussInt::divexact(n, g), *GaussInt::divexact(d, g)};
    GaussInt u = GaussInt::normalizing_unit(v.value.den);
    v.value = {v.value.num * u, v.value.den * u};
  } else {
    v.divergent = true;
  }
  return v;
}

std::complex<double> QCoeff::eval(std::complex<double> s) const {
  std::complex<double> d = den_.eval(s);
  double scale = 0;
  for (const auto& c : den_.coeffs()) scale = std::max(scale, std::abs(c.to_complex()));
  if (std::abs(d) <= 1e-12 * std::max(1.0, scale)) throw ArithmeticError("eval: denominator vanishes");
  return num_.eval(s) / d;
}

std::size_t QCoeff::hash() const {
  QCoeff c = canonical();
  return c.num_.hash() * 1000003u ^ c.den_.hash();
}

QCoeff neg_one_pow(long long n) { return QCoeff((n % 2 == 0) ? 1 : -1); }

// ---------------------------------------------------------------- parser

namespace {

// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := ('+'|'-') unary | atom ('^' int)?
// atom := int ['i'] | 'i' | 's' | 'q' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view t) : t_(t) {}

  QCoeff run() {
    QCoeff v = expr();
    skip();
    if (p_ != t_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument("QCoeff::parse: " + std::string(what) + " at offset " + std::to_string(p_) +
                                " in \"" + std::string(t_) + "\"");
  }
  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < t_.size() && t_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  Int integer() {
    std::size_t st = p_;
    while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
    if (st == p_) fail("expected integer");
    return Int(mpz_class(std::string(t_.substr(st, p_ - st))));
  }
  int small_int() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    skip();
    Int v = integer();
    if (!v.is_small() || v.small() > 1'000'000) fail("exponent too large");
    return static_cast<int>(neg ? -v.small() : v.small());
  }
  QCoeff expr() {
    QCoeff v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  QCoeff term() {
    QCoeff v = unary();
    while (true) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  QCoeff unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    QCoeff a = atom();
    if (eat('^')) a = a.pow(small_int());
    return a;
  }
  QCoeff atom() {
    skip();
    if (p_ >= t_.size()) fail("unexpected end");
    char c = t_[p_];
    if (c == '(') {
      ++p_;
      QCoeff v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int n = integer();
      if (p_ < t_.size() && t_[p_] == 'i') {
        ++p_;
        return QCoeff(HalfLaurent(GaussInt(Int(), n)));
      }
      return QCoeff(HalfLaurent(GaussInt(n, Int())));
    }
    ++p_;
    if (c == 'i') return QCoeff::i_unit();
    if (c == 's') return s();
    if (c == 'q') return q();
    --p_;
    fail("unexpected character");
  }

  std::string_view t_;
  std::size_t p_ = 0;
};

}  // namespace

QCoeff QCoeff::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace tetra
