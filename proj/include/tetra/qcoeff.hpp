#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tetra {

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arbitrary-precision integer with an inline int64 fast path.
class Int {
 public:
  Int() = default;
  Int(long long v) : small_(v) {}  // NOLINT
  explicit Int(const mpz_class& v);
  Int(const Int& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
  Int(Int&&) noexcept = default;
  Int& operator=(const Int& o);
  Int& operator=(Int&&) noexcept = default;

  bool is_zero() const { return !big_ && small_ == 0; }
  int sign() const;
  bool is_small() const { return !big_; }
  int64_t small() const { return small_; }
  mpz_class to_mpz() const;
  double to_double() const;
  std::string str() const;

  Int operator-() const;
  friend Int operator+(const Int& a, const Int& b);
  friend Int operator-(const Int& a, const Int& b);
  friend Int operator*(const Int& a, const Int& b);
  Int& operator+=(const Int& b) { return *this = *this + b; }
  Int& operator-=(const Int& b) { return *this = *this - b; }
  Int& operator*=(const Int& b) { return *this = *this * b; }
  friend bool operator==(const Int& a, const Int& b);
  friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
  friend bool operator<(const Int& a, const Int& b);

  // Exact quotient; throws when b does not divide a.
  static Int divexact(const Int& a, const Int& b);
  // Quotient rounded to the nearest integer (ties away from zero).
  static Int div_round(const Int& a, const Int& b);
  static bool divides(const Int& b, const Int& a);
  static Int gcd(const Int& a, const Int& b);
  std::size_t hash() const;

 private:
  static Int from_mpz(mpz_class v);
  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

// Gaussian integer re + im*i.
struct GaussInt {
  Int re, im;

  GaussInt() = default;
  GaussInt(long long r) : re(r) {}  // NOLINT
  GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_one() const { return im.is_zero() && re == Int(1); }
  GaussInt conj() const { return {re, -im}; }
  Int norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  GaussInt operator-() const { return {-re, -im}; }
  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b);
  GaussInt& operator+=(const GaussInt& b);
  GaussInt& operator-=(const GaussInt& b);
  friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

  // i^k for k mod 4.
  static GaussInt unit(int k);
  static std::optional<GaussInt> divexact(const GaussInt& a, const GaussInt& b);
  static GaussInt gcd(GaussInt a, GaussInt b);
  // Unit u with u*g in the first quadrant (re > 0, im >= 0); 1 for g == 0.
  static GaussInt normalizing_unit(const GaussInt& g);
  std::string str() const;
};

// Laurent polynomial in s with Gaussian-integer coefficients, stored densely
// from the lowest nonzero exponent. The zero polynomial has no coefficients.
class HalfLaurent {
 public:
  HalfLaurent() = default;
  HalfLaurent(GaussInt c, int exp = 0);  // NOLINT
  static HalfLaurent monomial(GaussInt c, int exp) { return HalfLaurent(std::move(c), exp); }
  static HalfLaurent from_terms(int lo, std::vector<GaussInt> coeffs);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && lo_ == 0 && c_[0].is_one(); }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_real() const;
  int valuation() const { return lo_; }
  int degree() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t length() const { return c_.size(); }
  const GaussInt& coeff_at(int exp) const;
  const GaussInt& lowest() const { return c_.front(); }
  const GaussInt& leading() const { return c_.back(); }
  const std::vector<GaussInt>& coeffs() const { return c_; }

  HalfLaurent operator-() const;
  friend HalfLaurent operator+(const HalfLaurent& a, const HalfLaurent& b);
  friend HalfLaurent operator-(const HalfLaurent& a, const HalfLaurent& b);
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  HalfLaurent& operator+=(const HalfLaurent& b);
  HalfLaurent& operator-=(const HalfLaurent& b) { return *this = *this - b; }
  HalfLaurent& operator*=(const HalfLaurent& b) { return *this = *this * b; }
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }
  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }

  HalfLaurent shifted(int k) const;
  HalfLaurent scaled(const GaussInt& g) const;
  HalfLaurent subst_unit(int k) const;      // s -> i^k s
  HalfLaurent subst_power(int m) const;     // s -> s^m, m = +-1, +-2, ...
  GaussInt content() const;
  HalfLaurent div_scalar(const GaussInt& g) const;  // exact
  // Exact quotient a / b, or nullopt when b does not divide a.
  static std::optional<HalfLaurent> divexact(const HalfLaurent& a, const HalfLaurent& b);
  // gcd up to units and s-powers; result has valuation 0 and is primitive.
  static HalfLaurent gcd(const HalfLaurent& a, const HalfLaurent& b);
  std::complex<double> eval(std::complex<double> s) const;
  std::string str() const;
  std::size_t hash() const;

 private:
  void trim();
  int lo_ = 0;
  std::vector<GaussInt> c_;
};

// Exact value of a q -> 0 limit: a Gaussian rational, or divergence.
struct GaussRational {
  GaussInt num;
  GaussInt den = 1;
  bool is_zero() const { return num.is_zero(); }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.num * b.den == b.num * a.den; }
};

struct CrystalValue {
  bool divergent = false;
  GaussRational value;
  // Integer value if finite and integral real; nullopt otherwise.
  std::optional<long long> as_integer() const;
  std::string str() const;
};

// Ratio of two Laurent polynomials in s = q^{1/2}. Arithmetic keeps the
// denominator at valuation 0 and combines denominators through their lcm;
// full reduction happens in canonical(). Multiplication does not reduce.
class QCoeff {
 public:
  QCoeff() = default;
  QCoeff(long long v) : num_(GaussInt(v)), den_(GaussInt(1)) {}  // NOLINT
  QCoeff(HalfLaurent num) : num_(std::move(num)), den_(GaussInt(1)) {}  // NOLINT
  QCoeff(HalfLaurent num, HalfLaurent den);

  static QCoeff s_pow(int k) { return QCoeff(HalfLaurent::monomial(1, k)); }
  static QCoeff q_pow(int k) { return s_pow(2 * k); }
  static QCoeff i_unit() { return QCoeff(HalfLaurent(GaussInt(0, 1))); }
  static QCoeff parse(std::string_view text);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_real() const { return num_.is_real() && den_.is_real(); }
  bool is_laurent() const { return den_.is_monomial(); }

  QCoeff operator-() const;
  friend QCoeff operator+(const QCoeff& a, const QCoeff& b);
  friend QCoeff operator-(const QCoeff& a, const QCoeff& b);
  friend QCoeff operator*(const QCoeff& a, const QCoeff& b);
  friend QCoeff operator/(const QCoeff& a, const QCoeff& b);
  QCoeff& operator+=(const QCoeff& b) { return *this = *this + b; }
  QCoeff& operator-=(const QCoeff& b) { return *this = *this - b; }
  QCoeff& operator*=(const QCoeff& b) { return *this = *this * b; }
  QCoeff& operator/=(const QCoeff& b) { return *this = *this / b; }
  friend bool operator==(const QCoeff& a, const QCoeff& b);
  friend bool operator!=(const QCoeff& a, const QCoeff& b) { return !(a == b); }
  QCoeff pow(int n) const;

  QCoeff subst_unit(int k) const;    // s -> i^k s
  QCoeff subst_i_s() const { return subst_unit(1); }
  QCoeff subst_power(int m) const;   // s -> s^m

  // Reduced, unit-normalized representative; equal values give equal output.
  QCoeff canonical() const;
  std::string str() const;           // canonical string
  CrystalValue crystal_limit() const;
  std::complex<double> eval(std::complex<double> s) const;
  std::size_t hash() const;  // hash of canonical()

 private:
  void normalize_den();
  HalfLaurent num_;
  HalfLaurent den_ = HalfLaurent(GaussInt(1));
};

// Laurent-form helpers used by formula transcriptions.
inline QCoeff q() { return QCoeff::q_pow(1); }
inline QCoeff s() { return QCoeff::s_pow(1); }
QCoeff neg_one_pow(long long n);
// q^{n/2} for integer n.
inline QCoeff q_half_pow(int n) { return QCoeff::s_pow(n); }

}  // namespace tetra
