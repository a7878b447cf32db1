#pragma once

// PBW bases of the positive part of rank-2 and rank-3 quantum superalgebras of
// types A and B. Elements live in the free algebra on e_1..e_r; equality in the
// quotient is decided through the quantum shuffle embedding, whose kernel is
// the ideal generated by the Serre and additional relations at generic q.
//
// Word order is degree-lexicographic with e_1 < e_2 < e_3. A word is normal
// when its image is independent of the images of all smaller words of the
// same multidegree; the minimal non-normal words lead the rewrite rules.

#include "tetra/qcoeff.hpp"
#include "tetra/tensor.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tetra::pbw {

using Word = std::vector<int>;    // letters 1..r
using Weight = std::vector<int>;  // multidegree in the simple roots

enum class RootClass { Even, Iso, Aniso };
const char* root_class_name(RootClass c);

struct CartanData {
  char type = 'A';   // 'A' or 'B'
  std::string id;    // "A:ox", "B:xb", "B:oxo", ...
  std::string case_name;  // "I", "II", ...
  std::vector<std::vector<int>> DA;
  std::vector<int> parity;

  int rank() const { return static_cast<int>(parity.size()); }
  int form(const Weight& a, const Weight& b) const;
  int parity_of(const Weight& a) const;
  RootClass root_class(const Weight& a) const;
  Weight simple(int i) const;  // alpha_i, 1-based
};

// Accepts "A:ox", the unicode node glyphs (○ ⊗ ●; 'b' stands for ●) and
// "A(II)" / "B3(VI)" style case names. Throws std::invalid_argument.
CartanData diagram(std::string_view id);
std::vector<std::string> diagram_ids(char type, int rank);

class AlgElement {
 public:
  AlgElement() = default;
  explicit AlgElement(const QCoeff& c);  // c times the empty word
  static AlgElement generator(int i) { return word({i}); }
  static AlgElement word(Word w, const QCoeff& c = QCoeff(1));

  const std::map<Word, QCoeff>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  // Common multidegree; throws std::logic_error when x is not homogeneous.
  Weight weight(int rank) const;
  std::size_t length() const;  // word length of the homogeneous component

  AlgElement operator-() const;
  friend AlgElement operator+(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator-(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator*(const QCoeff& c, const AlgElement& a);
  AlgElement& operator+=(const AlgElement& b);
  AlgElement pow(int n) const;
  // Exact term-wise equality in the free algebra.
  friend bool operator==(const AlgElement& a, const AlgElement& b);

  std::string str() const;  // "c*e1e2 + ..." in word order

 private:
  void add(const Word& w, const QCoeff& c);
  std::map<Word, QCoeff> t_;
};

// [x,y]_q = xy - (-1)^{p(x)p(y)} q^{-(x,y)} yx for homogeneous x, y.
AlgElement qcomm(const CartanData& cd, const AlgElement& x, const AlgElement& y);
// Anti-automorphism fixing the generators: reverses every word.
AlgElement chi(const AlgElement& x);

struct RootVector {
  std::string tree;  // bracket notation, e.g. "(12)2", "3(3(21))", "123"
  Weight weight;
  RootClass cls = RootClass::Even;
  int norm = 0;             // (beta, beta)
  bool normalized = false;  // divided by q^{1/2}+q^{-1/2}
  AlgElement element;       // expansion in the free algebra
  int bracket_exponent() const;  // s-exponent of the divided-power base
};

// Builds the root vector for a bracket tree. Juxtaposed atoms associate to the
// left, so "321" is ((32)1). Type B divides once when the rank letter occurs
// twice in the tree.
RootVector root_vector(const CartanData& cd, std::string_view tree);
// B_1 (basis = 1) or B_2 (basis = 2) root vectors in PBW order.
const std::vector<RootVector>& pbw_roots(const CartanData& cd, int basis);

Weight exponents_weight(const CartanData& cd, int basis, const MultiIndex& exps);
// Ordered product of divided powers; throws std::invalid_argument for an
// exponent >= 2 at an isotropic position or a size mismatch.
AlgElement pbw_monomial(const CartanData& cd, int basis, const MultiIndex& exps);
// All exponent tuples of the given basis with multidegree w.
std::vector<MultiIndex> pbw_exponents(const CartanData& cd, int basis, const Weight& w);

// Image in the quantum shuffle algebra; zero exactly when x vanishes in U^+.
std::map<Word, QCoeff> shuffle_image(const CartanData& cd, const AlgElement& x);
bool vanishes(const CartanData& cd, const AlgElement& x);

// Normal words of multidegree w, ascending.
std::vector<Word> normal_words(const CartanData& cd, const Weight& w);
// Normal form computed from the shuffle image (no rules needed).
AlgElement shuffle_normal_form(const CartanData& cd, const AlgElement& x);

class RewriteSystem {
 public:
  struct Rule {
    Word lhs;
    AlgElement rhs;  // combination of normal words smaller than lhs
  };
  // Derives every rule whose leading word has length <= max_length.
  static RewriteSystem compile(const CartanData& cd, int max_length);
  const CartanData& cartan() const { return cd_; }
  int max_length() const { return max_length_; }
  const std::vector<Rule>& rules() const { return rules_; }
  // Greedy reduction of the largest reducible word first; throws
  // std::out_of_range for words longer than max_length.
  AlgElement reduce(const AlgElement& x) const;
  // Every word up to max_length reduces to its shuffle normal form.
  bool confluent() const;

 private:
  CartanData cd_;
  int max_length_ = 0;
  std::vector<Rule> rules_;
  std::map<Word, std::size_t> index_;
  std::size_t longest_ = 0;
};

AlgElement normal_form(const AlgElement& x, const RewriteSystem& rs);

// Transition coefficients E_from^A = sum_B c^A_B E_to^{B^op} for one
// multidegree. Keys are (A, B) with A in `from` order and B reversed `to`
// order, matching element(out = A, in = B) of the 3D operators.
struct TransitionBlock {
  Weight weight;
  std::vector<MultiIndex> from, to;  // A tuples and B tuples
  std::map<std::pair<MultiIndex, MultiIndex>, QCoeff> coeff;
  QCoeff at(const MultiIndex& a, const MultiIndex& b) const;
};

TransitionBlock transition(const CartanData& cd, int from_basis, int to_basis, const Weight& w);
// gamma: E_2 in terms of E_1.
inline TransitionBlock transition_matrix(const CartanData& cd, const Weight& w) {
  return transition(cd, 2, 1, w);
}
// gamma-tilde obtained from gamma by reversing both index tuples.
TransitionBlock gamma_tilde_from(const TransitionBlock& gamma);

// Higher-order relations among rank-3 root vectors that apply to cd (the
// root-class conditions are already filtered). Each element must vanish in
// U^+. chi_image marks the image of a relation under chi.
struct NamedRelation {
  std::string name;
  bool chi_image = false;
  AlgElement element;
};
std::vector<NamedRelation> higher_order_relations(const CartanData& cd);

// 3D operator name whose elements the rank-2 transition matrix reproduces
// ("R", "L", "M", "N", "J", "X", "Y", "Z"); throws for other diagrams.
std::string operator_for(const CartanData& cd);

}  // namespace tetra::pbw
