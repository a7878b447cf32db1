#pragma once

// Multi-index spaces, sparse operators and signed contraction networks.

#include "tetra/qcoeff.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tetra {

enum class SlotKind : uint8_t { Boson, Fermion };

char slot_char(SlotKind k);  // 'B' or 'F'
SlotKind slot_from_char(char c);

using MultiIndex = std::vector<int>;

std::string index_str(const MultiIndex& m);

// Linear form sum_s c[s] * x[s] over slot entries.
struct WeightForm {
  std::vector<int> c;
  int operator()(const MultiIndex& x) const;
};

struct Entry {
  MultiIndex out;
  QCoeff coeff;
};
using Column = std::vector<Entry>;

// Element function of an operator: value at (out, in). Only called on pairs
// that satisfy every weight form.
using ElementFn = std::function<QCoeff(const MultiIndex& out, const MultiIndex& in)>;

// Typed sparse linear map. Columns (all nonzero outputs of one input) are
// built on first use from the element function and cached; the cache is
// synchronized, so one SparseOp may be shared between threads.
class SparseOp {
 public:
  SparseOp() = default;
  SparseOp(std::string name, std::vector<SlotKind> sig, std::vector<WeightForm> weights, ElementFn fn);
  // Operator given by an explicit element list; zero elsewhere.
  static SparseOp from_elements(std::string name, std::vector<SlotKind> sig, std::vector<WeightForm> weights,
                                const std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>>& elems);
  static SparseOp identity(std::vector<SlotKind> sig);

  explicit operator bool() const { return static_cast<bool>(impl_); }
  const std::string& name() const;
  std::size_t arity() const;
  const std::vector<SlotKind>& signature() const;
  const std::vector<WeightForm>& weights() const;

  std::vector<int> weight_of(const MultiIndex& x) const;
  // Throws std::invalid_argument on arity or slot-kind mismatch.
  void check_index(const MultiIndex& x) const;

  // Exact element; 0 off the weight shell.
  QCoeff element(const MultiIndex& out, const MultiIndex& in) const;
  // Nonzero outputs for one input, lexicographic in out.
  const Column& column(const MultiIndex& in) const;
  // All tuples with the given weight vector, lexicographic. Throws
  // std::logic_error when some bosonic slot is not pinned by a form.
  std::vector<MultiIndex> weight_class(const std::vector<int>& w) const;
  // Weight vectors of all tuples whose bosonic entries are <= bound.
  std::vector<std::vector<int>> weight_classes(int bound) const;
  // (out, in, coeff) for every nonzero element of a weight class.
  std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> block(const std::vector<int>& w) const;

  // Same weights and signature, coefficients mapped by f.
  SparseOp mapped(std::string name, std::function<QCoeff(const QCoeff&)> f) const;
  // Entry (out, in) replaced by v. Used for mutation controls.
  SparseOp with_element(std::string name, const MultiIndex& out, const MultiIndex& in, QCoeff v) const;

  // JSON-lines dump of the given weight classes: header then one record per element.
  std::string dump(const std::vector<std::vector<int>>& classes) const;
  static SparseOp parse_dump(const std::string& text);

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Enumerates all tuples with kinds sig and weights w under forms.
std::vector<MultiIndex> enumerate_weight_class(const std::vector<SlotKind>& sig, const std::vector<WeightForm>& forms,
                                               const std::vector<int>& w);

// (a o b) restricted to the weight class w.
SparseOp compose(const SparseOp& a, const SparseOp& b, const std::vector<int>& w);
bool is_involution(const SparseOp& a, const std::vector<int>& w);

// ---- equation networks ----

enum class QVariant : uint8_t { Q, QInv, Q2, NegQ };
std::string variant_suffix(QVariant v);  // "", "(q^-1)", "(q^2)", "(-q)"

// One operator application. Lower labels are inputs, upper labels outputs,
// both listed in the operator's slot order.
struct Factor {
  std::string op;
  QVariant var = QVariant::Q;
  std::vector<std::string> in, out;
};

// Product of one or two wire labels contributing (-1)^{product}.
using SignMonomial = std::vector<std::string>;

struct Side {
  std::vector<Factor> factors;  // written order; the rightmost acts first
  std::vector<SignMonomial> sign;
};

// External wires are i1..in (inputs) and o1..on (outputs).
struct EquationSpec {
  std::string name;
  std::vector<SlotKind> slots;
  Side lhs, rhs;
};

// Resolves (operator id, variant) to an operator.
using OpResolver = std::function<SparseOp(const std::string&, QVariant)>;

// All nonzero outputs of one side applied to one external input.
using SideResult = std::map<MultiIndex, QCoeff>;

// Compiled form of one side of an equation: a right-to-left schedule of
// factor applications over a state of live wire values.
class Network {
 public:
  Network(const EquationSpec& spec, const Side& side, const OpResolver& ops);
  SideResult apply(const MultiIndex& in) const;

 private:
  struct Step {
    SparseOp op;
    // The combined vector is the current state followed by the factor outputs.
    std::vector<int> in_pos;              // factor inputs, positions in the state
    std::vector<std::vector<int>> signs;  // monomials completed here, combined positions
    std::vector<int> keep_pos;            // combined positions forming the next state
  };
  std::size_t n_ = 0;
  std::vector<std::vector<int>> initial_signs_;
  std::vector<Step> steps_;
  std::vector<int> final_perm_;  // state position of o_s
};

struct Mismatch {
  MultiIndex in, out;
  QCoeff lhs, rhs;
};

struct VerificationReport {
  std::string name;
  int cutoff = 0;
  std::size_t inputs = 0;    // external input tuples
  std::size_t checked = 0;   // external (in, out) pairs with a nonzero side
  std::vector<Mismatch> mismatches;
  std::string status;        // "pass", "fail", or a custom tag
  bool pass() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

// All tuples of kinds sig with bosonic entries <= bound.
std::vector<MultiIndex> all_tuples(const std::vector<SlotKind>& sig, int bound);

// Component value of (lhs, rhs) at one external pair.
std::pair<QCoeff, QCoeff> contract(const EquationSpec& spec, const OpResolver& ops, const MultiIndex& out,
                                   const MultiIndex& in);

// Contracts both sides on every external input with bosonic entries <= bound
// and compares all outputs. jobs > 1 splits inputs across threads.
VerificationReport verify_network(const EquationSpec& spec, const OpResolver& ops, int bound, int jobs = 1);

}  // namespace tetra
