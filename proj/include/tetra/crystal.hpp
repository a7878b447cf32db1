#pragma once

// q -> 0 limits of the 3D operators and the combinatorial equations they
// satisfy.
//
// Prefactors applied before the limit (out = a,b,c,d, in = i,j,k,l):
//   N: [b]_q! / [j]_q!
//   X: [c]_{q^-1/2,(-1)}! / [k]_{q^-1/2,(-1)}!
//   Y: [c]_{q^-1/2}! / [k]_{q^-1/2}!
// All other families take the plain limit.

#include "tetra/tensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra::crystal {

// Raised when an element has no finite limit, or its limit is not 0 or +-1.
class CrystalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

QCoeff prefactor(const std::string& family, const MultiIndex& out, const MultiIndex& in);
// Limit of prefactor * element, as -1, 0 or 1. Throws CrystalError.
int crystal_element(const std::string& family, const MultiIndex& out, const MultiIndex& in);

struct CombEntry {
  MultiIndex out;
  int sign = 1;
};

// Signed partial map on multi-indices.
class CombMap {
 public:
  CombMap() = default;
  CombMap(std::string name, std::vector<SlotKind> sig, std::vector<WeightForm> weights)
      : name_(std::move(name)), sig_(std::move(sig)), weights_(std::move(weights)) {}

  const std::string& name() const { return name_; }
  const std::vector<SlotKind>& signature() const { return sig_; }
  const std::vector<WeightForm>& weights() const { return weights_; }
  const std::map<MultiIndex, CombEntry>& entries() const { return entries_; }

  // Throws CrystalError when in already has an image.
  void set(const MultiIndex& in, CombEntry e);
  std::optional<CombEntry> image(const MultiIndex& in) const;
  bool has_signs() const;
  // Within every weight class listed, each tuple has an image in the class
  // and no two share one.
  bool is_permutation_of(const std::vector<MultiIndex>& cls) const;

 private:
  std::string name_;
  std::vector<SlotKind> sig_;
  std::vector<WeightForm> weights_;
  std::map<MultiIndex, CombEntry> entries_;
};

// Crystal map of a family on all weight classes of bound. Throws
// CrystalError for a divergent or non-unit limit, or a column with more than
// one nonzero entry.
CombMap crystal_operator(const std::string& family, int bound);

// Closed min-plus forms of the crystal R and J.
MultiIndex crystal_closed_R(const MultiIndex& in);
MultiIndex crystal_closed_J(const MultiIndex& in);

// Lazily evaluated crystal limit as an operator with entries in {0, +-1}.
SparseOp crystal_op(const std::string& family);
OpResolver crystal_ops();

struct CombEquation {
  std::string name;
  EquationSpec spec;
  bool conjecture = false;
  int default_bound = 1;
};
// BS06_crys, TE_C5_crys, RE_B2_crys, RE_conj1, RE_conj2.
const std::vector<CombEquation>& combinatorial_equations();

// Status is "pass"/"fail", or "conjecture-consistent"/"conjecture-inconsistent"
// for the conjectural ones, or "divergent: ..." if some limit failed.
VerificationReport verify_combinatorial(const std::string& name, int bound, int jobs = 1);

}  // namespace tetra::crystal
