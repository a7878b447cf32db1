#include "tetra/crystal.hpp"

#include "tetra/equations.hpp"
#include "tetra/ops3d.hpp"
#include "tetra/qcomb.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace tetra::crystal {

QCoeff prefactor(const std::string& family, const MultiIndex& out, const MultiIndex& in) {
  if (family == "N") return bracket_fact(out[1]) / bracket_fact(in[1]);
  if (family == "X") return bracket_fact(out[2], -1, -1) / bracket_fact(in[2], -1, -1);
  if (family == "Y") return bracket_fact(out[2], -1) / bracket_fact(in[2], -1);
  return QCoeff(1);
}

int crystal_element(const std::string& fam, const MultiIndex& out, const MultiIndex& in) {
  QCoeff v = family(fam).element(out, in);
  if (v.is_zero()) return 0;
  CrystalValue c = (prefactor(fam, out, in) * v).canonical().crystal_limit();
  auto n = c.as_integer();
  if (!n || *n < -1 || *n > 1)
    throw CrystalError("crystal " + fam + " element " + index_str(in) + " -> " + index_str(out) + " has limit " +
                       c.str());
  return static_cast<int>(*n);
}

void CombMap::set(const MultiIndex& in, CombEntry e) {
  if (!entries_.emplace(in, std::move(e)).second)
    throw CrystalError(name_ + ": input " + index_str(in) + " has two nonzero images");
}

std::optional<CombEntry> CombMap::image(const MultiIndex& in) const {
  auto it = entries_.find(in);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool CombMap::has_signs() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.sign < 0; });
}

bool CombMap::is_permutation_of(const std::vector<MultiIndex>& cls) const {
  std::set<MultiIndex> members(cls.begin(), cls.end()), hit;
  for (const auto& in : cls) {
    auto e = image(in);
    if (!e || !members.count(e->out) || !hit.insert(e->out).second) return false;
  }
  return true;
}

CombMap crystal_operator(const std::string& fam, int bound) {
  SparseOp op = family(fam);
  CombMap m(fam, op.signature(), op.weights());
  for (const auto& w : op.weight_classes(bound))
    for (const auto& in : op.weight_class(w))
      for (const auto& e : op.column(in)) {
        int v = crystal_element(fam, e.out, in);
        if (v != 0) m.set(in, {e.out, v});
      }
  return m;
}

MultiIndex crystal_closed_R(const MultiIndex& x) {
  const int i = x.at(0), j = x.at(1), k = x.at(2), m = std::min(i, k);
  return {i + j - m, m, j + k - m};
}

MultiIndex crystal_closed_J(const MultiIndex& x) {
  const int i = x.at(0), j = x.at(1), k = x.at(2), l = x.at(3);
  const int x1 = std::min(i + 2 * std::min(j, l), k + 2 * l);
  const int x2 = std::min(i + std::min(j, l), k + l);
  return {i + 2 * j + k - x1, x1 - x2, 2 * x2 - x1, j + k + l - x2};
}

SparseOp crystal_op(const std::string& fam) {
  static std::mutex mu;
  static std::map<std::string, SparseOp> cache;
  std::lock_guard lk(mu);
  auto it = cache.find(fam);
  if (it != cache.end()) return it->second;
  SparseOp base = family(fam);
  SparseOp op("crys " + fam, base.signature(), base.weights(),
              [fam](const MultiIndex& out, const MultiIndex& in) { return QCoeff(crystal_element(fam, out, in)); });
  return cache.emplace(fam, op).first->second;
}

OpResolver crystal_ops() {
  return [](const std::string& name, QVariant v) {
    if (v != QVariant::Q) throw std::invalid_argument("crystal operators take no q-variant");
    return crystal_op(name);
  };
}

const std::vector<CombEquation>& combinatorial_equations() {
  using eq::OpRef;
  static const std::vector<CombEquation> list = [] {
    const OpRef R{"R"}, L{"L"}, M{"M"}, N{"N"}, J{"J"}, X{"X"}, Y{"Y"}, Z{"Z"};
    std::vector<CombEquation> v;
    v.push_back({"BS06_crys", eq::tetrahedron("BS06_crys", {L, L, L, R}, {1, 2, 4}), false, 3});
    v.push_back({"TE_C5_crys",
                 eq::tetrahedron("TE_C5_crys", {L, N, N, M}, {1, 2, 5, 6}, {{"i1", "o6"}, {"x4"}, {"x2", "x5"}},
                                 {{"o1", "i6"}, {"x4"}, {"x2", "x5"}}),
                 false, 3});
    v.push_back({"RE_B2_crys", eq::reflection("RE_B2_crys", {M, M, X, M, M, X, J}, {5, 6, 8, 9}), false, 2});
    v.push_back({"RE_conj1", eq::reflection("RE_conj1", {R, R, Z, R, R, Z, Z}, {}), true, 1});
    v.push_back({"RE_conj2",
                 eq::reflection("RE_conj2", {M, M, Y, M, M, Y, Z}, {5, 6, 8, 9},
                                {{"o1", "i9"}, {"x5"}, {"x7"}, {"x3", "y8"}, {"x5"}, {"x1", "i5"}, {"o3", "y6"}},
                                {{"i1", "o9"}, {"x7"}, {"y5"}, {"x3", "x8"}, {"y5"}, {"x1", "o5"}, {"i3", "x6"}}),
                 true, 1});
    return v;
  }();
  return list;
}

VerificationReport verify_combinatorial(const std::string& name, int bound, int jobs) {
  for (const auto& e : combinatorial_equations()) {
    if (e.name != name) continue;
    VerificationReport rep;
    try {
      rep = verify_network(e.spec, crystal_ops(), bound, jobs);
    } catch (const CrystalError& err) {
      rep.name = name;
      rep.cutoff = bound;
      rep.status = std::string("divergent: ") + err.what();
      return rep;
    }
    if (e.conjecture) rep.status = rep.pass() ? "conjecture-consistent" : "conjecture-inconsistent";
    return rep;
  }
  throw std::invalid_argument("unknown combinatorial equation " + name);
}

}  // namespace tetra::crystal
