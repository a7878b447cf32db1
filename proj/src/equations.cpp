#include "tetra/equations.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/qcomb.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace tetra::eq {

namespace {

std::vector<SlotKind> slot_kinds(int n, const std::vector<int>& fermionic) {
  std::vector<SlotKind> s(n, SlotKind::Boson);
  for (int f : fermionic) s.at(f - 1) = SlotKind::Fermion;
  return s;
}

Factor fac(const OpRef& r, std::vector<std::string> in, std::vector<std::string> out) {
  return {r.op, r.var, std::move(in), std::move(out)};
}

// Sign monomials written as "i1*o6 + x4 + x2*x5".
std::vector<SignMonomial> signs(const std::string& text) {
  std::vector<SignMonomial> out;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    SignMonomial m;
    std::stringstream ts(term);
    std::string v;
    while (std::getline(ts, v, '*')) {
      auto b = v.find_first_not_of(' '), e = v.find_last_not_of(' ');
      if (b != std::string::npos) m.push_back(v.substr(b, e - b + 1));
    }
    if (!m.empty()) out.push_back(std::move(m));
  }
  return out;
}

const OpRef R{"R"}, L{"L"}, M{"M"}, N{"N"}, J{"J"}, K{"K"}, X{"X"}, Y{"Y"}, Z{"Z"}, Lt{"Ltilde"};
const OpRef Mi{"M", QVariant::QInv}, Ni{"N", QVariant::QInv}, Xi{"X", QVariant::QInv}, Yi{"Y", QVariant::QInv};

std::vector<EquationInfo> build_registry() {
  std::vector<EquationInfo> r;
  auto te = [&](std::string name, std::string desc, std::vector<OpRef> ops, std::vector<int> ferm,
                std::string ls = "", std::string rs = "") {
    bool sg = !ls.empty();
    r.push_back({name, std::move(desc), tetrahedron(name, ops, ferm, signs(ls), signs(rs)), sg});
  };
  auto re = [&](std::string name, std::string desc, std::vector<OpRef> ops, std::vector<int> ferm,
                std::string ls = "", std::string rs = "") {
    bool sg = !ls.empty();
    r.push_back({name, std::move(desc), reflection(name, ops, ferm, signs(ls), signs(rs)), sg});
  };

  te("TE_KV94", "R123 R145 R246 R356", {R, R, R, R}, {});
  te("TE_BS06", "L123 L145 L246 R356; fermionic 1,2,4", {L, L, L, R}, {1, 2, 4});
  {
    EquationSpec e;
    e.name = "TE_LLMM";
    e.slots = slot_kinds(6, {2, 3, 4, 5});
    e.lhs = matrix_side({{Lt, {1, 3, 5}}, {Lt, {1, 2, 4}}, {L, {4, 5, 6}}, {L, {2, 3, 6}}}, 6);
    e.rhs = matrix_side({{L, {2, 3, 6}}, {L, {4, 5, 6}}, {Lt, {1, 2, 4}}, {Lt, {1, 3, 5}}}, 6);
    r.push_back({"TE_LLMM", "Lt135 Lt124 L456 L236; fermionic 2,3,4,5", e, false});
  }
  te("TE_C3", "N(q^-1)123 N(q^-1)145 R246 L356; fermionic 1,3,5", {Ni, Ni, R, L}, {1, 3, 5});
  te("TE_C4", "M(q^-1) M(q^-1) L L with signs; fermionic 2,3,4,5", {Mi, Mi, L, L}, {2, 3, 4, 5},
     "x2*x5 + i3*i4", "x2*x5 + o3*o4");
  te("TE_C5", "L N N M with signs; fermionic 1,2,5,6", {L, N, N, M}, {1, 2, 5, 6}, "i1*o6 + x4 + x2*x5",
     "o1*i6 + x4 + x2*x5");
  te("TE_C6", "N L M(q^-1) N(q^-1) with signs; fermionic 1,3,4,6", {N, L, Mi, Ni}, {1, 3, 4, 6},
     "i1*o6 + x4 + i3*i4", "o1*i6 + x4 + o3*o4");

  re("RE_KO13", "R R J R R J J", {R, R, J, R, R, J, J}, {});
  re("RE_KO12", "R R K R R K K", {R, R, K, R, R, K, K}, {});
  re("RE_B2", "M M X M M X J; fermionic 5,6,8,9", {M, M, X, M, M, X, J}, {5, 6, 8, 9});
  re("RE_B3", "L N(q^-1) Y(q^-1) N(q^-1) L J X; fermionic 2,4,5,9", {L, Ni, Yi, Ni, L, J, X}, {2, 4, 5, 9});
  re("RE_B4", "R R Z R R Z Z", {R, R, Z, R, R, Z, Z}, {});
  re("RE_B5", "N(q^-1) L J L N(q^-1) Y(q^-1) Y(q^-1); fermionic 2,4,6,8", {Ni, L, J, L, Ni, Yi, Yi},
     {2, 4, 6, 8});
  re("RE_B6", "N(q^-1) L Z L N(q^-1) X(q^-1) X(q^-1) with signs; fermionic 2,4,6,8", {Ni, L, Z, L, Ni, Xi, Xi},
     {2, 4, 6, 8}, "x3*y8 + x5 + y4*o7 + y5 + o3*y6 + y2*x7", "x3*x8 + y5 + x4*i7 + x5 + i3*x6 + x2*x7");
  re("RE_B7", "M M Y M M Y Z with signs; fermionic 5,6,8,9", {M, M, Y, M, M, Y, Z}, {5, 6, 8, 9},
     "o1*i9 + x5 + x7 + x3*y8 + x5 + x1*i5 + o3*y6", "i1*o9 + x7 + y5 + x3*x8 + y5 + x1*o5 + i3*x6");
  re("RE_B8", "L N(q^-1) X(q^-1) N(q^-1) L Z Y with signs; fermionic 2,4,5,9", {L, Ni, Xi, Ni, L, Z, Y},
     {2, 4, 5, 9}, "o1*i9 + x5 + x7 + y4*o7 + y5 + x1*i5 + y2*x7",
     "i1*o9 + x7 + y5 + x4*i7 + x5 + x1*o5 + x2*x7");
  return r;
}

MultiIndex zeros(std::size_t n) { return MultiIndex(n, 0); }

}  // namespace

EquationSpec tetrahedron(const std::string& name, const std::vector<OpRef>& ops, const std::vector<int>& fermionic,
                         std::vector<SignMonomial> lhs_sign, std::vector<SignMonomial> rhs_sign) {
  if (ops.size() != 4) throw std::invalid_argument("tetrahedron: need four operators");
  EquationSpec e;
  e.name = name;
  e.slots = slot_kinds(6, fermionic);
  const auto &A = ops[0], &B = ops[1], &C = ops[2], &D = ops[3];
  e.lhs.factors = {fac(A, {"x1", "x2", "x3"}, {"o1", "o2", "o3"}), fac(B, {"i1", "x4", "x5"}, {"x1", "o4", "o5"}),
                   fac(C, {"i2", "i4", "x6"}, {"x2", "x4", "o6"}), fac(D, {"i3", "i5", "i6"}, {"x3", "x5", "x6"})};
  e.rhs.factors = {fac(D, {"x3", "x5", "x6"}, {"o3", "o5", "o6"}), fac(C, {"x2", "x4", "i6"}, {"o2", "o4", "x6"}),
                   fac(B, {"x1", "i4", "i5"}, {"o1", "x4", "x5"}), fac(A, {"i1", "i2", "i3"}, {"x1", "x2", "x3"})};
  e.lhs.sign = std::move(lhs_sign);
  e.rhs.sign = std::move(rhs_sign);
  return e;
}

EquationSpec reflection(const std::string& name, const std::vector<OpRef>& ops, const std::vector<int>& fermionic,
                        std::vector<SignMonomial> lhs_sign, std::vector<SignMonomial> rhs_sign) {
  if (ops.size() != 7) throw std::invalid_argument("reflection: need seven operators");
  EquationSpec e;
  e.name = name;
  e.slots = slot_kinds(9, fermionic);
  // ops: 456, 489, 3579, 269, 258, 1678, 1234
  e.lhs.factors = {fac(ops[0], {"y4", "y5", "y6"}, {"o4", "o5", "o6"}),
                   fac(ops[1], {"x4", "y8", "y9"}, {"y4", "o8", "o9"}),
                   fac(ops[2], {"x3", "x5", "x7", "x9"}, {"o3", "y5", "o7", "y9"}),
                   fac(ops[3], {"y2", "x6", "i9"}, {"o2", "y6", "x9"}),
                   fac(ops[4], {"x2", "i5", "x8"}, {"y2", "x5", "y8"}),
                   fac(ops[5], {"x1", "i6", "i7", "i8"}, {"o1", "x6", "x7", "x8"}),
                   fac(ops[6], {"i1", "i2", "i3", "i4"}, {"x1", "x2", "x3", "x4"})};
  e.rhs.factors = {fac(ops[6], {"x1", "y2", "x3", "y4"}, {"o1", "o2", "o3", "o4"}),
                   fac(ops[5], {"i1", "y6", "x7", "y8"}, {"x1", "o6", "o7", "o8"}),
                   fac(ops[4], {"x2", "y5", "x8"}, {"y2", "o5", "y8"}),
                   fac(ops[3], {"i2", "x6", "y9"}, {"x2", "y6", "o9"}),
                   fac(ops[2], {"i3", "x5", "i7", "x9"}, {"x3", "y5", "x7", "y9"}),
                   fac(ops[1], {"x4", "i8", "i9"}, {"y4", "x8", "x9"}),
                   fac(ops[0], {"i4", "i5", "i6"}, {"x4", "x5", "x6"})};
  e.lhs.sign = std::move(lhs_sign);
  e.rhs.sign = std::move(rhs_sign);
  return e;
}

Side matrix_side(const std::vector<std::pair<OpRef, std::vector<int>>>& factors, int slots) {
  // Walk right to left; the last factor touching a slot writes its output wire.
  std::vector<std::string> cur(slots + 1);
  std::vector<int> last(slots + 1, -1), serial(slots + 1, 0);
  for (int s = 1; s <= slots; ++s) cur[s] = "i" + std::to_string(s);
  for (int f = 0; f < static_cast<int>(factors.size()); ++f)
    for (int s : factors[f].second)
      if (last[s] < 0) last[s] = f;
  Side side;
  side.factors.resize(factors.size());
  for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
    Factor F{factors[f].first.op, factors[f].first.var, {}, {}};
    for (int s : factors[f].second) {
      F.in.push_back(cur[s]);
      std::string next = last[s] == f ? "o" + std::to_string(s)
                                      : "x" + std::to_string(s) + "_" + std::to_string(++serial[s]);
      F.out.push_back(next);
      cur[s] = next;
    }
    side.factors[f] = std::move(F);
  }
  return side;
}

const std::vector<EquationInfo>& registry() {
  static const std::vector<EquationInfo> r = build_registry();
  return r;
}

const EquationInfo& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown equation " + name);
}

OpResolver quantum_ops() {
  return [](const std::string& name, QVariant v) { return family(name, v); };
}

VerificationReport verify(const std::string& name, int bound, int jobs) {
  return verify_network(lookup(name).spec, quantum_ops(), bound, jobs);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& relation_names() {
  static const std::vector<std::string> n = {"RL_similar", "L_vs_N", "M_from_L", "K_vs_Jq2", "Ltilde_from_L",
                                             "X_to_Y"};
  return n;
}

namespace {

struct RelationRun {
  VerificationReport rep;
  std::set<MultiIndex> inputs;
  void check(const MultiIndex& in, const MultiIndex& out, const QCoeff& a, const QCoeff& b) {
    inputs.insert(in);
    if (a.is_zero() && b.is_zero()) return;
    ++rep.checked;
    if (a != b) rep.mismatches.push_back({in, out, a.canonical(), b.canonical()});
  }
  VerificationReport finish() {
    rep.inputs = inputs.size();
    if (rep.status.empty()) rep.status = rep.pass() ? "pass" : "fail";
    return rep;
  }
};

// Every (out, in) pair of the op's weight blocks within bound.
template <class F>
void each_block_pair(const SparseOp& op, int bound, F&& f) {
  for (const auto& w : op.weight_classes(bound)) {
    auto cls = op.weight_class(w);
    for (const auto& in : cls)
      for (const auto& out : cls) f(out, in);
  }
}

// i^{n/2} for even n, i.e. (-1)^{n/4}.
QCoeff minus_one_quarter(int n) {
  if (n % 2 != 0) throw std::logic_error("odd quarter exponent");
  int k = ((n / 2) % 4 + 4) % 4;
  QCoeff i = QCoeff::i_unit();
  return i.pow(k);
}

}  // namespace

VerificationReport verify_relation(const std::string& name, int bound) {
  RelationRun run;
  run.rep.name = name;
  run.rep.cutoff = bound;
  if (name == "RL_similar") {
    auto R = family("R"), L = family("L");
    const int pairs[5][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}};
    for (const auto& p : pairs)
      for (int k = 0; k <= bound; ++k)
        for (int c = 0; c <= bound; ++c) {
          MultiIndex in{p[0], p[1], k}, out{p[2], p[3], c};
          run.check(in, out, R.element(out, in), L.element(out, in));
        }
  } else if (name == "L_vs_N") {
    // N_{ijk}^{abc} = [j]!/[b]! L_{1-a,c,b}^{1-i,k,j}
    auto N = family("N"), L = family("L");
    each_block_pair(N, bound, [&](const MultiIndex& o, const MultiIndex& i) {
      QCoeff rhs = bracket_fact(i[1]) / bracket_fact(o[1]) * L.element({1 - i[0], i[2], i[1]}, {1 - o[0], o[2], o[1]});
      run.check(i, o, N.element(o, i), rhs.canonical());
    });
  } else if (name == "M_from_L") {
    auto M = family("M"), L = family("L");
    each_block_pair(M, bound, [&](const MultiIndex& o, const MultiIndex& i) {
      run.check(i, o, M.element(o, i), L.element({o[2], o[1], o[0]}, {i[2], i[1], i[0]}));
    });
  } else if (name == "K_vs_Jq2") {
    auto K = family("K"), J2 = family("J", QVariant::Q2);
    each_block_pair(K, bound, [&](const MultiIndex& o, const MultiIndex& i) {
      run.check(i, o, K.element(o, i), J2.element({o[3], o[2], o[1], o[0]}, {i[3], i[2], i[1], i[0]}));
    });
  } else if (name == "Ltilde_from_L") {
    auto Lt = family("Ltilde"), Ln = family("L", QVariant::NegQ);
    each_block_pair(Lt, bound, [&](const MultiIndex& o, const MultiIndex& i) {
      run.check(i, o, Lt.element(o, i), Ln.element({o[1], o[2], o[0]}, {i[1], i[2], i[0]}));
    });
  } else if (name == "X_to_Y") {
    // Y = (-1)^{(i(i-1) - k(k-1) - a(a-1) + c(c-1) + 2j - 2b)/4} ((1+q)/(1-q))^{j-b} X(-q),
    // with (-q)^{1/2} = i q^{1/2}; the imaginary part must cancel.
    auto X = family("X"), Y = family("Y");
    const QCoeff ratio = (QCoeff(1) + q()) / (QCoeff(1) - q());
    each_block_pair(Y, bound, [&](const MultiIndex& o, const MultiIndex& in) {
      const int i = in[0], j = in[1], k = in[2], a = o[0], b = o[1], c = o[2];
      QCoeff x = X.element(o, in);
      QCoeff rhs;
      if (!x.is_zero()) {
        int n = i * (i - 1) - k * (k - 1) - a * (a - 1) + c * (c - 1) + 2 * j - 2 * b;
        rhs = (minus_one_quarter(n) * ratio.pow(j - b) * x.subst_i_s()).canonical();
        if (!rhs.is_real()) run.rep.status = "fail: imaginary residue";
      }
      run.check(in, o, Y.element(o, in), rhs);
    });
  } else {
    throw std::invalid_argument("unknown relation " + name);
  }
  auto rep = run.finish();
  if (!rep.pass() && rep.status == "pass") rep.status = "fail";
  return rep;
}

VerificationReport verify_involution(const std::string& fam, int bound) {
  auto op = family(fam);
  VerificationReport rep;
  rep.name = fam + "^2 = 1";
  rep.cutoff = bound;
  for (const auto& w : op.weight_classes(bound)) {
    auto sq = compose(op, op, w);
    for (const auto& in : op.weight_class(w)) {
      ++rep.inputs;
      for (const auto& out : op.weight_class(w)) {
        QCoeff v = sq.element(out, in), want(out == in ? 1 : 0);
        if (!v.is_zero() || !want.is_zero()) ++rep.checked;
        if (v != want) rep.mismatches.push_back({in, out, v.canonical(), want});
      }
    }
  }
  rep.status = rep.pass() ? "pass" : "fail";
  return rep;
}

VerificationReport verify_mutated(const std::string& name, int bound, Mutation m, int jobs) {
  EquationSpec spec = lookup(name).spec;
  OpResolver base = quantum_ops();
  OpResolver ops = base;
  if (m == Mutation::Coefficient) {
    Factor& first = spec.lhs.factors.front();
    const std::string target = first.op;
    const QVariant var = first.var;
    first.op = target + "!";
    ops = [base, target, var](const std::string& n, QVariant v) {
      if (n != target + "!") return base(n, v);
      SparseOp op = base(target, var);
      MultiIndex z = zeros(op.arity());
      return op.with_element(target + "!", z, z, -op.element(z, z));
    };
  } else {
    if (spec.lhs.sign.empty()) throw std::invalid_argument(name + " has no sign factors to mutate");
    spec.lhs.sign.erase(spec.lhs.sign.begin());
  }
  spec.name = name + (m == Mutation::Coefficient ? " [coefficient mutation]" : " [sign mutation]");
  return verify_network(spec, ops, bound, jobs);
}

}  // namespace tetra::eq
