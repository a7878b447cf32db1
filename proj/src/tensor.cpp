#include "tetra/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace tetra {

using json = nlohmann::json;

namespace {

struct IndexHash {
  std::size_t operator()(const MultiIndex& m) const {
    std::size_t h = m.size();
    for (int v : m) h = h * 1000003u ^ static_cast<std::size_t>(v);
    return h;
  }
};

}  // namespace

char slot_char(SlotKind k) { return k == SlotKind::Boson ? 'B' : 'F'; }

SlotKind slot_from_char(char c) {
  if (c == 'B') return SlotKind::Boson;
  if (c == 'F') return SlotKind::Fermion;
  throw std::invalid_argument(std::string("unknown slot kind '") + c + "'");
}

std::string index_str(const MultiIndex& m) {
  std::string r;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) r += ',';
    r += std::to_string(m[k]);
  }
  return r;
}

int WeightForm::operator()(const MultiIndex& x) const {
  int r = 0;
  for (std::size_t k = 0; k < c.size(); ++k) r += c[k] * x[k];
  return r;
}

std::vector<MultiIndex> enumerate_weight_class(const std::vector<SlotKind>& sig, const std::vector<WeightForm>& forms,
                                               const std::vector<int>& w) {
  const std::size_t n = sig.size(), nf = forms.size();
  if (w.size() != nf) throw std::invalid_argument("weight vector length mismatch");
  for (const auto& f : forms) {
    if (f.c.size() != n) throw std::invalid_argument("weight form length mismatch");
    for (int c : f.c)
      if (c < 0) throw std::logic_error("weight forms must have nonnegative coefficients");
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (sig[s] == SlotKind::Fermion) continue;
    bool pinned = false;
    for (const auto& f : forms) pinned |= f.c[s] > 0;
    if (!pinned) throw std::logic_error("bosonic slot " + std::to_string(s + 1) + " is not pinned by a weight form");
  }
  std::vector<MultiIndex> out;
  for (int v : w)
    if (v < 0) return out;
  // live[f][s]: some slot >= s still has a positive coefficient in form f
  std::vector<std::vector<bool>> live(nf, std::vector<bool>(n + 1, false));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t s = n; s-- > 0;) live[f][s] = live[f][s + 1] || forms[f].c[s] > 0;
  MultiIndex cur(n, 0);
  std::vector<int> rem = w;
  auto rec = [&](auto&& self, std::size_t s) -> void {
    for (std::size_t f = 0; f < nf; ++f)
      if (rem[f] > 0 && !live[f][s]) return;
    if (s == n) {
      out.push_back(cur);
      return;
    }
    int ub = sig[s] == SlotKind::Fermion ? 1 : std::numeric_limits<int>::max();
    for (std::size_t f = 0; f < nf; ++f)
      if (forms[f].c[s] > 0) ub = std::min(ub, rem[f] / forms[f].c[s]);
    for (int v = 0; v <= ub; ++v) {
      cur[s] = v;
      for (std::size_t f = 0; f < nf; ++f) rem[f] -= forms[f].c[s] * v;
      self(self, s + 1);
      for (std::size_t f = 0; f < nf; ++f) rem[f] += forms[f].c[s] * v;
    }
    cur[s] = 0;
  };
  rec(rec, 0);
  return out;
}

std::vector<MultiIndex> all_tuples(const std::vector<SlotKind>& sig, int bound) {
  std::vector<MultiIndex> out;
  MultiIndex cur(sig.size(), 0);
  auto rec = [&](auto&& self, std::size_t s) -> void {
    if (s == sig.size()) {
      out.push_back(cur);
      return;
    }
    int ub = sig[s] == SlotKind::Fermion ? 1 : bound;
    for (int v = 0; v <= ub; ++v) {
      cur[s] = v;
      self(self, s + 1);
    }
    cur[s] = 0;
  };
  rec(rec, 0);
  return out;
}

// ---- SparseOp ----

struct SparseOp::Impl {
  std::string name;
  std::vector<SlotKind> sig;
  std::vector<WeightForm> forms;
  ElementFn fn;
  mutable std::shared_mutex mu;
  mutable std::unordered_map<MultiIndex, std::unique_ptr<Column>, IndexHash> cols;
};

SparseOp::SparseOp(std::string name, std::vector<SlotKind> sig, std::vector<WeightForm> weights, ElementFn fn)
    : impl_(std::make_shared<Impl>()) {
  for (const auto& f : weights)
    if (f.c.size() != sig.size()) throw std::invalid_argument("weight form length mismatch in " + name);
  impl_->name = std::move(name);
  impl_->sig = std::move(sig);
  impl_->forms = std::move(weights);
  impl_->fn = std::move(fn);
}

SparseOp SparseOp::from_elements(std::string name, std::vector<SlotKind> sig, std::vector<WeightForm> weights,
                                 const std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>>& elems) {
  auto table = std::make_shared<std::map<std::pair<MultiIndex, MultiIndex>, QCoeff>>();
  for (const auto& [o, i, c] : elems)
    if (!c.is_zero()) (*table)[{o, i}] = c;
  SparseOp op(std::move(name), std::move(sig), std::move(weights), [table](const MultiIndex& o, const MultiIndex& i) {
    auto it = table->find({o, i});
    return it == table->end() ? QCoeff(0) : it->second;
  });
  for (const auto& [key, c] : *table) {
    op.check_index(key.first);
    op.check_index(key.second);
    if (op.weight_of(key.first) != op.weight_of(key.second))
      throw std::invalid_argument("element " + index_str(key.first) + " <- " + index_str(key.second) +
                                  " violates a weight form of " + op.name());
  }
  return op;
}

SparseOp SparseOp::identity(std::vector<SlotKind> sig) {
  std::vector<WeightForm> forms;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    WeightForm f{std::vector<int>(sig.size(), 0)};
    f.c[s] = 1;
    forms.push_back(f);
  }
  return SparseOp("Id", std::move(sig), std::move(forms), [](const MultiIndex&, const MultiIndex&) { return QCoeff(1); });
}

const std::string& SparseOp::name() const { return impl_->name; }
std::size_t SparseOp::arity() const { return impl_->sig.size(); }
const std::vector<SlotKind>& SparseOp::signature() const { return impl_->sig; }
const std::vector<WeightForm>& SparseOp::weights() const { return impl_->forms; }

std::vector<int> SparseOp::weight_of(const MultiIndex& x) const {
  std::vector<int> w;
  w.reserve(impl_->forms.size());
  for (const auto& f : impl_->forms) w.push_back(f(x));
  return w;
}

void SparseOp::check_index(const MultiIndex& x) const {
  if (x.size() != impl_->sig.size())
    throw std::invalid_argument(impl_->name + ": index " + index_str(x) + " has wrong arity");
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] < 0) throw std::invalid_argument(impl_->name + ": negative index " + index_str(x));
    if (impl_->sig[s] == SlotKind::Fermion && x[s] > 1)
      throw std::invalid_argument(impl_->name + ": fermionic slot " + std::to_string(s + 1) + " out of range in " +
                                  index_str(x));
  }
}

QCoeff SparseOp::element(const MultiIndex& out, const MultiIndex& in) const {
  check_index(out);
  check_index(in);
  if (weight_of(out) != weight_of(in)) return QCoeff(0);
  return impl_->fn(out, in);
}

const Column& SparseOp::column(const MultiIndex& in) const {
  {
    std::shared_lock lk(impl_->mu);
    auto it = impl_->cols.find(in);
    if (it != impl_->cols.end()) return *it->second;
  }
  check_index(in);
  auto col = std::make_unique<Column>();
  for (auto& out : weight_class(weight_of(in))) {
    QCoeff v = impl_->fn(out, in);
    if (!v.is_zero()) col->push_back({std::move(out), v.canonical()});
  }
  std::unique_lock lk(impl_->mu);
  auto [it, fresh] = impl_->cols.emplace(in, std::move(col));
  return *it->second;
}

std::vector<MultiIndex> SparseOp::weight_class(const std::vector<int>& w) const {
  return enumerate_weight_class(impl_->sig, impl_->forms, w);
}

std::vector<std::vector<int>> SparseOp::weight_classes(int bound) const {
  std::set<std::vector<int>> ws;
  for (const auto& x : all_tuples(impl_->sig, bound)) ws.insert(weight_of(x));
  return {ws.begin(), ws.end()};
}

std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> SparseOp::block(const std::vector<int>& w) const {
  std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> r;
  for (const auto& in : weight_class(w))
    for (const auto& e : column(in)) r.emplace_back(e.out, in, e.coeff);
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  return r;
}

SparseOp SparseOp::mapped(std::string name, std::function<QCoeff(const QCoeff&)> f) const {
  auto base = *this;
  return SparseOp(std::move(name), impl_->sig, impl_->forms,
                  [base, f](const MultiIndex& o, const MultiIndex& i) { return f(base.impl_->fn(o, i)); });
}

SparseOp SparseOp::with_element(std::string name, const MultiIndex& out, const MultiIndex& in, QCoeff v) const {
  check_index(out);
  check_index(in);
  if (weight_of(out) != weight_of(in)) throw std::invalid_argument("replacement element violates a weight form");
  auto base = *this;
  return SparseOp(std::move(name), impl_->sig, impl_->forms,
                  [base, out, in, v](const MultiIndex& o, const MultiIndex& i) {
                    return (o == out && i == in) ? v : base.impl_->fn(o, i);
                  });
}

std::string SparseOp::dump(const std::vector<std::vector<int>>& classes) const {
  std::string sig;
  for (auto k : impl_->sig) sig += slot_char(k);
  json forms = json::array();
  for (const auto& f : impl_->forms) forms.push_back(f.c);
  std::string out = json{{"op", impl_->name}, {"signature", sig}, {"weights", forms}}.dump() + "\n";
  std::set<std::vector<int>> seen;
  for (const auto& w : classes) {
    if (!seen.insert(w).second) continue;
    for (const auto& [o, i, c] : block(w)) out += json{{"out", o}, {"in", i}, {"coeff", c.str()}}.dump() + "\n";
  }
  return out;
}

SparseOp SparseOp::parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty operator dump");
  json h = json::parse(line);
  std::vector<SlotKind> sig;
  for (char c : h.at("signature").get<std::string>()) sig.push_back(slot_from_char(c));
  std::vector<WeightForm> forms;
  for (const auto& f : h.at("weights")) forms.push_back({f.get<std::vector<int>>()});
  std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> elems;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json r = json::parse(line);
    elems.emplace_back(r.at("out").get<MultiIndex>(), r.at("in").get<MultiIndex>(),
                       QCoeff::parse(r.at("coeff").get<std::string>()));
  }
  return from_elements(h.at("op").get<std::string>(), std::move(sig), std::move(forms), elems);
}

SparseOp compose(const SparseOp& a, const SparseOp& b, const std::vector<int>& w) {
  if (a.signature() != b.signature()) throw std::invalid_argument("compose: signature mismatch");
  std::vector<std::tuple<MultiIndex, MultiIndex, QCoeff>> elems;
  for (const auto& in : b.weight_class(w)) {
    std::map<MultiIndex, QCoeff> acc;
    for (const auto& mid : b.column(in))
      for (const auto& e : a.column(mid.out)) acc[e.out] += e.coeff * mid.coeff;
    for (auto& [o, c] : acc)
      if (!c.is_zero()) elems.emplace_back(o, in, c.canonical());
  }
  return SparseOp::from_elements(a.name() + "*" + b.name(), a.signature(), a.weights(), elems);
}

bool is_involution(const SparseOp& a, const std::vector<int>& w) {
  for (const auto& in : a.weight_class(w)) {
    std::map<MultiIndex, QCoeff> acc;
    for (const auto& mid : a.column(in))
      for (const auto& e : a.column(mid.out)) acc[e.out] += e.coeff * mid.coeff;
    for (const auto& [o, c] : acc)
      if (c != QCoeff(o == in ? 1 : 0)) return false;
    if (!acc.count(in)) return false;
  }
  return true;
}

// ---- networks ----

std::string variant_suffix(QVariant v) {
  switch (v) {
    case QVariant::Q: return "";
    case QVariant::QInv: return "(q^-1)";
    case QVariant::Q2: return "(q^2)";
    case QVariant::NegQ: return "(-q)";
  }
  return "";
}

namespace {

// Slot number carried by a wire label such as "x4" or "o12".
int label_slot(const std::string& l) {
  std::size_t k = 0;
  while (k < l.size() && !std::isdigit(static_cast<unsigned char>(l[k]))) ++k;
  if (k == 0 || k == l.size()) throw std::invalid_argument("malformed wire label '" + l + "'");
  return std::stoi(l.substr(k));
}

bool is_input(const std::string& l) { return l[0] == 'i' && std::isdigit(static_cast<unsigned char>(l[1])); }
bool is_output(const std::string& l) { return l[0] == 'o' && std::isdigit(static_cast<unsigned char>(l[1])); }

}  // namespace

Network::Network(const EquationSpec& spec, const Side& side, const OpResolver& ops) : n_(spec.slots.size()) {
  const int nf = static_cast<int>(side.factors.size());
  const int never = std::numeric_limits<int>::max();
  // Time t = 1..nf is the t-th factor applied, i.e. factors[nf - t].
  std::map<std::string, int> born, consumed;
  for (std::size_t s = 1; s <= n_; ++s) born["i" + std::to_string(s)] = 0;
  std::vector<SparseOp> resolved(nf);
  for (int t = 1; t <= nf; ++t) {
    const Factor& f = side.factors[nf - t];
    SparseOp op = ops(f.op, f.var);
    if (!op) throw std::invalid_argument(spec.name + ": unknown operator " + f.op);
    if (f.in.size() != op.arity() || f.out.size() != op.arity())
      throw std::invalid_argument(spec.name + ": factor " + f.op + " has wrong wire count");
    for (std::size_t p = 0; p < op.arity(); ++p) {
      for (const auto* l : {&f.in[p], &f.out[p]}) {
        int s = label_slot(*l);
        if (s < 1 || s > static_cast<int>(n_)) throw std::invalid_argument(spec.name + ": wire " + *l + " has no slot");
        if (spec.slots[s - 1] != op.signature()[p])
          throw std::invalid_argument(spec.name + ": wire " + *l + " has the wrong slot kind for " + f.op);
      }
      if (!born.count(f.in[p]) || born[f.in[p]] >= t)
        throw std::invalid_argument(spec.name + ": wire " + f.in[p] + " is used before it is produced");
      if (!consumed.emplace(f.in[p], t).second)
        throw std::invalid_argument(spec.name + ": wire " + f.in[p] + " is consumed twice");
      if (is_input(f.out[p]) || !born.emplace(f.out[p], t).second)
        throw std::invalid_argument(spec.name + ": wire " + f.out[p] + " is produced twice");
    }
    resolved[t - 1] = op;
  }
  for (const auto& [l, t] : born) {
    if (is_output(l) == (consumed.count(l) > 0))
      throw std::invalid_argument(spec.name + ": wire " + l + (is_output(l) ? " is consumed" : " is never consumed"));
  }
  for (std::size_t s = 1; s <= n_; ++s)
    if (!born.count("o" + std::to_string(s))) throw std::invalid_argument(spec.name + ": missing output wire");

  // A wire stays in the state until it is consumed and every sign monomial
  // containing it has been applied.
  std::vector<int> done;
  std::map<std::string, int> release;
  for (const auto& [l, t] : born) release[l] = is_output(l) ? never : consumed[l];
  for (const auto& m : side.sign) {
    if (m.empty() || m.size() > 2) throw std::invalid_argument(spec.name + ": sign monomials have degree 1 or 2");
    int t = 0;
    for (const auto& l : m) {
      if (!born.count(l)) throw std::invalid_argument(spec.name + ": sign uses unknown wire " + l);
      t = std::max(t, born[l]);
    }
    done.push_back(t);
    for (const auto& l : m) release[l] = std::max(release[l], t);
  }

  std::vector<std::string> state;
  for (std::size_t s = 1; s <= n_; ++s) state.push_back("i" + std::to_string(s));
  auto pos_in = [](const std::vector<std::string>& v, const std::string& l) {
    return static_cast<int>(std::find(v.begin(), v.end(), l) - v.begin());
  };
  for (std::size_t m = 0; m < side.sign.size(); ++m) {
    if (done[m] != 0) continue;
    std::vector<int> p;
    for (const auto& l : side.sign[m]) p.push_back(pos_in(state, l));
    initial_signs_.push_back(p);
  }
  for (int t = 1; t <= nf; ++t) {
    const Factor& f = side.factors[nf - t];
    Step st;
    st.op = resolved[t - 1];
    for (const auto& l : f.in) st.in_pos.push_back(pos_in(state, l));
    std::vector<std::string> comb = state;
    comb.insert(comb.end(), f.out.begin(), f.out.end());
    for (std::size_t m = 0; m < side.sign.size(); ++m) {
      if (done[m] != t) continue;
      std::vector<int> p;
      for (const auto& l : side.sign[m]) p.push_back(pos_in(comb, l));
      st.signs.push_back(p);
    }
    std::vector<std::string> next;
    for (std::size_t k = 0; k < comb.size(); ++k)
      if (release[comb[k]] > t) {
        st.keep_pos.push_back(static_cast<int>(k));
        next.push_back(comb[k]);
      }
    steps_.push_back(std::move(st));
    state = std::move(next);
  }
  if (state.size() != n_) throw std::logic_error(spec.name + ": final state is not the output wires");
  for (std::size_t s = 1; s <= n_; ++s) final_perm_.push_back(pos_in(state, "o" + std::to_string(s)));
}

namespace {

int sign_parity(const std::vector<std::vector<int>>& monos, const std::vector<int>& vals) {
  int par = 0;
  for (const auto& m : monos) {
    int p = 1;
    for (int k : m) p *= vals[k] & 1;
    par ^= p;
  }
  return par;
}

}  // namespace

SideResult Network::apply(const MultiIndex& in) const {
  if (in.size() != n_) throw std::invalid_argument("network input has wrong arity");
  using State = std::unordered_map<MultiIndex, QCoeff, IndexHash>;
  State cur;
  cur.emplace(in, QCoeff(sign_parity(initial_signs_, in) ? -1 : 1));
  MultiIndex fin, comb, nxt;
  for (const auto& st : steps_) {
    State next;
    for (const auto& [vals, c] : cur) {
      fin.clear();
      for (int p : st.in_pos) fin.push_back(vals[p]);
      for (const auto& e : st.op.column(fin)) {
        comb = vals;
        comb.insert(comb.end(), e.out.begin(), e.out.end());
        nxt.clear();
        for (int p : st.keep_pos) nxt.push_back(comb[p]);
        QCoeff v = c * e.coeff;
        if (sign_parity(st.signs, comb)) v = -v;
        auto [it, fresh] = next.try_emplace(nxt, std::move(v));
        if (!fresh) it->second += v;
      }
    }
    cur.clear();
    for (auto& [k, v] : next) {
      QCoeff r = v.canonical();
      if (!r.is_zero()) cur.emplace(k, std::move(r));
    }
  }
  SideResult r;
  for (const auto& [vals, c] : cur) {
    MultiIndex o(n_);
    for (std::size_t s = 0; s < n_; ++s) o[s] = vals[final_perm_[s]];
    r.emplace(std::move(o), c);
  }
  return r;
}

json VerificationReport::to_json() const {
  json m = json::array();
  for (const auto& x : mismatches)
    m.push_back({{"in", x.in}, {"out", x.out}, {"lhs", x.lhs.str()}, {"rhs", x.rhs.str()}});
  return {{"name", name},
          {"cutoff", cutoff},
          {"inputs", inputs},
          {"checked", checked},
          {"status", status.empty() ? (pass() ? "pass" : "fail") : status},
          {"mismatches", m}};
}

std::pair<QCoeff, QCoeff> contract(const EquationSpec& spec, const OpResolver& ops, const MultiIndex& out,
                                   const MultiIndex& in) {
  for (const auto* x : {&in, &out}) {
    if (x->size() != spec.slots.size()) throw std::invalid_argument("external index has wrong arity");
    for (std::size_t s = 0; s < x->size(); ++s)
      if ((*x)[s] < 0 || (spec.slots[s] == SlotKind::Fermion && (*x)[s] > 1))
        throw std::invalid_argument("external index violates slot kinds");
  }
  auto get = [&](const Side& side) {
    SideResult r = Network(spec, side, ops).apply(in);
    auto it = r.find(out);
    return it == r.end() ? QCoeff(0) : it->second;
  };
  return {get(spec.lhs), get(spec.rhs)};
}

VerificationReport verify_network(const EquationSpec& spec, const OpResolver& ops, int bound, int jobs) {
  Network L(spec, spec.lhs, ops), R(spec, spec.rhs, ops);
  const auto inputs = all_tuples(spec.slots, bound);
  struct Result {
    std::size_t checked = 0;
    std::vector<Mismatch> bad;
  };
  std::vector<Result> res(inputs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    try {
      for (std::size_t k; (k = next++) < inputs.size();) {
        SideResult a = L.apply(inputs[k]), b = R.apply(inputs[k]);
        Result& r = res[k];
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
          ++r.checked;
          if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            r.bad.push_back({inputs[k], ia->first, ia->second, QCoeff(0)});
            ++ia;
          } else if (ia == a.end() || ib->first < ia->first) {
            r.bad.push_back({inputs[k], ib->first, QCoeff(0), ib->second});
            ++ib;
          } else {
            if (ia->second != ib->second) r.bad.push_back({inputs[k], ia->first, ia->second, ib->second});
            ++ia, ++ib;
          }
        }
      }
    } catch (...) {
      std::lock_guard g(err_mu);
      if (!err) err = std::current_exception();
      next = inputs.size();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  VerificationReport rep;
  rep.name = spec.name;
  rep.cutoff = bound;
  rep.inputs = inputs.size();
  for (auto& r : res) {
    rep.checked += r.checked;
    for (auto& m : r.bad) rep.mismatches.push_back(std::move(m));
  }
  rep.status = rep.pass() ? "pass" : "fail";
  return rep;
}

}  // namespace tetra
