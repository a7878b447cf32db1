// Command-line front end: operator dumps, Z elements, equation checks,
// crystal limits, PBW transition blocks and the golden-element self test.
//
// Exit codes: 0 pass, 1 mismatch, 2 usage error.

#include "tetra/crystal.hpp"
#include "tetra/equations.hpp"
#include "tetra/golden.hpp"
#include "tetra/ops3d.hpp"
#include "tetra/pbw.hpp"
#include "tetra/zrec.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace tetra;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kMismatch = 1, kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> names;
  std::string variant = "q";
  std::vector<int> block, weight;
  int bound = -1;
  int jobs = 1;
  std::string report;
  std::string format = "text";
  std::string diagram, mutate;
  int from = 2, to = 1;
};

QVariant parse_variant(const std::string& v) {
  if (v == "q") return QVariant::Q;
  if (v == "qinv") return QVariant::QInv;
  if (v == "q2") return QVariant::Q2;
  if (v == "negq") return QVariant::NegQ;
  throw UsageError("unknown variant " + v + " (q, qinv, q2, negq)");
}

std::string element_line(const std::string& op, const MultiIndex& in, const MultiIndex& out,
                         const std::string& value) {
  return op + "[" + index_str(in) + " -> " + index_str(out) + "] = " + value;
}

// Weight classes named by --block or, failing that, all classes of --bound.
std::vector<std::vector<int>> classes_of(const SparseOp& op, const RunConfig& c) {
  if (!c.block.empty()) {
    if (c.block.size() != op.weights().size())
      throw UsageError("--block takes " + std::to_string(op.weights().size()) + " weights for " + op.name());
    return {c.block};
  }
  if (c.bound < 0) throw UsageError("give --block or --bound");
  return op.weight_classes(c.bound);
}

void emit_block(const SparseOp& op, const std::vector<std::vector<int>>& classes, const RunConfig& c) {
  if (c.format == "json") {
    std::cout << op.dump(classes);
    return;
  }
  for (const auto& w : classes)
    for (const auto& [o, i, v] : op.block(w)) std::cout << element_line(op.name(), i, o, v.str()) << "\n";
}

int emit_report(const VerificationReport& rep, const RunConfig& c) {
  const json j = rep.to_json();
  if (!c.report.empty()) {
    std::ofstream f(c.report);
    if (!f) throw UsageError("cannot write " + c.report);
    f << j.dump(2) << "\n";
  }
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.name << " bound=" << rep.cutoff << " inputs=" << rep.inputs << " checked=" << rep.checked
              << " mismatches=" << rep.mismatches.size() << " status=" << j["status"].get<std::string>() << "\n";
    for (const auto& m : rep.mismatches)
      std::cout << "  " << index_str(m.in) << " -> " << index_str(m.out) << ": " << m.lhs.str() << " != "
                << m.rhs.str() << "\n";
  }
  return rep.pass() ? kPass : kMismatch;
}

int cmd_build(const RunConfig& c) {
  if (c.names.size() != 1) throw UsageError("build takes one family name");
  SparseOp op;
  try {
    op = family(c.names[0], parse_variant(c.variant));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit_block(op, classes_of(op, c), c);
  return kPass;
}

int cmd_z(const RunConfig& c) {
  if (c.names.empty()) throw UsageError("z element i j k l a b c d | z block w1 w2");
  if (c.names[0] == "element") {
    if (c.names.size() != 9) throw UsageError("z element takes eight indices");
    Index8 x{};
    for (int n = 0; n < 8; ++n) x[n] = std::stoi(c.names[n + 1]);
    const std::string v = z_gamma(x).str();
    if (c.format == "json")
      std::cout << json{{"in", {x[0], x[1], x[2], x[3]}}, {"out", {x[4], x[5], x[6], x[7]}}, {"coeff", v}}.dump()
                << "\n";
    else
      std::cout << v << "\n";
    return kPass;
  }
  if (c.names[0] == "block") {
    RunConfig b = c;
    for (std::size_t n = 1; n < c.names.size(); ++n) b.block.push_back(std::stoi(c.names[n]));
    SparseOp Z = family("Z");
    emit_block(Z, classes_of(Z, b), c);
    return kPass;
  }
  throw UsageError("unknown z action " + c.names[0]);
}

int cmd_verify(const RunConfig& c) {
  if (c.names.size() != 1) throw UsageError("verify takes one name");
  const std::string& n = c.names[0];
  const int bound = c.bound < 0 ? 1 : c.bound;
  const auto& rel = eq::relation_names();
  if (n.rfind("involution:", 0) == 0) return emit_report(eq::verify_involution(n.substr(11), bound), c);
  if (std::find(rel.begin(), rel.end(), n) != rel.end()) return emit_report(eq::verify_relation(n, bound), c);
  try {
    eq::lookup(n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.mutate.empty()) return emit_report(eq::verify(n, bound, c.jobs), c);
  const auto m = c.mutate == "sign" ? eq::Mutation::Sign : eq::Mutation::Coefficient;
  return emit_report(eq::verify_mutated(n, bound, m, c.jobs), c);
}

int cmd_crystal(const RunConfig& c) {
  if (c.names.empty()) throw UsageError("crystal <family> --block ... | crystal verify <name>");
  if (c.names[0] == "verify") {
    if (c.names.size() != 2) throw UsageError("crystal verify takes one name");
    const std::string& n = c.names[1];
    const auto& all = crystal::combinatorial_equations();
    auto it = std::find_if(all.begin(), all.end(), [&](const auto& e) { return e.name == n; });
    if (it == all.end()) throw UsageError("unknown combinatorial equation " + n);
    const auto rep = crystal::verify_combinatorial(n, c.bound < 0 ? it->default_bound : c.bound, c.jobs);
    emit_report(rep, c);
    return rep.status.rfind("pass", 0) == 0 || rep.status == "conjecture-consistent" ? kPass : kMismatch;
  }
  const std::string& fam = c.names[0];
  SparseOp op;
  try {
    op = family(fam);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json rows = json::array();
  for (const auto& w : classes_of(op, c))
    for (const auto& in : op.weight_class(w))
      for (const auto& e : op.column(in)) {
        const int v = crystal::crystal_element(fam, e.out, in);
        if (v == 0) continue;
        if (c.format == "json")
          rows.push_back({{"in", in}, {"out", e.out}, {"sign", v}});
        else
          std::cout << element_line("crys " + fam, in, e.out, std::to_string(v)) << "\n";
      }
  if (c.format == "json") std::cout << rows.dump(2) << "\n";
  return kPass;
}

int cmd_pbw(const RunConfig& c) {
  if (c.names.size() != 1 || c.names[0] != "derive") throw UsageError("pbw derive --diagram D --weight ...");
  pbw::CartanData cd;
  try {
    cd = pbw::diagram(c.diagram);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // A weight with one entry per simple root is a multidegree; anything else
  // is an exponent tuple of the `from` basis.
  pbw::Weight w = c.weight;
  if (static_cast<int>(w.size()) != cd.rank()) w = pbw::exponents_weight(cd, c.from, c.weight);
  const auto t = pbw::transition(cd, c.from, c.to, w);
  json rows = json::array();
  for (const auto& [key, v] : t.coeff) {
    if (v.is_zero()) continue;
    if (c.format == "json")
      rows.push_back({{"out", key.first}, {"in", key.second}, {"coeff", v.str()}});
    else
      std::cout << element_line("gamma " + c.diagram, key.second, key.first, v.str()) << "\n";
  }
  if (c.format == "json") std::cout << rows.dump(2) << "\n";
  return kPass;
}

int cmd_selftest(const RunConfig& c) {
  const auto o = golden::run(golden::cases(c.bound < 0 ? 4 : c.bound));
  for (const auto& f : o.failures) std::cout << "FAIL " << f << "\n";
  std::cout << "golden elements: " << (o.total - o.failures.size()) << "/" << o.total << " match\n";
  return o.failures.empty() ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and verification of 3D operators"};
  app.require_subcommand(1);
  RunConfig c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto* build = app.add_subcommand("build", "dump an operator block");
  build->add_option("family", c.names)->required();
  build->add_option("--variant", c.variant, "q, qinv, q2 or negq");
  build->add_option("--block", c.block, "weight vector");
  build->add_option("--bound", c.bound)->check(CLI::NonNegativeNumber);
  auto* z = app.add_subcommand("z", "Z elements");
  z->add_option("args", c.names)->required();
  z->add_option("--bound", c.bound)->check(CLI::NonNegativeNumber);
  auto* verify = app.add_subcommand("verify", "equations, relations and involution:<family>");
  verify->add_option("name", c.names)->required();
  verify->add_option("--bound", c.bound)->check(CLI::NonNegativeNumber);
  verify->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber);
  verify->add_option("--report", c.report, "JSON report path");
  verify->add_option("--mutate", c.mutate, "coefficient or sign")->check(CLI::IsMember({"coefficient", "sign"}));
  auto* crys = app.add_subcommand("crystal", "crystal limits and combinatorial checks");
  crys->add_option("args", c.names)->required();
  crys->add_option("--block", c.block);
  crys->add_option("--bound", c.bound)->check(CLI::NonNegativeNumber);
  crys->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber);
  crys->add_option("--report", c.report);
  auto* pbw = app.add_subcommand("pbw", "rank-2 transition blocks");
  pbw->add_option("action", c.names)->required();
  pbw->add_option("--diagram", c.diagram)->required();
  pbw->add_option("--weight", c.weight)->required();
  pbw->add_option("--from", c.from)->check(CLI::IsMember({1, 2}));
  pbw->add_option("--to", c.to)->check(CLI::IsMember({1, 2}));
  auto* self = app.add_subcommand("selftest", "golden-element suite");
  self->add_option("--bound", c.bound, "largest free index")->check(CLI::NonNegativeNumber);
  for (auto* s : {build, z, verify, crys, pbw, self}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (*build) return cmd_build(c);
    if (*z) return cmd_z(c);
    if (*verify) return cmd_verify(c);
    if (*crys) return cmd_crystal(c);
    if (*pbw) return cmd_pbw(c);
    if (*self) return cmd_selftest(c);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const crystal::CrystalError& e) {
    std::cerr << "divergent: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
