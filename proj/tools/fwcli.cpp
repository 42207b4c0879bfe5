// Command-line front end: exact intersection numbers with certificates,
// paper-property verification suites, and the tree-forcing calculator.
//
// Exit codes: 0 success/pass, 1 verified-false, 2 parse/usage error,
// 3 semantic input error, 4 capability guard.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fw/etree.hpp"
#include "fw/intersection.hpp"
#include "fw/io.hpp"
#include "fw/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFalse = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitCapability = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fw::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_field(const std::string& text) {
  for (const auto& toks : fw::iodetail::tokenize(text))
    if (toks[0] == "ground") return true;
  return false;
}

void print_certificate(const fw::IntersectionCertificate& cert,
                       const std::vector<std::string>& q_labels,
                       const std::vector<std::string>& elem_labels,
                       bool machine) {
  auto atoms = cert.completion.atoms();
  if (machine) {
    std::cout << "[int]\n";
    std::cout << "value=" << fw::rational_str(cert.value) << "\n";
    std::cout << "primal=";
    for (size_t i = 0; i < atoms.size(); ++i)
      std::cout << (i ? ";" : "") << fw::FieldOfSets::mask_label(atoms[i])
                << ":" << fw::rational_str(cert.atom_weights[i]);
    std::cout << "\n";
    std::cout << "dual=";
    for (size_t i = 0; i < cert.dual_witness.entries.size(); ++i)
      std::cout << (i ? "," : "")
                << elem_labels[static_cast<size_t>(cert.dual_witness.entries[i])];
    std::cout << "\n";
    return;
  }
  std::cout << "int = " << fw::rational_str(cert.value) << "\n";
  std::cout << "Q = {";
  for (size_t i = 0; i < q_labels.size(); ++i)
    std::cout << (i ? ", " : "") << q_labels[i];
  std::cout << "}\n";
  std::cout << "primal witness (measure on completion atoms):\n";
  for (size_t i = 0; i < atoms.size(); ++i)
    std::cout << "  atom " << fw::FieldOfSets::mask_label(atoms[i]) << " -> "
              << fw::rational_str(cert.atom_weights[i]) << "\n";
  std::cout << "dual witness (sequence, i*/n attains the value):\n  ";
  for (size_t i = 0; i < cert.dual_witness.entries.size(); ++i)
    std::cout << (i ? " " : "")
              << elem_labels[static_cast<size_t>(cert.dual_witness.entries[i])];
  std::cout << "\n";
}

int cmd_int(const std::string& path, const std::vector<std::string>& q_labels,
            bool machine) {
  std::string text = read_file(path);
  if (looks_like_field(text)) {
    fw::FieldOfSets B = fw::parse_field(text);
    std::vector<int> Q;
    std::vector<std::string> elem_labels;
    for (int i = 0; i < B.size(); ++i)
      elem_labels.push_back(B.member(i) == 0
                                ? "-"
                                : fw::FieldOfSets::mask_label(B.member(i)));
    for (const auto& l : q_labels) {
      fw::FieldOfSets::Mask m = 0;
      if (l != "-")
        for (const auto& x : fw::iodetail::split(l, ','))
          m |= fw::FieldOfSets::Mask{1} << std::stoi(x);
      if (m == 0) throw std::invalid_argument("Q must avoid the zero member");
      Q.push_back(B.id_of(m));
    }
    auto cert = fw::int_exact(B, Q);
    print_certificate(cert, q_labels, elem_labels, machine);
    if (!fw::verify_certificate(B, Q, cert)) return kExitFalse;
    return kExitPass;
  }
  fw::FinitePoset P = fw::parse_poset(text);
  std::vector<int> Q;
  for (const auto& l : q_labels) Q.push_back(P.index_of(l));
  auto cert = fw::int_exact(P, Q);
  print_certificate(cert, q_labels, P.labels(), machine);
  if (!fw::verify_certificate(P, Q, cert)) return kExitFalse;
  return kExitPass;
}

int cmd_verify(const std::string& suite, unsigned long seed, int count,
               int max_n, const std::vector<std::string>& eps_grid,
               bool machine) {
  static const std::vector<std::string> known = {"s8", "s7", "s3",
                                                 "i7", "i15", "i70"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw fw::ParseError("unknown suite: " + suite);
  std::vector<fw::Rational> grid;
  for (const auto& e : eps_grid) {
    auto r = fw::parse_rational(e);
    if (!r) throw fw::ParseError("bad epsilon: " + e);
    grid.push_back(*r);
  }
  fw::Report rep = fw::run_suite(suite, seed, count, max_n, grid);
  if (machine) {
    std::cout << "[verify]\nsuite=" << suite << "\nseed=" << seed
              << "\ncount=" << count << "\n";
    for (const auto& item : rep.items)
      std::cout << "item=" << item.name << ":"
                << (item.pass ? "pass" : "fail") << "\n";
  } else {
    for (const auto& item : rep.items) {
      std::cout << (item.pass ? "PASS" : "FAIL") << "  " << item.name;
      if (!item.note.empty()) std::cout << "  (" << item.note << ")";
      std::cout << "\n";
    }
  }
  return rep.all_pass() ? kExitPass : kExitFalse;
}

int cmd_etree_consts(int h) {
  fw::PaperConstants c = fw::paper_constants(h);
  std::cout << "rho(" << h << ") = " << fw::bigint_pretty(c.rho) << "\n"
            << "pi(" << h << ") = " << fw::bigint_pretty(c.pi) << "\n"
            << "a(" << h << ") = " << fw::bigint_pretty(c.a) << "\n"
            << "M(" << h << ") = " << fw::bigint_pretty(c.M) << "\n";
  return kExitPass;
}

int cmd_etree_norm(int h, const std::string& n_str, const std::string& t_str) {
  fw::GrowthProfile pr = fw::GrowthProfile::paper();
  fw::BigInt n(n_str);
  auto t = fw::parse_rational(t_str);
  if (!t || *t <= 0) throw fw::ParseError("bad threshold: " + t_str);
  bool ge = fw::norm_at_least(pr, h, n, *t);
  // Exact equality: M^v == a^u (M-n)^v.
  bool eq = false;
  if (ge && n < pr.branching(h)) {
    fw::BigInt lhs, rhs, pw;
    mpz_pow_ui(lhs.get_mpz_t(), pr.branching(h).get_mpz_t(),
               t->get_den().get_ui());
    mpz_pow_ui(rhs.get_mpz_t(), pr.norm_base(h).get_mpz_t(),
               t->get_num().get_ui());
    fw::BigInt rem = pr.branching(h) - n;
    mpz_pow_ui(pw.get_mpz_t(), rem.get_mpz_t(), t->get_den().get_ui());
    eq = lhs == rhs * pw;
  }
  fw::NormValue v = fw::norm_value(pr, h, n);
  std::cout << "mu_" << h << "(" << n_str << ") >= " << fw::rational_str(*t)
            << ": " << (ge ? "true" : "false");
  if (eq) std::cout << " (equality)";
  std::cout << "\n";
  if (v.infinite) std::cout << "mu ~ infinity\n";
  else std::cout << "mu ~ " << v.approx << " (advisory decimal)\n";
  return kExitPass;
}

int cmd_etree_check(const std::string& path) {
  fw::ECondition c = fw::parse_condition(read_file(path));
  bool ok = fw::is_condition(c);
  std::cout << "condition: " << (ok ? "true" : "false") << "\n";
  return ok ? kExitPass : kExitFalse;
}

int cmd_etree_loss(const std::string& path) {
  fw::ECondition c = fw::parse_condition(read_file(path));
  auto l = fw::loss_of(c);
  if (!l) {
    std::cout << "loss undefined\n";
    return kExitPass;
  }
  std::cout << "loss = " << fw::rational_str(*l) << "\n";
  fw::Rational ratio = fw::leb_ratio(c);
  fw::Rational bound = 1 - *l / 2;
  std::cout << "lebratio = " << fw::rational_str(ratio) << "\n";
  std::cout << "lebratio >= 1 - loss/2: "
            << (ratio >= bound ? "yes" : "no (reported, not asserted)") << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact intersection numbers, certificates, and tree-forcing "
               "norms for finite forcing notions"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "structured machine-readable output");

  std::string int_file;
  std::vector<std::string> int_q;
  auto* sub_int = app.add_subcommand("int", "intersection number of Q");
  sub_int->add_option("file", int_file, "poset or field file")->required();
  sub_int->add_option("Q", int_q, "elements of Q")->required();

  std::string suite;
  unsigned long seed = 1;
  int count = 100;
  int max_n = 0;
  std::vector<std::string> eps_grid;
  auto* sub_verify = app.add_subcommand("verify", "run a property suite");
  sub_verify->add_option("suite", suite, "s8|s7|s3|i7|i15|i70")->required();
  sub_verify->add_option("--seed", seed, "random seed");
  sub_verify->add_option("--count", count, "instance count");
  sub_verify->add_option("--max-n", max_n, "instance size cap (0 = default)");
  sub_verify->add_option("--eps-grid", eps_grid,
                         "epsilon grid, rationals p/q (suite default if unset)");

  auto* sub_etree = app.add_subcommand("etree", "tree-forcing calculator");
  sub_etree->require_subcommand(1);
  int consts_h = 0;
  auto* sub_consts = sub_etree->add_subcommand("consts", "growth constants");
  sub_consts->add_option("level", consts_h, "level h")->required();
  int norm_h = 0;
  std::string norm_n, norm_t;
  auto* sub_norm = sub_etree->add_subcommand("norm", "norm threshold test");
  sub_norm->add_option("level", norm_h, "level h")->required();
  sub_norm->add_option("n", norm_n, "kept-successor count")->required();
  sub_norm->add_option("threshold", norm_t, "rational u/v")->required();
  std::string check_file, loss_file;
  auto* sub_check = sub_etree->add_subcommand("check", "condition membership");
  sub_check->add_option("file", check_file, "condition file")->required();
  auto* sub_loss = sub_etree->add_subcommand("loss", "loss and Leb ratio");
  sub_loss->add_option("file", loss_file, "condition file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*sub_int) return cmd_int(int_file, int_q, machine);
    if (*sub_verify)
      return cmd_verify(suite, seed, count, max_n, eps_grid, machine);
    if (*sub_consts) return cmd_etree_consts(consts_h);
    if (*sub_norm) return cmd_etree_norm(norm_h, norm_n, norm_t);
    if (*sub_check) return cmd_etree_check(check_file);
    if (*sub_loss) return cmd_etree_loss(loss_file);
  } catch (const fw::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const fw::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitParse;
}
