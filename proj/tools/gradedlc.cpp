#include "gradedlc/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace gradedlc;

namespace {

struct Shared {
  std::string ideal;
  std::string prime;
  bool mixed = false;
  bool json = false;
  std::size_t max_vars = kDefaultMaxVariables;
  unsigned trunc = 0;
  int threads = 0;
  bool serial = false;
};

void add_shared(CLI::App* sub, Shared& s, bool ideal_arg) {
  if (ideal_arg)
    sub->add_option("ideal", s.ideal, "ideal file (JSON), or builtin:NAME for reisner, three-points, x1x2, x1")
        ->required();
  sub->add_option("--prime,-p", s.prime, "prime integer p");
  sub->add_flag("--mixed", s.mixed, "work with I + pS");
  sub->add_flag("--json", s.json, "machine-readable report");
  sub->add_option("--max-vars", s.max_vars, "refuse ideals in more variables")->check(CLI::PositiveNumber);
  sub->add_option("--trunc", s.trunc, "initial truncation exponent N for mixed computations")->check(CLI::PositiveNumber);
  sub->add_option("--threads", s.threads, "worker threads (default: GRADEDLC_THREADS or all)");
  sub->add_flag("--serial", s.serial, "run the serial reference kernels");
}

CommandOptions options(const Shared& s) {
  CommandOptions o;
  if (!s.prime.empty()) {
    Integer p;
    if (p.set_str(s.prime, 10) != 0) throw InputError("--prime: '" + s.prime + "' is not an integer");
    o.prime = p;
  }
  o.mixed = s.mixed;
  if (s.trunc > 0) o.trunc = s.trunc;
  o.policy.threads = s.threads;
  if (s.serial) o.policy.mode = Execution::serial;
  return o;
}

IdealInput input(const Shared& s) {
  const std::string prefix = "builtin:";
  if (s.ideal.rfind(prefix, 0) == 0) return builtin_input(s.ideal.substr(prefix.size()));
  return load_ideal_file(s.ideal, s.max_vars);
}

Mask parse_class(const std::string& text) {
  Mask m = 0;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1 || v > 32)
      throw InputError("--class: bad variable index '" + item + "'");
    m |= variable_bit(static_cast<std::size_t>(v));
  }
  return m;
}

int emit(const Report& r, bool as_json) {
  if (as_json) {
    std::cout << r.json_text();
  } else {
    std::cout << r.text;
    for (const auto& w : r.warnings) std::cout << "warning [" << w.code << "]: " << w.message << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multigraded local cohomology of squarefree monomial ideals over Z"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Shared s;
  std::optional<std::size_t> j;
  std::string cls;
  std::size_t i = 0;
  std::string at = "n";

  auto* lc = app.add_subcommand("lc", "H^j_I(S) piece by piece (over Z, Z/p with --prime, or I+pS with --mixed)");
  add_shared(lc, s, true);
  lc->add_option("--j,-j", j, "cohomological degree");
  lc->add_option("--class", cls, "degree class as a comma-separated list of variable indices");

  auto* sup = app.add_subcommand("support", "support, associated primes and multiplication by p");
  add_shared(sup, s, true);
  sup->add_option("--j,-j", j, "cohomological degree");

  auto* bad = app.add_subcommand("bad-primes", "prime integers that are zero divisors on some H^j_I(S)");
  add_shared(bad, s, true);

  auto* lyu = app.add_subcommand("lyubeznik", "standard and mixed Lyubeznik tables at --prime");
  add_shared(lyu, s, true);

  auto* itr = app.add_subcommand("iterated", "H^i_n H^j_I(S) or H^i_m H^j_I(S), m = (p, x1..xn)");
  add_shared(itr, s, true);
  itr->add_option("--i,-i", i, "outer degree")->required();
  itr->add_option("--j,-j", j, "inner degree")->required();
  itr->add_option("--at", at, "n or m")->check(CLI::IsMember({"n", "m"}));

  auto* ver = app.add_subcommand("verify-counterexample", "check every claim about the Reisner ideal at p (default 2)");
  add_shared(ver, s, false);

  auto* orc = app.add_subcommand("oracle-check", "run the independent cross-checks on one ideal");
  add_shared(orc, s, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    const CommandOptions o = options(s);
    Report r;
    if (lc->parsed()) {
      std::optional<Mask> c;
      if (lc->count("--class")) c = parse_class(cls);
      r = cmd_lc(input(s), j, c, o);
    } else if (sup->parsed()) {
      r = cmd_support(input(s), j, o);
    } else if (bad->parsed()) {
      r = cmd_bad_primes(input(s), o);
    } else if (lyu->parsed()) {
      r = cmd_lyubeznik(input(s), o);
    } else if (itr->parsed()) {
      r = cmd_iterated(input(s), i, *j, at == "m" ? IteratedAt::m : IteratedAt::n, o);
    } else if (ver->parsed()) {
      r = cmd_verify_counterexample(o);
    } else {
      r = cmd_oracle_check(input(s), o);
    }
    return emit(r, s.json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const TruncationInstability& e) {
    std::cerr << "error: truncation unstable: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerification;
  }
}
