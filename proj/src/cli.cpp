#include "fixfree/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixfree/constructors.hpp"
#include "fixfree/debruijn.hpp"
#include "fixfree/error.hpp"
#include "fixfree/pisystems.hpp"
#include "fixfree/verifier.hpp"
#include "fixfree/words.hpp"

namespace fixfree::cli {

namespace {

// ----- token parsing -----

const std::set<std::string> kBoolFlags = {"check-witness", "help"};

bool is_bool_flag(const std::string& key) { return kBoolFlags.count(key) > 0; }

i64 to_i64(const std::string& key, const std::string& text) {
  if (text.empty()) fail(ErrKind::InputError, key + " needs a value");
  std::size_t pos = 0;
  i64 v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    fail(ErrKind::InputError, key + "=" + text + " is not an integer");
  }
  if (pos != text.size())
    fail(ErrKind::InputError, key + "=" + text + " is not an integer");
  return v;
}

u64 to_u64(const std::string& key, const std::string& text) {
  i64 v = to_i64(key, text);
  if (v < 0) fail(ErrKind::InputError, key + " must be nonnegative");
  return static_cast<u64>(v);
}

std::vector<i64> to_csv(const std::string& key, const std::string& text) {
  std::vector<i64> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(to_i64(key, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Rational to_rational(const std::string& key, const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(to_i64(key, text));
  i64 num = to_i64(key, text.substr(0, slash));
  i64 den = to_i64(key, text.substr(slash + 1));
  if (den == 0) fail(ErrKind::InputError, key + " has denominator zero");
  return Rational(num, den);
}

// ----- common argument groups -----

const std::string& require(const Command& c, const std::string& key) {
  const std::string* v = c.opt(key);
  if (v == nullptr)
    fail(ErrKind::InputError, c.subcommand + " requires " + key + "=...");
  return *v;
}

void allow_only(const Command& c, std::initializer_list<const char*> keys,
                std::initializer_list<const char*> flags = {}) {
  for (const auto& [key, value] : c.opts) {
    (void)value;
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end())
      fail(ErrKind::InputError,
           "unknown argument " + key + "= for " + c.subcommand);
  }
  for (const std::string& f : c.flags) {
    if (f == "help") continue;
    if (std::find_if(flags.begin(), flags.end(), [&](const char* k) {
          return f == k;
        }) == flags.end())
      fail(ErrKind::InputError,
           "unknown flag --" + f + " for " + c.subcommand);
  }
}

Profile profile_arg(const Command& c) {
  Profile p;
  p.q = static_cast<int>(to_i64("q", require(c, "q")));
  p.alpha = to_csv("alpha", require(c, "alpha"));
  p.validate();
  return p;
}

SearchBudget budget_arg(const Command& c) {
  SearchBudget b = default_budget();
  if (const std::string* v = c.opt("budget")) b.max_nodes = to_u64("budget", *v);
  if (const std::string* v = c.opt("jobs")) {
    i64 j = to_i64("jobs", *v);
    if (j < 1) fail(ErrKind::InputError, "jobs must be at least 1");
    b.jobs = static_cast<int>(j);
  }
  return b;
}

// The seed is accepted for command-line reproducibility but every operation
// in the library is deterministic, so it only gets echoed into the report.
void echo_seed(const Command& c, std::ostream& out) {
  if (const std::string* v = c.opt("seed")) {
    to_u64("seed", *v);
    out << "seed=" << *v << "\n";
  }
}

LevelSet read_code(const Command& c, std::istream& fallback) {
  const std::string* path = c.opt("file");
  if (path == nullptr || *path == "-") return parse_code(fallback);
  std::ifstream in(*path);
  if (!in) fail(ErrKind::InputError, "cannot open " + *path);
  return parse_code(in);
}

void emit_code(const Command& c, std::ostream& out, const LevelSet& code) {
  const std::string* fmt = c.opt("format");
  if (fmt != nullptr && *fmt == "profile") {
    Profile p;
    p.q = code.q();
    for (int l = 1; l <= code.max_level(); ++l)
      p.alpha.push_back(code.count(l));
    out << format_profile(p) << "\n";
    return;
  }
  if (fmt != nullptr && *fmt != "code")
    fail(ErrKind::InputError, "format must be code or profile");
  format_code(out, code);
}

// ----- subcommands -----

int cmd_construct(const Command& c, std::ostream& out) {
  allow_only(c, {"q", "alpha", "budget", "jobs", "seed", "format"});
  Profile p = profile_arg(c);
  SearchBudget b = budget_arg(c);
  ConstructResult r = construct(p, b);
  const char* verdict =
      r.verdict == ConstructResult::Verdict::Found        ? "found"
      : r.verdict == ConstructResult::Verdict::Nonexistent ? "nonexistent"
                                                           : "unknown";
  out << "verdict=" << verdict << "\n";
  out << "route=" << r.report.tag << "\n";
  out << "kraft=" << kraft_sum(p).str() << "\n";
  echo_seed(c, out);
  for (const std::string& note : r.report.notes)
    if (note.rfind("kraft=", 0) != 0)  // already printed as its own field
      out << "note=" << note << "\n";
  if (r.verdict == ConstructResult::Verdict::Found) {
    out << "words=" << r.report.code.total() << "\n";
    emit_code(c, out, r.report.code);
    return kExitFound;
  }
  return r.verdict == ConstructResult::Verdict::Nonexistent ? kExitNonexistent
                                                            : kExitUnknown;
}

int cmd_verify(const Command& c, std::ostream& out, std::istream& in) {
  allow_only(c, {"q", "alpha", "budget", "jobs", "seed", "format", "file"},
             {"check-witness"});
  Profile p = profile_arg(c);
  if (c.has_flag("check-witness")) {
    LevelSet code = read_code(c, in);
    bool free_ok = is_free(code, Freeness::Fix);
    bool fits_ok = code.q() == p.q && fits(code, p);
    out << "witness=" << (free_ok && fits_ok ? "pass" : "fail") << "\n";
    out << "fixfree=" << (free_ok ? "yes" : "no") << "\n";
    out << "fits=" << (fits_ok ? "yes" : "no") << "\n";
    out << "kraft=" << kraft_sum(code).str() << "\n";
    return free_ok && fits_ok ? kExitFound : kExitNonexistent;
  }
  SearchBudget b = budget_arg(c);
  SearchResult s = search(p, b);
  const char* verdict =
      s.verdict == SearchResult::Verdict::Found        ? "found"
      : s.verdict == SearchResult::Verdict::Nonexistent ? "nonexistent"
                                                        : "unknown";
  out << "verdict=" << verdict << "\n";
  out << "kraft=" << kraft_sum(p).str() << "\n";
  out << "nodes=" << s.nodes << "\n";
  echo_seed(c, out);
  if (s.verdict == SearchResult::Verdict::Found && s.witness.has_value()) {
    out << "words=" << s.witness->total() << "\n";
    emit_code(c, out, *s.witness);
    return kExitFound;
  }
  return s.verdict == SearchResult::Verdict::Nonexistent ? kExitNonexistent
                                                         : kExitUnknown;
}

int cmd_counterexample(const Command& c, std::ostream& out) {
  allow_only(c, {"q", "eps", "seed"});
  int q = static_cast<int>(to_i64("q", require(c, "q")));
  Rational eps = to_rational("eps", require(c, "eps"));
  Counterexample ce = counterexample(q, eps);
  out << "q=" << ce.q << "\n";
  out << "eps=" << ce.epsilon.str() << "\n";
  out << "m=" << ce.m << "\n";
  out << "n=" << ce.n << "\n";
  out << "alpha_m=" << ce.alpha_m << "\n";
  out << "alpha_n=" << ce.alpha_n << "\n";
  out << "shadowed=" << ce.shadowed << "\n";
  out << "needed=" << ce.needed << "\n";
  out << "capacity=" << ce.capacity << "\n";
  out << "kraft=" << ce.kraft.str() << "\n";
  out << "holds=" << (ce.holds ? "true" : "false") << "\n";
  out << format_profile(ce.profile) << "\n";
  return ce.holds ? kExitFound : kExitUnknown;
}

int cmd_sune(const Command& c, std::ostream& out) {
  allow_only(c, {"lengths", "reading", "seed"});
  LengthsSeq s;
  s.q = 2;
  for (i64 l : to_csv("lengths", require(c, "lengths")))
    s.lengths.push_back(static_cast<int>(l));
  s.validate();
  SuNeReading reading = SuNeReading::Corrected;
  if (const std::string* v = c.opt("reading")) {
    if (*v == "printed")
      reading = SuNeReading::Printed;
    else if (*v != "corrected")
      fail(ErrKind::InputError, "reading must be corrected or printed");
  }
  SuNeReport r = su_ne(s, reading);
  out << "reading="
      << (reading == SuNeReading::Corrected ? "corrected" : "printed") << "\n";
  out << "su=" << r.su.str() << "\n";
  out << "ne=" << r.ne.str() << "\n";
  out << "madcor=" << (madcor_check(s) ? "true" : "false") << "\n";
  if (r.su > Rational(0)) return kExitFound;
  if (r.ne == Rational(0)) return kExitNonexistent;
  return kExitUnknown;
}

int cmd_kraft(const Command& c, std::ostream& out) {
  allow_only(c, {"q", "alpha"});
  Profile p = profile_arg(c);
  out << kraft_sum(p).str() << "\n";
  return kExitFound;
}

int cmd_debruijn(const Command& c, std::ostream& out) {
  allow_only(c, {"op", "q", "n", "L", "seed"});
  const std::string& op = require(c, "op");
  if (op == "euler") {
    int q = static_cast<int>(to_i64("q", require(c, "q")));
    int n = static_cast<int>(to_i64("n", require(c, "n")));
    EdgeSet g = make_edge_set(q, n);
    g.edges.fill();
    CyclicSeq s = euler_circuit(g);
    out << "length=" << s.letters.size() << "\n";
    out << to_string(s) << "\n";
    return kExitFound;
  }
  if (op == "lempel") {
    int q = static_cast<int>(to_i64("q", require(c, "q")));
    int n = static_cast<int>(to_i64("n", require(c, "n")));
    u64 L = to_u64("L", require(c, "L"));
    CyclicSeq s = lempel_cycle(q, n, L);
    out << "length=" << s.letters.size() << "\n";
    out << to_string(s) << "\n";
    return kExitFound;
  }
  if (op == "golomb") {
    int n = static_cast<int>(to_i64("n", require(c, "n")));
    u64 L = to_u64("L", require(c, "L"));
    auto [first, second] = golomb_split(n, L);
    out << "length1=" << first.letters.size() << "\n";
    out << "length2=" << second.letters.size() << "\n";
    out << to_string(first) << "\n";
    out << to_string(second) << "\n";
    return kExitFound;
  }
  if (op == "count-hamilton") {
    int q = static_cast<int>(to_i64("q", require(c, "q")));
    int n = static_cast<int>(to_i64("n", require(c, "n")));
    out << "count=" << count_hamilton_circuits(q, n) << "\n";
    return kExitFound;
  }
  if (op == "count-linear") {
    int n = static_cast<int>(to_i64("n", require(c, "n")));
    out << "count=" << count_maximal_linear_maps(n) << "\n";
    return kExitFound;
  }
  fail(ErrKind::InputError,
       "op must be euler, lempel, golomb, count-hamilton or count-linear");
}

void emit_pi(std::ostream& out, const PiSystem& sys) {
  out << "kraft=" << kraft_sum(sys.code).str() << "\n";
  out << "words=" << sys.code.total() << "\n";
  for (int l = 1; l <= sys.n; ++l)
    if (sys.code.count(l) > 0)
      out << "level_" << l << "=" << sys.code.count(l) << "\n";
  for (const LevelSet& block : sys.blocks) {
    bool first = true;
    block.for_each([&](const Word& w) {
      out << (first ? "" : " ") << to_string(w);
      first = false;
    });
    out << "\n";
  }
}

int cmd_pi(const Command& c, std::ostream& out) {
  allow_only(c, {"op", "q", "n", "k", "L", "budget", "seed"});
  const std::string& op = require(c, "op");
  int q = static_cast<int>(to_i64("q", require(c, "q")));
  int n = static_cast<int>(to_i64("n", require(c, "n")));
  int k = static_cast<int>(to_i64("k", require(c, "k")));
  if (op == "one") {
    PiSystem sys = one_level_pi(q, n, k);
    out << "status=found\n";
    emit_pi(out, sys);
    return kExitFound;
  }
  if (op == "two") {
    u64 L = to_u64("L", require(c, "L"));
    PiResult r = two_level_pi(q, n, k, L);
    switch (r.status) {
      case PiResult::Status::Found:
        out << "status=found\n";
        emit_pi(out, r.system);
        return kExitFound;
      case PiResult::Status::Impossible:
        out << "status=impossible\n";
        return kExitNonexistent;
      case PiResult::Status::Unsupported:
        out << "status=unsupported\n";
        return kExitUnknown;
    }
  }
  fail(ErrKind::InputError, "op must be one or two");
}

int cmd_shadow(const Command& c, std::ostream& out, std::istream& in) {
  allow_only(c, {"q", "n", "kind", "file"});
  int n = static_cast<int>(to_i64("n", require(c, "n")));
  const std::string& kind_text = require(c, "kind");
  Shadow kind;
  if (kind_text == "prefix")
    kind = Shadow::Prefix;
  else if (kind_text == "suffix")
    kind = Shadow::Suffix;
  else if (kind_text == "bifix")
    kind = Shadow::Bifix;
  else
    fail(ErrKind::InputError, "kind must be prefix, suffix or bifix");
  LevelSet code = read_code(c, in);
  if (const std::string* v = c.opt("q"))
    if (to_i64("q", *v) != code.q())
      fail(ErrKind::InputError, "q does not match the code file");
  if (n < 1) fail(ErrKind::InputError, "n must be at least 1");
  Bitset sh = shadow(code, n, kind);
  out << "count=" << sh.count() << "\n";
  out << "free=" << (qpow(code.q(), n) - sh.count()) << "\n";
  for (u64 v = sh.next_set(0); v < sh.size(); v = sh.next_set(v + 1))
    out << to_string(Word{code.q(), n, v}) << "\n";
  return kExitFound;
}

const char kUsage[] =
    "usage: fixfree <subcommand> key=value...   (--key value also works)\n"
    "\n"
    "  construct      q= alpha=  [--budget N] [--jobs N] [--format code|profile]\n"
    "                 build a fix-free code fitting the profile\n"
    "  verify         q= alpha=  [--budget N] [--jobs N]\n"
    "                 decide existence by exhaustive search\n"
    "  verify         q= alpha= --check-witness [file=PATH]\n"
    "                 check a code (default stdin) against the profile\n"
    "  counterexample q= eps=A/B\n"
    "                 two-level profile with Kraft sum in (3/4, 3/4+eps],\n"
    "                 certified to admit no fix-free code\n"
    "  sune           lengths=CSV [reading=corrected|printed]\n"
    "                 the su/ne product tests for a binary lengths sequence\n"
    "  kraft          q= alpha=\n"
    "                 exact Kraft sum, printed bare as A/B\n"
    "  debruijn       op=euler|lempel|golomb|count-hamilton|count-linear\n"
    "                 q= n= [L=]\n"
    "  pi             op=one|two q= n= k= [L=]\n"
    "                 one- or two-level pi-system\n"
    "  shadow         n= kind=prefix|suffix|bifix [file=PATH] [q=]\n"
    "                 level-n shadow of a code (default stdin)\n"
    "\n"
    "Output is key=value report lines, then the payload.  Exit codes:\n"
    "0 found/pass, 1 nonexistent/fail, 2 unknown, 3 bad input.\n"
    "FIXFREE_BUDGET sets the default search budget.\n";

}  // namespace

// ----- command plumbing -----

bool Command::has_flag(const std::string& name) const {
  return std::find(flags.begin(), flags.end(), name) != flags.end();
}

const std::string* Command::opt(const std::string& name) const {
  auto it = opts.find(name);
  return it == opts.end() ? nullptr : &it->second;
}

Command parse_command(const std::vector<std::string>& args) {
  if (args.empty()) fail(ErrKind::InputError, "missing subcommand");
  Command c;
  c.subcommand = args[0];
  std::size_t i = 1;
  while (i < args.size()) {
    std::string tok = args[i];
    ++i;
    bool dashed = tok.rfind("--", 0) == 0;
    if (dashed) tok = tok.substr(2);
    std::size_t eq = tok.find('=');
    if (eq != std::string::npos) {
      std::string key = tok.substr(0, eq);
      if (key.empty()) fail(ErrKind::InputError, "empty argument name");
      if (!c.opts.emplace(key, tok.substr(eq + 1)).second)
        fail(ErrKind::InputError, "duplicate argument " + key);
      continue;
    }
    if (!dashed)
      fail(ErrKind::InputError, "stray argument '" + tok +
                                    "' (expected key=value or --key value)");
    if (is_bool_flag(tok)) {
      c.flags.push_back(tok);
      continue;
    }
    if (i >= args.size())
      fail(ErrKind::InputError, "missing value for --" + tok);
    if (!c.opts.emplace(tok, args[i]).second)
      fail(ErrKind::InputError, "duplicate argument " + tok);
    ++i;
  }
  return c;
}

int run(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == "construct") return cmd_construct(c, out);
    if (c.subcommand == "verify") return cmd_verify(c, out, std::cin);
    if (c.subcommand == "counterexample") return cmd_counterexample(c, out);
    if (c.subcommand == "sune") return cmd_sune(c, out);
    if (c.subcommand == "kraft") return cmd_kraft(c, out);
    if (c.subcommand == "debruijn") return cmd_debruijn(c, out);
    if (c.subcommand == "pi") return cmd_pi(c, out);
    if (c.subcommand == "shadow") return cmd_shadow(c, out, std::cin);
    fail(ErrKind::InputError, "unknown subcommand " + c.subcommand);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    err << kUsage;
    return kExitInputError;
  }
  for (const std::string& a : args)
    if (a == "--help" || a == "-h" || a == "help") {
      out << kUsage;
      return kExitFound;
    }
  try {
    Command c = parse_command(args);
    return run(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace fixfree::cli
