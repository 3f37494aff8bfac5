#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fixfree::cli {

// ---------------------------------------------------------------------------
// Command-line front end
// ---------------------------------------------------------------------------
//
// One binary, eight subcommands:
//
//   construct       length profile -> fix-free code (builders, then search)
//   verify          length profile -> existence verdict (exhaustive search),
//                   or, with --check-witness, validate a code against it
//   counterexample  q, eps -> two-level profile refuting 3/4 + eps
//   sune            lengths sequence -> su/ne values and the cheap bound
//   kraft           length profile -> exact Kraft sum (bare value)
//   debruijn        cycles in de Bruijn digraphs (euler, lempel, golomb,
//                   count-hamilton, count-linear)
//   pi              one- and two-level pi-systems
//   shadow          code + level -> the prefix/suffix/bifix shadow
//
// Arguments are key=value tokens; --key value and --key=value mean the same
// thing.  Output is a block of key=value report lines followed by the
// payload (code, profile, or sequence in the module text formats); rationals
// print reduced as a/b.  A code emitted by construct or verify can be fed
// back to verify --check-witness or shadow unchanged.
//
// Exit codes: 0 found / holds / pass, 1 nonexistent / impossible / fail,
// 2 unknown (budget exhausted or unsupported), 3 malformed input.

inline constexpr int kExitFound = 0;
inline constexpr int kExitNonexistent = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitInputError = 3;

struct Command {
  std::string subcommand;
  std::map<std::string, std::string> opts;  // key=value arguments
  std::vector<std::string> flags;           // bare --flags (check-witness)

  bool has_flag(const std::string& name) const;
  const std::string* opt(const std::string& name) const;
};

// Splits raw tokens (argv without the program name) into a Command.
// Throws InputError on stray tokens or a missing subcommand.
Command parse_command(const std::vector<std::string>& args);

// Runs one command: writes the report and payload to `out`, diagnostics to
// `err`, and returns the exit code.  Never throws; internal errors surface
// as exit 3 with a one-line message.
int run(const Command& c, std::ostream& out, std::ostream& err);

// argv adapter for main(): parses, runs, and handles --help / no arguments.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fixfree::cli
