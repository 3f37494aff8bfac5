#pragma once

#include <array>
#include <string>
#include <vector>

#include "fixfree/pisystems.hpp"
#include "fixfree/verifier.hpp"

namespace fixfree {

// ---------------------------------------------------------------------------
// Profile builders
// ---------------------------------------------------------------------------
//
// Each builder realizes one sufficient condition for a code fitting the
// requested length profile, and each returns the code it built.  All of them
// make every choice deterministically: whenever a set of words has to be
// picked, the num-least candidates are taken.  Outputs always satisfy
// fits(code, p) and the advertised freeness; a builder that cannot deliver
// despite its precondition holding throws Internal (that would be a bug).

// Prefix-free code for any profile with Kraft sum at most 1; greedy
// level-by-level outside the prefix shadow.
LevelSet build_prefix_free(const Profile& p);

// Fix-free code for Kraft sum at most 1/2; greedy outside the bifix shadow.
// Half the mass bounds the shadow, so the greedy never runs dry.
LevelSet build_half(const Profile& p);

// Fix-free code for Kraft sum at most 3/4 when consecutive populated levels
// k < l always satisfy l >= 2k.  Under that gap, distinct placed words
// overlap any future level in full windows, which makes the free count
// choice-independent and the plain greedy safe.
LevelSet build_spaced(const Profile& p);

// Fix-free code for profiles with exactly two populated levels m < n and
// Kraft sum at most 3/4.  The short level takes the num-least alpha_m words
// of A^m; that particular choice maximizes self-overlap at level n and is
// what makes the bound unconditional (arbitrary choices can fail).
LevelSet build_two_level(const Profile& p);

// Fix-free code for Kraft sum at most 3/4 when l_min >= 2 and every level
// except the last obeys
//     alpha_l <= q^(l_min-2) * floor(q/2)^2 * ceil(q/2)^(l-l_min).
// Splits the alphabet into X (first floor(q/2) letters) and Y (the rest),
// starts from a saturated code B u D1 u D2 with Kraft sum >= 3/4, and
// exchanges the surplus short words for length-l_max words in three shapes,
// each swap leaving the code fix-free because every replacement word has its
// only prefix (or suffix) in the deleted set.
LevelSet build_bounded(const Profile& p);

// Fix-free code for Kraft sum at most gamma(q, k) when the first populated
// level n carries, together with level n+1, mass at least k/q:
//     alpha_n/q^n + alpha_{n+1}/q^{n+1} >= k/q.
// Routes through a one-level pi-system when alpha_n >= k q^(n-1), otherwise
// needs alpha_n = kL and a k-regular subgraph with L vertices to seed a
// two-level system; either way pi_extend fills the rest of the profile.
LevelSet build_first_two_levels(const Profile& p, int k);

// The unique split of a binary profile with Kraft sum exactly 5/8 (and
// alpha_1 = 0, alpha_2 < 2) into four block profiles with Kraft sums
// 1/4, 1/8, 1/8, 1/8: block ab counts the words placed in a A^(l-2) b.
// Returned in the order 00, 01, 10, 11; blocks fill greedily in that order,
// so each one starts only after the previous is exhausted.
std::array<Profile, 4> beta_decompose(const Profile& p);

// Fix-free binary code for Kraft sum at most 5/8.  Profiles starting with
// alpha_1 = 1 or alpha_2 = 2 already carry mass 1/2 on the first two levels
// and route through build_first_two_levels; the rest are padded to exactly
// 5/8, split by beta_decompose, realized block by block (num-least words of
// a A^(l-2) b outside the bifix shadow), and trimmed back to the profile.
LevelSet build_58_binary(const Profile& p);

// Fix-free ternary code for Kraft sum at most 4/9 when alpha_1 = 0 and
// alpha_2 <= 1.  Same scheme as the binary 5/8 builder with nine blocks
// a A^(l-2) b in lexicographic order of ab and budgets (3-a)/27 for the
// diagonal blocks, 1/27 off the diagonal.
LevelSet build_ternary_blocks(const Profile& p);

// Fix-free binary code for profiles populated only at even levels, produced
// by building a quaternary code for the halved profile (beta_l = alpha_2l)
// and mapping each letter to its two-bit image.  The letter map preserves
// num, fix-freeness (in both directions) and the Kraft sum.  Tries, in
// order: a chain system, a mirrored chain system, the first-two-levels
// route with k = 2, and the bounded builder, all over q = 4.
LevelSet lift_from_quaternary(const Profile& p);

// Fix-free code over A with Kraft sum exactly gamma, for any rational
// 0 < gamma <= 1 with a finite base-q expansion gamma = a/q^L.  Uses the
// first digit's worth of single letters plus, per level, words that start
// and end outside those letters; a borrow-and-carry sweep over the digits
// decides how many words each level takes.
LevelSet build_exact_kraftsum(int q, const Rational& gamma_target);

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

struct BuildReport {
  std::string tag;  // which route produced the code ("half", "search", ...)
  LevelSet code;
  std::vector<std::string> notes;  // matched hypothesis, exact Kraft values
};

struct ConstructResult {
  enum class Verdict { Found, Nonexistent, Unknown };
  Verdict verdict = Verdict::Unknown;
  BuildReport report;  // report.code is meaningful only for Found
};

// Tries the builders from cheapest gate to strongest hypothesis, in a fixed
// order: Kraft above 1 is rejected outright (no prefix-free code exists at
// all), then half, two_level, spaced, bounded, first_two_levels (k from
// ceil(q/2) down to 1), 58_binary, quaternary_lift, and finally the
// exhaustive search under the given budget.  Every attempted-but-failed
// route leaves a note in the report.
ConstructResult construct(const Profile& p,
                          const SearchBudget& b = default_budget());

namespace detail {

// Exact number of level-n words left free (outside the bifix shadow) after
// placing the num-least alpha_m words of A^m; closed form, valid for any
// n > m, no materialization.
u64 two_level_free_count(int q, int m, int n, i64 alpha_m);

// Nine-block split behind build_ternary_blocks; same contract as
// beta_decompose, blocks in lexicographic order 00,01,02,10,...,22.
std::array<Profile, 9> ternary_decompose(const Profile& p);

// Smallest extension of p reaching Kraft sum exactly `target`, obtained by
// appending words at one level at or below max(l_max, expansion depth).
Profile pad_to(const Profile& p, const Rational& target);

// The two-bits-per-letter image of a quaternary code (num is preserved).
LevelSet lift_code(const LevelSet& quaternary);

}  // namespace detail

}  // namespace fixfree
