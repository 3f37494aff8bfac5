#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fixfree/words.hpp"

namespace fixfree {

// ---------------------------------------------------------------------------
// Exhaustive existence search
// ---------------------------------------------------------------------------
//
// search() decides by complete enumeration whether some fix-free code fits a
// profile.  Levels are filled in ascending order; at each populated level the
// candidate words are the ones outside the bifix shadow of the partial code,
// listed ascending by num, and the subsets of them are tried in colex order
// of that list.  A branch is cut as soon as the exact number of shadow-free
// words remaining at some future populated level (computed from the pairwise
// overlap counts, no materialization) drops below the still-needed count.
//
// One symmetry is quotiented out: relabeling the alphabet and reversing every
// word both preserve fix-freeness and lengths, so the num-least word at the
// first populated level may be fixed to the num-least representative of its
// orbit under those maps.  Nothing else is assumed, hence "Nonexistent" is
// only ever reported after the full (quotiented) space has been exhausted.

struct SearchBudget {
  u64 max_nodes = 20'000'000;  // word placements tried before giving up
  int jobs = 1;                // scheduling hint; results never depend on it
};

// Default budget, with FIXFREE_BUDGET (node count) taken from the
// environment when set.
SearchBudget default_budget();

struct SearchResult {
  enum class Verdict { Found, Nonexistent, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<LevelSet> witness;  // set exactly when verdict == Found
  u64 nodes = 0;                    // word placements actually tried
};

SearchResult search(const Profile& p, const SearchBudget& b = default_budget());

// ---------------------------------------------------------------------------
// Profiles admitting no fix-free code with Kraft sum below 3/4 + eps
// ---------------------------------------------------------------------------
//
// For every eps > 0 there is a profile whose Kraft sum stays below
// 3/4 + eps although no fix-free code fits it, so 3/4 is the largest
// constant for which a general existence theorem can hold.  counterexample()
// materializes the classical two-level witness: alpha_m words of length m
// with mass just above 1/2 and alpha_n of length n >= 2m with mass just
// above 1/4.  Because n >= 2m, every pair of length-m words overlaps in
// full windows at level n, so ANY choice of the alpha_m short words shadows
// exactly 2*alpha_m*q^(n-m) - alpha_m^2*q^(n-2m) words of length n; the
// certificate is the arithmetic fact that this plus alpha_n exceeds q^n.

struct Counterexample {
  int q = 2;
  Rational epsilon;   // value actually used (inputs above 1/2 are clamped)
  Profile profile;    // alpha_m at level m, alpha_n at level n
  int m = 0;
  int n = 0;
  i64 alpha_m = 0;
  i64 alpha_n = 0;
  u64 shadowed = 0;   // level-n words shadowed by any alpha_m-subset of A^m
  u64 needed = 0;     // shadowed + alpha_n
  u64 capacity = 0;   // q^n
  Rational kraft;     // of the profile; always below 3/4 + epsilon
  bool holds = false; // needed > capacity, re-derived from the fields above
};

Counterexample counterexample(int q, Rational epsilon);

// ---------------------------------------------------------------------------
// Binary lengths sequences: the su / ne bounds
// ---------------------------------------------------------------------------
//
// A lengths sequence lists binary codeword lengths in nondecreasing order.
// su() and ne() multiply, over the words in order, a lower (resp. upper)
// estimate of the fraction of length-l_{i+1} words kept free by the first i
// words: su > 0 guarantees a fitting fix-free code exists, ne == 0 rules one
// out.  The printed source of the formulas garbles several indices (the
// running Kraft sum, the diagonal term and the pair-sum cutoff all lose
// their subscripts); the corrected reading restores them and is the one
// whose calibration values check out, e.g. (1,1) -> 1/2 and (1,1,1) -> 0.
// The printed reading is kept available, explicitly labeled, for
// comparison; it is never used silently.

struct LengthsSeq {
  int q = 2;                // only the binary case is defined
  std::vector<int> lengths; // nondecreasing, each in [1, 62]

  void validate() const;
};

// Profile with alpha_l = number of entries equal to l.
Profile lengths_profile(const LengthsSeq& s);

enum class SuNeReading { Corrected, Printed };

struct SuNeReport {
  Rational su;
  Rational ne;
  SuNeReading reading = SuNeReading::Corrected;
  // Factor i (1-based, one per word after the first) before clamping at 0;
  // kept for reporting, su/ne are the products of the clamped values.
  std::vector<Rational> factors_su;
  std::vector<Rational> factors_ne;
};

SuNeReport su_ne(const LengthsSeq& s,
                 SuNeReading reading = SuNeReading::Corrected);

// Sufficient condition on the plain Kraft sum of a lengths sequence:
//   sum_j 2^(-l_j) < 1/2 + (n + 2 - h(n-1))/2 * 2^(-l_n)
// where h(i) is the first position carrying the length l_{i+1}.  True
// guarantees a fitting fix-free code exists.
bool madcor_check(const LengthsSeq& s);

}  // namespace fixfree
