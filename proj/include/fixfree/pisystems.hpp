#pragma once

#include <iosfwd>
#include <vector>

#include "fixfree/debruijn.hpp"
#include "fixfree/rational.hpp"
#include "fixfree/words.hpp"

namespace fixfree {

// ---------------------------------------------------------------------------
// Pi-systems
// ---------------------------------------------------------------------------
//
// A pi-system over levels 1..n is a fix-free code D together with a partition
// into k blocks D_1..D_k whose level-n shadows are perfectly balanced: each
// block's prefix shadow and suffix shadow cover exactly q^{n-1} of the q^n
// words, and stripping the far letter (the first letter of prefix-shadow
// words, the last letter of suffix-shadow words) loses nothing:
//
//   |P^n(D_i)| = |A^{-1} P^n(D_i)| = |S^n(D_i)| = |S^n(D_i) A^{-1}| = q^{n-1}
//
// Such a code has Kraft sum exactly k/q, and its bifix shadow can never fill
// a level faster than the Kraft mass accounts for.  That makes greedy
// level-by-level extension safe for every target profile with Kraft sum up
// to gamma(q, k) > k/q, which is how the profile builders use these systems.

struct PiSystem {
  int q = 0;
  int k = 0;
  int n = 0;                     // top level; all words have length <= n
  LevelSet code;                 // union of the blocks
  std::vector<LevelSet> blocks;  // k disjoint blocks covering code
};

// Largest target Kraft sum the extension step supports:
// 1/2 + k/(2q) for k <= floor(q/2), else ((q-k)/q)^2 + k/q.  For 1 <= k < q.
Rational gamma(int q, int k);

// Checks the balanced-shadow property, plus that the blocks really are a
// partition of the code and the code is fix-free.  Malformed inputs (wrong
// block count, words above level n, ...) return false rather than throw.
bool is_pi_system(const PiSystem& p);

// Canonical one-level system: block i holds the q^{n-1} words a u phi_i(a)
// with u in A^{n-2} and phi_i(a) = a+i-1 mod q; for n = 1 block i is {i-1}.
PiSystem one_level_pi(int q, int n, int k);

struct PiResult {
  enum class Status { Found, Impossible, Unsupported };
  Status status = Status::Unsupported;
  PiSystem system;
};

// Two-level system on levels n-1 and n with kL words of length n-1, built
// from a k-regular subgraph with L vertices: the subgraph's edge words form
// the short level, split along a 1-factor decomposition, and every bypassed
// vertex w contributes the length-n words a w phi_i(a).  A system of this
// shape exists if and only if the subgraph does, so Impossible / Unsupported
// are propagated from that search.
PiResult two_level_pi(int q, int n, int k, u64 L);

// Grows a pi-system into a fix-free code fitting `target`: fills level n up
// to target's count and then every higher level in turn, always taking the
// smallest words outside the bifix shadow of what has been placed so far.
// Requires target to agree with the system below level n, to have room for
// the system's level-n words, and kraft_sum(target) <= gamma(q, k); any
// violation throws PreconditionViolated.  The balanced shadows guarantee
// room at every step, so running out of free words throws Internal.
LevelSet pi_extend(const PiSystem& p, const Profile& target);

namespace detail {

// The three equivalent formulations of the partition property, split out so
// tests can confirm they agree.  All assume the structural checks (fix-free
// code, genuine partition) have already passed.
bool pi_balanced_shadows(const PiSystem& p);     // shadow counts = q^{n-1}
bool pi_kraft_and_quotients(const PiSystem& p);  // Kraft k/q + lossless strip
bool pi_maximal_quotients(const PiSystem& p);    // stripped blocks maximal

// Multi-level systems used by the profile builders.  Split the alphabet into
// X = {0..d-1} and Y = {d..q-1}; each word is a marked letter, a run from
// one class, and a closing letter matched to the first through a per-block
// rotation.  chain_pi uses Y-runs only and occupies levels 2..n;
// chain_pi_mirrored uses runs from both classes and occupies levels 3..n.
// Require 1 <= k <= min(d, q-d) so the block rotations never collide.
PiSystem chain_pi(int q, int n, int k, int d);
PiSystem chain_pi_mirrored(int q, int n, int k, int d);

}  // namespace detail

// Text form: header "q=3 n=4 k=2", then one "<word> <block>" line per word,
// levels ascending and words ascending by num within a level.
PiSystem parse_pi_system(std::istream& in);
void format_pi_system(std::ostream& out, const PiSystem& p);

}  // namespace fixfree
