#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fixfree/error.hpp"
#include "fixfree/rational.hpp"

namespace fixfree {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// q^l as u64; throws Overflow once past 2^62 so callers can rely on the
// result being usable in signed arithmetic too.
u64 qpow(int q, int l);

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------
//
// A word over {0,...,q-1} is stored as its length plus num(w): the integer
// whose base-q digits, most significant first, are the letters of the word.
// Words of equal length are ordered by num, and every deterministic choice
// in the library ("take the smallest candidates") means ascending num.

struct Word {
  int q = 2;
  int len = 0;  // 0 encodes the empty word
  u64 val = 0;  // num(w), always < q^len

  friend bool operator==(const Word&, const Word&) = default;
};

Word make_word(int q, int len, u64 val);
u64 num(const Word& w);
int letter(const Word& w, int i);  // i-th letter from the left, 0-based
Word parse_word(std::string_view digits, int q);  // single-character digits
std::string to_string(const Word& w);
Word concat(const Word& a, const Word& b);
Word reversed(const Word& w);
bool is_prefix(const Word& p, const Word& w);  // p a (not nec. proper) prefix
bool is_suffix(const Word& s, const Word& w);

// ---------------------------------------------------------------------------
// Bitset
// ---------------------------------------------------------------------------
//
// Plain fixed-size bit vector; subsets of A^l are kept as bitsets indexed by
// num.  Trailing bits of the last limb stay zero at all times.

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(u64 n);

  u64 size() const { return n_; }
  bool test(u64 i) const;
  void set(u64 i);
  void reset(u64 i);
  void set_range(u64 lo, u64 hi);  // sets [lo, hi)
  void clear();
  void fill();
  u64 count() const;
  bool any() const;
  Bitset& operator|=(const Bitset& o);
  Bitset& operator&=(const Bitset& o);
  void and_not(const Bitset& o);  // *this &= ~o
  // First set (resp. clear) index >= from, or size() when there is none.
  u64 next_set(u64 from) const;
  u64 next_clear(u64 from) const;

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  u64 n_ = 0;
  std::vector<u64> w_;
};

// ---------------------------------------------------------------------------
// Length profiles
// ---------------------------------------------------------------------------

// alpha[l-1] words of each length l.  Profiles are the shared currency of the
// builders, the verifier and the CLI.
struct Profile {
  int q = 2;
  std::vector<i64> alpha;

  i64 count(int l) const;  // 0 outside the stored range
  int max_level() const;   // largest l with alpha[l-1] > 0, or 0
  int min_level() const;   // smallest such l, or 0
  i64 total() const;
  int populated_levels() const;
  void validate() const;  // q >= 2, all counts >= 0, counts <= q^l

  friend bool operator==(const Profile&, const Profile&) = default;
};

Rational kraft_sum(const Profile& p);

// ---------------------------------------------------------------------------
// Level sets
// ---------------------------------------------------------------------------

// A finite set of nonempty words with a common alphabet, one bitset per
// length.  Per-level universes have q^l points, so levels are capped (default
// 2^26 bits per level) to keep accidental blowups loud instead of fatal.

class LevelSet {
 public:
  static constexpr u64 kDefaultLevelCap = u64(1) << 26;

  LevelSet() = default;
  LevelSet(int q, int max_level, u64 level_cap = kDefaultLevelCap);

  int q() const { return q_; }
  int max_level() const { return static_cast<int>(levels_.size()); }

  bool test(int l, u64 v) const;
  bool test(const Word& w) const;
  void insert(int l, u64 v);
  void insert(const Word& w);
  void erase(int l, u64 v);

  u64 count(int l) const;
  u64 total() const;
  const Bitset& level(int l) const;
  Bitset& level(int l);

  // Ascending (length, num); the canonical enumeration order everywhere.
  std::vector<Word> words() const;
  void for_each(const std::function<void(const Word&)>& fn) const;

  Profile profile() const;

 private:
  int q_ = 0;
  std::vector<Bitset> levels_;  // levels_[l-1] covers A^l
};

Rational kraft_sum(const LevelSet& c);

// Exact profile match, including the alphabet.
bool fits(const LevelSet& c, const Profile& p);

// ---------------------------------------------------------------------------
// Shadows, overlaps, freeness
// ---------------------------------------------------------------------------

enum class Shadow { Prefix, Suffix, Bifix };

// All words of length n having some member of c (of length <= n) as a
// prefix / suffix / either, as a bitset over A^n.
Bitset shadow(const LevelSet& c, int n, Shadow kind);
u64 shadow_count(const LevelSet& c, int n, Shadow kind);

// Number of words of length n that begin with x and end with y.  Closed
// form: 0 when n < max(|x|,|y|); q^(n-|x|-|y|) when n >= |x|+|y|; otherwise
// 1 or 0 according to whether the length-r suffix of x equals the length-r
// prefix of y, r = |x|+|y|-n.
u64 overlap_count(const Word& x, const Word& y, int n);

enum class Freeness { Prefix, Suffix, Fix };

bool is_free(const LevelSet& c, Freeness f);

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------
//
// Profile:  "q=2 alpha=0,1,2,4"      (single line)
// Code:     line "q=2", then one word per line, digits only.  key=value
//           metadata lines before the q= header are skipped, so a CLI
//           report block pasted in front of a code stays parseable.

Profile parse_profile(std::string_view text);
std::string format_profile(const Profile& p);
LevelSet parse_code(std::istream& in, u64 level_cap = LevelSet::kDefaultLevelCap);
void format_code(std::ostream& out, const LevelSet& c);

}  // namespace fixfree
