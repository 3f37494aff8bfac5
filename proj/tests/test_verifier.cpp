#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "fixfree/verifier.hpp"

using namespace fixfree;

namespace {

template <class F>
std::optional<ErrKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

Profile bin(std::vector<i64> alpha) {
  Profile p;
  p.q = 2;
  p.alpha = std::move(alpha);
  return p;
}

// ----- independent string-level oracle for small profiles -----

std::string word_str(int q, int len, u64 val) {
  std::string s(static_cast<size_t>(len), '0');
  for (int i = len - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = static_cast<char>('0' + val % q);
    val /= static_cast<u64>(q);
  }
  return s;
}

bool str_clash(const std::string& a, const std::string& b) {
  const std::string& s = a.size() <= b.size() ? a : b;
  const std::string& l = a.size() <= b.size() ? b : a;
  if (s.size() == l.size()) return s == l;
  return l.compare(0, s.size(), s) == 0 ||
         l.compare(l.size() - s.size(), s.size(), s) == 0;
}

bool brute_exists(const Profile& p, std::vector<std::string>& chosen, int l,
                  u64 from, i64 left) {
  if (left == 0) {
    ++l;
    while (l <= p.max_level() && p.count(l) == 0) ++l;
    if (l > p.max_level()) return true;
    from = 0;
    left = p.count(l);
  }
  u64 total = 1;
  for (int i = 0; i < l; ++i) total *= static_cast<u64>(p.q);
  for (u64 v = from; v + static_cast<u64>(left) <= total; ++v) {
    std::string w = word_str(p.q, l, v);
    bool ok = true;
    for (const std::string& c : chosen)
      if (str_clash(c, w)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(w);
    if (brute_exists(p, chosen, l, v + 1, left - 1)) return true;
    chosen.pop_back();
  }
  return false;
}

bool brute_exists(const Profile& p) {
  std::vector<std::string> chosen;
  int l = 1;
  while (l <= p.max_level() && p.count(l) == 0) ++l;
  if (l > p.max_level()) return true;
  return brute_exists(p, chosen, l, 0, p.count(l));
}

void check_witness(const SearchResult& r, const Profile& p) {
  REQUIRE(r.witness.has_value());
  CHECK(is_free(*r.witness, Freeness::Fix));
  CHECK(fits(*r.witness, p));
}

}  // namespace

TEST_CASE("search decides the three pinned profiles") {
  {
    SearchResult r = search(bin({1, 1, 0, 2}));
    CHECK(r.verdict == SearchResult::Verdict::Nonexistent);
    CHECK(!r.witness.has_value());
    CHECK(r.nodes > 0);
  }
  {
    Profile p = bin({0, 1, 1, 6});
    SearchResult r = search(p);
    CHECK(r.verdict == SearchResult::Verdict::Found);
    check_witness(r, p);
  }
  {
    Profile p = bin({0, 0, 4, 1, 5});
    SearchResult r = search(p);
    CHECK(r.verdict == SearchResult::Verdict::Found);
    check_witness(r, p);
  }
}

TEST_CASE("search handles degenerate profiles") {
  {
    Profile p = bin({});
    SearchResult r = search(p);
    CHECK(r.verdict == SearchResult::Verdict::Found);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->total() == 0);
  }
  {
    Profile p = bin({0, 4});  // the full square level is fix-free
    SearchResult r = search(p);
    CHECK(r.verdict == SearchResult::Verdict::Found);
    check_witness(r, p);
  }
  {
    Profile p = bin({2});
    SearchResult r = search(p);
    CHECK(r.verdict == SearchResult::Verdict::Found);
    check_witness(r, p);
  }
  {
    // 0 or 1 must head the one-letter word, and either way only one of the
    // two-letter words survives on both sides.
    SearchResult r = search(bin({1, 2}));
    CHECK(r.verdict == SearchResult::Verdict::Nonexistent);
  }
}

TEST_CASE("search agrees with a string-level oracle on every small profile") {
  // All binary profiles with l_max <= 3 and alpha_l <= 3, Kraft bound or
  // not; the oracle enumerates raw subsets over strings.
  for (i64 a1 = 0; a1 <= 3; ++a1)
    for (i64 a2 = 0; a2 <= 3; ++a2)
      for (i64 a3 = 0; a3 <= 3; ++a3) {
        if (a1 > 2) continue;  // level capacity
        Profile p = bin({a1, a2, a3});
        SearchResult r = search(p);
        bool expect = brute_exists(p);
        INFO("profile alpha=", a1, ",", a2, ",", a3);
        CHECK(r.verdict == (expect ? SearchResult::Verdict::Found
                                   : SearchResult::Verdict::Nonexistent));
        if (expect) check_witness(r, p);
      }
  // One deeper pair where the verdicts differ between levels.
  CHECK(search(bin({0, 1, 1, 6})).verdict == SearchResult::Verdict::Found);
  CHECK(brute_exists(bin({0, 1, 1, 6})));
  CHECK(search(bin({1, 1, 0, 2})).verdict ==
        SearchResult::Verdict::Nonexistent);
  CHECK(!brute_exists(bin({1, 1, 0, 2})));
}

TEST_CASE("search also covers a ternary profile") {
  Profile p;
  p.q = 3;
  p.alpha = {1, 2, 6};
  SearchResult r = search(p);
  CHECK(r.verdict == SearchResult::Verdict::Found);
  check_witness(r, p);
  CHECK(brute_exists(p));
}

TEST_CASE("search verdicts are budget independent at desk scale") {
  std::vector<Profile> ps = {bin({1, 1, 0, 2}), bin({0, 1, 1, 6}),
                             bin({0, 0, 4, 1, 5}), bin({0, 2, 2, 2, 2, 2})};
  for (const Profile& p : ps) {
    SearchBudget small{1'000'000, 1};
    SearchBudget large{10'000'000, 1};
    CHECK(search(p, small).verdict == search(p, large).verdict);
  }
}

TEST_CASE("search reports Unknown when starved of budget") {
  SearchBudget tiny{1, 1};
  SearchResult r = search(bin({0, 1, 1, 6}), tiny);
  CHECK(r.verdict == SearchResult::Verdict::Unknown);
  CHECK(!r.witness.has_value());
  CHECK(r.nodes >= 1);
}

TEST_CASE("default budget honors the environment override") {
  const char* old = std::getenv("FIXFREE_BUDGET");
  std::string saved = old ? old : "";

  setenv("FIXFREE_BUDGET", "12345", 1);
  CHECK(default_budget().max_nodes == 12345);
  setenv("FIXFREE_BUDGET", "abc", 1);
  CHECK(default_budget().max_nodes == 20'000'000);
  setenv("FIXFREE_BUDGET", "0", 1);
  CHECK(default_budget().max_nodes == 20'000'000);
  unsetenv("FIXFREE_BUDGET");
  CHECK(default_budget().max_nodes == 20'000'000);

  if (old)
    setenv("FIXFREE_BUDGET", saved.c_str(), 1);
  else
    unsetenv("FIXFREE_BUDGET");
}

TEST_CASE("counterexample pins the binary instances") {
  {
    Counterexample c = counterexample(2, Rational(3, 10));
    CHECK(c.m == 3);
    CHECK(c.alpha_m == 5);
    CHECK(c.n == 6);
    CHECK(c.alpha_n == 17);
    CHECK(c.shadowed == 55);  // 2*5*8 - 25
    CHECK(c.needed == 72);
    CHECK(c.capacity == 64);
    CHECK(c.holds);
    CHECK(c.kraft == Rational(57, 64));
    CHECK(c.kraft > Rational(3, 4));
    CHECK(c.kraft < Rational(3, 4) + c.epsilon);
    CHECK(c.profile.alpha == std::vector<i64>{0, 0, 5, 0, 0, 17});
  }
  {
    Counterexample c = counterexample(2, Rational(1, 4));
    CHECK(c.m == 4);
    CHECK(c.alpha_m == 9);
    CHECK(c.n == 8);
    CHECK(c.alpha_n == 65);
    CHECK(c.holds);
    CHECK(c.kraft == Rational(209, 256));
    CHECK(c.kraft > Rational(3, 4));
    CHECK(!(c.kraft > Rational(1)));
  }
}

TEST_CASE("counterexample clamps and rejects out-of-range epsilon") {
  Counterexample big = counterexample(2, Rational(9, 10));
  Counterexample half = counterexample(2, Rational(1, 2));
  CHECK(big.epsilon == Rational(1, 2));
  CHECK(big.m == half.m);
  CHECK(big.alpha_m == half.alpha_m);
  CHECK(big.n == half.n);
  CHECK(big.alpha_n == half.alpha_n);
  // Epsilon 1/2 selects the same instance as 3/10 (both give minimal m=3).
  CHECK(half.m == 3);
  CHECK(half.alpha_n == 17);
  CHECK(half.kraft == Rational(57, 64));

  CHECK(thrown_kind([] { counterexample(2, Rational(0)); }) ==
        ErrKind::OutOfRange);
  CHECK(thrown_kind([] { counterexample(2, Rational(-1, 3)); }) ==
        ErrKind::OutOfRange);
  CHECK(thrown_kind([] { counterexample(1, Rational(1, 8)); }) ==
        ErrKind::OutOfRange);
}

TEST_CASE("counterexample works over a ternary alphabet") {
  Counterexample c = counterexample(3, Rational(1, 4));
  CHECK(c.m == 2);
  CHECK(c.alpha_m == 5);
  CHECK(c.n == 4);
  CHECK(c.alpha_n == 21);
  CHECK(c.shadowed == 65);  // 2*5*9 - 25
  CHECK(c.needed == 86);
  CHECK(c.capacity == 81);
  CHECK(c.holds);
  CHECK(c.kraft == Rational(22, 27));
}

TEST_CASE("counterexample certificate survives exhaustive re-derivation") {
  // q=2, eps=3/10: every 5-subset of the eight length-3 words shadows
  // exactly 55 of the 64 length-6 words, leaving 9 < 17 free.
  Counterexample c = counterexample(2, Rational(3, 10));
  int checked = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    bool covered[64] = {};
    for (unsigned v = 0; v < 8; ++v) {
      if (!(mask >> v & 1u)) continue;
      for (unsigned u = 0; u < 8; ++u) {
        covered[v * 8 + u] = true;  // v as prefix
        covered[u * 8 + v] = true;  // v as suffix
      }
    }
    int free_words = 0;
    for (bool b : covered)
      if (!b) ++free_words;
    CHECK(free_words == 64 - static_cast<int>(c.shadowed));
    CHECK(free_words < c.alpha_n);
    ++checked;
  }
  CHECK(checked == 56);
}

TEST_CASE("lengths sequences validate their domain") {
  CHECK(thrown_kind([] {
          LengthsSeq s{3, {1, 2}};
          s.validate();
        }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] {
          LengthsSeq s{2, {2, 1}};
          s.validate();
        }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] {
          LengthsSeq s{2, {0}};
          s.validate();
        }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] {
          LengthsSeq s{2, {63}};
          s.validate();
        }) == ErrKind::OutOfRange);

  LengthsSeq s{2, {1, 2, 4, 4}};
  s.validate();
  Profile p = lengths_profile(s);
  CHECK(p.q == 2);
  CHECK(p.alpha == std::vector<i64>{1, 1, 0, 2});
}

TEST_CASE("su and ne evaluate the pinned sequences exactly") {
  auto rep = [](std::vector<int> l) { return su_ne(LengthsSeq{2, std::move(l)}); };

  {
    SuNeReport r = rep({1});
    CHECK(r.su == Rational(1));
    CHECK(r.ne == Rational(1));
    CHECK(r.factors_su.empty());
  }
  {
    SuNeReport r = rep({1, 1});
    CHECK(r.su == Rational(1, 2));
    CHECK(r.ne == Rational(1, 2));
  }
  {
    SuNeReport r = rep({1, 2});
    CHECK(r.su == Rational(1, 4));
  }
  {
    SuNeReport r = rep({1, 1, 1});
    CHECK(r.su == Rational(0));
    CHECK(r.ne == Rational(0));
  }
  {
    SuNeReport r = rep({2, 2, 2, 2});
    CHECK(r.su == Rational(3, 32));
    CHECK(r.ne == Rational(3, 32));
    REQUIRE(r.factors_su.size() == 3);
    CHECK(r.factors_su[0] == Rational(3, 4));
    CHECK(r.factors_su[1] == Rational(1, 2));
    CHECK(r.factors_su[2] == Rational(1, 4));
  }
  {
    SuNeReport r = rep({1, 2, 2});
    CHECK(r.su == Rational(0));
    CHECK(r.ne == Rational(0));  // and indeed no such code exists
  }
}

TEST_CASE("the printed reading stays available but fails calibration") {
  SuNeReport a = su_ne(LengthsSeq{2, {1, 1}}, SuNeReading::Printed);
  CHECK(a.reading == SuNeReading::Printed);
  CHECK(a.su == Rational(1));  // corrected reading: 1/2

  // (1,1,1) asks for three distinct one-letter binary words, which cannot
  // exist, yet the printed lower bound stays positive; this is why the
  // corrected reading is the default.
  SuNeReport b = su_ne(LengthsSeq{2, {1, 1, 1}}, SuNeReading::Printed);
  CHECK(b.su == Rational(1));
  CHECK(!brute_exists(bin({3})));
  CHECK(su_ne(LengthsSeq{2, {1, 1, 1}}).su == Rational(0));
}

TEST_CASE("madcor matches the pinned examples") {
  CHECK(!madcor_check(LengthsSeq{2, {1, 2, 3}}));
  CHECK(madcor_check(LengthsSeq{2, {3, 3, 3}}));
  CHECK(madcor_check(LengthsSeq{2, {1}}));
  CHECK(madcor_check(LengthsSeq{2, {}}));
}

TEST_CASE("su, ne and madcor agree with search on every short sequence") {
  // All nondecreasing sequences with n <= 5 and l_n <= 6; 461 in total.
  std::vector<std::vector<int>> seqs;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int minl) -> void {
    if (!cur.empty()) seqs.push_back(cur);
    if (cur.size() == 5) return;
    for (int l = minl; l <= 6; ++l) {
      cur.push_back(l);
      self(self, l);
      cur.pop_back();
    }
  };
  gen(gen, 1);
  CHECK(seqs.size() == 461);

  int positive_su = 0, zero_ne = 0, madcor_true = 0;
  for (const std::vector<int>& ls : seqs) {
    LengthsSeq s{2, ls};
    SuNeReport r = su_ne(s);
    bool mad = madcor_check(s);
    Profile p = lengths_profile(s);
    bool over_capacity = false;
    for (int l = 1; l <= p.max_level(); ++l)
      if (p.count(l) > static_cast<i64>(qpow(2, l))) over_capacity = true;
    bool found = false;
    if (!over_capacity) {
      SearchResult sr = search(p);
      REQUIRE(sr.verdict != SearchResult::Verdict::Unknown);
      found = sr.verdict == SearchResult::Verdict::Found;
    }
    INFO("lengths n=", ls.size(), " first=", ls.front(), " last=", ls.back());
    if (r.su > Rational(0)) {
      ++positive_su;
      CHECK(found);
    }
    if (r.ne == Rational(0)) {
      ++zero_ne;
      CHECK(!found);
    }
    if (mad) {
      ++madcor_true;
      CHECK(found);
    }
  }
  CHECK(positive_su > 0);
  CHECK(zero_ne > 0);
  CHECK(madcor_true > 0);
}
