#include <doctest.h>

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixfree/words.hpp"

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

// String-level oracles; everything below is checked against these.
bool str_prefix(const std::string& p, const std::string& w) {
  return w.size() >= p.size() && w.compare(0, p.size(), p) == 0;
}
bool str_suffix(const std::string& s, const std::string& w) {
  return w.size() >= s.size() &&
         w.compare(w.size() - s.size(), s.size(), s) == 0;
}

std::vector<std::string> all_strings(int q, int len) {
  std::vector<std::string> out;
  out.push_back("");
  for (int i = 0; i < len; ++i) {
    std::vector<std::string> next;
    for (const std::string& s : out)
      for (int d = 0; d < q; ++d) next.push_back(s + char('0' + d));
    out = std::move(next);
  }
  return out;
}

LevelSet random_set(int q, int max_level, double density, std::mt19937_64& rng) {
  LevelSet c(q, max_level);
  std::bernoulli_distribution keep(density);
  for (int l = 1; l <= max_level; ++l)
    for (u64 v = 0; v < qpow(q, l); ++v)
      if (keep(rng)) c.insert(l, v);
  return c;
}

}  // namespace

TEST_CASE("rational: arithmetic is exact and reduced") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK((Rational(1, 2) + Rational(1, 3)).str() == "5/6");
  CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
  CHECK((Rational(1, 2) - Rational(3, 4)) == Rational(-1, 4));
  CHECK((Rational(5) / Rational(10)).str() == "1/2");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(2, 3) < Rational(3, 4));
  CHECK(Rational(3, 4) <= Rational(3, 4));
  CHECK(Rational(1, 3) > Rational(1, 4));
  CHECK(thrown_kind([] { Rational(1, 0); }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] {
          Rational big(INT64_MAX, 1);
          (void)(big * big);
        }) == ErrKind::Overflow);
}

TEST_CASE("words: num encoding round-trips against digit strings") {
  CHECK(num(parse_word("0110", 2)) == 6);
  CHECK(num(parse_word("21", 3)) == 7);
  CHECK(to_string(make_word(2, 4, 6)) == "0110");
  for (int q : {2, 3, 5}) {
    for (const std::string& s : all_strings(q, 3)) {
      Word w = parse_word(s, q);
      CHECK(to_string(w) == s);
      CHECK(w.len == static_cast<int>(s.size()));
      for (int i = 0; i < w.len; ++i) CHECK(letter(w, i) == s[i] - '0');
      std::string rev(s.rbegin(), s.rend());
      CHECK(to_string(reversed(w)) == rev);
    }
  }
  // concat and prefix/suffix agree with string operations
  for (const std::string& a : all_strings(2, 3))
    for (const std::string& b : all_strings(2, 3)) {
      Word wa = parse_word(a, 2), wb = parse_word(b, 2);
      CHECK(to_string(concat(wa, wb)) == a + b);
      CHECK(is_prefix(wa, wb) == str_prefix(a, b));
      CHECK(is_suffix(wa, wb) == str_suffix(a, b));
    }
  CHECK(thrown_kind([] { parse_word("012", 2); }) == ErrKind::InputError);
  CHECK(thrown_kind([] { make_word(2, 3, 8); }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] { qpow(2, 63); }) == ErrKind::Overflow);
  CHECK(qpow(2, 62) == u64(1) << 62);
}

TEST_CASE("bitset: matches a plain bool-vector model") {
  std::mt19937_64 rng(12345);
  for (u64 n : {u64(1), u64(63), u64(64), u64(65), u64(200), u64(1000)}) {
    Bitset b(n);
    std::vector<bool> model(n, false);
    std::uniform_int_distribution<u64> pick(0, n - 1);
    for (int step = 0; step < 500; ++step) {
      int op = static_cast<int>(rng() % 4);
      if (op == 0) {
        u64 i = pick(rng);
        b.set(i);
        model[i] = true;
      } else if (op == 1) {
        u64 i = pick(rng);
        b.reset(i);
        model[i] = false;
      } else if (op == 2) {
        u64 lo = pick(rng), hi = pick(rng);
        if (lo > hi) std::swap(lo, hi);
        b.set_range(lo, hi);
        for (u64 i = lo; i < hi; ++i) model[i] = true;
      } else {
        u64 from = pick(rng);
        u64 got = b.next_set(from);
        u64 want = n;
        for (u64 i = from; i < n; ++i)
          if (model[i]) {
            want = i;
            break;
          }
        CHECK(got == want);
        got = b.next_clear(from);
        want = n;
        for (u64 i = from; i < n; ++i)
          if (!model[i]) {
            want = i;
            break;
          }
        CHECK(got == want);
      }
    }
    u64 cnt = 0;
    for (u64 i = 0; i < n; ++i) {
      CHECK(b.test(i) == model[i]);
      if (model[i]) ++cnt;
    }
    CHECK(b.count() == cnt);
  }
}

TEST_CASE("overlap_count: agrees with exhaustive enumeration") {
  for (int q : {2, 3}) {
    int maxlen = q == 2 ? 4 : 3;
    int maxn = q == 2 ? 8 : 5;
    std::vector<Word> words;
    for (int l = 1; l <= maxlen; ++l)
      for (u64 v = 0; v < qpow(q, l); ++v) words.push_back(Word{q, l, v});
    for (int n = 0; n <= maxn; ++n) {
      std::vector<Word> space;
      for (u64 v = 0; n >= 1 && v < qpow(q, n); ++v)
        space.push_back(Word{q, n, v});
      for (const Word& x : words)
        for (const Word& y : words) {
          u64 brute = 0;
          if (n == 0) {
            brute = 0;  // no nonempty word of length 0 fits x or y
          } else {
            for (const Word& w : space)
              if (is_prefix(x, w) && is_suffix(y, w)) ++brute;
          }
          CHECK(overlap_count(x, y, n) == brute);
        }
    }
  }
  // spot values of the closed form
  CHECK(overlap_count(parse_word("01", 2), parse_word("10", 2), 3) == 1);
  CHECK(overlap_count(parse_word("01", 2), parse_word("00", 2), 3) == 0);
  CHECK(overlap_count(parse_word("01", 2), parse_word("10", 2), 6) == 4);
  CHECK(overlap_count(parse_word("011", 2), parse_word("11", 2), 2) == 0);
}

TEST_CASE("shadow: agrees with definition on random sets") {
  std::mt19937_64 rng(777);
  for (int q : {2, 3}) {
    int n = q == 2 ? 7 : 5;
    for (int rep = 0; rep < 8; ++rep) {
      LevelSet c = random_set(q, n - 1 + (rep % 2), 0.15, rng);
      auto members = c.words();
      Bitset pre = shadow(c, n, Shadow::Prefix);
      Bitset suf = shadow(c, n, Shadow::Suffix);
      Bitset bif = shadow(c, n, Shadow::Bifix);
      for (u64 v = 0; v < qpow(q, n); ++v) {
        Word w{q, n, v};
        bool p = false, s = false;
        for (const Word& m : members) {
          p = p || is_prefix(m, w);
          s = s || is_suffix(m, w);
        }
        CHECK(pre.test(v) == p);
        CHECK(suf.test(v) == s);
        CHECK(bif.test(v) == (p || s));
      }
      CHECK(shadow_count(c, n, Shadow::Prefix) == pre.count());
    }
  }
}

TEST_CASE("shadow: size identities for free sets") {
  // For a prefix-free set with all lengths <= n the prefix shadow has size
  // q^n * kraft; for a fix-free set the two-sided shadow size is
  // 2 q^n kraft - sum of pairwise overlap counts.
  std::mt19937_64 rng(424242);
  for (int q : {2, 3}) {
    int n = q == 2 ? 8 : 5;
    for (int rep = 0; rep < 10; ++rep) {
      // grow a random fix-free set greedily
      LevelSet c(q, n);
      std::vector<Word> pool;
      for (int l = 1; l <= n; ++l)
        for (u64 v = 0; v < qpow(q, l); ++v) pool.push_back(Word{q, l, v});
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(pool.size() / 4);
      for (const Word& w : pool) {
        bool ok = true;
        for (const Word& m : c.words())
          if (is_prefix(m, w) || is_prefix(w, m) || is_suffix(m, w) ||
              is_suffix(w, m)) {
            ok = false;
            break;
          }
        if (ok) c.insert(w);
      }
      REQUIRE(is_free(c, Freeness::Fix));
      Rational s = kraft_sum(c);
      u64 qn = qpow(q, n);
      // prefix side
      Rational psize(static_cast<i64>(shadow_count(c, n, Shadow::Prefix)));
      CHECK(psize == Rational(static_cast<i64>(qn)) * s);
      // two-sided
      i64 cross = 0;
      for (const Word& x : c.words())
        for (const Word& y : c.words())
          cross += static_cast<i64>(overlap_count(x, y, n));
      Rational bsize(static_cast<i64>(shadow_count(c, n, Shadow::Bifix)));
      CHECK(bsize == Rational(2 * static_cast<i64>(qn)) * s -
                         Rational(cross));
    }
  }
}

TEST_CASE("is_free: matches the pairwise definition") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 60; ++rep) {
    int q = rep % 2 ? 3 : 2;
    LevelSet c = random_set(q, 5, 0.12, rng);
    auto ws = c.words();
    bool pfree = true, sfree = true;
    for (const Word& a : ws)
      for (const Word& b : ws) {
        if (a == b) continue;
        if (is_prefix(a, b)) pfree = false;
        if (is_suffix(a, b)) sfree = false;
      }
    CHECK(is_free(c, Freeness::Prefix) == pfree);
    CHECK(is_free(c, Freeness::Suffix) == sfree);
    CHECK(is_free(c, Freeness::Fix) == (pfree && sfree));
  }
  // directional cases: prefix-free but not suffix-free and vice versa
  LevelSet a(2, 2);
  a.insert(parse_word("0", 2));
  a.insert(parse_word("10", 2));  // 0 is a suffix of 10
  CHECK(is_free(a, Freeness::Prefix));
  CHECK_FALSE(is_free(a, Freeness::Suffix));
  CHECK_FALSE(is_free(a, Freeness::Fix));
  LevelSet b(2, 2);
  b.insert(parse_word("0", 2));
  b.insert(parse_word("01", 2));
  CHECK_FALSE(is_free(b, Freeness::Prefix));
  CHECK(is_free(b, Freeness::Suffix));
}

TEST_CASE("kraft_sum: exact rational values") {
  Profile p = parse_profile("q=2 alpha=0,1,2,4");
  CHECK(kraft_sum(p).str() == "3/4");
  CHECK(kraft_sum(parse_profile("q=2 alpha=0,0,4,1,5")).str() == "23/32");
  CHECK(kraft_sum(parse_profile("q=3 alpha=1,2")).str() == "5/9");
  CHECK(kraft_sum(parse_profile("q=2 alpha=2")).str() == "1");
  Profile empty = parse_profile("q=2 alpha=0");
  CHECK(kraft_sum(empty) == Rational(0));
}

TEST_CASE("profile: parsing, formatting, validation") {
  Profile p = parse_profile("q=2 alpha=0,1,2,4");
  CHECK(p.q == 2);
  CHECK(p.count(2) == 1);
  CHECK(p.count(4) == 4);
  CHECK(p.count(9) == 0);
  CHECK(p.max_level() == 4);
  CHECK(p.min_level() == 2);
  CHECK(p.total() == 7);
  CHECK(p.populated_levels() == 3);
  CHECK(format_profile(p) == "q=2 alpha=0,1,2,4");
  CHECK(parse_profile("alpha=1,1 q=3").q == 3);  // order free
  CHECK(thrown_kind([] { parse_profile("q=2"); }) == ErrKind::InputError);
  CHECK(thrown_kind([] { parse_profile("q=1 alpha=1"); }) ==
        ErrKind::InputError);
  CHECK(thrown_kind([] { parse_profile("q=2 alpha=3"); }) ==
        ErrKind::OutOfRange);  // 3 words of length 1 over {0,1}
  CHECK(thrown_kind([] { parse_profile("q=2 alpha=-1"); }) ==
        ErrKind::OutOfRange);
  CHECK(thrown_kind([] { parse_profile("q=2 alpha=1 bogus=3"); }) ==
        ErrKind::InputError);
}

TEST_CASE("code files: round trip and rejection of bad input") {
  std::istringstream in("q=2\n11\n101\n0000\n");
  LevelSet c = parse_code(in);
  CHECK(c.q() == 2);
  CHECK(c.total() == 3);
  CHECK(c.test(parse_word("101", 2)));
  std::ostringstream out;
  format_code(out, c);
  CHECK(out.str() == "q=2\n11\n101\n0000\n");
  {
    std::istringstream bad("q=2\n11\n11\n");
    CHECK(thrown_kind([&] { parse_code(bad); }) == ErrKind::InputError);
  }
  {
    std::istringstream bad("11\nq=2\n");
    CHECK(thrown_kind([&] { parse_code(bad); }) == ErrKind::InputError);
  }
  {
    std::istringstream bad("q=2\n012\n");
    CHECK(thrown_kind([&] { parse_code(bad); }) == ErrKind::InputError);
  }
}

TEST_CASE("level sets: profile, fits, iteration order") {
  LevelSet c(2, 4);
  c.insert(parse_word("11", 2));
  c.insert(parse_word("101", 2));
  c.insert(parse_word("0000", 2));
  c.insert(parse_word("1001", 2));
  Profile p = c.profile();
  CHECK(p.alpha == std::vector<i64>{0, 1, 1, 2});
  CHECK(fits(c, p));
  CHECK(fits(c, parse_profile("q=2 alpha=0,1,1,2,0,0")));  // trailing zeros ok
  CHECK_FALSE(fits(c, parse_profile("q=2 alpha=0,1,1,1")));
  CHECK_FALSE(fits(c, parse_profile("q=3 alpha=0,1,1,2")));
  auto ws = c.words();
  REQUIRE(ws.size() == 4);
  CHECK(to_string(ws[0]) == "11");
  CHECK(to_string(ws[1]) == "101");
  CHECK(to_string(ws[2]) == "0000");
  CHECK(to_string(ws[3]) == "1001");
  c.erase(3, num(parse_word("101", 2)));
  CHECK(c.total() == 3);
  CHECK(thrown_kind([&] { c.insert(9, 0); }) == ErrKind::OutOfRange);
  CHECK(thrown_kind([] { LevelSet(2, 40); }) == ErrKind::OutOfRange);
}
