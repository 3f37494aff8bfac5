#include "fixfree/constructors.hpp"

#include <algorithm>
#include <functional>

namespace fixfree {

namespace {

// Small powers where the base may be 0 or 1 (qpow insists on base >= 2).
u64 upow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Insert `count` length-l words ascending by num, skipping the given shadow
// of the words already in c.  Words of length l never shadow each other at
// their own level, so the shadow is computed once up front.
bool fill_level(LevelSet& c, int l, i64 count, Shadow kind) {
  if (count <= 0) return true;
  Bitset sh = shadow(c, l, kind);
  i64 left = count;
  for (u64 v = sh.next_clear(0); v < sh.size() && left > 0;
       v = sh.next_clear(v + 1)) {
    c.insert(l, v);
    --left;
  }
  return left == 0;
}

// Drop the num-largest words at level l until `keep` remain.
void trim_level(LevelSet& c, int l, i64 keep) {
  i64 cur = static_cast<i64>(c.count(l));
  if (cur < keep) fail(ErrKind::Internal, "trim asked to keep more than built");
  std::vector<u64> vals;
  vals.reserve(cur);
  const Bitset& bs = c.level(l);
  for (u64 v = bs.next_set(0); v < bs.size(); v = bs.next_set(v + 1))
    vals.push_back(v);
  for (i64 i = keep; i < cur; ++i) c.erase(l, vals[i]);
}

void check_output(const LevelSet& c, const Profile& p, Freeness f,
                  const char* who) {
  if (!is_free(c, f))
    fail(ErrKind::Internal, std::string(who) + " produced a non-free code");
  if (!fits(c, p))
    fail(ErrKind::Internal, std::string(who) + " missed the profile");
}

}  // namespace

// ----- greedy builders -----

LevelSet build_prefix_free(const Profile& p) {
  p.validate();
  if (kraft_sum(p) > Rational(1))
    fail(ErrKind::KraftExceeded, "Kraft sum exceeds 1");
  LevelSet c(p.q, p.max_level());
  for (int l = 1; l <= p.max_level(); ++l)
    if (!fill_level(c, l, p.count(l), Shadow::Prefix))
      fail(ErrKind::Internal, "prefix greedy ran dry under Kraft bound");
  check_output(c, p, Freeness::Prefix, "build_prefix_free");
  return c;
}

LevelSet build_half(const Profile& p) {
  p.validate();
  if (kraft_sum(p) > Rational(1, 2))
    fail(ErrKind::KraftExceeded, "Kraft sum exceeds 1/2");
  LevelSet c(p.q, p.max_level());
  for (int l = 1; l <= p.max_level(); ++l)
    if (!fill_level(c, l, p.count(l), Shadow::Bifix))
      fail(ErrKind::Internal, "bifix greedy ran dry below 1/2");
  check_output(c, p, Freeness::Fix, "build_half");
  return c;
}

LevelSet build_spaced(const Profile& p) {
  p.validate();
  if (kraft_sum(p) > Rational(3, 4))
    fail(ErrKind::KraftExceeded, "Kraft sum exceeds 3/4");
  int prev = 0;
  for (int l = 1; l <= p.max_level(); ++l) {
    if (p.count(l) == 0) continue;
    if (prev > 0 && l < 2 * prev)
      fail(ErrKind::HypothesisNotMet,
           "populated levels " + std::to_string(prev) + " and " +
               std::to_string(l) + " are closer than doubling");
    prev = l;
  }
  LevelSet c(p.q, p.max_level());
  for (int l = 1; l <= p.max_level(); ++l)
    if (!fill_level(c, l, p.count(l), Shadow::Bifix))
      fail(ErrKind::Internal, "spaced greedy ran dry under its gap");
  check_output(c, p, Freeness::Fix, "build_spaced");
  return c;
}

LevelSet build_two_level(const Profile& p) {
  p.validate();
  if (p.populated_levels() != 2)
    fail(ErrKind::HypothesisNotMet, "profile must populate exactly two levels");
  if (kraft_sum(p) > Rational(3, 4))
    fail(ErrKind::HypothesisNotMet, "Kraft sum exceeds 3/4");
  int m = p.min_level(), n = p.max_level();
  LevelSet c(p.q, n);
  for (i64 v = 0; v < p.count(m); ++v) c.insert(m, static_cast<u64>(v));
  if (!fill_level(c, n, p.count(n), Shadow::Bifix))
    fail(ErrKind::Internal, "two-level greedy ran dry despite the bound");
  check_output(c, p, Freeness::Fix, "build_two_level");
  return c;
}

namespace detail {

u64 two_level_free_count(int q, int m, int n, i64 alpha_m) {
  if (q < 2 || m < 1 || n <= m || alpha_m < 0 ||
      u64(alpha_m) > qpow(q, m))
    fail(ErrKind::OutOfRange, "two_level_free_count arguments");
  u64 am = static_cast<u64>(alpha_m);
  u64 pn = qpow(q, n);
  u64 inter;
  if (n >= 2 * m) {
    inter = am * am * qpow(q, n - 2 * m);
  } else {
    // Pairs (x, y) of num-least words whose overlap window matches: x's last
    // r digits must equal y's first r digits, r = 2m - n.  Walking x over
    // 0..am-1 cycles the residue x mod q^r, and the number of y below am
    // with a given leading block t is min(max(am - t q^(m-r), 0), q^(m-r)).
    u64 pr = qpow(q, 2 * m - n);   // q^r
    u64 blk = qpow(q, n - m);      // q^(m-r)
    inter = (am / pr) * am + std::min(am, (am % pr) * blk);
  }
  return pn - 2 * am * qpow(q, n - m) + inter;
}

}  // namespace detail

// ----- bounded-levels builder -----

LevelSet build_bounded(const Profile& p) {
  p.validate();
  if (kraft_sum(p) > Rational(3, 4))
    fail(ErrKind::HypothesisNotMet, "Kraft sum exceeds 3/4");
  const int lmin = p.min_level();
  const int lmax = p.max_level();
  if (lmin == 0) return LevelSet(p.q, 0);
  if (lmin < 2)
    fail(ErrKind::HypothesisNotMet, "profile populated at level 1");
  const int q = p.q;
  const int fx = q / 2;       // |X|, the letters 0..fx-1
  const int cy = q - fx;      // |Y|, the letters fx..q-1
  LevelSet code(q, lmax);     // also guards against oversized universes

  auto cap_at = [&](int l) -> u64 {
    return qpow(q, lmin - 2) * u64(fx) * u64(fx) * upow(u64(cy), l - lmin);
  };
  for (int l = lmin; l < lmax; ++l)
    if (static_cast<u64>(p.count(l)) > cap_at(l))
      fail(ErrKind::HypothesisNotMet,
           "count at level " + std::to_string(l) + " exceeds its cap");

  const u64 wlen_pow = qpow(q, lmin - 2);  // free-suffix choices |A^(lmin-2)|

  // Base level lmax: D1 = Y A^(lmax-lmin) Y A^(lmin-2), D2 = X Y^(lmax-lmin)
  // A^(lmin-1).  They are disjoint (first letter) and, with the short words
  // below, carry Kraft mass at least 3/4.
  for (int y1 = fx; y1 < q; ++y1)
    for (u64 mid = 0; mid < qpow(q, lmax - lmin); ++mid)
      for (int y2 = fx; y2 < q; ++y2)
        for (u64 w = 0; w < wlen_pow; ++w) {
          u64 v = ((u64(y1) * qpow(q, lmax - lmin) + mid) * q + y2) * wlen_pow + w;
          code.insert(lmax, v);
        }
  {
    u64 yc = upow(u64(cy), lmax - lmin);
    for (int x = 0; x < fx; ++x)
      for (u64 iy = 0; iy < yc; ++iy) {
        u64 head = x;
        u64 t = iy;
        std::vector<int> dig(lmax - lmin);
        for (int d = lmax - lmin - 1; d >= 0; --d) {
          dig[d] = static_cast<int>(t % cy);
          t /= cy;
        }
        for (int d = 0; d < lmax - lmin; ++d) head = head * q + (fx + dig[d]);
        for (u64 w = 0; w < qpow(q, lmin - 1); ++w) {
          u64 v = head * qpow(q, lmin - 1) + w;
          if (code.test(lmax, v))
            fail(ErrKind::Internal, "base blocks overlap");
          code.insert(lmax, v);
        }
      }
  }

  // Short levels: all words x1 y x2 w with y in Y^(l-lmin), w in A^(lmin-2).
  // Each level keeps alpha_l of them; the deleted ones are exchanged for
  // length-lmax words, q^(lmax-l) per deletion, chosen so that each new word
  // has its only prefix (or suffix) inside the deleted set and none on the
  // other side.
  struct BWord {
    u64 val;
    bool form1;  // the letter at absolute position lmax-lmin+2 lies in Y
  };
  auto gen_level = [&](int l) {
    std::vector<BWord> out;
    int ylen = l - lmin;
    int wlen = lmin - 2;
    int j = lmax - l;  // constrained index inside w (1-based), if in range
    u64 yc = upow(u64(cy), ylen);
    out.reserve(u64(fx) * yc * u64(fx) * wlen_pow);
    std::vector<int> dig(ylen);
    for (int x1 = 0; x1 < fx; ++x1)
      for (u64 iy = 0; iy < yc; ++iy) {
        u64 t = iy;
        for (int d = ylen - 1; d >= 0; --d) {
          dig[d] = static_cast<int>(t % cy);
          t /= cy;
        }
        u64 head = x1;
        for (int d = 0; d < ylen; ++d) head = head * q + (fx + dig[d]);
        for (int x2 = 0; x2 < fx; ++x2)
          for (u64 w = 0; w < wlen_pow; ++w) {
            bool f1 = false;
            if (j >= 1 && j <= wlen)
              f1 = static_cast<int>((w / qpow(q, wlen - j)) % q) >= fx;
            out.push_back({(head * q + u64(x2)) * wlen_pow + w, f1});
          }
      }
    return out;  // ascending num by construction
  };

  auto put_top = [&](u64 v) {
    if (code.test(lmax, v))
      fail(ErrKind::Internal, "replacement words collide");
    code.insert(lmax, v);
  };

  for (int l = lmin; l < lmax; ++l) {
    std::vector<BWord> words = gen_level(l);
    u64 cap = cap_at(l);
    if (words.size() != cap) fail(ErrKind::Internal, "short level miscounted");
    u64 del = cap - static_cast<u64>(p.count(l));
    std::vector<u64> deleted;       // nums of removed words
    std::vector<u64> deleted_f1;    // the form1 subset (steps 2/3)
    bool step1 = l <= lmax - lmin + 1;
    if (step1 || del == 0) {
      // Step 1: any surplus word works; drop the num-least ones.
      for (u64 i = 0; i < words.size(); ++i) {
        if (i < del)
          deleted.push_back(words[i].val);
        else
          code.insert(l, words[i].val);
      }
    } else {
      // Here lmax-lmin+2 <= l < lmax forces lmin >= 3.
      u64 beta = qpow(q, lmin - 3) * u64(fx) * u64(fx) * u64(fx) *
                 upow(u64(cy), l - lmin);
      bool step2 = static_cast<u64>(p.count(l)) >= beta;
      u64 f2_del = step2 ? 0 : beta - static_cast<u64>(p.count(l));
      u64 f1_del = step2 ? del : cap - beta;  // all form1 words in step 3
      for (const BWord& bw : words) {
        bool drop;
        if (bw.form1) {
          drop = f1_del > 0;
          if (drop) --f1_del;
        } else {
          drop = f2_del > 0;
          if (drop) --f2_del;
        }
        if (drop) {
          deleted.push_back(bw.val);
          if (bw.form1) deleted_f1.push_back(bw.val);
        } else {
          code.insert(l, bw.val);
        }
      }
      if (f1_del != 0 || f2_del != 0)
        fail(ErrKind::Internal, "exchange shapes exhausted");
      if (!step2) {
        // Step 3 replaces every deletion by its suffix set and each form1
        // deletion additionally by its full prefix block.
        for (u64 v : deleted)
          for (int ys = fx; ys < q; ++ys)
            for (u64 m2 = 0; m2 < qpow(q, lmax - l - 1); ++m2)
              put_top((u64(ys) * qpow(q, lmax - l - 1) + m2) * qpow(q, l) + v);
        for (u64 v : deleted_f1)
          for (u64 u = 0; u < qpow(q, lmax - l); ++u)
            put_top(v * qpow(q, lmax - l) + u);
        continue;
      }
      // Step 2: per deletion, the full suffix set Y A^(lmax-l-1) v plus the
      // prefix words v X A^(lmax-l-1).
      for (u64 v : deleted) {
        for (int ys = fx; ys < q; ++ys)
          for (u64 m2 = 0; m2 < qpow(q, lmax - l - 1); ++m2)
            put_top((u64(ys) * qpow(q, lmax - l - 1) + m2) * qpow(q, l) + v);
        for (int d = 0; d < fx; ++d)
          for (u64 u = 0; u < qpow(q, lmax - l - 1); ++u)
            put_top(v * qpow(q, lmax - l) + u64(d) * qpow(q, lmax - l - 1) + u);
      }
      continue;
    }
    // Step 1 replacements: per deletion v, all of v A^(lmax-lmin-l+1) Y
    // A^(lmin-2) (prefix side) and the first floor(q/2) leading Y letters of
    // Y A^(lmax-l-1) v (suffix side), q^(lmax-l) words in total.
    int e1 = lmax - lmin - l + 1;
    for (u64 v : deleted) {
      for (u64 u = 0; u < qpow(q, e1); ++u)
        for (int ys = fx; ys < q; ++ys)
          for (u64 w = 0; w < wlen_pow; ++w)
            put_top(((v * qpow(q, e1) + u) * q + ys) * wlen_pow + w);
      for (int d = fx; d < fx + fx; ++d)
        for (u64 m2 = 0; m2 < qpow(q, lmax - l - 1); ++m2)
          put_top((u64(d) * qpow(q, lmax - l - 1) + m2) * qpow(q, l) + v);
    }
  }

  if (static_cast<i64>(code.count(lmax)) < p.count(lmax))
    fail(ErrKind::Internal, "top level fell short of the profile");
  trim_level(code, lmax, p.count(lmax));
  check_output(code, p, Freeness::Fix, "build_bounded");
  return code;
}

// ----- block decompositions (5/8 binary, 4/9 ternary) -----

namespace {

// Split a profile with Kraft sum equal to sum(budgets) into one profile per
// block, filling blocks strictly in order: each level's words go to the
// first block with budget left.  Budgets only empty exactly (every budget is
// a multiple of q^-l by the time level l is reached), which is what makes
// the split unique and gives it the cascade shape.
std::vector<Profile> block_split(const Profile& p,
                                 const std::vector<Rational>& budgets) {
  int lmax = p.max_level();
  std::vector<Profile> out(budgets.size());
  for (auto& b : out) {
    b.q = p.q;
    b.alpha.assign(lmax, 0);
  }
  if (p.count(1) != 0)
    fail(ErrKind::Internal, "block split fed a level-1 word");
  std::vector<Rational> rem = budgets;
  for (int l = 2; l <= lmax; ++l) {
    i64 left = p.count(l);
    i64 pl = static_cast<i64>(qpow(p.q, l));
    for (std::size_t b = 0; b < rem.size() && left > 0; ++b) {
      Rational cap = rem[b] * Rational(pl);
      i64 t = cap.num / cap.den;  // floor; cap >= 0
      i64 take = std::min(left, t);
      if (take > 0) {
        out[b].alpha[l - 1] = take;
        rem[b] = rem[b] - Rational(take, pl);
        left -= take;
      }
    }
    if (left > 0)
      fail(ErrKind::Internal, "block budgets cannot absorb the level");
  }
  for (const Rational& r : rem)
    if (!(r == Rational(0)))
      fail(ErrKind::Internal, "block budgets not exactly consumed");
  return out;
}

// Place block counts: beta[a*q+b] words of each length l inside a A^(l-2) b,
// ascending and outside the bifix shadow of the shorter words.
LevelSet place_blocks(const Profile& padded,
                      const std::vector<Profile>& betas) {
  int q = padded.q;
  int lmax = padded.max_level();
  LevelSet c(q, lmax);
  for (int l = 2; l <= lmax; ++l) {
    Bitset sh = shadow(c, l, Shadow::Bifix);
    for (std::size_t b = 0; b < betas.size(); ++b) {
      i64 cnt = betas[b].count(l);
      if (cnt == 0) continue;
      u64 a = b / q, z = b % q;
      for (u64 u = 0; u < qpow(q, l - 2) && cnt > 0; ++u) {
        u64 v = a * qpow(q, l - 1) + u * q + z;
        if (sh.test(v)) continue;
        c.insert(l, v);
        --cnt;
      }
      if (cnt > 0)
        fail(ErrKind::Internal, "block ran out of shadow-free room");
    }
  }
  return c;
}

}  // namespace

namespace detail {

Profile pad_to(const Profile& p, const Rational& target) {
  Rational s = kraft_sum(p);
  if (s > target)
    fail(ErrKind::PreconditionViolated, "profile already above the target");
  if (s == target) return p;
  Rational deficit = target - s;
  // Depth 3 keeps padding out of the capped first two levels and makes every
  // block budget an integer number of words at the padding level.
  int d = std::max(p.max_level(), 3);
  Rational scaled;
  for (;; ++d) {
    if (d > 200) fail(ErrKind::Internal, "padding depth ran away");
    scaled = deficit * Rational(static_cast<i64>(qpow(p.q, d)));
    if (scaled.den == 1) break;
  }
  Profile out = p;
  out.alpha.resize(d, 0);
  out.alpha[d - 1] += scaled.num;
  out.validate();
  return out;
}

std::array<Profile, 9> ternary_decompose(const Profile& p) {
  p.validate();
  if (p.q != 3)
    fail(ErrKind::HypothesisNotMet, "nine-block split is for q=3");
  if (p.count(1) != 0)
    fail(ErrKind::HypothesisNotMet, "level 1 must be empty");
  if (p.count(2) > 1)
    fail(ErrKind::HypothesisNotMet, "at most one word of length 2");
  if (!(kraft_sum(p) == Rational(4, 9)))
    fail(ErrKind::HypothesisNotMet, "Kraft sum must equal 4/9 exactly");
  std::vector<Rational> budgets;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      budgets.push_back(a == b ? Rational(3 - a, 27) : Rational(1, 27));
  std::vector<Profile> v = block_split(p, budgets);
  std::array<Profile, 9> out;
  std::copy_n(v.begin(), 9, out.begin());
  return out;
}

}  // namespace detail

std::array<Profile, 4> beta_decompose(const Profile& p) {
  p.validate();
  if (p.q != 2)
    fail(ErrKind::HypothesisNotMet, "four-block split is for q=2");
  if (p.count(1) != 0)
    fail(ErrKind::HypothesisNotMet, "level 1 must be empty");
  if (p.count(2) >= 2)
    fail(ErrKind::HypothesisNotMet, "at most one word of length 2");
  if (!(kraft_sum(p) == Rational(5, 8)))
    fail(ErrKind::HypothesisNotMet, "Kraft sum must equal 5/8 exactly");
  std::vector<Profile> v = block_split(
      p, {Rational(1, 4), Rational(1, 8), Rational(1, 8), Rational(1, 8)});
  std::array<Profile, 4> out;
  std::copy_n(v.begin(), 4, out.begin());
  return out;
}

LevelSet build_58_binary(const Profile& p) {
  p.validate();
  if (p.q != 2)
    fail(ErrKind::HypothesisNotMet, "builder is for q=2");
  if (kraft_sum(p) > Rational(5, 8))
    fail(ErrKind::KraftExceeded, "Kraft sum exceeds 5/8");
  if (p.count(1) >= 1 || p.count(2) >= 2)
    return build_first_two_levels(p, 1);  // mass 1/2 sits on the first levels
  Profile padded = detail::pad_to(p, Rational(5, 8));
  std::array<Profile, 4> betas = beta_decompose(padded);
  LevelSet c =
      place_blocks(padded, std::vector<Profile>(betas.begin(), betas.end()));
  int d = padded.max_level();
  if (padded.count(d) != p.count(d)) trim_level(c, d, p.count(d));
  check_output(c, p, Freeness::Fix, "build_58_binary");
  return c;
}

LevelSet build_ternary_blocks(const Profile& p) {
  p.validate();
  if (p.q != 3)
    fail(ErrKind::HypothesisNotMet, "builder is for q=3");
  if (p.count(1) != 0)
    fail(ErrKind::HypothesisNotMet, "level 1 must be empty");
  if (p.count(2) > 1)
    fail(ErrKind::HypothesisNotMet, "at most one word of length 2");
  if (kraft_sum(p) > Rational(4, 9))
    fail(ErrKind::HypothesisNotMet, "Kraft sum exceeds 4/9");
  Profile padded = detail::pad_to(p, Rational(4, 9));
  std::array<Profile, 9> betas = detail::ternary_decompose(padded);
  LevelSet c =
      place_blocks(padded, std::vector<Profile>(betas.begin(), betas.end()));
  int d = padded.max_level();
  if (padded.count(d) != p.count(d)) trim_level(c, d, p.count(d));
  check_output(c, p, Freeness::Fix, "build_ternary_blocks");
  return c;
}

// ----- quaternary lift -----

namespace detail {

LevelSet lift_code(const LevelSet& quaternary) {
  if (quaternary.q() != 4)
    fail(ErrKind::OutOfRange, "lift expects a quaternary code");
  LevelSet out(2, 2 * quaternary.max_level());
  quaternary.for_each([&](const Word& w) {
    out.insert(2 * w.len, w.val);  // two bits per letter keep num intact
  });
  return out;
}

}  // namespace detail

LevelSet lift_from_quaternary(const Profile& p) {
  p.validate();
  if (p.q != 2)
    fail(ErrKind::HypothesisNotMet, "lift starts from a binary profile");
  for (int l = 1; l <= p.max_level(); l += 2)
    if (p.count(l) != 0)
      fail(ErrKind::HypothesisNotMet, "profile populated at an odd level");
  if (p.total() == 0) return LevelSet(2, 0);
  Profile h;
  h.q = 4;
  h.alpha.assign(p.max_level() / 2, 0);
  for (int l = 2; l <= p.max_level(); l += 2)
    h.alpha[l / 2 - 1] = p.count(l);
  Rational s = kraft_sum(h);

  LevelSet d4(4, 0);
  bool made = false;
  // Chain system: levels 2..n-1 exactly full (2^l words), level n at least
  // 2^(n+1); the mirrored variant starts at level 3 with 2^(l+1) and needs
  // 2^(n+2) at the top.  n is the first level deviating from the pattern.
  if (s <= Rational(3, 4) && h.count(1) == 0) {
    int n = 2;
    while (h.count(n) == static_cast<i64>(qpow(2, n))) ++n;
    if (n >= 2 && h.count(n) >= static_cast<i64>(qpow(2, n + 1))) {
      try {
        d4 = pi_extend(detail::chain_pi(4, n, 2, 2), h);
        made = true;
      } catch (const Error&) {
      }
    }
  }
  if (!made && s <= Rational(3, 4) && h.count(1) == 0 && h.count(2) == 0) {
    int n = 3;
    while (h.count(n) == static_cast<i64>(qpow(2, n + 1))) ++n;
    if (h.count(n) >= static_cast<i64>(qpow(2, n + 2))) {
      try {
        d4 = pi_extend(detail::chain_pi_mirrored(4, n, 2, 2), h);
        made = true;
      } catch (const Error&) {
      }
    }
  }
  if (!made) {
    try {
      d4 = build_first_two_levels(h, 2);
      made = true;
    } catch (const Error&) {
    }
  }
  if (!made) {
    try {
      d4 = build_bounded(h);
      made = true;
    } catch (const Error&) {
    }
  }
  if (!made)
    fail(ErrKind::HypothesisNotMet,
         "no quaternary route applies to the halved profile");
  LevelSet c = detail::lift_code(d4);
  check_output(c, p, Freeness::Fix, "lift_from_quaternary");
  return c;
}

// ----- exact Kraft sum -----

LevelSet build_exact_kraftsum(int q, const Rational& gamma_target) {
  if (q < 2) fail(ErrKind::OutOfRange, "alphabet size must be at least 2");
  if (!(gamma_target > Rational(0)) || gamma_target > Rational(1))
    fail(ErrKind::OutOfRange, "target must lie in (0, 1]");
  if (gamma_target == Rational(1)) {
    LevelSet c(q, 1);
    for (int a = 0; a < q; ++a) c.insert(1, static_cast<u64>(a));
    return c;
  }
  // Base-q digits of the target; the denominator must be q-smooth.
  {
    i64 d = gamma_target.den;
    while (d > 1) {
      i64 g = std::gcd(d, static_cast<i64>(q));
      if (g == 1)
        fail(ErrKind::InfiniteExpansion,
             "target has no finite base-" + std::to_string(q) + " expansion");
      d /= g;
    }
  }
  std::vector<int> beta;  // beta[l-1] = l-th digit
  {
    Rational r = gamma_target;
    while (!(r == Rational(0))) {
      r = r * Rational(q);
      i64 dig = r.num / r.den;
      beta.push_back(static_cast<int>(dig));
      r = r - Rational(dig);
    }
  }
  const int b1 = beta[0];
  const int nb = std::max(b1, 1);  // middle letters 0..nb-1
  const int ne = q - nb;           // end letters nb..q-1
  if (ne < 1) fail(ErrKind::Internal, "no end letters below target 1");

  // How many words each level takes: sweep the digits with a carry, capped
  // by the level pool ne^2 * nb^(l-2).  The pool eventually outruns the
  // carry, but possibly only past the materializable depth.
  int lcap = 1;
  while (qpow(q, lcap + 1) <= LevelSet::kDefaultLevelCap &&
         qpow(q, lcap + 1) <= (u64(1) << 62) / q)
    ++lcap;
  std::vector<u64> take(1, static_cast<u64>(b1));  // take[0] = level-1 words
  u64 carry = 0;
  u64 pool = u64(ne) * u64(ne);  // pool at the current level (l >= 2)
  for (int l = 2;; ++l) {
    u64 digit = l <= static_cast<int>(beta.size()) ? u64(beta[l - 1]) : 0;
    u64 want = digit + u64(q) * carry;
    if (want == 0 && l > static_cast<int>(beta.size())) break;
    if (l > lcap)
      fail(ErrKind::OutOfRange,
           "finite code exists but exceeds the supported depth");
    u64 t = std::min(want, pool);
    take.push_back(t);
    carry = want - t;
    if (pool <= (u64(1) << 62) / std::max(nb, 1)) pool *= u64(nb);
    if (carry == 0 && l >= static_cast<int>(beta.size())) break;
  }

  auto realize = [&](const std::vector<u64>& t) {
    LevelSet c(q, static_cast<int>(t.size()));
    for (u64 a = 0; a < t[0]; ++a) c.insert(1, a);
    for (int l = 2; l <= static_cast<int>(t.size()); ++l) {
      u64 leftover = t[l - 1];
      u64 mids = upow(u64(nb), l - 2);
      for (int d1 = nb; d1 < q && leftover > 0; ++d1)
        for (u64 m = 0; m < mids && leftover > 0; ++m) {
          // middle digits are already letters (0..nb-1); spread them base q
          u64 head = u64(d1);
          u64 rest = m;
          std::vector<int> dig(l - 2);
          for (int i = l - 3; i >= 0; --i) {
            dig[i] = static_cast<int>(rest % nb);
            rest /= nb;
          }
          for (int i = 0; i < l - 2; ++i) head = head * q + dig[i];
          for (int d2 = nb; d2 < q && leftover > 0; ++d2) {
            c.insert(l, head * q + u64(d2));
            --leftover;
          }
        }
      if (leftover > 0)
        fail(ErrKind::Internal, "level pool smaller than planned");
    }
    return c;
  };

  LevelSet c = realize(take);
  if (!(kraft_sum(c) == gamma_target)) {
    // The carry sweep is expected to land exactly; as a safety net, search
    // the per-level take counts directly within the same word family.
    std::vector<u64> alt(take.size(), 0);
    alt[0] = static_cast<u64>(b1);
    std::function<bool(int, Rational)> dfs = [&](int l, Rational rem) {
      if (rem == Rational(0)) {
        for (std::size_t i = l - 1; i < alt.size(); ++i) alt[i] = 0;
        return true;
      }
      if (l > static_cast<int>(alt.size())) return false;
      i64 pl = static_cast<i64>(qpow(q, l));
      Rational cap = rem * Rational(pl);
      i64 most = std::min<i64>(cap.num / cap.den,
                               static_cast<i64>(upow(u64(nb), l - 2)) * ne * ne);
      for (i64 t2 = most; t2 >= 0; --t2) {
        alt[l - 1] = static_cast<u64>(t2);
        if (dfs(l + 1, rem - Rational(t2, pl))) return true;
      }
      return false;
    };
    if (!dfs(2, gamma_target - Rational(b1, q)))
      fail(ErrKind::Internal, "exact-sum selection failed");
    c = realize(alt);
    if (!(kraft_sum(c) == gamma_target))
      fail(ErrKind::Internal, "exact-sum selection failed");
  }
  if (!is_free(c, Freeness::Fix))
    fail(ErrKind::Internal, "family code is not fix-free");
  return c;
}

// ----- first two levels via pi-systems -----

LevelSet build_first_two_levels(const Profile& p, int k) {
  p.validate();
  if (k < 1 || k >= p.q)
    fail(ErrKind::OutOfRange, "block count k must satisfy 1 <= k < q");
  int n = p.min_level();
  if (n == 0)
    fail(ErrKind::HypothesisNotMet, "profile is empty");
  if (kraft_sum(p) > gamma(p.q, k))
    fail(ErrKind::HypothesisNotMet, "Kraft sum exceeds gamma(q,k)");
  const int q = p.q;
  Rational mass = Rational(p.count(n), static_cast<i64>(qpow(q, n))) +
                  Rational(p.count(n + 1), static_cast<i64>(qpow(q, n + 1)));
  if (mass < Rational(k, q))
    fail(ErrKind::HypothesisNotMet,
         "first two populated levels carry less than k/q");
  if (p.count(n) >= static_cast<i64>(k * qpow(q, n - 1)))
    return pi_extend(one_level_pi(q, n, k), p);
  if (p.count(n) % k != 0)
    fail(ErrKind::HypothesisNotMet,
         "short level count is not a multiple of k");
  u64 L = static_cast<u64>(p.count(n) / k);
  PiResult r = two_level_pi(q, n + 1, k, L);
  if (r.status == PiResult::Status::Impossible)
    fail(ErrKind::HypothesisNotMet,
         "no k-regular subgraph with the required vertex count");
  if (r.status == PiResult::Status::Unsupported)
    fail(ErrKind::Unsupported, "subgraph search exceeded its budget");
  return pi_extend(r.system, p);
}

// ----- dispatcher -----

ConstructResult construct(const Profile& p, const SearchBudget& b) {
  p.validate();
  ConstructResult res;
  Rational s = kraft_sum(p);
  res.report.notes.push_back("kraft=" + s.str());

  if (s > Rational(1)) {
    res.verdict = ConstructResult::Verdict::Nonexistent;
    res.report.tag = "kraft_necessity";
    res.report.notes.push_back(
        "Kraft sum exceeds 1: even a prefix-free code is impossible");
    return res;
  }

  auto attempt = [&](const char* tag, auto&& fn) {
    try {
      LevelSet c = fn();
      check_output(c, p, Freeness::Fix, tag);
      res.verdict = ConstructResult::Verdict::Found;
      res.report.tag = tag;
      res.report.code = std::move(c);
      return true;
    } catch (const Error& e) {
      res.report.notes.push_back(std::string("tried ") + tag + ": " + e.what());
      return false;
    }
  };

  if (s <= Rational(1, 2)) {
    if (attempt("half", [&] { return build_half(p); })) return res;
  }
  if (p.populated_levels() == 2 && s <= Rational(3, 4)) {
    if (attempt("two_level", [&] { return build_two_level(p); })) return res;
  }
  {
    bool gap = true;
    int prev = 0;
    for (int l = 1; l <= p.max_level(); ++l) {
      if (p.count(l) == 0) continue;
      if (prev > 0 && l < 2 * prev) gap = false;
      prev = l;
    }
    if (gap && prev > 0 && s <= Rational(3, 4)) {
      if (attempt("spaced", [&] { return build_spaced(p); })) return res;
    }
  }
  {
    bool ok = p.min_level() >= 2 && s <= Rational(3, 4);
    if (ok) {
      try {
        int lmin = p.min_level(), q = p.q;
        for (int l = lmin; l < p.max_level(); ++l)
          if (static_cast<u64>(p.count(l)) > qpow(q, lmin - 2) * u64(q / 2) *
                                                 u64(q / 2) *
                                                 upow(u64(q - q / 2), l - lmin))
            ok = false;
      } catch (const Error&) {
        ok = false;
      }
      if (ok && attempt("bounded", [&] { return build_bounded(p); }))
        return res;
    }
  }
  {
    int n = p.min_level();
    if (n > 0) {
      for (int k = (p.q + 1) / 2; k >= 1; --k) {
        if (s > gamma(p.q, k)) continue;
        Rational mass =
            Rational(p.count(n), static_cast<i64>(qpow(p.q, n))) +
            Rational(p.count(n + 1), static_cast<i64>(qpow(p.q, n + 1)));
        if (mass < Rational(k, p.q)) continue;
        if (attempt("first_two_levels",
                    [&] { return build_first_two_levels(p, k); }))
          return res;
      }
    }
  }
  if (p.q == 2 && s <= Rational(5, 8)) {
    if (attempt("58_binary", [&] { return build_58_binary(p); })) return res;
  }
  if (p.q == 2) {
    bool even_only = p.total() > 0;
    for (int l = 1; l <= p.max_level(); l += 2)
      if (p.count(l) != 0) even_only = false;
    if (even_only &&
        attempt("quaternary_lift", [&] { return lift_from_quaternary(p); }))
      return res;
  }
  try {
    SearchResult sr = search(p, b);
    res.report.notes.push_back("search nodes=" + std::to_string(sr.nodes));
    if (sr.verdict == SearchResult::Verdict::Found) {
      res.verdict = ConstructResult::Verdict::Found;
      res.report.tag = "search";
      res.report.code = std::move(*sr.witness);
    } else if (sr.verdict == SearchResult::Verdict::Nonexistent) {
      res.verdict = ConstructResult::Verdict::Nonexistent;
      res.report.tag = "search";
    } else {
      res.verdict = ConstructResult::Verdict::Unknown;
      res.report.tag = "search";
      res.report.notes.push_back("search budget exhausted");
    }
  } catch (const Error& e) {
    res.verdict = ConstructResult::Verdict::Unknown;
    res.report.tag = "none";
    res.report.notes.push_back(std::string("search unavailable: ") + e.what());
  }
  return res;
}

}  // namespace fixfree
