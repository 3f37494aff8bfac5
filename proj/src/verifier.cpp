#include "fixfree/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace fixfree {

// ----- budgets -----

SearchBudget default_budget() {
  SearchBudget b;
  if (const char* env = std::getenv("FIXFREE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.max_nodes = v;
  }
  return b;
}

// ----- exhaustive search -----

namespace {

// Universes larger than this per level are out of scope for enumeration;
// matches the LevelSet default cap so the two limits fail the same way.
constexpr u64 kSearchLevelCap = u64(1) << 26;

struct Delta {
  std::vector<u64> sn, ov;
};

struct Searcher {
  int q = 2;
  std::vector<int> lv;    // populated levels, ascending
  std::vector<i64> need;  // alpha at those levels
  std::vector<u64> cap;   // q^level
  u64 budget = 0;
  u64 nodes = 0;
  bool out_of_budget = false;
  std::vector<Word> chosen;
  // Exact shadow bookkeeping per populated level L: the bifix shadow of the
  // (fix-free) partial code has size 2*sn - ov there, with
  //   sn[t] = sum over chosen x of q^(L-|x|)
  //   ov[t] = sum over ordered pairs (x,y) of chosen words of |I_L(x,y)|.
  std::vector<u64> sn, ov;
  std::vector<std::vector<int>> perms;  // digit relabelings, identity first
  std::optional<LevelSet> witness;

  void init_perms() {
    std::vector<int> p(q);
    std::iota(p.begin(), p.end(), 0);
    if (q <= 5) {
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    } else {
      perms.push_back(p);  // factorial blowup; reversal alone still sound
    }
  }

  // True when no alphabet relabeling and/or reversal sends w to a smaller num.
  bool orbit_least(const Word& w) const {
    for (int flip = 0; flip < 2; ++flip) {
      Word b = flip ? reversed(w) : w;
      for (const auto& pm : perms) {
        u64 v = 0;
        for (int i = 0; i < b.len; ++i) v = v * q + pm[letter(b, i)];
        if (v < w.val) return false;
      }
    }
    return true;
  }

  Delta push(const Word& w) {
    Delta d;
    d.sn.assign(lv.size(), 0);
    d.ov.assign(lv.size(), 0);
    for (std::size_t t = 0; t < lv.size(); ++t) {
      if (lv[t] < w.len) continue;
      d.sn[t] = qpow(q, lv[t] - w.len);
      u64 o = overlap_count(w, w, lv[t]);
      for (const Word& x : chosen)
        o += overlap_count(x, w, lv[t]) + overlap_count(w, x, lv[t]);
      d.ov[t] = o;
      sn[t] += d.sn[t];
      ov[t] += d.ov[t];
    }
    chosen.push_back(w);
    return d;
  }

  void pop(const Delta& d) {
    chosen.pop_back();
    for (std::size_t t = 0; t < lv.size(); ++t) {
      sn[t] -= d.sn[t];
      ov[t] -= d.ov[t];
    }
  }

  // Exact count of shadow-free words the partial code leaves at level index
  // t; adding words only shrinks it, so falling short of need[t] is final.
  bool starved(std::size_t from) const {
    for (std::size_t t = from; t < lv.size(); ++t)
      if (cap[t] + ov[t] - 2 * sn[t] < u64(need[t])) return true;
    return false;
  }

  Bitset free_words(int L, u64 n) const {
    Bitset sh(n);
    for (const Word& x : chosen) {
      u64 blk = qpow(q, L - x.len);
      sh.set_range(x.val * blk, (x.val + 1) * blk);
      u64 step = qpow(q, x.len);
      for (u64 h = 0; h < blk; ++h) sh.set(h * step + x.val);
    }
    Bitset fr(n);
    fr.fill();
    fr.and_not(sh);
    return fr;
  }

  bool level(std::size_t t) {
    if (t == lv.size()) {
      LevelSet ws(q, lv.back());
      for (const Word& w : chosen) ws.insert(w);
      witness = std::move(ws);
      return true;
    }
    Bitset fr = free_words(lv[t], cap[t]);
    std::vector<u64> idx;
    idx.reserve(fr.count());
    for (u64 i = fr.next_set(0); i < fr.size(); i = fr.next_set(i + 1))
      idx.push_back(i);
    return choose(t, idx, static_cast<std::size_t>(need[t]), idx.size());
  }

  // Pick r of idx[0..bound), largest first, each slot's loop ascending; the
  // resulting subset order is colex over the num-ascending candidate list.
  bool choose(std::size_t t, const std::vector<u64>& idx, std::size_t r,
              std::size_t bound) {
    if (r == 0) return level(t + 1);
    if (bound < r) return false;
    for (std::size_t i = r - 1; i < bound; ++i) {
      Word w = make_word(q, lv[t], idx[i]);
      // The last slot picks the subset's num-least word; at the first
      // populated level that word may be normalized to its orbit minimum.
      if (t == 0 && r == 1 && !orbit_least(w)) continue;
      if (++nodes > budget) {
        out_of_budget = true;
        return false;
      }
      Delta d = push(w);
      bool ok = !starved(t + 1) && choose(t, idx, r - 1, i);
      pop(d);
      if (ok) return true;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

SearchResult search(const Profile& p, const SearchBudget& b) {
  p.validate();
  SearchResult res;
  Searcher s;
  s.q = p.q;
  for (int l = 1; l <= static_cast<int>(p.alpha.size()); ++l)
    if (p.count(l) > 0) {
      s.lv.push_back(l);
      s.need.push_back(p.count(l));
      u64 c = qpow(p.q, l);
      if (c > kSearchLevelCap)
        fail(ErrKind::Unsupported,
             "search universe at level " + std::to_string(l) +
                 " exceeds the enumeration cap");
      s.cap.push_back(c);
    }
  if (s.lv.empty()) {
    res.verdict = SearchResult::Verdict::Found;
    res.witness = LevelSet(p.q, 0);
    return res;
  }
  s.budget = b.max_nodes;
  s.sn.assign(s.lv.size(), 0);
  s.ov.assign(s.lv.size(), 0);
  s.init_perms();
  bool found = !s.starved(0) && s.level(0);
  res.nodes = s.nodes;
  if (found) {
    res.verdict = SearchResult::Verdict::Found;
    res.witness = std::move(s.witness);
  } else if (s.out_of_budget) {
    res.verdict = SearchResult::Verdict::Unknown;
  } else {
    res.verdict = SearchResult::Verdict::Nonexistent;
  }
  return res;
}

// ----- counterexample profiles -----

Counterexample counterexample(int q, Rational epsilon) {
  if (q < 2) fail(ErrKind::OutOfRange, "alphabet size must be at least 2");
  if (!(epsilon > Rational(0)))
    fail(ErrKind::OutOfRange, "epsilon must be positive");
  // Above 1/2 the minimal-m rule would let the two levels carry more than a
  // full Kraft unit (trivially nonexistent, so worthless as a certificate);
  // at or below 1/2, minimality forces q^m >= 5 and the sum stays under 1.
  if (epsilon > Rational(1, 2)) epsilon = Rational(1, 2);

  Counterexample ce;
  ce.q = q;
  ce.epsilon = epsilon;

  // Smallest m with eps * q^m > 2: both level masses then undershoot their
  // (1 + eps)/2 resp. (1 + 2 eps)/4 targets even after rounding up.
  int m = 1;
  while (!(epsilon * Rational(static_cast<i64>(qpow(q, m))) > Rational(2)))
    ++m;
  u64 pm = qpow(q, m);
  i64 am = static_cast<i64>(pm / 2 + 1);  // least alpha_m with q^m < 2 alpha_m

  int n = 2 * m;
  while (!(Rational(2) * epsilon * Rational(static_cast<i64>(qpow(q, n))) >
           Rational(4)))
    ++n;
  u64 pn = qpow(q, n);
  i64 an = static_cast<i64>(pn / 4 + 1);  // least alpha_n with q^n < 4 alpha_n

  ce.m = m;
  ce.n = n;
  ce.alpha_m = am;
  ce.alpha_n = an;
  ce.capacity = pn;
  // n >= 2m, so every ordered pair of length-m words overlaps at level n in
  // exactly q^(n-2m) words; the shadow size is choice-independent.
  ce.shadowed = 2 * u64(am) * qpow(q, n - m) - u64(am) * u64(am) * qpow(q, n - 2 * m);
  ce.needed = ce.shadowed + u64(an);
  ce.holds = ce.needed > ce.capacity;

  Profile p;
  p.q = q;
  p.alpha.assign(n, 0);
  p.alpha[m - 1] = am;
  p.alpha[n - 1] = an;
  ce.profile = p;
  ce.kraft = kraft_sum(p);
  if (!ce.holds || !(ce.kraft < Rational(3, 4) + epsilon))
    fail(ErrKind::Internal, "counterexample certificate failed to close");
  return ce;
}

// ----- lengths sequences -----

void LengthsSeq::validate() const {
  if (q != 2)
    fail(ErrKind::OutOfRange, "lengths sequences are defined for q=2 only");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1 || lengths[i] > 62)
      fail(ErrKind::OutOfRange, "codeword lengths must lie in [1, 62]");
    if (i > 0 && lengths[i] < lengths[i - 1])
      fail(ErrKind::OutOfRange, "lengths must be nondecreasing");
  }
}

Profile lengths_profile(const LengthsSeq& s) {
  s.validate();
  Profile p;
  p.q = 2;
  if (!s.lengths.empty()) {
    p.alpha.assign(s.lengths.back(), 0);
    for (int l : s.lengths) ++p.alpha[l - 1];
  }
  return p;
}

namespace {

Rational pw2(int e) {  // 2^(-e)
  return Rational(1, static_cast<i64>(qpow(2, e)));
}

}  // namespace

SuNeReport su_ne(const LengthsSeq& s, SuNeReading reading) {
  s.validate();
  const auto& l = s.lengths;  // formulas below are 1-based, l is 0-based
  int n = static_cast<int>(l.size());
  SuNeReport rep;
  rep.reading = reading;
  rep.su = Rational(1);
  rep.ne = Rational(1);
  Rational run(0);  // sum over j <= i of 2^(-l_j)
  for (int i = 1; i < n; ++i) {
    run = run + pw2(l[i - 1]);
    int li1 = l[i];      // l_{i+1}: the word being placed
    int li = l[i - 1];   // l_i: what the printed text uses instead
    int h = 1;           // first position with the new word's length
    while (l[h - 1] != li1) ++h;
    Rational head;
    if (reading == SuNeReading::Corrected) {
      head = Rational(1) - Rational(2) * run + Rational(i + 1 - h) * pw2(li1);
    } else {
      head = Rational(1) - Rational(2) * Rational(i) * pw2(li) +
             Rational(i + 1 - h) * Rational(2) * pw2(li);
    }
    Rational psu(0), pne(0);
    int cut = reading == SuNeReading::Corrected ? li1 : li + 1;
    for (int j = 1; j < h; ++j)
      for (int k = 1; k < h; ++k) {
        int a = l[j - 1] + l[k - 1];
        if (a <= cut) psu = psu + pw2(a);
        int e = li1 - a > 0 ? li1 - a : 0;
        pne = pne + Rational(static_cast<i64>(qpow(2, e)),
                             static_cast<i64>(qpow(2, li1)));
      }
    Rational fsu = head + psu;
    Rational fne = head + pne;
    rep.factors_su.push_back(fsu);
    rep.factors_ne.push_back(fne);
    rep.su = rep.su * (fsu > Rational(0) ? fsu : Rational(0));
    rep.ne = rep.ne * (fne > Rational(0) ? fne : Rational(0));
  }
  return rep;
}

bool madcor_check(const LengthsSeq& s) {
  s.validate();
  int n = static_cast<int>(s.lengths.size());
  if (n == 0) return true;
  Rational lhs(0);
  for (int l : s.lengths) lhs = lhs + pw2(l);
  int h = 1;  // h(n-1), with h(0) := 1 for the one-word sequence
  while (s.lengths[h - 1] != s.lengths[n - 1]) ++h;
  Rational rhs =
      Rational(1, 2) + Rational(n + 2 - h, 2) * pw2(s.lengths[n - 1]);
  return lhs < rhs;
}

}  // namespace fixfree
