#include "fixfree/words.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace fixfree {

u64 qpow(int q, int l) {
  if (q < 2 || l < 0) fail(ErrKind::OutOfRange, "qpow domain");
  u64 r = 1;
  const u64 lim = u64(1) << 62;
  for (int i = 0; i < l; ++i) {
    if (r > lim / static_cast<u64>(q))
      fail(ErrKind::Overflow, "q^l exceeds 2^62");
    r *= static_cast<u64>(q);
  }
  return r;
}

// Saturating variant used only for bound checks.
static u64 qpow_sat(int q, int l) {
  u64 r = 1;
  const u64 lim = u64(1) << 62;
  for (int i = 0; i < l; ++i) {
    if (r > lim / static_cast<u64>(q)) return lim;
    r *= static_cast<u64>(q);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

Word make_word(int q, int len, u64 val) {
  if (q < 2) fail(ErrKind::OutOfRange, "alphabet size must be >= 2");
  if (len < 0) fail(ErrKind::OutOfRange, "negative word length");
  if (val >= qpow(q, len)) fail(ErrKind::OutOfRange, "word value out of range");
  return Word{q, len, val};
}

u64 num(const Word& w) { return w.val; }

int letter(const Word& w, int i) {
  if (i < 0 || i >= w.len) fail(ErrKind::OutOfRange, "letter index");
  u64 v = w.val / qpow(w.q, w.len - 1 - i);
  return static_cast<int>(v % static_cast<u64>(w.q));
}

Word parse_word(std::string_view digits, int q) {
  if (q < 2 || q > 10)
    fail(ErrKind::InputError, "digit strings support 2 <= q <= 10");
  u64 v = 0;
  for (char c : digits) {
    if (c < '0' || c >= '0' + q)
      fail(ErrKind::InputError, std::string("bad digit '") + c + "'");
    if (v > ((u64(1) << 62) - 9) / static_cast<u64>(q))
      fail(ErrKind::InputError, "word too long");
    v = v * static_cast<u64>(q) + static_cast<u64>(c - '0');
  }
  return make_word(q, static_cast<int>(digits.size()), v);
}

std::string to_string(const Word& w) {
  std::string s(static_cast<size_t>(w.len), '0');
  u64 v = w.val;
  for (int i = w.len - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] =
        static_cast<char>('0' + static_cast<int>(v % static_cast<u64>(w.q)));
    v /= static_cast<u64>(w.q);
  }
  return s;
}

Word concat(const Word& a, const Word& b) {
  if (a.q != b.q) fail(ErrKind::OutOfRange, "concat across alphabets");
  return make_word(a.q, a.len + b.len, a.val * qpow(a.q, b.len) + b.val);
}

Word reversed(const Word& w) {
  u64 v = w.val;
  u64 r = 0;
  for (int i = 0; i < w.len; ++i) {
    r = r * static_cast<u64>(w.q) + v % static_cast<u64>(w.q);
    v /= static_cast<u64>(w.q);
  }
  return Word{w.q, w.len, r};
}

bool is_prefix(const Word& p, const Word& w) {
  if (p.q != w.q || p.len > w.len) return false;
  return w.val / qpow(w.q, w.len - p.len) == p.val;
}

bool is_suffix(const Word& s, const Word& w) {
  if (s.q != w.q || s.len > w.len) return false;
  return w.val % qpow(w.q, s.len) == s.val;
}

// ---------------------------------------------------------------------------
// Bitset
// ---------------------------------------------------------------------------

Bitset::Bitset(u64 n) : n_(n), w_((n + 63) / 64, 0) {}

bool Bitset::test(u64 i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

void Bitset::set(u64 i) { w_[i >> 6] |= u64(1) << (i & 63); }

void Bitset::reset(u64 i) { w_[i >> 6] &= ~(u64(1) << (i & 63)); }

void Bitset::set_range(u64 lo, u64 hi) {
  if (lo >= hi) return;
  u64 a = lo >> 6, b = (hi - 1) >> 6;
  u64 first = ~u64(0) << (lo & 63);
  u64 last = ~u64(0) >> (63 - ((hi - 1) & 63));
  if (a == b) {
    w_[a] |= first & last;
  } else {
    w_[a] |= first;
    for (u64 i = a + 1; i < b; ++i) w_[i] = ~u64(0);
    w_[b] |= last;
  }
}

void Bitset::clear() { std::fill(w_.begin(), w_.end(), 0); }

void Bitset::fill() {
  std::fill(w_.begin(), w_.end(), ~u64(0));
  if (n_ & 63) w_.back() &= (u64(1) << (n_ & 63)) - 1;
  if (n_ == 0) w_.clear();
}

u64 Bitset::count() const {
  u64 c = 0;
  for (u64 x : w_) c += static_cast<u64>(__builtin_popcountll(x));
  return c;
}

bool Bitset::any() const {
  for (u64 x : w_)
    if (x) return true;
  return false;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

void Bitset::and_not(const Bitset& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
}

u64 Bitset::next_set(u64 from) const {
  if (from >= n_) return n_;
  u64 i = from >> 6;
  u64 cur = w_[i] & (~u64(0) << (from & 63));
  while (true) {
    if (cur) {
      u64 r = (i << 6) + static_cast<u64>(__builtin_ctzll(cur));
      return r < n_ ? r : n_;
    }
    if (++i >= w_.size()) return n_;
    cur = w_[i];
  }
}

u64 Bitset::next_clear(u64 from) const {
  if (from >= n_) return n_;
  u64 i = from >> 6;
  u64 cur = ~w_[i] & (~u64(0) << (from & 63));
  while (true) {
    if (cur) {
      u64 r = (i << 6) + static_cast<u64>(__builtin_ctzll(cur));
      return r < n_ ? r : n_;
    }
    if (++i >= w_.size()) return n_;
    cur = ~w_[i];
  }
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

i64 Profile::count(int l) const {
  if (l < 1 || l > static_cast<int>(alpha.size())) return 0;
  return alpha[static_cast<size_t>(l - 1)];
}

int Profile::max_level() const {
  for (int l = static_cast<int>(alpha.size()); l >= 1; --l)
    if (alpha[static_cast<size_t>(l - 1)] > 0) return l;
  return 0;
}

int Profile::min_level() const {
  for (int l = 1; l <= static_cast<int>(alpha.size()); ++l)
    if (alpha[static_cast<size_t>(l - 1)] > 0) return l;
  return 0;
}

i64 Profile::total() const {
  i64 t = 0;
  for (i64 a : alpha) t += a;
  return t;
}

int Profile::populated_levels() const {
  int c = 0;
  for (i64 a : alpha)
    if (a > 0) ++c;
  return c;
}

void Profile::validate() const {
  if (q < 2) fail(ErrKind::OutOfRange, "alphabet size must be >= 2");
  for (int l = 1; l <= static_cast<int>(alpha.size()); ++l) {
    i64 a = alpha[static_cast<size_t>(l - 1)];
    if (a < 0) fail(ErrKind::OutOfRange, "negative count in profile");
    u64 cap = qpow_sat(q, l);
    if (static_cast<u64>(a) > cap)
      fail(ErrKind::OutOfRange, "profile count exceeds q^l at level " +
                                    std::to_string(l));
  }
}

Rational kraft_sum(const Profile& p) {
  Rational s(0);
  for (int l = 1; l <= static_cast<int>(p.alpha.size()); ++l) {
    i64 a = p.alpha[static_cast<size_t>(l - 1)];
    if (a == 0) continue;
    s = s + Rational(a, static_cast<i64>(qpow(p.q, l)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Level sets
// ---------------------------------------------------------------------------

LevelSet::LevelSet(int q, int max_level, u64 level_cap) : q_(q) {
  if (q < 2) fail(ErrKind::OutOfRange, "alphabet size must be >= 2");
  if (max_level < 0) fail(ErrKind::OutOfRange, "negative level");
  levels_.reserve(static_cast<size_t>(max_level));
  for (int l = 1; l <= max_level; ++l) {
    u64 n = qpow(q, l);
    if (n > level_cap)
      fail(ErrKind::OutOfRange,
           "level " + std::to_string(l) + " needs " + std::to_string(n) +
               " bits, above the configured cap");
    levels_.emplace_back(n);
  }
}

bool LevelSet::test(int l, u64 v) const {
  if (l < 1 || l > max_level()) return false;
  return levels_[static_cast<size_t>(l - 1)].test(v);
}

bool LevelSet::test(const Word& w) const {
  if (w.q != q_) return false;
  return test(w.len, w.val);
}

void LevelSet::insert(int l, u64 v) {
  if (l < 1 || l > max_level()) fail(ErrKind::OutOfRange, "level out of range");
  levels_[static_cast<size_t>(l - 1)].set(v);
}

void LevelSet::insert(const Word& w) {
  if (w.q != q_) fail(ErrKind::OutOfRange, "word alphabet mismatch");
  insert(w.len, w.val);
}

void LevelSet::erase(int l, u64 v) {
  if (l < 1 || l > max_level()) fail(ErrKind::OutOfRange, "level out of range");
  levels_[static_cast<size_t>(l - 1)].reset(v);
}

u64 LevelSet::count(int l) const {
  if (l < 1 || l > max_level()) return 0;
  return levels_[static_cast<size_t>(l - 1)].count();
}

u64 LevelSet::total() const {
  u64 t = 0;
  for (const Bitset& b : levels_) t += b.count();
  return t;
}

const Bitset& LevelSet::level(int l) const {
  if (l < 1 || l > max_level()) fail(ErrKind::OutOfRange, "level out of range");
  return levels_[static_cast<size_t>(l - 1)];
}

Bitset& LevelSet::level(int l) {
  if (l < 1 || l > max_level()) fail(ErrKind::OutOfRange, "level out of range");
  return levels_[static_cast<size_t>(l - 1)];
}

std::vector<Word> LevelSet::words() const {
  std::vector<Word> out;
  out.reserve(total());
  for_each([&](const Word& w) { out.push_back(w); });
  return out;
}

void LevelSet::for_each(const std::function<void(const Word&)>& fn) const {
  for (int l = 1; l <= max_level(); ++l) {
    const Bitset& b = levels_[static_cast<size_t>(l - 1)];
    for (u64 v = b.next_set(0); v < b.size(); v = b.next_set(v + 1))
      fn(Word{q_, l, v});
  }
}

Profile LevelSet::profile() const {
  Profile p;
  p.q = q_;
  p.alpha.resize(static_cast<size_t>(max_level()), 0);
  for (int l = 1; l <= max_level(); ++l)
    p.alpha[static_cast<size_t>(l - 1)] = static_cast<i64>(count(l));
  return p;
}

Rational kraft_sum(const LevelSet& c) { return kraft_sum(c.profile()); }

bool fits(const LevelSet& c, const Profile& p) {
  if (c.q() != p.q) return false;
  int top = std::max(c.max_level(), static_cast<int>(p.alpha.size()));
  for (int l = 1; l <= top; ++l)
    if (static_cast<i64>(c.count(l)) != p.count(l)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Shadows, overlaps, freeness
// ---------------------------------------------------------------------------

Bitset shadow(const LevelSet& c, int n, Shadow kind) {
  if (n < 1) fail(ErrKind::OutOfRange, "shadow level must be >= 1");
  if (c.q() < 2) fail(ErrKind::OutOfRange, "shadow of uninitialized set");
  Bitset out(qpow(c.q(), n));
  int top = std::min(n, c.max_level());
  for (int l = 1; l <= top; ++l) {
    const Bitset& b = c.level(l);
    if (!b.any()) continue;
    u64 tail = qpow(c.q(), n - l);
    u64 step = qpow(c.q(), l);
    for (u64 v = b.next_set(0); v < b.size(); v = b.next_set(v + 1)) {
      if (kind != Shadow::Suffix) out.set_range(v * tail, (v + 1) * tail);
      if (kind != Shadow::Prefix)
        for (u64 t = 0; t < tail; ++t) out.set(t * step + v);
    }
  }
  return out;
}

u64 shadow_count(const LevelSet& c, int n, Shadow kind) {
  return shadow(c, n, kind).count();
}

u64 overlap_count(const Word& x, const Word& y, int n) {
  if (x.q != y.q) fail(ErrKind::OutOfRange, "overlap across alphabets");
  if (n < 0) fail(ErrKind::OutOfRange, "negative length");
  if (n < x.len || n < y.len) return 0;
  if (n >= x.len + y.len) return qpow(x.q, n - x.len - y.len);
  int r = x.len + y.len - n;  // 1 <= r <= min(|x|, |y|)
  u64 x_tail = x.val % qpow(x.q, r);
  u64 y_head = y.val / qpow(y.q, y.len - r);
  return x_tail == y_head ? 1 : 0;
}

bool is_free(const LevelSet& c, Freeness f) {
  for (int l = 2; l <= c.max_level(); ++l) {
    const Bitset& b = c.level(l);
    if (!b.any()) continue;
    for (u64 v = b.next_set(0); v < b.size(); v = b.next_set(v + 1)) {
      for (int m = 1; m < l; ++m) {
        if (c.count(m) == 0) continue;
        if (f != Freeness::Suffix && c.test(m, v / qpow(c.q(), l - m)))
          return false;
        if (f != Freeness::Prefix && c.test(m, v % qpow(c.q(), m)))
          return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

static i64 parse_i64(std::string_view s) {
  i64 v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(ErrKind::InputError, "bad integer '" + std::string(s) + "'");
  return v;
}

Profile parse_profile(std::string_view text) {
  Profile p;
  bool saw_q = false, saw_alpha = false;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r'))
      ++i;
    if (i >= text.size()) break;
    size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' &&
           text[j] != '\n' && text[j] != '\r')
      ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    if (tok.rfind("q=", 0) == 0) {
      i64 qv = parse_i64(tok.substr(2));
      if (qv < 2 || qv > 1'000'000) fail(ErrKind::InputError, "q out of range");
      p.q = static_cast<int>(qv);
      saw_q = true;
    } else if (tok.rfind("alpha=", 0) == 0) {
      std::string_view list = tok.substr(6);
      if (list.empty()) fail(ErrKind::InputError, "empty alpha list");
      size_t a = 0;
      while (a <= list.size()) {
        size_t b = list.find(',', a);
        if (b == std::string_view::npos) b = list.size();
        p.alpha.push_back(parse_i64(list.substr(a, b - a)));
        a = b + 1;
        if (b == list.size()) break;
      }
      saw_alpha = true;
    } else {
      fail(ErrKind::InputError, "unexpected token '" + std::string(tok) + "'");
    }
  }
  if (!saw_q || !saw_alpha)
    fail(ErrKind::InputError, "profile needs q=... and alpha=...");
  p.validate();
  return p;
}

std::string format_profile(const Profile& p) {
  std::string s = "q=" + std::to_string(p.q) + " alpha=";
  if (p.alpha.empty()) return s + "0";
  for (size_t i = 0; i < p.alpha.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.alpha[i]);
  }
  return s;
}

LevelSet parse_code(std::istream& in, u64 level_cap) {
  std::string line;
  int q = 0;
  std::vector<std::string> raw;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    size_t s = line.find_first_not_of(" \t");
    if (s == std::string::npos) continue;
    line = line.substr(s);
    if (q == 0) {
      if (line.rfind("q=", 0) != 0) {
        // Tolerate key=value metadata ahead of the header so a report block
        // written in front of a code (as the CLI does) parses unchanged.
        if (line.find('=') != std::string::npos) continue;
        fail(ErrKind::InputError, "code file must start with q=<int>");
      }
      i64 qv = parse_i64(std::string_view(line).substr(2));
      if (qv < 2 || qv > 10) fail(ErrKind::InputError, "q out of range");
      q = static_cast<int>(qv);
    } else {
      raw.push_back(line);
    }
  }
  if (q == 0) fail(ErrKind::InputError, "empty code file");
  int top = 0;
  for (const std::string& w : raw)
    top = std::max(top, static_cast<int>(w.size()));
  LevelSet c(q, top, level_cap);
  for (const std::string& s2 : raw) {
    Word w = parse_word(s2, q);
    if (w.len == 0) fail(ErrKind::InputError, "empty word in code file");
    if (c.test(w)) fail(ErrKind::InputError, "duplicate word " + s2);
    c.insert(w);
  }
  return c;
}

void format_code(std::ostream& out, const LevelSet& c) {
  out << "q=" << c.q() << "\n";
  c.for_each([&](const Word& w) { out << to_string(w) << "\n"; });
}

}  // namespace fixfree
