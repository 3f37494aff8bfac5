#include "fixfree/pisystems.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fixfree {

namespace {

// ----- word-set quotients ---------------------------------------------------

using LenVal = std::pair<int, u64>;

// The block's words with the first (left) or last letter removed, as a set;
// a length-1 word leaves the empty word (0, 0).
std::set<LenVal> strip_set(const LevelSet& d, bool left) {
  std::set<LenVal> out;
  d.for_each([&](const Word& w) {
    if (left)
      out.insert({w.len - 1, w.val % qpow(w.q, w.len - 1)});
    else
      out.insert({w.len - 1, w.val / static_cast<u64>(w.q)});
  });
  return out;
}

Rational kraft_of(int q, const std::set<LenVal>& s) {
  Rational sum(0);
  for (const auto& [len, val] : s) {
    (void)val;
    sum = sum + Rational(1, static_cast<i64>(qpow(q, len)));
  }
  return sum;
}

bool pairwise_free(int q, const std::set<LenVal>& s, bool prefix) {
  std::vector<Word> ws;
  for (const auto& [len, val] : s) ws.push_back(make_word(q, len, val));
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = 0; j < ws.size(); ++j) {
      if (i == j || ws[i].len >= ws[j].len) continue;
      if (prefix ? is_prefix(ws[i], ws[j]) : is_suffix(ws[i], ws[j]))
        return false;
    }
  return true;
}

// ----- structure ------------------------------------------------------------

// Blocks must be k sets over the right alphabet, within levels 1..n,
// pairwise disjoint, and together exactly the code.
bool structurally_valid(const PiSystem& p) {
  if (p.q < 2 || p.k < 1 || p.k > p.q || p.n < 1) return false;
  if (p.code.q() != p.q || static_cast<int>(p.blocks.size()) != p.k)
    return false;
  for (int l = p.n + 1; l <= p.code.max_level(); ++l)
    if (p.code.count(l) != 0) return false;
  u64 total = 0;
  for (const LevelSet& d : p.blocks) {
    if (d.q() != p.q) return false;
    for (int l = p.n + 1; l <= d.max_level(); ++l)
      if (d.count(l) != 0) return false;
    total += d.total();
    bool inside = true;
    d.for_each([&](const Word& w) { inside = inside && p.code.test(w); });
    if (!inside) return false;
  }
  if (total != p.code.total()) return false;
  for (size_t i = 0; i < p.blocks.size(); ++i)
    for (size_t j = i + 1; j < p.blocks.size(); ++j) {
      bool clash = false;
      p.blocks[i].for_each(
          [&](const Word& w) { clash = clash || p.blocks[j].test(w); });
      if (clash) return false;
    }
  return true;
}

// b^e for letter-class sizes, which may be 1 (qpow insists on q >= 2)
u64 upow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// value of the word (prefix `v`) . (base-`size` expansion of t over the
// letters {base, ..., base+size-1}, `len` digits, most significant first)
u64 append_run(int q, u64 v, int base, int size, int len, u64 t) {
  std::vector<int> digits(static_cast<size_t>(len), 0);
  for (int j = len - 1; j >= 0; --j) {
    digits[static_cast<size_t>(j)] = static_cast<int>(t % size);
    t /= static_cast<u64>(size);
  }
  for (int j = 0; j < len; ++j)
    v = v * q + static_cast<u64>(base + digits[static_cast<size_t>(j)]);
  return v;
}

void put(PiSystem& p, int block, int level, u64 v) {
  p.blocks[static_cast<size_t>(block - 1)].insert(level, v);
  p.code.insert(level, v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

namespace detail {

bool pi_balanced_shadows(const PiSystem& p) {
  const u64 want = qpow(p.q, p.n - 1);
  for (const LevelSet& d : p.blocks) {
    Bitset pf = shadow(d, p.n, Shadow::Prefix);
    Bitset sf = shadow(d, p.n, Shadow::Suffix);
    if (pf.count() != want || sf.count() != want) return false;
    Bitset left(want), right(want);
    for (u64 v = pf.next_set(0); v < pf.size(); v = pf.next_set(v + 1))
      left.set(v % want);
    for (u64 v = sf.next_set(0); v < sf.size(); v = sf.next_set(v + 1))
      right.set(v / static_cast<u64>(p.q));
    if (left.count() != want || right.count() != want) return false;
  }
  return true;
}

bool pi_kraft_and_quotients(const PiSystem& p) {
  if (kraft_sum(p.code) != Rational(p.k, p.q)) return false;
  const u64 half = qpow(p.q, p.n - 1);
  for (const LevelSet& d : p.blocks) {
    Bitset pf = shadow(d, p.n, Shadow::Prefix);
    Bitset sf = shadow(d, p.n, Shadow::Suffix);
    Bitset left(half), right(half);
    for (u64 v = pf.next_set(0); v < pf.size(); v = pf.next_set(v + 1))
      left.set(v % half);
    for (u64 v = sf.next_set(0); v < sf.size(); v = sf.next_set(v + 1))
      right.set(v / static_cast<u64>(p.q));
    if (pf.count() != left.count() || sf.count() != right.count())
      return false;
  }
  return true;
}

bool pi_maximal_quotients(const PiSystem& p) {
  for (const LevelSet& d : p.blocks) {
    std::set<LenVal> lq = strip_set(d, true);
    std::set<LenVal> rq = strip_set(d, false);
    if (lq.size() != d.total() || rq.size() != d.total()) return false;
    if (!pairwise_free(p.q, lq, true) || !pairwise_free(p.q, rq, false))
      return false;
    if (kraft_of(p.q, lq) != Rational(1) || kraft_of(p.q, rq) != Rational(1))
      return false;
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation and thresholds
// ---------------------------------------------------------------------------

Rational gamma(int q, int k) {
  if (q < 2 || k < 1 || k >= q)
    fail(ErrKind::OutOfRange, "gamma needs q >= 2 and 1 <= k < q");
  if (k <= q / 2) return Rational(q + k, 2 * static_cast<i64>(q));
  const i64 r = q - k;
  return Rational(r * r + static_cast<i64>(k) * q, static_cast<i64>(q) * q);
}

bool is_pi_system(const PiSystem& p) {
  if (!structurally_valid(p)) return false;
  if (!is_free(p.code, Freeness::Fix)) return false;
  bool ok = detail::pi_balanced_shadows(p);
#ifndef NDEBUG
  // the three formulations are provably equivalent on fix-free partitions
  assert(ok == detail::pi_kraft_and_quotients(p));
  assert(ok == detail::pi_maximal_quotients(p));
#endif
  return ok;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

PiSystem one_level_pi(int q, int n, int k) {
  if (q < 2 || n < 1 || k < 1 || k >= q)
    fail(ErrKind::OutOfRange, "one_level_pi needs q >= 2, n >= 1, 1 <= k < q");
  PiSystem p;
  p.q = q;
  p.k = k;
  p.n = n;
  p.code = LevelSet(q, n);
  p.blocks.assign(static_cast<size_t>(k), LevelSet(q, n));
  if (n == 1) {
    for (int i = 1; i <= k; ++i) put(p, i, 1, static_cast<u64>(i - 1));
    return p;
  }
  const u64 mid = qpow(q, n - 2);
  for (int i = 1; i <= k; ++i)
    for (int a = 0; a < q; ++a) {
      const u64 close = static_cast<u64>((a + i - 1) % q);
      for (u64 t = 0; t < mid; ++t)
        put(p, i, n, (static_cast<u64>(a) * mid + t) * q + close);
    }
  return p;
}

PiResult two_level_pi(int q, int n, int k, u64 L) {
  if (q < 2 || n < 2 || k < 1 || k >= q)
    fail(ErrKind::OutOfRange, "two_level_pi needs q >= 2, n >= 2, 1 <= k < q");
  if (L < 1 || L >= qpow(q, n - 1))
    fail(ErrKind::OutOfRange, "two_level_pi needs 1 <= L < q^(n-1)");
  SubgraphResult sub = k_regular_subgraph(q, n - 2, k, L);
  PiResult out;
  if (sub.status == SubgraphResult::Status::Impossible) {
    out.status = PiResult::Status::Impossible;
    return out;
  }
  if (sub.status == SubgraphResult::Status::Unsupported) {
    out.status = PiResult::Status::Unsupported;
    return out;
  }
  out.status = PiResult::Status::Found;
  PiSystem& p = out.system;
  p.q = q;
  p.k = k;
  p.n = n;
  p.code = LevelSet(q, n);
  p.blocks.assign(static_cast<size_t>(k), LevelSet(q, n));
  // short level: the subgraph's edge words, one 1-factor per block
  std::vector<EdgeSet> factors = one_factor_decomposition(sub.graph, k);
  for (int i = 1; i <= k; ++i) {
    const Bitset& es = factors[static_cast<size_t>(i - 1)].edges;
    for (u64 e = es.next_set(0); e < es.size(); e = es.next_set(e + 1))
      put(p, i, n - 1, e);
  }
  // long level: route every bypassed vertex through each block's rotation
  const u64 nverts = qpow(q, n - 2);
  for (u64 w = 0; w < nverts; ++w) {
    if (out_degree(sub.graph, w) > 0) continue;
    for (int i = 1; i <= k; ++i)
      for (int a = 0; a < q; ++a)
        put(p, i, n,
            (static_cast<u64>(a) * nverts + w) * q +
                static_cast<u64>((a + i - 1) % q));
  }
  return out;
}

LevelSet pi_extend(const PiSystem& p, const Profile& target) {
  target.validate();
  if (target.q != p.q)
    fail(ErrKind::PreconditionViolated, "target alphabet differs from system");
  if (!is_pi_system(p))
    fail(ErrKind::PreconditionViolated, "pi_extend needs a valid pi-system");
  if (kraft_sum(target) > gamma(p.q, p.k))
    fail(ErrKind::PreconditionViolated, "target Kraft sum above gamma(q, k)");
  for (int l = 1; l < p.n; ++l)
    if (static_cast<i64>(p.code.count(l)) != target.count(l))
      fail(ErrKind::PreconditionViolated,
           "target disagrees with the system at level " + std::to_string(l));
  if (static_cast<i64>(p.code.count(p.n)) > target.count(p.n))
    fail(ErrKind::PreconditionViolated,
         "target has no room for the system's top level");

  const int top = std::max(p.n, target.max_level());
  LevelSet out(p.q, top);
  p.code.for_each([&](const Word& w) { out.insert(w); });
  for (int l = p.n; l <= top; ++l) {
    i64 need = target.count(l) - static_cast<i64>(out.count(l));
    if (need == 0) continue;
    // words added on one level never shadow each other, so one shadow per
    // level suffices
    Bitset shade = shadow(out, l, Shadow::Bifix);
    for (u64 v = shade.next_clear(0); need > 0 && v < shade.size();
         v = shade.next_clear(v + 1), --need)
      out.insert(l, v);
    if (need > 0)
      fail(ErrKind::Internal,
           "extension ran out of free words at level " + std::to_string(l));
  }
  return out;
}

namespace detail {

PiSystem chain_pi(int q, int n, int k, int d) {
  if (q < 2 || n < 2 || d < 1 || d >= q || k < 1 || k > std::min(d, q - d))
    fail(ErrKind::OutOfRange,
         "chain_pi needs q >= 2, n >= 2, 1 <= d < q, 1 <= k <= min(d, q-d)");
  PiSystem p;
  p.q = q;
  p.k = k;
  p.n = n;
  p.code = LevelSet(q, n);
  p.blocks.assign(static_cast<size_t>(k), LevelSet(q, n));
  const int e = q - d;
  for (int i = 1; i <= k; ++i) {
    for (int m = 0; m <= n - 2; ++m)  // x Y^m close, levels 2..n
      for (int x = 0; x < d; ++x) {
        const u64 close = static_cast<u64>((x + i - 1) % d);
        for (u64 t = 0; t < upow(static_cast<u64>(e), m); ++t)
          put(p, i, m + 2,
              append_run(q, static_cast<u64>(x), d, e, m, t) * q + close);
      }
    for (int y = d; y < q; ++y) {  // y Y^{n-2} close, level n
      const u64 close = static_cast<u64>(d + (y - d + i - 1) % e);
      for (u64 t = 0; t < upow(static_cast<u64>(e), n - 2); ++t)
        put(p, i, n,
            append_run(q, static_cast<u64>(y), d, e, n - 2, t) * q + close);
    }
  }
  return p;
}

PiSystem chain_pi_mirrored(int q, int n, int k, int d) {
  if (q < 2 || n < 3 || d < 1 || d >= q || k < 1 || k > std::min(d, q - d))
    fail(ErrKind::OutOfRange,
         "chain_pi_mirrored needs q >= 2, n >= 3, 1 <= d < q, "
         "1 <= k <= min(d, q-d)");
  PiSystem p;
  p.q = q;
  p.k = k;
  p.n = n;
  p.code = LevelSet(q, n);
  p.blocks.assign(static_cast<size_t>(k), LevelSet(q, n));
  const int e = q - d;
  for (int i = 1; i <= k; ++i) {
    for (int m = 1; m <= n - 2; ++m) {
      for (int x = 0; x < d; ++x) {  // x Y^m close, levels 3..n
        const u64 close = static_cast<u64>((x + i - 1) % d);
        for (u64 t = 0; t < upow(static_cast<u64>(e), m); ++t)
          put(p, i, m + 2,
              append_run(q, static_cast<u64>(x), d, e, m, t) * q + close);
      }
      for (int y = d; y < q; ++y) {  // y X^m close, levels 3..n
        const u64 close = static_cast<u64>(d + (y - d + i - 1) % e);
        for (u64 t = 0; t < upow(static_cast<u64>(d), m); ++t)
          put(p, i, m + 2,
              append_run(q, static_cast<u64>(y), 0, d, m, t) * q + close);
      }
    }
    for (int x = 0; x < d; ++x) {  // x X^{n-2} close, level n
      const u64 close = static_cast<u64>((x + i - 1) % d);
      for (u64 t = 0; t < upow(static_cast<u64>(d), n - 2); ++t)
        put(p, i, n,
            append_run(q, static_cast<u64>(x), 0, d, n - 2, t) * q + close);
    }
    for (int y = d; y < q; ++y) {  // y Y^{n-2} close, level n
      const u64 close = static_cast<u64>(d + (y - d + i - 1) % e);
      for (u64 t = 0; t < upow(static_cast<u64>(e), n - 2); ++t)
        put(p, i, n,
            append_run(q, static_cast<u64>(y), d, e, n - 2, t) * q + close);
    }
  }
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

namespace {

int header_int(const std::string& tok, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(ErrKind::InputError,
         std::string("bad integer for ") + what + ": '" + tok + "'");
  return v;
}

}  // namespace

PiSystem parse_pi_system(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    fail(ErrKind::InputError, "empty pi-system input");
  int q = 0, n = 0, k = 0;
  std::istringstream header(line);
  std::string tok;
  while (header >> tok) {
    if (tok.rfind("q=", 0) == 0)
      q = header_int(tok.substr(2), "q");
    else if (tok.rfind("n=", 0) == 0)
      n = header_int(tok.substr(2), "n");
    else if (tok.rfind("k=", 0) == 0)
      k = header_int(tok.substr(2), "k");
    else
      fail(ErrKind::InputError, "unknown header field '" + tok + "'");
  }
  if (q < 2 || n < 1 || k < 1 || k > q)
    fail(ErrKind::InputError, "pi-system header needs q >= 2, n >= 1, "
                              "1 <= k <= q");
  PiSystem p;
  p.q = q;
  p.k = k;
  p.n = n;
  p.code = LevelSet(q, n);
  p.blocks.assign(static_cast<size_t>(k), LevelSet(q, n));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string digits, btok;
    if (!(ls >> digits >> btok) || (ls >> tok))
      fail(ErrKind::InputError, "expected '<word> <block>', got '" + line + "'");
    Word w = parse_word(digits, q);
    if (w.len < 1 || w.len > n)
      fail(ErrKind::InputError, "word '" + digits + "' outside levels 1.." +
                                    std::to_string(n));
    int b = header_int(btok, "block");
    if (b < 1 || b > k)
      fail(ErrKind::InputError, "block index " + btok + " outside 1.." +
                                    std::to_string(k));
    if (p.code.test(w))
      fail(ErrKind::InputError, "duplicate word '" + digits + "'");
    put(p, b, w.len, w.val);
  }
  return p;
}

void format_pi_system(std::ostream& out, const PiSystem& p) {
  out << "q=" << p.q << " n=" << p.n << " k=" << p.k << "\n";
  p.code.for_each([&](const Word& w) {
    int b = 0;
    for (int i = 1; i <= static_cast<int>(p.blocks.size()); ++i)
      if (p.blocks[static_cast<size_t>(i - 1)].test(w)) {
        b = i;
        break;
      }
    out << to_string(w) << " " << b << "\n";
  });
}

}  // namespace fixfree
