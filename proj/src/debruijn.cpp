#include "fixfree/debruijn.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

namespace fixfree {

namespace {

u64 ipow(int b, int e) {  // b >= 1
  return b == 1 ? 1 : qpow(b, e);
}

void check_seq(const CyclicSeq& s) {
  if (s.q < 2) fail(ErrKind::OutOfRange, "alphabet size must be >= 2");
  if (s.letters.empty()) fail(ErrKind::OutOfRange, "empty cyclic sequence");
  for (std::uint8_t a : s.letters)
    if (a >= s.q) fail(ErrKind::OutOfRange, "letter out of alphabet");
}

// num of the cyclic window s[i..i+len-1]
u64 window(const CyclicSeq& s, size_t i, int len) {
  u64 v = 0;
  for (int j = 0; j < len; ++j)
    v = v * static_cast<u64>(s.q) + s.letters[(i + j) % s.letters.size()];
  return v;
}

// Simple union-find over vertex ids.
struct Dsu {
  std::vector<u64> p;
  explicit Dsu(u64 n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  u64 find(u64 x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(u64 a, u64 b) { p[find(a)] = find(b); }
};

}  // namespace

// ---------------------------------------------------------------------------
// Edge sets and basic accessors
// ---------------------------------------------------------------------------

EdgeSet make_edge_set(int q, int n) {
  if (q < 2 || n < 0) fail(ErrKind::OutOfRange, "bad graph parameters");
  u64 sz = qpow(q, n + 1);
  if (sz > LevelSet::kDefaultLevelCap)
    fail(ErrKind::OutOfRange, "graph order too large");
  EdgeSet g;
  g.q = q;
  g.n = n;
  g.edges = Bitset(sz);
  return g;
}

u64 edge_init(const EdgeSet& g, u64 e) { return e / static_cast<u64>(g.q); }

u64 edge_term(const EdgeSet& g, u64 e) { return e % qpow(g.q, g.n); }

int edge_letter(const EdgeSet& g, u64 e) {
  return static_cast<int>(e / qpow(g.q, g.n));
}

u64 out_degree(const EdgeSet& g, u64 v) {
  u64 d = 0;
  for (int b = 0; b < g.q; ++b)
    if (g.edges.test(v * g.q + b)) ++d;
  return d;
}

u64 in_degree(const EdgeSet& g, u64 v) {
  u64 qn = qpow(g.q, g.n);
  u64 d = 0;
  for (int a = 0; a < g.q; ++a)
    if (g.edges.test(static_cast<u64>(a) * qn + v)) ++d;
  return d;
}

EdgeSet to_edges(const SuccessorMap& f) {
  EdgeSet g = make_edge_set(f.q, f.n);
  for (u64 v = 0; v < f.succ.size(); ++v)
    g.edges.set(v * f.q + f.succ[v]);
  return g;
}

// ---------------------------------------------------------------------------
// Cyclic sequences
// ---------------------------------------------------------------------------

CyclicSeq least_rotation(const CyclicSeq& s) {
  check_seq(s);
  const auto& v = s.letters;
  size_t m = v.size();
  // Booth's least-rotation algorithm.
  size_t i = 0, j = 1, k = 0;
  while (i < m && j < m && k < m) {
    std::uint8_t a = v[(i + k) % m], b = v[(j + k) % m];
    if (a == b) {
      ++k;
    } else if (a > b) {
      i = i + k + 1;
      if (i == j) ++i;
      k = 0;
    } else {
      j = j + k + 1;
      if (j == i) ++j;
      k = 0;
    }
  }
  size_t start = std::min(i, j);
  CyclicSeq out;
  out.q = s.q;
  out.letters.reserve(m);
  for (size_t t = 0; t < m; ++t) out.letters.push_back(v[(start + t) % m]);
  return out;
}

CycleKind cycle_check(const CyclicSeq& s, int n) {
  check_seq(s);
  if (n < 0) fail(ErrKind::OutOfRange, "negative graph order");
  qpow(s.q, n + 1);  // overflow guard for window arithmetic
  size_t m = s.letters.size();
  std::vector<u64> verts(m), edges(m);
  for (size_t i = 0; i < m; ++i) {
    verts[i] = window(s, i, n);
    edges[i] = verts[i] * static_cast<u64>(s.q) +
               s.letters[(i + static_cast<size_t>(n)) % m];
  }
  auto distinct = [](std::vector<u64>& x) {
    std::sort(x.begin(), x.end());
    return std::adjacent_find(x.begin(), x.end()) == x.end();
  };
  if (distinct(verts)) return CycleKind::Cycle;
  if (distinct(edges)) return CycleKind::ClosedPath;
  return CycleKind::Neither;
}

// ---------------------------------------------------------------------------
// Euler circuits
// ---------------------------------------------------------------------------

CyclicSeq euler_circuit(const EdgeSet& g) {
  u64 qn = qpow(g.q, g.n);
  if (!g.edges.any()) fail(ErrKind::NotEulerian, "no edges");
  std::vector<std::vector<std::uint8_t>> out(qn);
  std::vector<u64> indeg(qn, 0);
  u64 total = 0;
  for (u64 e = g.edges.next_set(0); e < g.edges.size();
       e = g.edges.next_set(e + 1)) {
    out[edge_init(g, e)].push_back(static_cast<std::uint8_t>(e % g.q));
    ++indeg[edge_term(g, e)];
    ++total;
  }
  Dsu dsu(qn);
  for (u64 v = 0; v < qn; ++v) {
    if (out[v].size() != indeg[v])
      fail(ErrKind::NotEulerian, "in/out degree mismatch at vertex " +
                                     std::to_string(v));
    if (!out[v].empty()) {
      for (std::uint8_t b : out[v])
        dsu.unite(v, edge_term(g, v * g.q + b));
    }
  }
  u64 root = qn;
  for (u64 v = 0; v < qn; ++v) {
    if (out[v].empty()) continue;
    if (root == qn) root = dsu.find(v);
    if (dsu.find(v) != root)
      fail(ErrKind::Disconnected, "edge set is not connected");
  }

  // Hierholzer, always leaving along the smallest unused letter; the start
  // vertex is the init of the smallest edge.
  u64 start = edge_init(g, g.edges.next_set(0));
  std::vector<size_t> ptr(qn, 0);
  std::vector<u64> vstack{start}, estack, circuit;
  circuit.reserve(total);
  while (!vstack.empty()) {
    u64 v = vstack.back();
    if (ptr[v] < out[v].size()) {
      u64 e = v * g.q + out[v][ptr[v]++];
      vstack.push_back(edge_term(g, e));
      estack.push_back(e);
    } else {
      vstack.pop_back();
      if (!estack.empty() && vstack.size() == estack.size()) {
        circuit.push_back(estack.back());
        estack.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != total)
    fail(ErrKind::Internal, "euler circuit missed edges");
  CyclicSeq seq;
  seq.q = g.q;
  seq.letters.reserve(total);
  for (u64 e : circuit)
    seq.letters.push_back(static_cast<std::uint8_t>(edge_letter(g, e)));
  return least_rotation(seq);
}

CyclicSeq line_lift(const CyclicSeq& s, int n, int m) {
  if (m < 1) fail(ErrKind::OutOfRange, "lift count must be >= 1");
  if (cycle_check(s, n) == CycleKind::Neither)
    fail(ErrKind::NotClosedPath,
         "sequence is not a closed path at order " + std::to_string(n));
  return s;
}

// ---------------------------------------------------------------------------
// One-factors
// ---------------------------------------------------------------------------

SuccessorMap extend_to_one_factor(const EdgeSet& g) {
  u64 qn = qpow(g.q, g.n);
  SuccessorMap f;
  f.q = g.q;
  f.n = g.n;
  f.succ.assign(qn, 255);
  std::vector<std::uint8_t> indeg(qn, 0);
  for (u64 e = g.edges.next_set(0); e < g.edges.size();
       e = g.edges.next_set(e + 1)) {
    u64 u = edge_init(g, e);
    if (f.succ[u] != 255)
      fail(ErrKind::NotOneRegular, "vertex with out-degree 2");
    f.succ[u] = static_cast<std::uint8_t>(e % g.q);
    u64 t = edge_term(g, e);
    if (indeg[t]++) fail(ErrKind::NotOneRegular, "vertex with in-degree 2");
  }
  // Successor candidates of u are z*q+b for z = u mod q^{n-1}; vertices with
  // the same z share one complete bipartite section, so filling ascending
  // always completes.
  u64 zmod = g.n >= 1 ? qpow(g.q, g.n - 1) : 1;
  for (u64 u = 0; u < qn; ++u) {
    if (f.succ[u] != 255) continue;
    u64 z = u % zmod;
    int pick = -1;
    for (int b = 0; b < g.q; ++b) {
      u64 t = (z * g.q + b) % qn;  // modulo only matters for n = 0
      if (!indeg[t]) {
        pick = b;
        indeg[t] = 1;
        break;
      }
    }
    if (pick < 0) fail(ErrKind::Internal, "one-factor completion stuck");
    f.succ[u] = static_cast<std::uint8_t>(pick);
  }
  return f;
}

namespace {

// One round of bipartite matching (Kuhn) on the vertices of g restricted to
// `allowed` edges; returns the matched successor letter per active vertex.
bool try_augment(const EdgeSet& g, const Bitset& allowed, u64 u,
                 std::vector<u64>& match_right, std::vector<char>& seen) {
  for (int b = 0; b < g.q; ++b) {
    u64 e = u * g.q + b;
    if (!allowed.test(e)) continue;
    u64 t = edge_term(g, e);
    if (seen[t]) continue;
    seen[t] = 1;
    if (match_right[t] == ~u64(0) ||
        try_augment(g, allowed, match_right[t], match_right, seen))
      {
        match_right[t] = u;
        return true;
      }
  }
  return false;
}

// Perfect matching on `active` vertices within `allowed`; returns edges.
std::vector<u64> perfect_matching(const EdgeSet& g, const Bitset& allowed,
                                  const std::vector<u64>& active) {
  u64 qn = qpow(g.q, g.n);
  std::vector<u64> match_right(qn, ~u64(0));
  std::vector<char> seen(qn);
  for (u64 u : active) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!try_augment(g, allowed, u, match_right, seen))
      fail(ErrKind::Internal, "matching failed on a regular graph");
  }
  std::vector<u64> edges;
  edges.reserve(active.size());
  for (u64 t = 0; t < qn; ++t)
    if (match_right[t] != ~u64(0)) {
      u64 u = match_right[t];
      for (int b = 0; b < g.q; ++b) {
        u64 e = u * g.q + b;
        if (allowed.test(e) && edge_term(g, e) == t) {
          edges.push_back(e);
          break;
        }
      }
    }
  return edges;
}

}  // namespace

std::vector<EdgeSet> one_factor_decomposition(const EdgeSet& g, int k) {
  if (k < 1) fail(ErrKind::OutOfRange, "k must be >= 1");
  u64 qn = qpow(g.q, g.n);
  std::vector<u64> outd(qn, 0), ind(qn, 0);
  for (u64 e = g.edges.next_set(0); e < g.edges.size();
       e = g.edges.next_set(e + 1)) {
    ++outd[edge_init(g, e)];
    ++ind[edge_term(g, e)];
  }
  std::vector<u64> active;
  for (u64 v = 0; v < qn; ++v) {
    if (outd[v] == 0 && ind[v] == 0) continue;
    if (outd[v] != static_cast<u64>(k) || ind[v] != static_cast<u64>(k))
      fail(ErrKind::NotKRegular,
           "vertex " + std::to_string(v) + " does not have in = out = k");
    active.push_back(v);
  }
  std::vector<EdgeSet> factors;
  Bitset remaining = g.edges;
  for (int round = 0; round < k; ++round) {
    EdgeSet gr = g;
    gr.edges = remaining;
    std::vector<u64> m = perfect_matching(gr, remaining, active);
    EdgeSet f = make_edge_set(g.q, g.n);
    for (u64 e : m) {
      f.edges.set(e);
      remaining.reset(e);
    }
    factors.push_back(std::move(f));
  }
  if (remaining.any()) fail(ErrKind::Internal, "decomposition left edges over");
  return factors;
}

// ---------------------------------------------------------------------------
// Cycles of every length (Lempel's construction)
// ---------------------------------------------------------------------------

namespace {

// The length-(n+1) windows of a cycle in B_q(n), as an edge set.
EdgeSet edges_of_cycle(const CyclicSeq& s, int n) {
  EdgeSet g = make_edge_set(s.q, n);
  size_t m = s.letters.size();
  for (size_t i = 0; i < m; ++i) g.edges.set(window(s, i, n + 1));
  if (g.edges.count() != m) fail(ErrKind::Internal, "walk reused an edge");
  return g;
}

// Connected subgraph of B_q(n) with in = out at every vertex and exactly L
// edges, 1 <= L <= q^{n+1}.  For L <= q^n a cycle does it; otherwise take an
// (m+1)-factor containing a one-factor that extends a cycle of length
// q^n - k', remove the cycle, and reconnect components with degree-neutral
// two-edge swaps.
EdgeSet conn_euler(int q, int n, u64 L) {
  if (n == 0) {
    EdgeSet g = make_edge_set(q, 0);
    for (u64 b = 0; b < L; ++b) g.edges.set(b);
    return g;
  }
  u64 qn = qpow(q, n);
  if (L <= qn) return edges_of_cycle(lempel_cycle(q, n, L), n);

  u64 m = (L - 1) / qn;  // 1 <= m <= q-1
  u64 k2 = L - m * qn;   // 1 <= k2 <= q^n
  u64 L2 = qn - k2;      // 0 <= L2 < q^n

  EdgeSet cyc = make_edge_set(q, n);
  SuccessorMap f0;
  if (L2 > 0) {
    cyc = edges_of_cycle(lempel_cycle(q, n, L2), n);
    f0 = extend_to_one_factor(cyc);
  } else {
    // cyclic left shift: successor of v appends the first letter of v
    f0.q = q;
    f0.n = n;
    f0.succ.resize(qn);
    u64 head = qpow(q, n - 1);
    for (u64 v = 0; v < qn; ++v)
      f0.succ[v] = static_cast<std::uint8_t>(v / head);
  }
  EdgeSet g = to_edges(f0);

  std::vector<u64> all(qn);
  std::iota(all.begin(), all.end(), 0);
  for (u64 round = 0; round < m; ++round) {
    // complement of the current j-factor is section-regular, so a perfect
    // matching always exists
    Bitset complement(g.edges.size());
    complement.fill();
    complement.and_not(g.edges);
    for (u64 e : perfect_matching(g, complement, all)) g.edges.set(e);
  }
  g.edges.and_not(cyc.edges);  // every vertex keeps out = in >= m >= 1

  // reconnect: replace u->s1, t1->v by u->v, t1->s1 across components
  while (true) {
    Dsu dsu(qn);
    for (u64 e = g.edges.next_set(0); e < g.edges.size();
         e = g.edges.next_set(e + 1))
      dsu.unite(edge_init(g, e), edge_term(g, e));
    u64 root = dsu.find(0);
    bool connected = true;
    for (u64 v = 0; v < qn && connected; ++v)
      connected = dsu.find(v) == root;
    if (connected) break;

    bool swapped = false;
    u64 qn1 = qpow(q, n - 1);
    for (u64 e = 0; e < g.edges.size() && !swapped; ++e) {
      u64 u = e / q, v = e % qn;
      if (dsu.find(u) == dsu.find(v)) continue;
      int bo = -1, ai = -1;
      for (int b = 0; b < q; ++b)
        if (g.edges.test(u * q + b)) {
          bo = b;
          break;
        }
      for (int a = 0; a < q; ++a)
        if (g.edges.test(static_cast<u64>(a) * qn + v)) {
          ai = a;
          break;
        }
      if (bo < 0 || ai < 0) fail(ErrKind::Internal, "isolated vertex");
      u64 companion =
          static_cast<u64>(ai) * qn + (u % qn1) * q + static_cast<u64>(bo);
      if (g.edges.test(e) || g.edges.test(companion))
        fail(ErrKind::Internal, "swap edge already present");
      g.edges.reset(u * q + static_cast<u64>(bo));
      g.edges.reset(static_cast<u64>(ai) * qn + v);
      g.edges.set(e);
      g.edges.set(companion);
      swapped = true;
    }
    if (!swapped) fail(ErrKind::Internal, "no reconnecting swap found");
  }
  if (g.edges.count() != L) fail(ErrKind::Internal, "edge count drifted");
  return g;
}

}  // namespace

CyclicSeq lempel_cycle(int q, int n, u64 L) {
  if (q < 2 || n < 0) fail(ErrKind::OutOfRange, "bad graph parameters");
  if (L < 1 || L > qpow(q, n))
    fail(ErrKind::OutOfRange, "cycle length out of range");
  if (L == 1) {
    CyclicSeq s;
    s.q = q;
    s.letters = {0};
    return s;
  }
  return line_lift(euler_circuit(conn_euler(q, n - 1, L)), n - 1, 1);
}

// ---------------------------------------------------------------------------
// k-regular subgraphs with a prescribed number of vertices
// ---------------------------------------------------------------------------

namespace {

// Dinic max-flow, just large enough for the bounded subgraph search.
struct Flow {
  struct E {
    int to, cap, rev;
  };
  std::vector<std::vector<E>> g;
  std::vector<int> lvl, it;
  explicit Flow(int n) : g(n), lvl(n), it(n) {}
  void add(int a, int b, int c) {
    g[a].push_back({b, c, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0, static_cast<int>(g[a].size()) - 1});
  }
  bool bfs(int s, int t) {
    std::fill(lvl.begin(), lvl.end(), -1);
    std::queue<int> bq;
    lvl[s] = 0;
    bq.push(s);
    while (!bq.empty()) {
      int v = bq.front();
      bq.pop();
      for (const E& e : g[v])
        if (e.cap > 0 && lvl[e.to] < 0) {
          lvl[e.to] = lvl[v] + 1;
          bq.push(e.to);
        }
    }
    return lvl[t] >= 0;
  }
  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[v]; i < static_cast<int>(g[v].size()); ++i) {
      E& e = g[v][i];
      if (e.cap > 0 && lvl[e.to] == lvl[v] + 1) {
        int d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }
  int run(int s, int t) {
    int total = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      int f;
      while ((f = dfs(s, t, 1 << 30)) > 0) total += f;
    }
    return total;
  }
};

// Exact test: does the vertex set S carry a k-regular subgraph?  If so the
// edges are returned.
bool regular_on(const EdgeSet& proto, const std::vector<u64>& s, int k,
                EdgeSet& out) {
  int L = static_cast<int>(s.size());
  std::map<u64, int> idx;
  for (int i = 0; i < L; ++i) idx[s[i]] = i;
  u64 qn = qpow(proto.q, proto.n);
  u64 zmod = proto.n >= 1 ? qpow(proto.q, proto.n - 1) : 1;
  Flow fl(2 * L + 2);
  int src = 2 * L, snk = 2 * L + 1;
  for (int i = 0; i < L; ++i) {
    fl.add(src, i, k);
    fl.add(L + i, snk, k);
    for (int b = 0; b < proto.q; ++b) {
      u64 t = (s[static_cast<size_t>(i)] % zmod) * proto.q +
              static_cast<u64>(b);
      t %= qn;  // n = 0 only
      auto it = idx.find(t);
      if (it != idx.end()) fl.add(i, L + it->second, 1);
    }
  }
  if (fl.run(src, snk) != k * L) return false;
  out = make_edge_set(proto.q, proto.n);
  for (int i = 0; i < L; ++i)
    for (const Flow::E& e : fl.g[static_cast<size_t>(i)])
      if (e.to >= L && e.to < 2 * L && e.cap == 0) {
        u64 u = s[static_cast<size_t>(i)], t = s[static_cast<size_t>(e.to - L)];
        // recover the connecting letter
        out.edges.set(u * proto.q + t % proto.q);
      }
  return true;
}

struct SubgraphSearch {
  const EdgeSet& proto;
  int k;
  u64 target;
  u64 budget;
  u64 nodes = 0;
  u64 qn;
  std::vector<u64> chosen;
  std::vector<int> state;        // 0 undecided, 1 in, 2 out
  std::vector<int> poss_out, poss_in;
  EdgeSet result;
  bool found = false, out_of_budget = false;

  SubgraphSearch(const EdgeSet& p, int k_, u64 L, u64 b)
      : proto(p), k(k_), target(L), budget(b), qn(qpow(p.q, p.n)),
        state(qn, 0), poss_out(qn, p.q), poss_in(qn, p.q),
        result(make_edge_set(p.q, p.n)) {}

  u64 succ(u64 v, int b) const {
    u64 zmod = proto.n >= 1 ? qpow(proto.q, proto.n - 1) : 1;
    return ((v % zmod) * proto.q + static_cast<u64>(b)) % qn;
  }
  u64 pred(u64 v, int a) const {
    return static_cast<u64>(a) * (qn / proto.q) + v / proto.q;
  }

  bool exclude(u64 v, std::vector<u64>& touched) {
    state[v] = 2;
    touched.push_back(v);
    for (int a = 0; a < proto.q; ++a) {
      u64 p = pred(v, a);
      if (--poss_out[p] < k && state[p] == 1) return false;
    }
    for (int b = 0; b < proto.q; ++b) {
      u64 t = succ(v, b);
      if (--poss_in[t] < k && state[t] == 1) return false;
    }
    return true;
  }
  void undo_exclude(const std::vector<u64>& touched) {
    for (u64 v : touched) {
      state[v] = 0;
      for (int a = 0; a < proto.q; ++a) ++poss_out[pred(v, a)];
      for (int b = 0; b < proto.q; ++b) ++poss_in[succ(v, b)];
    }
  }

  void dfs(u64 v, u64 picked) {
    if (found || out_of_budget) return;
    if (++nodes > budget) {
      out_of_budget = true;
      return;
    }
    if (picked == target) {
      if (regular_on(proto, chosen, k, result)) found = true;
      return;
    }
    if (v >= qn || picked + (qn - v) < target) return;
    // include v
    if (poss_out[v] >= k && poss_in[v] >= k) {
      state[v] = 1;
      chosen.push_back(v);
      dfs(v + 1, picked + 1);
      chosen.pop_back();
      state[v] = 0;
      if (found || out_of_budget) return;
    }
    // exclude v
    std::vector<u64> touched;
    if (exclude(v, touched)) dfs(v + 1, picked);
    undo_exclude(touched);
  }
};

}  // namespace

SubgraphResult k_regular_subgraph(int q, int n, int k, u64 L,
                                  u64 node_budget) {
  if (q < 2 || n < 0) fail(ErrKind::OutOfRange, "bad graph parameters");
  if (k < 1 || k > q) fail(ErrKind::OutOfRange, "need 1 <= k <= q");
  if (L < 1) fail(ErrKind::OutOfRange, "need L >= 1");
  SubgraphResult r;
  if (n == 0) {
    if (L != 1) {
      r.status = SubgraphResult::Status::Impossible;
      return r;
    }
    r.graph = make_edge_set(q, 0);
    for (int b = 0; b < k; ++b) r.graph.edges.set(static_cast<u64>(b));
    r.status = SubgraphResult::Status::Found;
    return r;
  }
  u64 qn = qpow(q, n);
  u64 kn = ipow(k, n), kn1 = ipow(k, n - 1);
  if (L > qn || L < kn || (L > kn && L < kn + kn1)) {
    r.status = SubgraphResult::Status::Impossible;
    return r;
  }
  if (k == q) {
    // only the full graph: the vertex set is closed under following edges
    if (L != qn) {
      r.status = SubgraphResult::Status::Impossible;
      return r;
    }
    r.graph = make_edge_set(q, n);
    r.graph.edges.fill();
    r.status = SubgraphResult::Status::Found;
    return r;
  }
  if (k == 1) {
    r.graph = edges_of_cycle(lempel_cycle(q, n, L), n);
    r.status = SubgraphResult::Status::Found;
    return r;
  }
  if (L == qn) {
    // shift-invariant k-factor: letter b may follow v when (b - first letter
    // of v) mod q < k
    r.graph = make_edge_set(q, n);
    u64 head = qpow(q, n - 1);
    for (u64 v = 0; v < qn; ++v) {
      int first = static_cast<int>(v / head);
      for (int b = 0; b < q; ++b)
        if ((b - first + q) % q < k) r.graph.edges.set(v * q + b);
    }
    r.status = SubgraphResult::Status::Found;
    return r;
  }
  if (L % kn1 == 0) {
    u64 width = L / kn1;  // = k + p
    if (width >= static_cast<u64>(k) && width <= static_cast<u64>(q)) {
      // words over {0..k+p-1} whose adjacent letters (x,y) satisfy
      // (y - x) mod (k+p) < k; the length-(n+1) ones are the edges
      r.graph = make_edge_set(q, n);
      int w = static_cast<int>(width);
      std::vector<int> digits(static_cast<size_t>(n) + 1, 0);
      // odometer over admissible words
      auto emit = [&](auto&& self, int pos, u64 val) -> void {
        if (pos == n + 1) {
          r.graph.edges.set(val);
          return;
        }
        for (int d = 0; d < w; ++d) {
          if (pos > 0) {
            int prev = digits[static_cast<size_t>(pos - 1)];
            if ((d - prev + w) % w >= k) continue;
          }
          digits[static_cast<size_t>(pos)] = d;
          self(self, pos + 1, val * static_cast<u64>(q) + static_cast<u64>(d));
        }
      };
      emit(emit, 0, 0);
      r.status = SubgraphResult::Status::Found;
      return r;
    }
  }
  if (qn > 4096) {
    r.status = SubgraphResult::Status::Unsupported;
    return r;
  }
  EdgeSet proto = make_edge_set(q, n);
  SubgraphSearch search(proto, k, L, node_budget);
  search.dfs(0, 0);
  if (search.found) {
    r.graph = search.result;
    r.status = SubgraphResult::Status::Found;
  } else if (search.out_of_budget) {
    r.status = SubgraphResult::Status::Unsupported;
  } else {
    r.status = SubgraphResult::Status::Impossible;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Maximal linear sequences (binary)
// ---------------------------------------------------------------------------

namespace {

// Period of the orbit of 10^{n-1} under u -> shift(u)|F(u); 2^n means "did
// not return within the bound" (possible for non-invertible maps).
u64 linear_period(int n, u64 cmask) {
  u64 s0 = u64(1) << (n - 1);
  u64 mask = (n == 64) ? ~u64(0) : (u64(1) << n) - 1;
  u64 s = s0;
  u64 steps = 0;
  do {
    int f = __builtin_popcountll(s & cmask) & 1;
    s = ((s << 1) & mask) | static_cast<u64>(f);
    ++steps;
    if (steps > mask) return steps;
  } while (s != s0);
  return steps;
}

u64 coeff_mask(const std::vector<std::uint8_t>& c) {
  int n = static_cast<int>(c.size());
  u64 m = 0;
  for (int i = 1; i <= n; ++i)
    if (c[static_cast<size_t>(i - 1)]) m |= u64(1) << (n - i);
  return m;
}

}  // namespace

std::vector<std::uint8_t> maximal_linear_map(int n) {
  if (n < 1 || n > 24)
    fail(n < 1 ? ErrKind::OutOfRange : ErrKind::Unsupported,
         "map order outside the implemented range");
  static std::map<int, std::vector<std::uint8_t>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  u64 full = (u64(1) << n) - 1;
  for (u64 m = 0; m < (u64(1) << (n - 1)); ++m) {
    u64 cmask = (u64(1) << (n - 1)) | m;  // c_1 = 1
    if (linear_period(n, cmask) == full) {
      std::vector<std::uint8_t> c(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        c[static_cast<size_t>(i - 1)] = (cmask >> (n - i)) & 1;
      cache[n] = c;
      return c;
    }
  }
  fail(ErrKind::Internal, "no maximal linear map found");
}

u64 count_maximal_linear_maps(int n) {
  if (n < 1 || n > 20) fail(ErrKind::OutOfRange, "count order out of range");
  u64 full = (u64(1) << n) - 1;
  u64 cnt = 0;
  for (u64 m = 0; m < (u64(1) << (n - 1)); ++m)
    if (linear_period(n, (u64(1) << (n - 1)) | m) == full) ++cnt;
  return cnt;
}

CyclicSeq linear_cycle(const std::vector<std::uint8_t>& coeffs) {
  int n = static_cast<int>(coeffs.size());
  if (n < 1 || n > 24) fail(ErrKind::OutOfRange, "bad coefficient vector");
  if (coeffs[0] != 1) fail(ErrKind::OutOfRange, "first coefficient must be 1");
  u64 cmask = coeff_mask(coeffs);
  u64 full = (u64(1) << n) - 1;
  if (linear_period(n, cmask) != full)
    fail(ErrKind::OutOfRange, "map is not maximal");
  CyclicSeq seq;
  seq.q = 2;
  seq.letters.reserve(full);
  u64 s = u64(1) << (n - 1);
  for (u64 i = 0; i < full; ++i) {
    seq.letters.push_back(static_cast<std::uint8_t>((s >> (n - 1)) & 1));
    int f = __builtin_popcountll(s & cmask) & 1;
    s = ((s << 1) & full) | static_cast<u64>(f);
  }
  return seq;
}

std::pair<CyclicSeq, CyclicSeq> golomb_split(int n, u64 L) {
  if (n < 2) fail(ErrKind::OutOfRange, "order must be >= 2");
  u64 N = (u64(1) << n) - 1;  // 2^n - 2 = N - 1
  if (L < 2 || L > N - 1) fail(ErrKind::OutOfRange, "need 2 <= L <= 2^n - 2");
  CyclicSeq w = linear_cycle(maximal_linear_map(n));
  // The letterwise difference of w and its L-rotation is a rotation of w, so
  // the window 0^{n-1}1 occurs; at that offset the two rotations agree for
  // n-1 letters and can be cross-spliced into cycles of length L and N-L.
  std::vector<std::uint8_t> d(N);
  for (u64 i = 0; i < N; ++i) d[i] = w.letters[i] ^ w.letters[(i + L) % N];
  u64 m = N;
  for (u64 i = 0; i < N && m == N; ++i) {
    bool ok = d[(i + static_cast<u64>(n) - 1) % N] == 1;
    for (int j = 0; ok && j < n - 1; ++j) ok = d[(i + static_cast<u64>(j)) % N] == 0;
    if (ok) m = i;
  }
  if (m == N) fail(ErrKind::Internal, "marker window not found");
  CyclicSeq c1, c2;
  c1.q = c2.q = 2;
  for (u64 i = 0; i < L; ++i) c1.letters.push_back(w.letters[(m + i) % N]);
  for (u64 i = L; i < N; ++i) c2.letters.push_back(w.letters[(m + i) % N]);
  return {least_rotation(c1), least_rotation(c2)};
}

bool regular_sequence_check(const CyclicSeq& s, u64 k, u64 L, int n) {
  check_seq(s);
  if (n < 0 || k < 1 || L < 1) fail(ErrKind::OutOfRange, "bad parameters");
  size_t m = s.letters.size();
  if (m != k * L) return false;
  std::vector<u64> verts(m), edges(m);
  for (size_t i = 0; i < m; ++i) {
    verts[i] = window(s, i, n);
    edges[i] = window(s, i, n + 1);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    return false;
  std::sort(verts.begin(), verts.end());
  u64 distinct = 0;
  for (size_t i = 0; i < m;) {
    size_t j = i;
    while (j < m && verts[j] == verts[i]) ++j;
    if (j - i != k) return false;
    ++distinct;
    i = j;
  }
  return distinct == L;
}

u64 count_hamilton_circuits(int q, int n) {
  u64 qn = qpow(q, n);
  if (qn > 64) fail(ErrKind::OutOfRange, "oracle limited to small graphs");
  std::vector<char> visited(qn, 0);
  u64 zmod = n >= 1 ? qpow(q, n - 1) : 1;
  u64 count = 0;
  auto dfs = [&](auto&& self, u64 v, u64 depth) -> void {
    if (depth == qn) {
      // close back to vertex 0
      if ((v % zmod) == 0) ++count;
      return;
    }
    for (int b = 0; b < q; ++b) {
      u64 t = ((v % zmod) * q + static_cast<u64>(b)) % qn;
      if (!visited[t]) {
        visited[t] = 1;
        self(self, t, depth + 1);
        visited[t] = 0;
      }
    }
  };
  visited[0] = 1;
  dfs(dfs, 0, 1);
  return count;
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

EdgeSet parse_edge_set(std::istream& in) {
  std::string line;
  int q = 0, n = -1;
  std::vector<std::string> raw;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    size_t s = line.find_first_not_of(" \t");
    if (s == std::string::npos) continue;
    line = line.substr(s);
    if (q == 0) {
      std::istringstream hs(line);
      std::string tok;
      auto as_int = [](const std::string& t) {
        int v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size())
          fail(ErrKind::InputError, "bad integer '" + t + "'");
        return v;
      };
      while (hs >> tok) {
        if (tok.rfind("q=", 0) == 0)
          q = as_int(tok.substr(2));
        else if (tok.rfind("n=", 0) == 0)
          n = as_int(tok.substr(2));
        else
          fail(ErrKind::InputError, "bad edge set header token " + tok);
      }
      if (q < 2 || q > 10 || n < 0)
        fail(ErrKind::InputError, "edge set header needs q=<int> n=<int>");
    } else {
      raw.push_back(line);
    }
  }
  if (q == 0) fail(ErrKind::InputError, "empty edge set file");
  EdgeSet g = make_edge_set(q, n);
  for (const std::string& s2 : raw) {
    Word w = parse_word(s2, q);
    if (w.len != n + 1)
      fail(ErrKind::InputError, "edge word must have length n+1");
    if (g.edges.test(w.val)) fail(ErrKind::InputError, "duplicate edge " + s2);
    g.edges.set(w.val);
  }
  return g;
}

void format_edge_set(std::ostream& out, const EdgeSet& g) {
  out << "q=" << g.q << " n=" << g.n << "\n";
  for (u64 e = g.edges.next_set(0); e < g.edges.size();
       e = g.edges.next_set(e + 1))
    out << to_string(Word{g.q, g.n + 1, e}) << "\n";
}

CyclicSeq parse_cyclic(std::string_view digits, int q) {
  if (q < 2 || q > 10) fail(ErrKind::InputError, "q out of range");
  CyclicSeq s;
  s.q = q;
  for (char c : digits) {
    if (c < '0' || c >= '0' + q)
      fail(ErrKind::InputError, std::string("bad digit '") + c + "'");
    s.letters.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (s.letters.empty()) fail(ErrKind::InputError, "empty sequence");
  return s;
}

std::string to_string(const CyclicSeq& s) {
  std::string out;
  out.reserve(s.letters.size());
  for (std::uint8_t a : s.letters) out.push_back(static_cast<char>('0' + a));
  return out;
}

}  // namespace fixfree
