#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "fixfree/words.hpp"

namespace fixfree {

// ---------------------------------------------------------------------------
// The order-n de Bruijn graph B_q(n)
// ---------------------------------------------------------------------------
//
// Vertices are the words of length n, edges the words of length n+1: the edge
// d_0...d_n runs from d_0...d_{n-1} to d_1...d_n and carries the letter d_0.
// A closed walk is recorded as the cyclic sequence of its edge letters, so
// the length-n windows (with wraparound) of the letter sequence are exactly
// the vertices visited and the length-(n+1) windows the edges used.

struct EdgeSet {
  int q = 2;
  int n = 0;      // graph order: vertices are words of length n
  Bitset edges;   // subsets of A^{n+1}, indexed by num
};

EdgeSet make_edge_set(int q, int n);
u64 edge_init(const EdgeSet& g, u64 e);    // first n letters
u64 edge_term(const EdgeSet& g, u64 e);    // last n letters
int edge_letter(const EdgeSet& g, u64 e);  // first letter
u64 out_degree(const EdgeSet& g, u64 v);
u64 in_degree(const EdgeSet& g, u64 v);

// A cyclic sequence of letters; index arithmetic is modulo the length.
struct CyclicSeq {
  int q = 2;
  std::vector<std::uint8_t> letters;
};

// A one-factor of B_q(n) stored as the appended letter per vertex: the
// successor of v is (v mod q^{n-1})*q + succ[v].
struct SuccessorMap {
  int q = 2;
  int n = 0;
  std::vector<std::uint8_t> succ;
};

EdgeSet to_edges(const SuccessorMap& f);

// Lexicographically least rotation (Booth's algorithm); cyclic sequences are
// reported in this canonical form so outputs are byte-stable.
CyclicSeq least_rotation(const CyclicSeq& s);

enum class CycleKind { Neither, ClosedPath, Cycle };

// Strongest property of the sequence read as a closed walk in B_q(n):
// a closed path uses no edge twice (all length-(n+1) windows distinct),
// a cycle additionally visits no vertex twice.
CycleKind cycle_check(const CyclicSeq& s, int n);

// Euler circuit of the non-isolated part of g, as its letter sequence in
// canonical rotation.  Ties are broken by always leaving along the unused
// edge with the smallest num, starting from the init vertex of the smallest
// edge.  Throws NotEulerian / Disconnected when no circuit exists.
CyclicSeq euler_circuit(const EdgeSet& g);

// A closed path in B_q(n) is a cycle in B_q(n+1) with the same letters, and
// lifting preserves this; line_lift checks the precondition and re-labels the
// walk m orders higher.  Throws NotClosedPath.
CyclicSeq line_lift(const CyclicSeq& s, int n, int m);

// Cycle of length L in B_q(n), any 1 <= L <= q^n.
CyclicSeq lempel_cycle(int q, int n, u64 L);

// Complete a partial one-factor (out/in degree <= 1 everywhere) to a full
// one-factor, filling each free slot with the smallest available letter.
// Throws NotOneRegular.
SuccessorMap extend_to_one_factor(const EdgeSet& g);

// Split a k-regular edge set (in = out = k on every non-isolated vertex)
// into k one-factors of its vertex set.  Throws NotKRegular.
std::vector<EdgeSet> one_factor_decomposition(const EdgeSet& g, int k);

// k-regular subgraph of B_q(n) with exactly L vertices.
struct SubgraphResult {
  enum class Status { Found, Impossible, Unsupported };
  Status status = Status::Unsupported;
  EdgeSet graph;
};

SubgraphResult k_regular_subgraph(int q, int n, int k, u64 L,
                                  u64 node_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Maximal linear sequences (binary)
// ---------------------------------------------------------------------------

// Coefficients c_1..c_n (c_1 = 1) of a map F(u) = sum c_i u_i mod 2 whose
// orbit from 10^{n-1} has full period 2^n - 1.  The first such coefficient
// vector in ascending order of (c_2,...,c_n); results are cached.
std::vector<std::uint8_t> maximal_linear_map(int n);
u64 count_maximal_linear_maps(int n);

// The period-(2^n - 1) letter sequence generated by F from state 10^{n-1}.
CyclicSeq linear_cycle(const std::vector<std::uint8_t>& coeffs);

// Split a maximal linear cycle in B_2(n) into vertex-disjoint cycles of
// lengths L and 2^n - 1 - L, for 2 <= L <= 2^n - 2.
std::pair<CyclicSeq, CyclicSeq> golomb_split(int n, u64 L);

// Does s visit exactly L distinct length-n windows, each exactly k times,
// with all length-(n+1) windows distinct (so |s| = kL)?
bool regular_sequence_check(const CyclicSeq& s, u64 k, u64 L, int n);

// Brute-force count of Hamilton circuits of B_q(n); test oracle only.
u64 count_hamilton_circuits(int q, int n);

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------
//
// EdgeSet:    line "q=2 n=3", then one edge word (length n+1) per line.
// CyclicSeq:  a single line of digits.

EdgeSet parse_edge_set(std::istream& in);
void format_edge_set(std::ostream& out, const EdgeSet& g);
CyclicSeq parse_cyclic(std::string_view digits, int q);
std::string to_string(const CyclicSeq& s);

}  // namespace fixfree
