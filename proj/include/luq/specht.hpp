#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "luq/hypermatrix.hpp"

namespace luq {

/// A word over a matrix alphabet: letter indices, length >= 1.
using Word = std::vector<int>;

/// Lexicographically least rotation.
Word cyclic_canonical(const Word& w);

/// Visits every cyclic equivalence class of words of exactly `length` over
/// `alphabet_size` letters once, in lexicographic order of the canonical
/// representatives.
void for_each_necklace(int alphabet_size, int length,
                       const std::function<void(const Word&)>& visit);

/// All canonical words of length 1..max_len, ascending length then lex.
std::vector<Word> enumerate_words(int alphabet_size, int max_len);

/// Ordered set of same-sized square matrices with display labels.
struct Alphabet {
  std::vector<RealMatrix> letters;
  std::vector<std::string> labels;
};

/// Trace of the ordered product of the word's letters.
double trace_of_word(const Alphabet& a, const Word& w);

struct WordViolation {
  Word word;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
};

/// Outcome of a trace-identity comparison.
///
/// `consistent` certifies equivalence: it is only reported when the scanned
/// horizon reaches the criterion's theoretical completeness ceiling.  Below
/// the ceiling an unviolated run is `inconclusive` (consistent at the
/// configured horizon, nothing more).  `distinguished` is always certified.
struct IdentityReport {
  enum class Verdict { consistent, distinguished, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  int horizon = 0;          // longest word length actually scanned
  long long ceiling = 0;    // completeness ceiling for this criterion
  std::string ceiling_note;
  long long words_checked = 0;
  double max_residual = 0;
  std::optional<WordViolation> first_violation;
};

const char* to_string(IdentityReport::Verdict v);

struct CheckOptions {
  int threads = 1;          // parallel word sweep when > 1
  bool full_sweep = false;  // no early exit; scan the whole horizon
};

/// Reads LU_EQUIV_THREADS (>= 1); defaults to 1.
int thread_cap_from_env();

/// Smallest r with r(r+1)/2 >= m.
int minimal_r(int m);

/// Word-length ceilings: Laffey's ceil(2(n^2+2)/3) and Pearcy's 2n^2 for
/// single-matrix orthogonal similarity; the tuple generalizations use
/// [(r+2) * (sum of block dimensions)]^2.
long long laffey_bound(int n);
long long pearcy_bound(int n);
long long jing_ceiling(int k, int m, int n);
long long futorny_ceiling(int k, int l_minus_k, int n1, int n2, int m);

/// Core comparison: scans canonical words of length 1..min(max_len, ceiling)
/// and compares Tr(w{a}) against Tr(w{b}) with relative tolerance
/// |lhs - rhs| <= tol * max(1, |lhs|).  Stops at the first violation unless
/// `full_sweep` is set.  Deterministic for any thread count.
IdentityReport compare_word_traces(const Alphabet& a, const Alphabet& b,
                                   int max_len, double tol, long long ceiling,
                                   std::string ceiling_note,
                                   const CheckOptions& opt = {});

/// Orthogonal similarity of two square matrices: words in {A, A^t}.
IdentityReport specht_check(const RealMatrix& a, const RealMatrix& b,
                            int max_len, double tol,
                            const CheckOptions& opt = {});

/// Simultaneous orthogonal equivalence of two k-tuples of m x n matrices:
/// words in the Gram letters {A_i A_j^t : i <= j}.
IdentityReport jing_check(const std::vector<RealMatrix>& as,
                          const std::vector<RealMatrix>& bs, int max_len,
                          double tol, const CheckOptions& opt = {});

/// Two-block simultaneous orthogonal equivalence: group 1 has k matrices
/// (m x n1), group 2 has l-k matrices (m x n2); the alphabet is the union of
/// the per-group Gram letters, all m x m.
IdentityReport futorny_two_block_check(const std::vector<RealMatrix>& a1s,
                                       const std::vector<RealMatrix>& a2s,
                                       const std::vector<RealMatrix>& b1s,
                                       const std::vector<RealMatrix>& b2s,
                                       int max_len, double tol,
                                       const CheckOptions& opt = {});

/// Directed multigraph; loops and parallel arrows allowed.  Vertices are
/// 0-based; an arrow is (source, target).
struct Quiver {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> arrows;
};

/// Matrix representation: dims[v] per vertex, one d_target x d_source matrix
/// per arrow.
struct QuiverMatrixRep {
  std::vector<int> dims;
  std::vector<RealMatrix> mats;
};

long long quiver_ceiling(const Quiver& q, const std::vector<int>& dims);

/// Isometry test for two representations of the same quiver: compares traces
/// of all oriented cycles (up to rotation) in the doubled quiver, where each
/// added arrow carries the transpose of its partner's matrix.  Cycle length
/// counts arrows.
IdentityReport quiver_cycle_check(const Quiver& q, const QuiverMatrixRep& a,
                                  const QuiverMatrixRep& b, int max_len,
                                  double tol, const CheckOptions& opt = {});

}  // namespace luq
