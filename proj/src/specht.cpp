#include "luq/specht.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>

namespace luq {

namespace {

constexpr std::size_t kBatchSize = 16384;

double relative_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

long long square(long long x) { return x * x; }

void check_same_square(const Alphabet& a, const Alphabet& b) {
  if (a.letters.empty()) throw ShapeError("alphabet must be nonempty");
  if (a.letters.size() != b.letters.size())
    throw ShapeError("alphabets must have the same number of letters");
  const Index n = a.letters.front().rows();
  for (const auto& side : {&a, &b})
    for (const auto& m : side->letters)
      if (m.rows() != n || m.cols() != n)
        throw ShapeError("alphabet letters must all be square of one size");
}

// Enumerates canonical sequences of one length and hands them to the scan.
using LengthGenerator =
    std::function<void(int len, const std::function<void(const Word&)>&)>;
using TracePairFn = std::function<std::pair<double, double>(const Word&)>;

IdentityReport run_comparison(int max_len, double tol, long long ceiling,
                              std::string ceiling_note,
                              const CheckOptions& opt,
                              const LengthGenerator& generate,
                              const TracePairFn& traces) {
  if (max_len < 1) throw ShapeError("word-length horizon must be >= 1");
  if (!(tol >= 0)) throw ShapeError("tolerance must be nonnegative");
  IdentityReport rep;
  rep.ceiling = ceiling;
  rep.ceiling_note = std::move(ceiling_note);
  long long effective = max_len;
  if (ceiling > 0) effective = std::min<long long>(effective, ceiling);
  const int threads = std::max(1, opt.threads);

  std::vector<Word> batch;
  std::vector<double> lhs, rhs, res;
  bool stop = false;

  // Scans the buffered words; batches are fixed slices of the enumeration,
  // so verdict, first violation and residuals do not depend on threads.
  auto flush = [&]() {
    if (batch.empty()) return;
    const std::size_t nb = batch.size();
    lhs.assign(nb, 0.0);
    rhs.assign(nb, 0.0);
    res.assign(nb, 0.0);
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t x = lo; x < hi; ++x) {
        const auto [l, r] = traces(batch[x]);
        lhs[x] = l;
        rhs[x] = r;
        res[x] = relative_residual(l, r);
      }
    };
    if (threads > 1 && nb > 64) {
      std::vector<std::thread> pool;
      const std::size_t chunk = (nb + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(nb, static_cast<std::size_t>(t) * chunk);
        const std::size_t hi = std::min(nb, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    } else {
      work(0, nb);
    }
    for (std::size_t x = 0; x < nb; ++x) {
      ++rep.words_checked;
      rep.max_residual = std::max(rep.max_residual, res[x]);
      if (res[x] > tol && !rep.first_violation) {
        rep.first_violation = WordViolation{batch[x], lhs[x], rhs[x], res[x]};
        if (!opt.full_sweep) {
          stop = true;
          batch.clear();
          return;
        }
      }
    }
    batch.clear();
  };

  for (int len = 1; len <= effective && !stop; ++len) {
    rep.horizon = len;
    generate(len, [&](const Word& w) {
      if (stop) return;
      batch.push_back(w);
      if (batch.size() >= kBatchSize) flush();
    });
    flush();
  }

  if (rep.first_violation) {
    rep.verdict = IdentityReport::Verdict::distinguished;
  } else {
    rep.verdict = (ceiling > 0 && effective >= ceiling)
                      ? IdentityReport::Verdict::consistent
                      : IdentityReport::Verdict::inconclusive;
  }
  return rep;
}

LengthGenerator necklace_generator(int alphabet_size) {
  return [alphabet_size](int len, const std::function<void(const Word&)>& v) {
    for_each_necklace(alphabet_size, len, v);
  };
}

TracePairFn alphabet_traces(const Alphabet& a, const Alphabet& b) {
  return [&a, &b](const Word& w) {
    return std::make_pair(trace_of_word(a, w), trace_of_word(b, w));
  };
}

// Gram letters A_i A_j^t, i <= j, labelled with 1-based indices offset by
// `base` so two-block alphabets keep the global numbering.
void append_gram_letters(const std::vector<RealMatrix>& ms, int base,
                         char tag, Alphabet& out) {
  const int k = static_cast<int>(ms.size());
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      out.letters.push_back(ms[i] * ms[j].transpose());
      out.labels.push_back(std::string(1, tag) + std::to_string(base + i + 1) +
                           " " + std::string(1, tag) +
                           std::to_string(base + j + 1) + "^t");
    }
}

void check_uniform(const std::vector<RealMatrix>& ms, Index rows, Index cols,
                   const char* what) {
  for (const auto& m : ms)
    if (m.rows() != rows || m.cols() != cols)
      throw ShapeError(std::string(what) + ": matrices must share one shape");
}

}  // namespace

Word cyclic_canonical(const Word& w) {
  if (w.empty()) throw ShapeError("words must have length >= 1");
  Word best = w;
  Word rot = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

void for_each_necklace(int alphabet_size, int length,
                       const std::function<void(const Word&)>& visit) {
  if (alphabet_size < 1) throw ShapeError("alphabet size must be >= 1");
  if (length < 1) throw ShapeError("word length must be >= 1");
  std::vector<int> a(static_cast<std::size_t>(length) + 1, 0);
  Word out(static_cast<std::size_t>(length));
  std::function<void(int, int)> rec = [&](int t, int p) {
    if (t > length) {
      if (length % p == 0) {
        for (int i = 0; i < length; ++i) out[i] = a[i + 1];
        visit(out);
      }
      return;
    }
    a[t] = a[t - p];
    rec(t + 1, p);
    for (int j = a[t - p] + 1; j < alphabet_size; ++j) {
      a[t] = j;
      rec(t + 1, t);
    }
  };
  rec(1, 1);
}

std::vector<Word> enumerate_words(int alphabet_size, int max_len) {
  std::vector<Word> out;
  for (int len = 1; len <= max_len; ++len)
    for_each_necklace(alphabet_size, len,
                      [&out](const Word& w) { out.push_back(w); });
  return out;
}

double trace_of_word(const Alphabet& a, const Word& w) {
  if (w.empty()) throw ShapeError("words must have length >= 1");
  for (int letter : w)
    if (letter < 0 || letter >= static_cast<int>(a.letters.size()))
      throw IndexError("word letter out of alphabet range");
  const Index n = a.letters.front().rows();
  for (const auto& m : a.letters)
    if (m.rows() != n || m.cols() != n)
      throw ShapeError("trace_of_word: letters must be square of one size");
  RealMatrix p = a.letters[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) p *= a.letters[w[i]];
  return p.trace();
}

const char* to_string(IdentityReport::Verdict v) {
  switch (v) {
    case IdentityReport::Verdict::consistent:
      return "consistent";
    case IdentityReport::Verdict::distinguished:
      return "distinguished";
    case IdentityReport::Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int thread_cap_from_env() {
  const char* env = std::getenv("LU_EQUIV_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

int minimal_r(int m) {
  int r = 0;
  while (r * (r + 1) / 2 < m) ++r;
  return r;
}

long long laffey_bound(int n) {
  const long long a = 2LL * (static_cast<long long>(n) * n + 2);
  return (a + 2) / 3;  // ceil(a / 3)
}

long long pearcy_bound(int n) { return 2LL * n * n; }

long long jing_ceiling(int k, int m, int n) {
  return square((minimal_r(k) + 2LL) * (m + n));
}

long long futorny_ceiling(int k, int l_minus_k, int n1, int n2, int m) {
  const int r = minimal_r(std::max(k, l_minus_k));
  return square((r + 2LL) * (n1 + n2 + m));
}

IdentityReport compare_word_traces(const Alphabet& a, const Alphabet& b,
                                   int max_len, double tol, long long ceiling,
                                   std::string ceiling_note,
                                   const CheckOptions& opt) {
  check_same_square(a, b);
  return run_comparison(max_len, tol, ceiling, std::move(ceiling_note), opt,
                        necklace_generator(static_cast<int>(a.letters.size())),
                        alphabet_traces(a, b));
}

IdentityReport specht_check(const RealMatrix& a, const RealMatrix& b,
                            int max_len, double tol, const CheckOptions& opt) {
  if (a.rows() != a.cols())
    throw ShapeError("specht_check: matrices must be square");
  if (b.rows() != a.rows() || b.cols() != a.cols())
    throw ShapeError("specht_check: matrices must have equal shapes");
  const int n = static_cast<int>(a.rows());
  Alphabet wa{{a, a.transpose()}, {"A", "A^t"}};
  Alphabet wb{{b, b.transpose()}, {"B", "B^t"}};
  return compare_word_traces(
      wa, wb, max_len, tol, laffey_bound(n),
      "words in {A, A^t} of length <= ceil(2(n^2+2)/3), n = " +
          std::to_string(n),
      opt);
}

IdentityReport jing_check(const std::vector<RealMatrix>& as,
                          const std::vector<RealMatrix>& bs, int max_len,
                          double tol, const CheckOptions& opt) {
  if (as.empty() || as.size() != bs.size())
    throw ShapeError("jing_check: need two equally sized nonempty tuples");
  const Index m = as.front().rows();
  const Index n = as.front().cols();
  check_uniform(as, m, n, "jing_check");
  check_uniform(bs, m, n, "jing_check");
  Alphabet la, lb;
  append_gram_letters(as, 0, 'A', la);
  append_gram_letters(bs, 0, 'B', lb);
  const int k = static_cast<int>(as.size());
  return compare_word_traces(
      la, lb, max_len, tol,
      jing_ceiling(k, static_cast<int>(m), static_cast<int>(n)),
      "Gram-letter words of length <= [(r+2)(m+n)]^2, r(r+1)/2 >= k", opt);
}

IdentityReport futorny_two_block_check(const std::vector<RealMatrix>& a1s,
                                       const std::vector<RealMatrix>& a2s,
                                       const std::vector<RealMatrix>& b1s,
                                       const std::vector<RealMatrix>& b2s,
                                       int max_len, double tol,
                                       const CheckOptions& opt) {
  if (a1s.empty() || a2s.empty())
    throw ShapeError("futorny_two_block_check: both groups must be nonempty");
  if (a1s.size() != b1s.size() || a2s.size() != b2s.size())
    throw ShapeError("futorny_two_block_check: group sizes must match");
  const Index m = a1s.front().rows();
  const Index n1 = a1s.front().cols();
  const Index n2 = a2s.front().cols();
  check_uniform(a1s, m, n1, "futorny_two_block_check group 1");
  check_uniform(b1s, m, n1, "futorny_two_block_check group 1");
  check_uniform(a2s, m, n2, "futorny_two_block_check group 2");
  check_uniform(b2s, m, n2, "futorny_two_block_check group 2");
  const int k = static_cast<int>(a1s.size());
  const int lmk = static_cast<int>(a2s.size());
  Alphabet la, lb;
  append_gram_letters(a1s, 0, 'A', la);
  append_gram_letters(a2s, k, 'A', la);
  append_gram_letters(b1s, 0, 'B', lb);
  append_gram_letters(b2s, k, 'B', lb);
  return compare_word_traces(
      la, lb, max_len, tol,
      futorny_ceiling(k, lmk, static_cast<int>(n1), static_cast<int>(n2),
                      static_cast<int>(m)),
      "Gram-letter words of length <= [(r+2)(n1+n2+m)]^2, "
      "r(r+1)/2 >= max{k, l-k}",
      opt);
}

long long quiver_ceiling(const Quiver& q, const std::vector<int>& dims) {
  int max_parallel = 0;
  std::vector<std::vector<int>> counts(
      static_cast<std::size_t>(q.vertex_count),
      std::vector<int>(static_cast<std::size_t>(q.vertex_count), 0));
  std::vector<bool> incident(static_cast<std::size_t>(q.vertex_count), false);
  for (const auto& [u, v] : q.arrows) {
    max_parallel = std::max(max_parallel, ++counts[v][u]);
    incident[u] = incident[v] = true;
  }
  long long dim_sum = 0;  // vertices without arrows contribute dimension 0
  for (int v = 0; v < q.vertex_count; ++v)
    if (incident[v]) dim_sum += dims[v];
  return square((minimal_r(max_parallel) + 2LL) * dim_sum);
}

IdentityReport quiver_cycle_check(const Quiver& q, const QuiverMatrixRep& a,
                                  const QuiverMatrixRep& b, int max_len,
                                  double tol, const CheckOptions& opt) {
  if (q.vertex_count < 1) throw QuiverError("quiver needs at least one vertex");
  for (const auto& [u, v] : q.arrows)
    if (u < 0 || u >= q.vertex_count || v < 0 || v >= q.vertex_count)
      throw QuiverError("arrow endpoint out of vertex range");
  for (const auto* rep : {&a, &b}) {
    if (static_cast<int>(rep->dims.size()) != q.vertex_count)
      throw ShapeError("representation needs one dimension per vertex");
    if (rep->mats.size() != q.arrows.size())
      throw ShapeError("representation needs one matrix per arrow");
  }
  if (a.dims != b.dims)
    throw ShapeError("the two representations must share all dimensions");
  const std::size_t m = q.arrows.size();
  for (std::size_t t = 0; t < m; ++t) {
    const auto& [u, v] = q.arrows[t];
    for (const auto* rep : {&a, &b})
      if (rep->mats[t].rows() != rep->dims[v] ||
          rep->mats[t].cols() != rep->dims[u])
        throw ShapeError("arrow matrix " + std::to_string(t) +
                         " must be d_target x d_source");
  }

  // Doubled quiver: arrow t+m is the reverse of arrow t and carries the
  // transpose of its matrix.
  std::vector<int> src(2 * m), dst(2 * m);
  std::vector<RealMatrix> ma(2 * m), mb(2 * m);
  for (std::size_t t = 0; t < m; ++t) {
    src[t] = q.arrows[t].first;
    dst[t] = q.arrows[t].second;
    ma[t] = a.mats[t];
    mb[t] = b.mats[t];
    src[t + m] = q.arrows[t].second;
    dst[t + m] = q.arrows[t].first;
    ma[t + m] = a.mats[t].transpose();
    mb[t + m] = b.mats[t].transpose();
  }
  std::vector<std::vector<int>> by_dst(
      static_cast<std::size_t>(q.vertex_count));
  for (std::size_t t = 0; t < 2 * m; ++t)
    by_dst[static_cast<std::size_t>(dst[t])].push_back(static_cast<int>(t));

  // Cycles are arrow sequences whose product is a valid square chain:
  // src(a_i) = dst(a_{i+1}) cyclically.  Deduplicated by keeping only the
  // lexicographically least rotation of the arrow-id sequence.
  auto generate = [&](int len, const std::function<void(const Word&)>& visit) {
    Word seq(static_cast<std::size_t>(len));
    std::function<void(int)> rec = [&](int pos) {
      if (pos == len) {
        if (src[seq[len - 1]] != dst[seq[0]]) return;
        if (cyclic_canonical(seq) == seq) visit(seq);
        return;
      }
      for (int t : by_dst[static_cast<std::size_t>(src[seq[pos - 1]])]) {
        seq[pos] = t;
        rec(pos + 1);
      }
    };
    for (std::size_t t = 0; t < 2 * m; ++t) {
      seq[0] = static_cast<int>(t);
      if (len == 1) {
        if (src[t] == dst[t] && cyclic_canonical(seq) == seq) visit(seq);
      } else {
        rec(1);
      }
    }
  };

  auto traces = [&](const Word& w) {
    RealMatrix pa = ma[w[0]];
    RealMatrix pb = mb[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
      pa *= ma[w[i]];
      pb *= mb[w[i]];
    }
    return std::make_pair(pa.trace(), pb.trace());
  };

  return run_comparison(max_len, tol, quiver_ceiling(q, a.dims),
                        "cycles in the doubled quiver of length <= "
                        "[(r+2) * sum of vertex dimensions]^2",
                        opt, generate, traces);
}

}  // namespace luq
