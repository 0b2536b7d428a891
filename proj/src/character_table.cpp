#include "amcheck/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amcheck/errors.hpp"

namespace amc {

namespace {

using Row = std::vector<uint32_t>;
using Matrix = std::vector<Row>;

// Reduced row echelon form over F_p; drops zero rows, returns pivot
// columns.  Canonical for a given row span.
std::vector<int> rref(Matrix& rows, const PrimeField& F) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int ncols = static_cast<int>(rows[0].size());
  size_t rank = 0;
  for (int c = 0; c < ncols && rank < rows.size(); ++c) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    uint32_t d = F.inv(rows[rank][c]);
    for (int cc = c; cc < ncols; ++cc)
      rows[rank][cc] = F.mul(rows[rank][cc], d);
    for (size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][c] == 0) continue;
      uint32_t f = rows[rr][c];
      for (int cc = c; cc < ncols; ++cc)
        rows[rr][cc] = F.sub(rows[rr][cc], F.mul(f, rows[rank][cc]));
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

struct Space {
  Matrix basis;  // RREF rows spanning the subspace (as column vectors)
  std::vector<int> pivots;
  int dim() const { return static_cast<int>(basis.size()); }
};

// Matrix of the action of A on the subspace, in the RREF basis (the
// subspace is A-invariant; coordinates are read off at pivot columns).
Matrix restricted_matrix(const Matrix& A, const Space& S,
                         const PrimeField& F) {
  const int m = S.dim();
  const int n = static_cast<int>(A.size());
  Matrix R(m, Row(m, 0));
  for (int j = 0; j < m; ++j) {
    Row w(n, 0);
    for (int t = 0; t < n; ++t) {
      uint64_t acc = 0;
      for (int c = 0; c < n; ++c)
        acc += static_cast<uint64_t>(A[t][c]) * S.basis[j][c] % F.modulus();
      w[t] = static_cast<uint32_t>(acc % F.modulus());
    }
    for (int t = 0; t < m; ++t) R[t][j] = w[S.pivots[t]];
  }
  return R;
}

// Characteristic polynomial via similarity reduction to Hessenberg form
// and the standard leading-minor recurrence.  Ascending coefficients,
// monic of degree m.
Row charpoly(Matrix H, const PrimeField& F) {
  const int m = static_cast<int>(H.size());
  for (int c = 0; c + 2 < m; ++c) {
    int piv = -1;
    for (int r = c + 1; r < m; ++r)
      if (H[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      std::swap(H[piv], H[c + 1]);
      for (int r = 0; r < m; ++r) std::swap(H[r][piv], H[r][c + 1]);
    }
    uint32_t d = F.inv(H[c + 1][c]);
    for (int r = c + 2; r < m; ++r) {
      if (!H[r][c]) continue;
      uint32_t f = F.mul(H[r][c], d);
      for (int cc = 0; cc < m; ++cc)
        H[r][cc] = F.sub(H[r][cc], F.mul(f, H[c + 1][cc]));
      for (int rr = 0; rr < m; ++rr)
        H[rr][c + 1] = F.add(H[rr][c + 1], F.mul(f, H[rr][r]));
    }
  }
  std::vector<Row> P(m + 1);
  P[0] = Row{1};
  for (int k = 1; k <= m; ++k) {
    // (x - H[k-1][k-1]) * P[k-1]
    Row q(k + 1, 0);
    uint32_t a = H[k - 1][k - 1];
    for (int i = 0; i < k; ++i) {
      q[i + 1] = F.add(q[i + 1], P[k - 1][i]);
      q[i] = F.sub(q[i], F.mul(a, P[k - 1][i]));
    }
    uint32_t prod = 1;
    for (int i = k - 2; i >= 0; --i) {
      prod = F.mul(prod, H[i + 1][i]);
      if (prod == 0) break;
      uint32_t coef = F.mul(H[i][k - 1], prod);
      if (!coef) continue;
      for (int t = 0; t <= i; ++t) q[t] = F.sub(q[t], F.mul(coef, P[i][t]));
    }
    P[k] = std::move(q);
  }
  return P[m];
}

// Distinct roots in ascending order, found by scanning F_p and dividing
// out each root to full multiplicity.
std::vector<uint32_t> poly_roots(Row poly, const PrimeField& F) {
  std::vector<uint32_t> roots;
  for (uint32_t lam = 0; lam < F.modulus() && poly.size() > 1; ++lam) {
    bool hit = false;
    for (;;) {
      // Synthetic division: quotient b, remainder rem.
      const int d = static_cast<int>(poly.size()) - 1;
      if (d == 0) break;
      Row b(d, 0);
      b[d - 1] = poly[d];
      for (int i = d - 1; i >= 1; --i)
        b[i - 1] = F.add(poly[i], F.mul(lam, b[i]));
      uint32_t rem = F.add(poly[0], F.mul(lam, b[0]));
      if (rem != 0) break;
      poly = std::move(b);
      hit = true;
    }
    if (hit) roots.push_back(lam);
  }
  return roots;
}

// Canonical kernel basis of M (free-variable vectors after RREF).
Matrix kernel_basis(Matrix M, const PrimeField& F) {
  const int m = static_cast<int>(M.size());
  std::vector<int> pivots = rref(M, F);
  std::vector<char> is_pivot(m, 0);
  for (int c : pivots) is_pivot[c] = 1;
  Matrix out;
  for (int fc = 0; fc < m; ++fc) {
    if (is_pivot[fc]) continue;
    Row v(m, 0);
    v[fc] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = F.neg(M[r][fc]);
    out.push_back(std::move(v));
  }
  return out;
}

long long isqrt_exact(long long v) {
  long long r = static_cast<long long>(std::llround(std::sqrt(double(v))));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

AnalysisContext make_context_for(long long exponent, long long min_order) {
  if (exponent < 1 || min_order < 1)
    throw InputError("context parameters must be positive");
  AnalysisContext ctx;
  ctx.exponent = exponent;
  ctx.p = next_prime_1_mod(static_cast<uint32_t>(exponent),
                           static_cast<uint32_t>(min_order));
  ctx.field = PrimeField(ctx.p);
  uint32_t gamma = smallest_primitive_root(ctx.p);
  ctx.omega = ctx.field.pow(gamma, (ctx.p - 1) / exponent);
  return ctx;
}

AnalysisContext make_context(const PermGroup& G) {
  return make_context_for(G.classes().exponent, G.order());
}

std::vector<std::vector<uint32_t>> class_matrix(const PermGroup& G, int i,
                                                const AnalysisContext& ctx) {
  const ConjugacyData& cd = G.classes();
  const int r = cd.count();
  if (i < 0 || i >= r) throw InputError("class index out of range");
  std::vector<int> members;
  members.reserve(cd.sizes[i]);
  for (long long e = 0; e < G.order(); ++e)
    if (cd.class_of[e] == i) members.push_back(static_cast<int>(e));
  std::vector<std::vector<long long>> acc(r, std::vector<long long>(r, 0));
  for (int k = 0; k < r; ++k) {
    const int zk = cd.reps[k];
    for (int x : members) ++acc[cd.class_of[G.mul(G.inv(x), zk)]][k];
  }
  Matrix A(r, Row(r, 0));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) A[j][k] = ctx.field.reduce(acc[j][k]);
  return A;
}

CharacterTable character_table(const PermGroup& G,
                               const AnalysisContext& ctx) {
  const ConjugacyData& cd = G.classes();
  const int r = cd.count();
  const PrimeField& F = ctx.field;
  if (static_cast<long long>(ctx.p) <= G.order())
    throw InputError("context modulus must exceed the group order");
  if (ctx.exponent % cd.exponent != 0)
    throw InputError("context exponent must be a multiple of the group's");

  // Split F_p^r under the commuting class-sum matrices.
  std::vector<Space> spaces;
  {
    Space whole;
    whole.basis = Matrix(r, Row(r, 0));
    for (int i = 0; i < r; ++i) {
      whole.basis[i][i] = 1;
      whole.pivots.push_back(i);
    }
    spaces.push_back(std::move(whole));
  }
  for (int i = 1; i < r; ++i) {
    bool split_done = true;
    for (const Space& S : spaces)
      if (S.dim() > 1) split_done = false;
    if (split_done) break;
    Matrix A = class_matrix(G, i, ctx);
    std::vector<Space> next;
    for (Space& S : spaces) {
      if (S.dim() == 1) {
        next.push_back(std::move(S));
        continue;
      }
      Matrix R = restricted_matrix(A, S, F);
      const int m = S.dim();
      std::vector<uint32_t> roots = poly_roots(charpoly(R, F), F);
      int total = 0;
      for (uint32_t lam : roots) {
        Matrix M = R;
        for (int t = 0; t < m; ++t) M[t][t] = F.sub(M[t][t], lam);
        Matrix ker = kernel_basis(std::move(M), F);
        if (ker.empty()) continue;
        total += static_cast<int>(ker.size());
        Space sub;
        for (const Row& c : ker) {
          Row v(r, 0);
          for (int j = 0; j < m; ++j) {
            if (!c[j]) continue;
            for (int t = 0; t < r; ++t)
              v[t] = F.add(v[t], F.mul(c[j], S.basis[j][t]));
          }
          sub.basis.push_back(std::move(v));
        }
        sub.pivots = rref(sub.basis, F);
        next.push_back(std::move(sub));
      }
      if (total != m)
        throw InternalError("class-sum matrix failed to diagonalize");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != r)
    throw InternalError("eigenspace splitting incomplete");

  CharacterTable T;
  T.group = &G;
  T.ctx = ctx;
  T.num_classes = r;
  const uint32_t order_mod = F.reduce(G.order());
  std::vector<std::pair<long long, Row>> rows;
  for (const Space& S : spaces) {
    if (S.dim() != 1) throw InternalError("eigenspace splitting incomplete");
    const Row& v = S.basis[0];
    if (v[0] == 0)
      throw InternalError("character eigenvector vanishes on the identity");
    uint32_t norm = F.inv(v[0]);
    Row w(r);
    for (int k = 0; k < r; ++k) w[k] = F.mul(v[k], norm);
    // 1/d^2 = (1/|G|) * sum_k w_k w_{k*} / h_k.
    uint32_t s = 0;
    for (int k = 0; k < r; ++k)
      s = F.add(s, F.mul(F.mul(w[k], w[cd.inverse_class[k]]),
                         F.inv(F.reduce(cd.sizes[k]))));
    if (s == 0) throw InternalError("degree computation degenerated");
    uint32_t dsq = F.mul(order_mod, F.inv(s));
    long long d = isqrt_exact(dsq);
    if (d * d != dsq || d < 1)
      throw InternalError("character degree is not an exact square root");
    Row vals(r);
    for (int k = 0; k < r; ++k)
      vals[k] = F.mul(F.mul(F.reduce(d), w[k]),
                      F.inv(F.reduce(cd.sizes[k])));
    rows.emplace_back(d, std::move(vals));
  }
  std::sort(rows.begin(), rows.end());
  long long degsum = 0;
  for (auto& [d, vals] : rows) {
    degsum += d * d;
    T.degrees.push_back(d);
    T.values.push_back(std::move(vals));
  }
  if (degsum != G.order())
    throw InternalError("degree squares do not sum to the group order");
  // First and second orthogonality relations, mod p.
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      uint32_t s = 0;
      for (int k = 0; k < r; ++k)
        s = F.add(s, F.mul(F.reduce(cd.sizes[k]),
                           F.mul(T.values[i][k],
                                 T.values[j][cd.inverse_class[k]])));
      if (s != (i == j ? order_mod : 0))
        throw InternalError("row orthogonality failed");
    }
  for (int k = 0; k < r; ++k)
    for (int l = k; l < r; ++l) {
      uint32_t s = 0;
      for (int i = 0; i < r; ++i)
        s = F.add(s, F.mul(T.values[i][k],
                           T.values[i][cd.inverse_class[l]]));
      uint32_t want = k == l ? F.reduce(G.order() / cd.sizes[k]) : 0;
      if (s != want) throw InternalError("column orthogonality failed");
    }
  return T;
}

CharacterTable character_table(const PermGroup& G) {
  return character_table(G, make_context(G));
}

CyclotomicValue lift_value(const CharacterTable& T, int row, int cls) {
  const PermGroup& G = *T.group;
  const ConjugacyData& cd = G.classes();
  if (row < 0 || row >= T.rows() || cls < 0 || cls >= T.num_classes)
    throw InputError("table position out of range");
  const PrimeField& F = T.ctx.field;
  const long long e = T.ctx.exponent;
  const int g = cd.reps[cls];
  CyclotomicValue out;
  out.e = e;
  out.coeffs.assign(e, 0);
  // chi(g^t) for t = 0..e-1 (period divides e).
  std::vector<uint32_t> powvals(e);
  for (long long t = 0; t < e; ++t)
    powvals[t] = T.values[row][cd.class_of[G.power(g, t)]];
  const uint32_t einv = F.inv(F.reduce(e));
  for (long long k = 0; k < e; ++k) {
    uint32_t s = 0;
    for (long long t = 0; t < e; ++t) {
      uint64_t tk = static_cast<uint64_t>(t) * k % e;
      s = F.add(s, F.mul(powvals[t], F.pow(T.ctx.omega, (e - tk) % e)));
    }
    uint32_t m = F.mul(einv, s);
    if (m > T.degrees[row])
      throw InternalError("root-of-unity multiplicity exceeds the degree");
    out.coeffs[k] = m;
  }
  long long total = 0;
  for (long long c : out.coeffs) total += c;
  if (total != T.degrees[row])
    throw InternalError("root-of-unity multiplicities do not sum to degree");
  return out;
}

std::string CyclotomicValue::to_string() const {
  // Fold zeta^0 = 1 and zeta^(e/2) = -1 into a rational part.
  long long rat = coeffs.empty() ? 0 : coeffs[0];
  std::ostringstream out;
  bool first = true;
  for (long long k = e - 1; k >= 1; --k) {
    if (e % 2 == 0 && k == e / 2) {
      rat -= coeffs[k];
      continue;
    }
    if (!coeffs[k]) continue;
    if (!first) out << "+";
    first = false;
    if (coeffs[k] != 1) out << coeffs[k] << "*";
    out << "z" << e;
    if (k != 1) out << "^" << k;
  }
  if (rat > 0) {
    if (!first) out << "+";
    out << rat;
    first = false;
  } else if (rat < 0) {
    out << "-" << -rat;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string table_text(const CharacterTable& T) {
  const ConjugacyData& cd = T.group->classes();
  std::ostringstream out;
  out << "order " << T.group->order() << ", classes " << T.num_classes
      << " (sizes";
  for (int k = 0; k < T.num_classes; ++k) out << " " << cd.sizes[k];
  out << "), modulus " << T.ctx.p << "\n";
  for (int i = 0; i < T.rows(); ++i) {
    out << "chi" << i << " degree " << T.degrees[i] << ":";
    for (int k = 0; k < T.num_classes; ++k)
      out << " " << lift_value(T, i, k).to_string();
    out << "\n";
  }
  return out.str();
}

}  // namespace amc
