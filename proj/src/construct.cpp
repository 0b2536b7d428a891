#include "amcheck/construct.hpp"

#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

#include "amcheck/errors.hpp"

namespace amc {

namespace {

Permutation cycle_perm(int degree, const std::vector<int>& cyc) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (size_t i = 0; i < cyc.size(); ++i)
    img[cyc[i]] = cyc[(i + 1) % cyc.size()];
  return Permutation(std::move(img));
}

}  // namespace

PermGroup symmetric_group(int n, PermGroup::Options opt) {
  if (n < 1) throw InputError("symmetric group needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle_perm(n, {0, 1}));
  if (n >= 3) {
    std::vector<int> full(n);
    std::iota(full.begin(), full.end(), 0);
    gens.push_back(cycle_perm(n, full));
  }
  return PermGroup(n, std::move(gens), opt);
}

PermGroup alternating_group(int n, PermGroup::Options opt) {
  if (n < 1) throw InputError("alternating group needs n >= 1");
  std::vector<Permutation> gens;
  for (int i = 0; i + 2 < n; ++i) gens.push_back(cycle_perm(n, {i, i + 1, i + 2}));
  return PermGroup(n, std::move(gens), opt);
}

PermGroup cyclic_group(int n, PermGroup::Options opt) {
  if (n < 1) throw InputError("cyclic group needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> full(n);
    std::iota(full.begin(), full.end(), 0);
    gens.push_back(cycle_perm(n, full));
  }
  return PermGroup(n, std::move(gens), opt);
}

PermGroup dihedral_group(int order, PermGroup::Options opt) {
  if (order < 2 || order % 2 != 0)
    throw InputError("dihedral group order must be even and >= 2");
  int n = order / 2;
  if (n == 1) return cyclic_group(2, opt);
  if (n == 2) {
    // The Klein four-group needs four points for a faithful action.
    std::vector<Permutation> gens{cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})};
    return PermGroup(4, std::move(gens), opt);
  }
  std::vector<int> rot(n);
  std::iota(rot.begin(), rot.end(), 0);
  std::vector<int> refl(n);
  for (int i = 0; i < n; ++i) refl[i] = (n - i) % n;
  std::vector<Permutation> gens{cycle_perm(n, rot), Permutation(std::move(refl))};
  return PermGroup(n, std::move(gens), opt);
}

namespace {

// The eight nonzero column vectors over the three-element field, in
// lexicographic order of (a, b).  Shared by sl2_3 and gl2_3 so the two
// groups act compatibly.
struct Vec2 {
  int a, b;
};

const std::array<Vec2, 8>& f3_vectors() {
  static const std::array<Vec2, 8> v = {{{0, 1},
                                         {0, 2},
                                         {1, 0},
                                         {1, 1},
                                         {1, 2},
                                         {2, 0},
                                         {2, 1},
                                         {2, 2}}};
  return v;
}

int f3_vector_index(int a, int b) {
  const auto& vs = f3_vectors();
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i].a == a && vs[i].b == b) return static_cast<int>(i);
  throw InternalError("zero vector has no index");
}

Permutation matrix_action(const std::array<int, 4>& m) {
  // m = {m00, m01, m10, m11}, acting on column vectors (a, b).
  std::vector<int> img(8);
  const auto& vs = f3_vectors();
  for (int i = 0; i < 8; ++i) {
    int a = (m[0] * vs[i].a + m[1] * vs[i].b) % 3;
    int b = (m[2] * vs[i].a + m[3] * vs[i].b) % 3;
    img[i] = f3_vector_index(a, b);
  }
  return Permutation(std::move(img));
}

}  // namespace

PermGroup sl2_3(PermGroup::Options opt) {
  std::vector<Permutation> gens{
      matrix_action({1, 1, 0, 1}),  // upper shear
      matrix_action({0, 2, 1, 0}),  // rotation by the antidiagonal, det 1
  };
  return PermGroup(8, std::move(gens), opt);
}

PermGroup gl2_3(PermGroup::Options opt) {
  std::vector<Permutation> gens{
      matrix_action({1, 1, 0, 1}),
      matrix_action({0, 2, 1, 0}),
      matrix_action({1, 0, 0, 2}),  // determinant -1
  };
  return PermGroup(8, std::move(gens), opt);
}

PermGroup weyl_b(int n, PermGroup::Options opt) {
  if (n < 1) throw InputError("signed permutation group needs n >= 1");
  // Points 0..n-1 are the positive axes, n..2n-1 the negative ones.
  std::vector<Permutation> gens;
  gens.push_back(cycle_perm(2 * n, {0, n}));  // flip the sign of axis 1
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> img(2 * n);
    std::iota(img.begin(), img.end(), 0);
    std::swap(img[i], img[i + 1]);
    std::swap(img[n + i], img[n + i + 1]);
    gens.push_back(Permutation(std::move(img)));
  }
  return PermGroup(2 * n, std::move(gens), opt);
}

DirectProduct direct_product(const PermGroup& a, const PermGroup& b,
                             PermGroup::Options opt) {
  const int da = a.degree(), db = b.degree();
  auto combine = [&](const Permutation& pa, const Permutation& pb) {
    std::vector<int> img(da + db);
    for (int i = 0; i < da; ++i) img[i] = pa(i);
    for (int i = 0; i < db; ++i) img[da + i] = da + pb(i);
    return Permutation(std::move(img));
  };
  if (a.order() * b.order() > opt.max_order)
    throw CapError("direct product order " +
                   std::to_string(a.order() * b.order()) + " exceeds cap " +
                   std::to_string(opt.max_order));
  std::vector<Permutation> gens;
  Permutation idb = Permutation::identity(db), ida = Permutation::identity(da);
  for (const auto& g : a.generators()) gens.push_back(combine(g, idb));
  for (const auto& g : b.generators()) gens.push_back(combine(ida, g));
  DirectProduct out{PermGroup(da + db, std::move(gens), opt), {}, {}, {}, {}, {}};
  const PermGroup& P = out.group;
  if (P.order() != a.order() * b.order())
    throw InternalError("direct product order mismatch");
  out.embed1.resize(a.order());
  out.embed2.resize(b.order());
  out.proj1.resize(P.order());
  out.proj2.resize(P.order());
  out.pair_index.assign(P.order(), -1);
  for (long long e = 0; e < a.order(); ++e)
    out.embed1[e] = P.index_of(combine(a.element(static_cast<int>(e)), idb));
  for (long long e = 0; e < b.order(); ++e)
    out.embed2[e] = P.index_of(combine(ida, b.element(static_cast<int>(e))));
  for (long long e = 0; e < P.order(); ++e) {
    const Permutation& p = P.element(static_cast<int>(e));
    std::vector<int> ia(da), ib(db);
    for (int i = 0; i < da; ++i) ia[i] = p(i);
    for (int i = 0; i < db; ++i) ib[i] = p(da + i) - da;
    int e1 = a.index_of(Permutation(std::move(ia)));
    int e2 = b.index_of(Permutation(std::move(ib)));
    if (e1 < 0 || e2 < 0) throw InternalError("direct product element does not split");
    out.proj1[e] = e1;
    out.proj2[e] = e2;
    out.pair_index[static_cast<size_t>(e1) * b.order() + e2] =
        static_cast<int>(e);
  }
  return out;
}

PermGroup wreath_product(const PermGroup& base, const PermGroup& top,
                         PermGroup::Options opt) {
  const int m = base.degree(), k = top.degree();
  // Base copies in every block keep the construction correct for
  // intransitive top groups too.
  std::vector<Permutation> gens;
  for (int blk = 0; blk < k; ++blk) {
    for (const auto& g : base.generators()) {
      std::vector<int> img(m * k);
      std::iota(img.begin(), img.end(), 0);
      for (int x = 0; x < m; ++x) img[blk * m + x] = blk * m + g(x);
      gens.push_back(Permutation(std::move(img)));
    }
  }
  for (const auto& t : top.generators()) {
    std::vector<int> img(m * k);
    for (int blk = 0; blk < k; ++blk)
      for (int x = 0; x < m; ++x) img[blk * m + x] = t(blk) * m + x;
    gens.push_back(Permutation(std::move(img)));
  }
  long long expect = top.order();
  for (int i = 0; i < k; ++i) {
    if (expect > opt.max_order / std::max<long long>(base.order(), 1) + 1)
      throw CapError("wreath product order exceeds cap " +
                     std::to_string(opt.max_order));
    expect *= base.order();
  }
  if (expect > opt.max_order)
    throw CapError("wreath product order exceeds cap " +
                   std::to_string(opt.max_order));
  PermGroup W(m * k, std::move(gens), opt);
  if (W.order() != expect) throw InternalError("wreath product order mismatch");
  return W;
}

Quotient quotient(const PermGroup& G, const ElementSet& N) {
  if (!is_normal(G, N))
    throw InputError("quotient requires a normal subgroup");
  const long long n = G.order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> coset_rep;  // coset point -> minimal element index
  std::vector<int> members = N.to_indices();
  for (long long e = 0; e < n; ++e) {
    if (coset_of[e] >= 0) continue;
    int pt = static_cast<int>(coset_rep.size());
    coset_rep.push_back(static_cast<int>(e));
    for (int h : members) coset_of[G.mul(h, static_cast<int>(e))] = pt;
    if (coset_of[e] != pt) throw InternalError("coset enumeration failed");
  }
  const int num_cosets = static_cast<int>(coset_rep.size());
  auto action = [&](int g) {
    std::vector<int> img(num_cosets);
    for (int c = 0; c < num_cosets; ++c) img[c] = coset_of[G.mul(coset_rep[c], g)];
    return Permutation(std::move(img));
  };
  std::vector<Permutation> qgens;
  for (const auto& g : G.generators()) {
    int gi = G.index_of(g);
    qgens.push_back(action(gi));
  }
  PermGroup Q(num_cosets, std::move(qgens));
  if (Q.order() * N.count() != n) throw InternalError("quotient order mismatch");
  std::vector<int> image_of(n);
  for (long long e = 0; e < n; ++e) {
    int idx = Q.index_of(action(static_cast<int>(e)));
    if (idx < 0) throw InternalError("element image missing from quotient");
    image_of[e] = idx;
  }
  return Quotient{std::move(Q), std::move(coset_of), std::move(image_of)};
}

PermGroup parse_group_text(const std::string& text, PermGroup::Options opt) {
  std::istringstream in(text);
  std::string line;
  int degree = -1;
  std::vector<Permutation> gens;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (degree < 0) {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kw != "degree")
        throw InputError("line " + std::to_string(lineno) +
                         ": expected \"degree <n>\" first");
      if (!(ls >> degree) || degree < 1)
        throw InputError("line " + std::to_string(lineno) +
                         ": bad degree value");
      std::string rest;
      if (ls >> rest)
        throw InputError("line " + std::to_string(lineno) +
                         ": trailing text after degree");
      continue;
    }
    try {
      gens.push_back(Permutation::from_cycles(line, degree));
    } catch (const InputError& err) {
      throw InputError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  if (degree < 0) throw InputError("missing \"degree <n>\" line");
  return PermGroup(degree, std::move(gens), opt);
}

PermGroup load_group(const std::string& path, PermGroup::Options opt) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open group file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_group_text(buf.str(), opt);
}

std::string group_file_text(const PermGroup& G) {
  std::ostringstream out;
  out << "degree " << G.degree() << "\n";
  for (const auto& g : G.generators()) out << g.to_cycles() << "\n";
  return out.str();
}

void save_group(const PermGroup& G, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write group file: " + path);
  f << group_file_text(G);
}

}  // namespace amc
