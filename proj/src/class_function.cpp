#include "amcheck/class_function.hpp"

#include "amcheck/errors.hpp"

namespace amc {

std::vector<int> fusion_map(const PermGroup& G, const PermGroup& H) {
  if (G.degree() != H.degree())
    throw InputError("fusion requires groups acting on the same points");
  const ConjugacyData& hc = H.classes();
  std::vector<int> fusion(hc.count());
  for (int c = 0; c < hc.count(); ++c) {
    int amb = G.index_of(H.element(hc.reps[c]));
    if (amb < 0)
      throw InputError("not a subgroup: element missing from the ambient group");
    fusion[c] = G.classes().class_of[amb];
  }
  return fusion;
}

uint32_t scalar_product(const PermGroup& G, const AnalysisContext& ctx,
                        const std::vector<uint32_t>& a,
                        const std::vector<uint32_t>& b) {
  const ConjugacyData& cd = G.classes();
  const PrimeField& F = ctx.field;
  if (a.size() != static_cast<size_t>(cd.count()) || a.size() != b.size())
    throw InputError("class function length mismatch");
  uint32_t s = 0;
  for (int j = 0; j < cd.count(); ++j)
    s = F.add(s, F.mul(F.reduce(cd.sizes[j]),
                       F.mul(a[j], b[cd.inverse_class[j]])));
  return F.mul(s, F.inv(F.reduce(G.order())));
}

std::vector<uint32_t> induce(const PermGroup& G, const PermGroup& H,
                             const AnalysisContext& ctx,
                             const std::vector<uint32_t>& theta,
                             const std::vector<int>& fusion) {
  const ConjugacyData& gc = G.classes();
  const ConjugacyData& hc = H.classes();
  const PrimeField& F = ctx.field;
  if (theta.size() != static_cast<size_t>(hc.count()))
    throw InputError("class function length mismatch");
  std::vector<uint32_t> out(gc.count(), 0);
  for (int c = 0; c < hc.count(); ++c) {
    int k = fusion[c];
    out[k] = F.add(out[k], F.mul(F.reduce(hc.sizes[c]), theta[c]));
  }
  const uint32_t hinv = F.inv(F.reduce(H.order()));
  for (int k = 0; k < gc.count(); ++k)
    out[k] = F.mul(out[k], F.mul(F.reduce(G.order() / gc.sizes[k]), hinv));
  return out;
}

std::vector<uint32_t> induce(const PermGroup& G, const PermGroup& H,
                             const AnalysisContext& ctx,
                             const std::vector<uint32_t>& theta) {
  return induce(G, H, ctx, theta, fusion_map(G, H));
}

std::vector<uint32_t> induce_naive(const PermGroup& G, const PermGroup& H,
                                   const AnalysisContext& ctx,
                                   const std::vector<uint32_t>& theta) {
  const ConjugacyData& gc = G.classes();
  const ConjugacyData& hc = H.classes();
  const PrimeField& F = ctx.field;
  if (theta.size() != static_cast<size_t>(hc.count()))
    throw InputError("class function length mismatch");
  // Ambient element index -> subgroup class, or -1 outside H.
  std::vector<int> hclass(G.order(), -1);
  for (long long i = 0; i < H.order(); ++i) {
    int amb = G.index_of(H.element(static_cast<int>(i)));
    if (amb < 0)
      throw InputError("not a subgroup: element missing from the ambient group");
    hclass[amb] = hc.class_of[i];
  }
  std::vector<uint32_t> out(gc.count(), 0);
  const uint32_t hinv = F.inv(F.reduce(H.order()));
  for (int k = 0; k < gc.count(); ++k) {
    uint32_t acc = 0;
    const int g = gc.reps[k];
    for (long long x = 0; x < G.order(); ++x) {
      int moved = G.conj(g, G.inv(static_cast<int>(x)));  // x g x^-1
      if (hclass[moved] >= 0) acc = F.add(acc, theta[hclass[moved]]);
    }
    out[k] = F.mul(acc, hinv);
  }
  return out;
}

std::vector<uint32_t> restrict_to(const PermGroup& G,
                                  const PermGroup& /*H*/,
                                  const std::vector<uint32_t>& chi,
                                  const std::vector<int>& fusion) {
  if (chi.size() != static_cast<size_t>(G.classes().count()))
    throw InputError("class function length mismatch");
  std::vector<uint32_t> out(fusion.size());
  for (size_t c = 0; c < fusion.size(); ++c) out[c] = chi[fusion[c]];
  return out;
}

std::vector<uint32_t> restrict_to(const PermGroup& G, const PermGroup& H,
                                  const std::vector<uint32_t>& chi) {
  return restrict_to(G, H, chi, fusion_map(G, H));
}

uint64_t constituent_mask(const CharacterTable& T,
                          const std::vector<uint32_t>& f) {
  if (T.rows() > 64)
    throw CapError("more than 64 irreducible characters; constituent sets "
                   "are limited to one machine word");
  uint64_t mask = 0;
  for (int i = 0; i < T.rows(); ++i)
    if (scalar_product(*T.group, T.ctx, f, T.values[i]) != 0)
      mask |= uint64_t(1) << i;
  return mask;
}

std::vector<uint32_t> inflate_through(const PermGroup& H, const Quotient& q,
                                      const std::vector<uint32_t>& qrow) {
  const ConjugacyData& hc = H.classes();
  const ConjugacyData& qc = q.group.classes();
  if (qrow.size() != static_cast<size_t>(qc.count()))
    throw InputError("class function length mismatch");
  std::vector<uint32_t> out(hc.count());
  for (int c = 0; c < hc.count(); ++c)
    out[c] = qrow[qc.class_of[q.image_of[hc.reps[c]]]];
  return out;
}

std::vector<std::vector<uint32_t>> linear_characters(
    const PermGroup& H, const AnalysisContext& ctx) {
  ElementSet comm =
      derived_set(H, ElementSet::full(static_cast<int>(H.order())));
  Quotient q = quotient(H, comm);
  CharacterTable Tq = character_table(q.group, ctx);
  std::vector<std::vector<uint32_t>> out;
  out.reserve(Tq.rows());
  for (int i = 0; i < Tq.rows(); ++i)
    out.push_back(inflate_through(H, q, Tq.values[i]));
  return out;
}

std::vector<uint32_t> trivial_character(const PermGroup& G) {
  return std::vector<uint32_t>(G.classes().count(), 1);
}

}  // namespace amc
