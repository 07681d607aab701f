#include "thetacell/horn_filtration.hpp"

#include "thetacell/error.hpp"

namespace thetacell {

namespace {

struct Setup {
  std::shared_ptr<const ThetaCategory> cat;
  FinPresheaf ambient;
  Subobject source;
};

Setup setup(int n, int j, int m) {
  if (n < 2 || j <= 0 || j >= n || m < 0) throw UsageError("horn product filtration needs n >= 2, 0 < j < n, m >= 0");
  auto cat = theta_category(1, n + m);
  FinPresheaf a = representable(cat, cat->object_id(ThetaObj::simplex(n)));
  FinPresheaf b = representable(cat, cat->object_id(ThetaObj::simplex(m)));
  FinPresheaf p = product(a, b);
  const SimplicialSubset horn = SimplicialSubset::horn(n, j);
  Subobject src = Subobject::from_predicate(p, [&](ObjId o, Elem e) {
    auto parts = product_components(p, o, e);
    MonotoneMap x = to_monotone(cat->arrow(cat->hom(o, cat->object_id(ThetaObj::simplex(n)))[parts[0]]), n);
    MonotoneMap y = to_monotone(cat->arrow(cat->hom(o, cat->object_id(ThetaObj::simplex(m)))[parts[1]]), m);
    return horn.contains(x.values) || y.image_mask() != (std::uint32_t{1} << (m + 1)) - 1;
  });
  return {cat, p, src};
}

std::pair<MonotoneMap, MonotoneMap> split(const Setup& s, int n, int m, ObjId o, Elem e) {
  auto parts = product_components(s.ambient, o, e);
  const auto& cat = *s.cat;
  return {to_monotone(cat.arrow(cat.hom(o, cat.object_id(ThetaObj::simplex(n)))[parts[0]]), n),
          to_monotone(cat.arrow(cat.hom(o, cat.object_id(ThetaObj::simplex(m)))[parts[1]]), m)};
}

}  // namespace

HornFiltration horn_product_filtration(int n, int j, int m, long budget) {
  Setup s = setup(n, j, m);
  CertificateSearch found =
      search_certificate(s.ambient, s.source, Subobject(s.ambient, true), inner_horn_family(), budget);
  if (found.verdict == Verdict::BudgetExhausted) throw BudgetExceeded("horn product filtration: search budget exhausted");
  if (found.verdict != Verdict::Found) throw IntegrityError("horn product filtration: no inner horn decomposition");
  HornFiltration h{n, j, m, {}};
  for (const auto& st : found.certificate->steps) {
    ObjId o = s.cat->object_id(ThetaObj::simplex(st.generator.n));
    auto [x, y] = split(s, n, m, o, st.attach);
    const int r = st.generator.n;
    if (x.values.front() != 0 || x.values.back() != n || y.values.front() != 0 || y.values.back() != m)
      throw IntegrityError("horn product filtration: step " + x.to_string() + " x " + y.to_string() +
                           " moves an endpoint");
    h.steps.push_back({r, st.generator.k, std::move(x), std::move(y)});
  }
  return h;
}

CellCertificate to_certificate(const HornFiltration& h) {
  Setup s = setup(h.n, h.j, h.m);
  CellCertificate c{s.ambient, s.source, Subobject(s.ambient, true), {}};
  for (const auto& st : h.steps) {
    if (st.first.source != st.r || st.second.source != st.r || st.first.target != h.n || st.second.target != h.m)
      throw UsageError("horn step with mismatched simplices");
    ObjId o = s.cat->object_id(ThetaObj::simplex(st.r));
    std::vector<Elem> parts = {
        s.cat->hom_index(s.cat->arrow_id(o, s.cat->object_id(ThetaObj::simplex(h.n)), from_monotone(st.first))),
        s.cat->hom_index(s.cat->arrow_id(o, s.cat->object_id(ThetaObj::simplex(h.m)), from_monotone(st.second)))};
    c.steps.push_back({GeneratorId::inner_horn(ThetaObj::simplex(st.r), st.ell), product_element(s.ambient, o, parts)});
  }
  return c;
}

std::vector<std::pair<MonotoneMap, MonotoneMap>> missing_simplices(int n, int j, int m) {
  Setup s = setup(n, j, m);
  std::vector<std::pair<MonotoneMap, MonotoneMap>> out;
  for (const Cell& c : nondegenerate_cells(s.ambient))
    if (!s.source.contains(c.object, c.element)) out.push_back(split(s, n, m, c.object, c.element));
  return out;
}

}  // namespace thetacell
