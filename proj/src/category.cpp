#include "tricat/category.hpp"

#include <algorithm>
#include <sstream>

namespace tricat {

namespace {

constexpr int kMaxSuspensionOrder = 256;

std::string obj_name(const CatPresentation& p, ObjId a) {
  if (a >= 0 && a < p.size() && !p.objects[a].empty()) return p.objects[a];
  return "#" + std::to_string(a);
}

void require_object(const CatPresentation& p, ObjId a, const char* where) {
  if (a < 0 || a >= p.size())
    fail(ErrKind::Internal, std::string(where) + ": object id out of range");
}

}  // namespace

Int CatPresentation::tensor_at(ObjId a, ObjId b, ObjId c, int k, int i, int j) const {
  const std::vector<Int>& t = tensor[tidx(a, b, c)];
  int rab = homg(a, b).rank();
  int rbc = homg(b, c).rank();
  return t[(static_cast<size_t>(k) * rab + i) * rbc + j];
}

Morphism make_morphism(const CatPresentation& p, ObjId src, ObjId dst, std::vector<Int> coords) {
  require_object(p, src, "make_morphism");
  require_object(p, dst, "make_morphism");
  return Morphism{src, dst, make_element(p.homg(src, dst), std::move(coords))};
}

Morphism zero_morphism(const CatPresentation& p, ObjId src, ObjId dst) {
  require_object(p, src, "zero_morphism");
  require_object(p, dst, "zero_morphism");
  return Morphism{src, dst, zero_element(p.homg(src, dst))};
}

Morphism identity_morphism(const CatPresentation& p, ObjId a) {
  require_object(p, a, "identity_morphism");
  return Morphism{a, a, make_element(p.homg(a, a), p.identity_coords[a])};
}

bool morphism_valid(const CatPresentation& p, const Morphism& f) {
  if (f.src < 0 || f.src >= p.size() || f.dst < 0 || f.dst >= p.size()) return false;
  return f.elem.group == p.homg(f.src, f.dst) &&
         static_cast<int>(f.elem.coords.size()) == f.elem.group.rank();
}

bool is_zero_morphism(const Morphism& f) { return is_zero(f.elem); }

Morphism mor_add(const Morphism& f, const Morphism& g) {
  if (f.src != g.src || f.dst != g.dst)
    fail(ErrKind::EndpointMismatch, "mor_add endpoints differ");
  return Morphism{f.src, f.dst, elem_add(f.elem, g.elem)};
}

Morphism mor_neg(const Morphism& f) { return Morphism{f.src, f.dst, elem_neg(f.elem)}; }

Morphism compose(const CatPresentation& p, const Morphism& g, const Morphism& f) {
  if (f.dst != g.src)
    fail(ErrKind::EndpointMismatch,
         "compose: " + obj_name(p, f.src) + "->" + obj_name(p, f.dst) + " then " +
             obj_name(p, g.src) + "->" + obj_name(p, g.dst));
  const FinAbGroup& hac = p.homg(f.src, g.dst);
  const std::vector<Int>& t = p.tensor[p.tidx(f.src, f.dst, g.dst)];
  int rab = p.homg(f.src, f.dst).rank();
  int rbc = p.homg(g.src, g.dst).rank();
  int rac = hac.rank();
  std::vector<Int> out(rac, 0);
  size_t plane = static_cast<size_t>(rab) * rbc;
  for (int i = 0; i < rab; ++i) {
    Int fi = f.elem.coords[i];
    if (fi == 0) continue;
    for (int j = 0; j < rbc; ++j) {
      Int gj = g.elem.coords[j];
      if (gj == 0) continue;
      size_t base = static_cast<size_t>(i) * rbc + j;
      for (int k = 0; k < rac; ++k) out[k] += fi * gj * t[base + k * plane];
    }
  }
  return Morphism{f.src, g.dst, make_element(hac, std::move(out))};
}

int suspension_order(const CatPresentation& p) {
  int n = p.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<GroupHom> acc;  // acc[pidx(a,b)] : hom(a,b) -> hom(perm a, perm b)
  acc.reserve(p.hom.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc.push_back(identity_hom(p.homg(a, b)));
  for (int k = 1; k <= kMaxSuspensionOrder; ++k) {
    std::vector<int> next_perm(n);
    for (int i = 0; i < n; ++i) next_perm[i] = p.sigma[perm[i]];
    std::vector<GroupHom> next;
    next.reserve(acc.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        next.push_back(hom_compose(p.susp[p.pidx(perm[a], perm[b])], acc[p.pidx(a, b)]));
    perm = std::move(next_perm);
    acc = std::move(next);
    bool ident = true;
    for (int i = 0; i < n && ident; ++i) ident = perm[i] == i;
    for (size_t i = 0; i < acc.size() && ident; ++i)
      ident = hom_equal(acc[i], identity_hom(acc[i].domain));
    if (ident) return k;
  }
  fail(ErrKind::Internal, "suspension order exceeds cap");
}

namespace {

ObjId sigma_inverse_of(const CatPresentation& p, ObjId x) {
  for (int i = 0; i < p.size(); ++i)
    if (p.sigma[i] == x) return i;
  fail(ErrKind::Internal, "suspension permutation not invertible");
}

}  // namespace

ObjId suspend_object(const CatPresentation& p, ObjId x, long long n) {
  require_object(p, x, "suspend_object");
  ObjId cur = x;
  if (n >= 0) {
    for (long long i = 0; i < n; ++i) cur = p.sigma[cur];
  } else {
    for (long long i = 0; i < -n; ++i) cur = sigma_inverse_of(p, cur);
  }
  return cur;
}

Morphism suspend_morphism(const CatPresentation& p, const Morphism& f, long long n) {
  Morphism cur = f;
  if (n >= 0) {
    for (long long i = 0; i < n; ++i) {
      const GroupHom& step = p.susp[p.pidx(cur.src, cur.dst)];
      cur = Morphism{p.sigma[cur.src], p.sigma[cur.dst], hom_apply(step, cur.elem)};
    }
  } else {
    for (long long i = 0; i < -n; ++i) {
      ObjId ps = sigma_inverse_of(p, cur.src);
      ObjId pd = sigma_inverse_of(p, cur.dst);
      auto inv = hom_inverse(p.susp[p.pidx(ps, pd)]);
      if (!inv) fail(ErrKind::Internal, "suspension map not invertible");
      cur = Morphism{ps, pd, hom_apply(*inv, cur.elem)};
    }
  }
  return cur;
}

GroupHom precompose_hom(const CatPresentation& p, const Morphism& g, ObjId z) {
  require_object(p, z, "precompose_hom");
  const FinAbGroup& dom = p.homg(g.dst, z);
  const FinAbGroup& cod = p.homg(g.src, z);
  IntMat m(cod.rank(), dom.rank());
  for (int j = 0; j < dom.rank(); ++j) {
    std::vector<Int> e(dom.rank(), 0);
    e[j] = 1;
    Morphism comp = compose(p, Morphism{g.dst, z, make_element(dom, e)}, g);
    for (int i = 0; i < cod.rank(); ++i) m.at(i, j) = comp.elem.coords[i];
  }
  return make_hom(dom, cod, std::move(m));
}

GroupHom postcompose_hom(const CatPresentation& p, const Morphism& h, ObjId a) {
  require_object(p, a, "postcompose_hom");
  const FinAbGroup& dom = p.homg(a, h.src);
  const FinAbGroup& cod = p.homg(a, h.dst);
  IntMat m(cod.rank(), dom.rank());
  for (int j = 0; j < dom.rank(); ++j) {
    std::vector<Int> e(dom.rank(), 0);
    e[j] = 1;
    Morphism comp = compose(p, h, Morphism{a, h.src, make_element(dom, e)});
    for (int i = 0; i < cod.rank(); ++i) m.at(i, j) = comp.elem.coords[i];
  }
  return make_hom(dom, cod, std::move(m));
}

bool triangle_well_formed(const CatPresentation& p, const Triangle& t, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (t.x < 0 || t.x >= p.size() || t.y < 0 || t.y >= p.size() || t.z < 0 || t.z >= p.size())
    return bad("object id out of range");
  if (t.f.src != t.x || t.f.dst != t.y) return bad("first map endpoints");
  if (t.g.src != t.y || t.g.dst != t.z) return bad("second map endpoints");
  if (t.h.src != t.z || t.h.dst != p.sigma[t.x]) return bad("third map endpoints");
  if (!morphism_valid(p, t.f) || !morphism_valid(p, t.g) || !morphism_valid(p, t.h))
    return bad("morphism element outside its Hom-group");
  if (!is_zero_morphism(compose(p, t.g, t.f))) return bad("g.f nonzero");
  if (!is_zero_morphism(compose(p, t.h, t.g))) return bad("h.g nonzero");
  if (!is_zero_morphism(compose(p, suspend_morphism(p, t.f, 1), t.h)))
    return bad("f[1].h nonzero");
  return true;
}

namespace {

bool triangle_lex_less(const Triangle& a, const Triangle& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.g.elem.coords != b.g.elem.coords) return a.g.elem.coords < b.g.elem.coords;
  return a.h.elem.coords < b.h.elem.coords;
}

}  // namespace

std::optional<Triangle> find_cone(const CatPresentation& p, const Morphism& f) {
  std::optional<Triangle> best;
  for (const Triangle& t : p.triangles) {
    if (t.x != f.src || t.y != f.dst || !(t.f.elem == f.elem)) continue;
    if (!best || triangle_lex_less(t, *best)) best = t;
  }
  return best;
}

Triangle cone(const CatPresentation& p, const Morphism& f) {
  auto t = find_cone(p, f);
  if (!t)
    fail(ErrKind::MissingCone,
         "no database triangle on " + obj_name(p, f.src) + "->" + obj_name(p, f.dst));
  return *t;
}

Triangle rotate(const CatPresentation& p, const Triangle& t) {
  Triangle out;
  out.x = t.y;
  out.y = t.z;
  out.z = p.sigma[t.x];
  out.f = t.g;
  out.g = t.h;
  out.h = mor_neg(suspend_morphism(p, t.f, 1));
  return out;
}

Triangle rotate_inverse(const CatPresentation& p, const Triangle& t) {
  Triangle out;
  out.x = suspend_object(p, t.z, -1);
  out.y = t.x;
  out.z = t.y;
  out.f = mor_neg(suspend_morphism(p, t.h, -1));
  out.g = t.f;
  out.h = t.g;
  return out;
}

FinAbGroup stacked_group(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Int> f = a.factors;
  f.insert(f.end(), b.factors.begin(), b.factors.end());
  return FinAbGroup{std::move(f)};
}

namespace {

// Solve the stacked system  top(c) = rhs_top, bot(c) = rhs_bot  for c.
std::optional<GroupElement> solve_stacked(const GroupHom& top, const GroupHom& bot,
                                          const GroupElement& rhs_top,
                                          const GroupElement& rhs_bot) {
  if (top.domain != bot.domain) fail(ErrKind::Internal, "solve_stacked domain mismatch");
  FinAbGroup cod = stacked_group(top.codomain, bot.codomain);
  IntMat m(cod.rank(), top.domain.rank());
  for (int j = 0; j < top.m.cols; ++j) {
    for (int i = 0; i < top.m.rows; ++i) m.at(i, j) = top.m.at(i, j);
    for (int i = 0; i < bot.m.rows; ++i) m.at(top.m.rows + i, j) = bot.m.at(i, j);
  }
  std::vector<Int> y = rhs_top.coords;
  y.insert(y.end(), rhs_bot.coords.begin(), rhs_bot.coords.end());
  GroupHom stacked{top.domain, cod, std::move(m)};
  return solve(stacked, GroupElement{cod, std::move(y)});
}

}  // namespace

Morphism fill_in(const CatPresentation& p, const Triangle& t1, const Triangle& t2,
                 const Morphism& a, const Morphism& b) {
  if (a.src != t1.x || a.dst != t2.x || b.src != t1.y || b.dst != t2.y)
    fail(ErrKind::EndpointMismatch, "fill_in: (a, b) do not join the triangles");
  if (!(compose(p, b, t1.f) == compose(p, t2.f, a)))
    fail(ErrKind::SquareNotCommuting, "fill_in: b.f1 != f2.a");
  // unknown c in hom(z1, z2) subject to  c.g1 = g2.b  and  h2.c = a[1].h1
  GroupHom eq1 = precompose_hom(p, t1.g, t2.z);   // hom(z1,z2) -> hom(y1,z2)
  GroupHom eq2 = postcompose_hom(p, t2.h, t1.z);  // hom(z1,z2) -> hom(z1, x2[1])
  Morphism rhs1 = compose(p, t2.g, b);
  Morphism rhs2 = compose(p, suspend_morphism(p, a, 1), t1.h);
  auto c = solve_stacked(eq1, eq2, rhs1.elem, rhs2.elem);
  if (!c) fail(ErrKind::NoFillIn, "fill_in: no completing morphism exists");
  return Morphism{t1.z, t2.z, *c};
}

std::optional<Morphism> is_isomorphism(const CatPresentation& p, const Morphism& f) {
  if (!morphism_valid(p, f)) fail(ErrKind::Internal, "is_isomorphism: malformed morphism");
  // unknown g in hom(dst, src) with  g.f = id_src  and  f.g = id_dst
  GroupHom eq1 = precompose_hom(p, f, f.src);   // hom(dst,src) -> hom(src,src)
  GroupHom eq2 = postcompose_hom(p, f, f.dst);  // hom(dst,src) -> hom(dst,dst)
  Morphism id_s = identity_morphism(p, f.src);
  Morphism id_d = identity_morphism(p, f.dst);
  auto g = solve_stacked(eq1, eq2, id_s.elem, id_d.elem);
  if (!g) return std::nullopt;
  return Morphism{f.dst, f.src, *g};
}

Biproduct biproduct(const CatPresentation& p, ObjId a, ObjId b) {
  require_object(p, a, "biproduct");
  require_object(p, b, "biproduct");
  auto it = p.biproducts.find({a, b});
  if (it == p.biproducts.end())
    fail(ErrKind::MissingBiproduct,
         "no biproduct witness for (" + obj_name(p, a) + ", " + obj_name(p, b) + ")");
  return it->second;
}

std::vector<Morphism> all_morphisms(const CatPresentation& p, ObjId a, ObjId b) {
  require_object(p, a, "all_morphisms");
  require_object(p, b, "all_morphisms");
  std::vector<Morphism> out;
  for (GroupElement& e : enumerate_elements(p.homg(a, b)))
    out.push_back(Morphism{a, b, std::move(e)});
  return out;
}

bool is_zero_object(const CatPresentation& p, ObjId a) {
  require_object(p, a, "is_zero_object");
  for (Int c : p.identity_coords[a])
    if (c != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void structural_issues(const CatPresentation& p, std::vector<std::string>& out) {
  int n = p.size();
  size_t n2 = static_cast<size_t>(n) * n;
  size_t n3 = n2 * n;
  if (p.hom.size() != n2) {
    out.push_back("hom table size mismatch");
    return;
  }
  if (p.tensor.size() != n3) {
    out.push_back("composition tensor table size mismatch");
    return;
  }
  if (p.identity_coords.size() != static_cast<size_t>(n)) {
    out.push_back("identity table size mismatch");
    return;
  }
  if (p.susp.size() != n2) {
    out.push_back("suspension map table size mismatch");
    return;
  }
  if (p.sigma.size() != static_cast<size_t>(n)) {
    out.push_back("suspension permutation size mismatch");
    return;
  }
  if (!p.hom_gen_names.empty() && p.hom_gen_names.size() != n2) {
    out.push_back("generator name table size mismatch");
    return;
  }

  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (p.sigma[i] < 0 || p.sigma[i] >= n) {
      out.push_back("suspension permutation entry out of range at " + obj_name(p, i));
      return;
    }
    seen[p.sigma[i]] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) {
      out.push_back("suspension is not a permutation");
      return;
    }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const FinAbGroup& g = p.homg(a, b);
      if (!is_canonical_factor_list(g.factors))
        out.push_back("hom(" + obj_name(p, a) + "," + obj_name(p, b) +
                      ") factors are not a canonical invariant chain");
      if (!g.is_finite())
        out.push_back("hom(" + obj_name(p, a) + "," + obj_name(p, b) + ") is not finite");
      if (!p.hom_gen_names.empty() && !p.hom_gen_names[p.pidx(a, b)].empty() &&
          p.hom_gen_names[p.pidx(a, b)].size() != static_cast<size_t>(g.rank()))
        out.push_back("generator name count mismatch at hom(" + obj_name(p, a) + "," +
                      obj_name(p, b) + ")");
    }
  if (!out.empty()) return;

  for (int a = 0; a < n; ++a)
    if (p.identity_coords[a].size() != static_cast<size_t>(p.homg(a, a).rank()))
      out.push_back("identity coordinate length mismatch at " + obj_name(p, a));

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        size_t want = static_cast<size_t>(p.homg(a, c).rank()) * p.homg(a, b).rank() *
                      p.homg(b, c).rank();
        if (p.tensor[p.tidx(a, b, c)].size() != want)
          out.push_back("tensor shape mismatch at (" + obj_name(p, a) + "," + obj_name(p, b) +
                        "," + obj_name(p, c) + ")");
      }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const GroupHom& s = p.susp[p.pidx(a, b)];
      if (s.domain != p.homg(a, b) || s.codomain != p.homg(p.sigma[a], p.sigma[b]))
        out.push_back("suspension map endpoints mismatch at hom(" + obj_name(p, a) + "," +
                      obj_name(p, b) + ")");
    }
}

}  // namespace

ValidationReport validate_presentation(const CatPresentation& p) {
  ValidationReport rep;
  structural_issues(p, rep.issues);
  if (!rep.ok()) return rep;

  int n = p.size();

  // Units on generators.
  for (int a = 0; a < n; ++a) {
    Morphism ida = identity_morphism(p, a);
    for (int b = 0; b < n; ++b) {
      Morphism idb = identity_morphism(p, b);
      int r = p.homg(a, b).rank();
      for (int i = 0; i < r; ++i) {
        std::vector<Int> e(r, 0);
        e[i] = 1;
        Morphism gen = make_morphism(p, a, b, e);
        if (!(compose(p, gen, ida) == gen))
          rep.issues.push_back("right unit fails at hom(" + obj_name(p, a) + "," +
                               obj_name(p, b) + ") generator " + std::to_string(i));
        if (!(compose(p, idb, gen) == gen))
          rep.issues.push_back("left unit fails at hom(" + obj_name(p, a) + "," +
                               obj_name(p, b) + ") generator " + std::to_string(i));
      }
    }
  }

  // Associativity on generator triples, evaluated directly on the tensors.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int rab = p.homg(a, b).rank();
      if (rab == 0) continue;
      for (int c = 0; c < n; ++c) {
        int rbc = p.homg(b, c).rank();
        if (rbc == 0) continue;
        int rac = p.homg(a, c).rank();
        const std::vector<Int>& tabc = p.tensor[p.tidx(a, b, c)];
        for (int d = 0; d < n; ++d) {
          int rcd = p.homg(c, d).rank();
          if (rcd == 0) continue;
          int rad = p.homg(a, d).rank();
          int rbd = p.homg(b, d).rank();
          const std::vector<Int>& tacd = p.tensor[p.tidx(a, c, d)];
          const std::vector<Int>& tbcd = p.tensor[p.tidx(b, c, d)];
          const std::vector<Int>& tabd = p.tensor[p.tidx(a, b, d)];
          const std::vector<Int>& fac = p.homg(a, d).factors;
          for (int i = 0; i < rab; ++i)
            for (int j = 0; j < rbc; ++j)
              for (int k = 0; k < rcd; ++k) {
                bool bad = false;
                for (int r = 0; r < rad && !bad; ++r) {
                  Int lhs = 0;  // h_k . (g_j . f_i)
                  for (int m = 0; m < rac; ++m)
                    lhs += tabc[(static_cast<size_t>(m) * rab + i) * rbc + j] *
                           tacd[(static_cast<size_t>(r) * rac + m) * rcd + k];
                  Int rhs = 0;  // (h_k . g_j) . f_i
                  for (int m = 0; m < rbd; ++m)
                    rhs += tbcd[(static_cast<size_t>(m) * rbc + j) * rcd + k] *
                           tabd[(static_cast<size_t>(r) * rab + i) * rbd + m];
                  Int diff = lhs - rhs;
                  if (fac[r] > 0 ? pmod(diff, fac[r]) != 0 : diff != 0) bad = true;
                }
                if (bad) {
                  std::ostringstream os;
                  os << "associativity fails at (" << obj_name(p, a) << "," << obj_name(p, b)
                     << "," << obj_name(p, c) << "," << obj_name(p, d) << ") generators (" << i
                     << "," << j << "," << k << ")";
                  rep.issues.push_back(os.str());
                }
              }
        }
      }
    }

  // Suspension: isomorphisms, identity- and composition-preserving.
  bool susp_ok = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const GroupHom& s = p.susp[p.pidx(a, b)];
      if (!hom_inverse(s)) {
        rep.issues.push_back("suspension map not invertible at hom(" + obj_name(p, a) + "," +
                             obj_name(p, b) + ")");
        susp_ok = false;
      }
    }
  for (int a = 0; a < n; ++a) {
    Morphism ida = identity_morphism(p, a);
    Morphism sid = suspend_morphism(p, ida, 1);
    if (!(sid == identity_morphism(p, p.sigma[a]))) {
      rep.issues.push_back("suspension does not preserve the identity at " + obj_name(p, a));
      susp_ok = false;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int rab = p.homg(a, b).rank();
      if (rab == 0) continue;
      for (int c = 0; c < n; ++c) {
        int rbc = p.homg(b, c).rank();
        if (rbc == 0) continue;
        for (int i = 0; i < rab; ++i) {
          std::vector<Int> ei(rab, 0);
          ei[i] = 1;
          Morphism f = make_morphism(p, a, b, ei);
          Morphism sf = suspend_morphism(p, f, 1);
          for (int j = 0; j < rbc; ++j) {
            std::vector<Int> ej(rbc, 0);
            ej[j] = 1;
            Morphism g = make_morphism(p, b, c, ej);
            Morphism lhs = suspend_morphism(p, compose(p, g, f), 1);
            Morphism rhs = compose(p, suspend_morphism(p, g, 1), sf);
            if (!(lhs == rhs)) {
              rep.issues.push_back("suspension not functorial at hom(" + obj_name(p, a) + "," +
                                   obj_name(p, b) + ") x hom(" + obj_name(p, b) + "," +
                                   obj_name(p, c) + ") generators (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
            }
          }
        }
      }
    }
  if (susp_ok) {
    try {
      suspension_order(p);
    } catch (const Error&) {
      rep.issues.push_back("suspension does not have finite order within the cap");
      susp_ok = false;
    }
  }

  // Triangle database.
  for (size_t i = 0; i < p.triangles.size(); ++i) {
    std::string why;
    if (!triangle_well_formed(p, p.triangles[i], &why))
      rep.issues.push_back("triangle " + std::to_string(i) + ": " + why);
  }

  // Biproduct witnesses.
  for (const auto& [key, bp] : p.biproducts) {
    auto [a, b] = key;
    std::string where =
        "biproduct(" + obj_name(p, a) + "," + obj_name(p, b) + ")";
    if (bp.obj < 0 || bp.obj >= n) {
      rep.issues.push_back(where + ": object id out of range");
      continue;
    }
    if (bp.i1.src != a || bp.i1.dst != bp.obj || bp.i2.src != b || bp.i2.dst != bp.obj ||
        bp.p1.src != bp.obj || bp.p1.dst != a || bp.p2.src != bp.obj || bp.p2.dst != b) {
      rep.issues.push_back(where + ": component endpoints mismatch");
      continue;
    }
    if (!morphism_valid(p, bp.i1) || !morphism_valid(p, bp.i2) || !morphism_valid(p, bp.p1) ||
        !morphism_valid(p, bp.p2)) {
      rep.issues.push_back(where + ": component outside its Hom-group");
      continue;
    }
    if (!(compose(p, bp.p1, bp.i1) == identity_morphism(p, a)))
      rep.issues.push_back(where + ": p1.i1 != id");
    if (!(compose(p, bp.p2, bp.i2) == identity_morphism(p, b)))
      rep.issues.push_back(where + ": p2.i2 != id");
    if (!is_zero_morphism(compose(p, bp.p2, bp.i1)))
      rep.issues.push_back(where + ": p2.i1 != 0");
    if (!is_zero_morphism(compose(p, bp.p1, bp.i2)))
      rep.issues.push_back(where + ": p1.i2 != 0");
    Morphism sum = mor_add(compose(p, bp.i1, bp.p1), compose(p, bp.i2, bp.p2));
    if (!(sum == identity_morphism(p, bp.obj)))
      rep.issues.push_back(where + ": i1.p1 + i2.p2 != id");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Opposite category
// ---------------------------------------------------------------------------

CatPresentation op_category(const CatPresentation& p) {
  int n = p.size();
  CatPresentation q;
  q.objects = p.objects;
  if (p.label.size() >= 3 && p.label.compare(p.label.size() - 3, 3, "^op") == 0)
    q.label = p.label.substr(0, p.label.size() - 3);
  else if (!p.label.empty())
    q.label = p.label + "^op";
  q.hom.resize(static_cast<size_t>(n) * n);
  if (!p.hom_gen_names.empty()) q.hom_gen_names.resize(static_cast<size_t>(n) * n);
  q.tensor.resize(static_cast<size_t>(n) * n * n);
  q.identity_coords = p.identity_coords;
  q.sigma.resize(n);
  q.susp.resize(static_cast<size_t>(n) * n);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      q.hom[q.pidx(a, b)] = p.homg(b, a);
      if (!p.hom_gen_names.empty()) q.hom_gen_names[q.pidx(a, b)] = p.hom_gen_names[p.pidx(b, a)];
    }

  // op-composition: (g . f)^op = f^op-then-g^op  with  T_q(a,b,c)[k,i,j] =
  // T_p(c,b,a)[k,j,i].
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int rab = q.homg(a, b).rank();   // = p.hom(b,a)
        int rbc = q.homg(b, c).rank();   // = p.hom(c,b)
        int rac = q.homg(a, c).rank();   // = p.hom(c,a)
        std::vector<Int> t(static_cast<size_t>(rac) * rab * rbc, 0);
        for (int k = 0; k < rac; ++k)
          for (int i = 0; i < rab; ++i)
            for (int j = 0; j < rbc; ++j)
              t[(static_cast<size_t>(k) * rab + i) * rbc + j] = p.tensor_at(c, b, a, k, j, i);
        q.tensor[q.tidx(a, b, c)] = std::move(t);
      }

  // suspension: sigma_q = sigma^{-1}; map on hom_q(a,b) = hom(b,a) is the
  // inverse of p's map at the preimage pair.
  for (int i = 0; i < n; ++i) q.sigma[p.sigma[i]] = i;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // q.susp[(a,b)] : hom(b,a) -> hom(q.sigma b, q.sigma a)  (reversed pair)
      ObjId qa = q.sigma[a], qb = q.sigma[b];
      auto inv = hom_inverse(p.susp[p.pidx(qb, qa)]);
      if (!inv) fail(ErrKind::Internal, "op_category: suspension map not invertible");
      q.susp[q.pidx(a, b)] = *inv;
    }

  // triangles: (x,y,z; f,g,h) -> (z, y, x; g, f, h[-1]) with reversed arrows.
  q.triangles.reserve(p.triangles.size());
  for (const Triangle& t : p.triangles) {
    Morphism hm1 = suspend_morphism(p, t.h, -1);  // sigma^{-1}z -> x
    Triangle r;
    r.x = t.z;
    r.y = t.y;
    r.z = t.x;
    r.f = Morphism{t.z, t.y, t.g.elem};
    r.g = Morphism{t.y, t.x, t.f.elem};
    r.h = Morphism{t.x, hm1.src, hm1.elem};  // element of hom(sigma^{-1}z, x)
    q.triangles.push_back(std::move(r));
  }

  // biproducts: injections and projections swap roles.
  for (const auto& [key, bp] : p.biproducts) {
    Biproduct r;
    r.obj = bp.obj;
    r.i1 = Morphism{key.first, bp.obj, bp.p1.elem};
    r.i2 = Morphism{key.second, bp.obj, bp.p2.elem};
    r.p1 = Morphism{bp.obj, key.first, bp.i1.elem};
    r.p2 = Morphism{bp.obj, key.second, bp.i2.elem};
    q.biproducts[key] = std::move(r);
  }

  return q;
}

}  // namespace tricat
