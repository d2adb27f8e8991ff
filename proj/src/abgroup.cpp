#include "tricat/abgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace tricat {

Int gcd_ll(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int pmod(Int a, Int m) {
  if (m == 0) return a;
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

namespace {

// Extended gcd: returns g = gcd(a,b) and x, y with x*a + y*b = g.
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat mat_mul(const IntMat& l, const IntMat& r) {
  if (l.cols != r.rows) fail(ErrKind::Internal, "mat_mul shape mismatch");
  IntMat out(l.rows, r.cols);
  for (int i = 0; i < l.rows; ++i)
    for (int k = 0; k < l.cols; ++k) {
      Int lv = l.at(i, k);
      if (lv == 0) continue;
      for (int j = 0; j < r.cols; ++j) out.at(i, j) += lv * r.at(k, j);
    }
  return out;
}

IntMat mat_add(const IntMat& l, const IntMat& r) {
  if (l.rows != r.rows || l.cols != r.cols) fail(ErrKind::Internal, "mat_add shape mismatch");
  IntMat out(l.rows, l.cols);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = l.a[i] + r.a[i];
  return out;
}

IntMat mat_neg(const IntMat& m) {
  IntMat out = m;
  for (auto& v : out.a) v = -v;
  return out;
}

IntMat mat_scale(Int k, const IntMat& m) {
  IntMat out = m;
  for (auto& v : out.a) v *= k;
  return out;
}

IntMat mat_hcat(const IntMat& l, const IntMat& r) {
  if (l.rows != r.rows) fail(ErrKind::Internal, "mat_hcat row mismatch");
  IntMat out(l.rows, l.cols + r.cols);
  for (int i = 0; i < l.rows; ++i) {
    for (int j = 0; j < l.cols; ++j) out.at(i, j) = l.at(i, j);
    for (int j = 0; j < r.cols; ++j) out.at(i, l.cols + j) = r.at(i, j);
  }
  return out;
}

std::string mat_to_string(const IntMat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool FinAbGroup::is_finite() const {
  for (Int d : factors)
    if (d == 0) return false;
  return true;
}

Int FinAbGroup::order() const {
  Int o = 1;
  for (Int d : factors) {
    if (d == 0) fail(ErrKind::InfiniteGroup, "order of a group with free rank");
    o *= d;
  }
  return o;
}

bool is_canonical_factor_list(const std::vector<Int>& factors) {
  size_t i = 0;
  for (; i < factors.size() && factors[i] != 0; ++i) {
    if (factors[i] < 2) return false;
    if (i > 0 && factors[i - 1] != 0 && factors[i] % factors[i - 1] != 0) return false;
  }
  for (; i < factors.size(); ++i)
    if (factors[i] != 0) return false;
  return true;
}

FinAbGroup make_group(std::vector<Int> factors) {
  if (!is_canonical_factor_list(factors))
    fail(ErrKind::Internal, "non-canonical invariant factor list");
  return FinAbGroup{std::move(factors)};
}

std::string group_to_string(const FinAbGroup& g) {
  if (g.is_trivial()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i) os << " + ";
    if (g.factors[i] == 0)
      os << "Z";
    else
      os << "Z/" << g.factors[i];
  }
  return os.str();
}

std::vector<Int> reduce_coords(const FinAbGroup& g, std::vector<Int> coords) {
  if (static_cast<int>(coords.size()) != g.rank())
    fail(ErrKind::Internal, "coordinate length mismatch");
  for (int i = 0; i < g.rank(); ++i) coords[i] = pmod(coords[i], g.factors[i]);
  return coords;
}

GroupElement make_element(const FinAbGroup& g, std::vector<Int> coords) {
  return GroupElement{g, reduce_coords(g, std::move(coords))};
}

GroupElement zero_element(const FinAbGroup& g) {
  return GroupElement{g, std::vector<Int>(g.rank(), 0)};
}

GroupElement elem_add(const GroupElement& x, const GroupElement& y) {
  if (x.group != y.group) fail(ErrKind::Internal, "elem_add group mismatch");
  std::vector<Int> c(x.coords);
  for (size_t i = 0; i < c.size(); ++i) c[i] += y.coords[i];
  return make_element(x.group, std::move(c));
}

GroupElement elem_neg(const GroupElement& x) {
  std::vector<Int> c(x.coords);
  for (auto& v : c) v = -v;
  return make_element(x.group, std::move(c));
}

GroupElement elem_scale(Int k, const GroupElement& x) {
  std::vector<Int> c(x.coords);
  for (auto& v : c) v *= k;
  return make_element(x.group, std::move(c));
}

bool is_zero(const GroupElement& x) {
  for (Int v : x.coords)
    if (v != 0) return false;
  return true;
}

GroupHom make_hom(const FinAbGroup& dom, const FinAbGroup& cod, IntMat m) {
  if (m.rows != cod.rank() || m.cols != dom.rank())
    fail(ErrKind::Internal, "hom matrix shape mismatch");
  // Reduce entries modulo the codomain factor of their row.
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = pmod(m.at(i, j), cod.factors[i]);
  // Well-definedness: the relation d_j * e_j of the domain must map to zero.
  for (int j = 0; j < m.cols; ++j) {
    Int dj = dom.factors[j];
    if (dj == 0) continue;  // free generator: no relation
    for (int i = 0; i < m.rows; ++i) {
      Int di = cod.factors[i];
      Int v = dj * m.at(i, j);
      bool ok = (di == 0) ? (v == 0) : (v % di == 0);
      if (!ok) fail(ErrKind::Internal, "matrix does not define a homomorphism");
    }
  }
  return GroupHom{dom, cod, std::move(m)};
}

GroupHom zero_hom(const FinAbGroup& dom, const FinAbGroup& cod) {
  return GroupHom{dom, cod, IntMat(cod.rank(), dom.rank())};
}

GroupHom identity_hom(const FinAbGroup& g) {
  return make_hom(g, g, IntMat::identity(g.rank()));
}

GroupElement hom_apply(const GroupHom& f, const GroupElement& x) {
  if (x.group != f.domain) fail(ErrKind::Internal, "hom_apply domain mismatch");
  std::vector<Int> out(f.codomain.rank(), 0);
  for (int i = 0; i < f.m.rows; ++i)
    for (int j = 0; j < f.m.cols; ++j) out[i] += f.m.at(i, j) * x.coords[j];
  return make_element(f.codomain, std::move(out));
}

GroupHom hom_compose(const GroupHom& g, const GroupHom& f) {
  if (f.codomain != g.domain) fail(ErrKind::Internal, "hom_compose middle mismatch");
  return make_hom(f.domain, g.codomain, mat_mul(g.m, f.m));
}

GroupHom hom_add(const GroupHom& f, const GroupHom& g) {
  if (f.domain != g.domain || f.codomain != g.codomain)
    fail(ErrKind::Internal, "hom_add endpoint mismatch");
  return make_hom(f.domain, f.codomain, mat_add(f.m, g.m));
}

GroupHom hom_neg(const GroupHom& f) { return make_hom(f.domain, f.codomain, mat_neg(f.m)); }

GroupHom hom_scale(Int k, const GroupHom& f) {
  return make_hom(f.domain, f.codomain, mat_scale(k, f.m));
}

bool hom_equal(const GroupHom& f, const GroupHom& g) {
  if (f.domain != g.domain || f.codomain != g.codomain) return false;
  for (int i = 0; i < f.m.rows; ++i) {
    Int di = f.codomain.factors[i];
    for (int j = 0; j < f.m.cols; ++j) {
      Int d = f.m.at(i, j) - g.m.at(i, j);
      if (di == 0 ? d != 0 : d % di != 0) return false;
    }
  }
  return true;
}

bool is_zero_hom(const GroupHom& f) { return hom_equal(f, zero_hom(f.domain, f.codomain)); }

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

struct SnfWork {
  IntMat s, u, v, uinv, vinv;

  explicit SnfWork(const IntMat& m)
      : s(m),
        u(IntMat::identity(m.rows)),
        v(IntMat::identity(m.cols)),
        uinv(IntMat::identity(m.rows)),
        vinv(IntMat::identity(m.cols)) {}

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  }
  void row_neg(int i) {
    for (int c = 0; c < s.cols; ++c) s.at(i, c) = -s.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
  // row_j += k * row_i
  void row_add(int j, int i, Int k) {
    if (k == 0) return;
    for (int c = 0; c < s.cols; ++c) s.at(j, c) += k * s.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(j, c) += k * u.at(i, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) -= k * uinv.at(r, j);
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < s.rows; ++r) std::swap(s.at(r, i), s.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    for (int c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
  }
  void col_neg(int i) {
    for (int r = 0; r < s.rows; ++r) s.at(r, i) = -s.at(r, i);
    for (int r = 0; r < v.rows; ++r) v.at(r, i) = -v.at(r, i);
    for (int c = 0; c < vinv.cols; ++c) vinv.at(i, c) = -vinv.at(i, c);
  }
  // col_j += k * col_i
  void col_add(int j, int i, Int k) {
    if (k == 0) return;
    for (int r = 0; r < s.rows; ++r) s.at(r, j) += k * s.at(r, i);
    for (int r = 0; r < v.rows; ++r) v.at(r, j) += k * v.at(r, i);
    for (int c = 0; c < vinv.cols; ++c) vinv.at(i, c) -= k * vinv.at(j, c);
  }

  // Clear row t and column t (beyond the pivot) for every position >= t.
  void eliminate_from(int t0) {
    int limit = std::min(s.rows, s.cols);
    for (int t = t0; t < limit; ++t) {
      for (int guard = 0;; ++guard) {
        if (guard > 100000) fail(ErrKind::Internal, "smith_normal_form failed to converge");
        // Minimal-absolute-value pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < s.rows; ++i)
          for (int j = t; j < s.cols; ++j) {
            Int val = s.at(i, j);
            if (val == 0) continue;
            Int av = val < 0 ? -val : val;
            if (pi < 0 || av < best) {
              pi = i;
              pj = j;
              best = av;
            }
          }
        if (pi < 0) return;  // trailing submatrix is zero
        row_swap(t, pi);
        col_swap(t, pj);
        bool dirty = false;
        for (int i = t + 1; i < s.rows; ++i) {
          if (s.at(i, t) == 0) continue;
          Int q = s.at(i, t) / s.at(t, t);
          row_add(i, t, -q);
          if (s.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < s.cols; ++j) {
          if (s.at(t, j) == 0) continue;
          Int q = s.at(t, j) / s.at(t, t);
          col_add(j, t, -q);
          if (s.at(t, j) != 0) dirty = true;
        }
        if (!dirty) break;
      }
      if (s.at(t, t) < 0) row_neg(t);
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& m) {
  SnfWork w(m);
  w.eliminate_from(0);
  int limit = std::min(m.rows, m.cols);
  // Divisibility chain with zeros (free directions) pushed to the end.
  for (int guard = 0;; ++guard) {
    if (guard > 100000) fail(ErrKind::Internal, "smith_normal_form divisibility loop");
    bool changed = false;
    for (int t = 0; t + 1 < limit && !changed; ++t) {
      for (int uu = t + 1; uu < limit && !changed; ++uu) {
        Int a = w.s.at(t, t), b = w.s.at(uu, uu);
        if (a == 0 && b != 0) {
          w.row_swap(t, uu);
          w.col_swap(t, uu);
          changed = true;
        } else if (a != 0 && b != 0 && b % a != 0) {
          w.col_add(t, uu, 1);
          w.eliminate_from(t);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  SmithResult r;
  r.u = std::move(w.u);
  r.s = std::move(w.s);
  r.v = std::move(w.v);
  r.uinv = std::move(w.uinv);
  r.vinv = std::move(w.vinv);
  r.diag_rank = 0;
  for (int t = 0; t < limit; ++t)
    if (r.s.at(t, t) != 0) ++r.diag_rank;
  return r;
}

IntMat integer_kernel(const IntMat& m) {
  SmithResult sn = smith_normal_form(m);
  int k = m.cols - sn.diag_rank;
  IntMat out(m.cols, k);
  for (int j = 0; j < k; ++j)
    for (int r = 0; r < m.cols; ++r) out.at(r, j) = sn.v.at(r, sn.diag_rank + j);
  return out;
}

std::optional<std::vector<Int>> integer_solve(const IntMat& m, const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != m.rows) fail(ErrKind::Internal, "integer_solve shape");
  SmithResult sn = smith_normal_form(m);
  // s * w = u * b, then x = v * w.
  std::vector<Int> ub(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) ub[i] += sn.u.at(i, j) * b[j];
  std::vector<Int> w(m.cols, 0);
  int limit = std::min(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    Int si = (i < limit) ? sn.s.at(i, i) : 0;
    if (si == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % si != 0) return std::nullopt;
      w[i] = ub[i] / si;
    }
  }
  std::vector<Int> x(m.cols, 0);
  for (int r = 0; r < m.cols; ++r)
    for (int c = 0; c < m.cols; ++c) x[r] += sn.v.at(r, c) * w[c];
  return x;
}

Presented presentation_to_group(const IntMat& relations, int n_generators) {
  if (relations.rows != n_generators && !(relations.rows == 0 && relations.cols == 0))
    fail(ErrKind::Internal, "presentation relation rows must equal generator count");
  IntMat rel = relations;
  if (rel.rows == 0 && rel.cols == 0) rel = IntMat(n_generators, 0);
  SmithResult sn = smith_normal_form(rel);
  int limit = std::min(rel.rows, rel.cols);
  // Generator i of the transformed basis carries relation s_ii (0 beyond the
  // diagonal).  Keep indices whose factor is not 1.
  std::vector<int> kept;
  std::vector<Int> factors;
  for (int i = 0; i < n_generators; ++i) {
    Int d = (i < limit) ? sn.s.at(i, i) : 0;
    if (d == 1) continue;
    kept.push_back(i);
    factors.push_back(d);
  }
  FinAbGroup g = make_group(factors);
  Presented out;
  out.group = g;
  out.proj = IntMat(g.rank(), n_generators);
  for (int r = 0; r < g.rank(); ++r)
    for (int c = 0; c < n_generators; ++c)
      out.proj.at(r, c) = pmod(sn.u.at(kept[r], c), g.factors[r]);
  out.section = IntMat(n_generators, g.rank());
  for (int r = 0; r < n_generators; ++r)
    for (int c = 0; c < g.rank(); ++c) out.section.at(r, c) = sn.uinv.at(r, kept[c]);
  return out;
}

namespace {

IntMat diag_of(const FinAbGroup& g) {
  IntMat d(g.rank(), g.rank());
  for (int i = 0; i < g.rank(); ++i) d.at(i, i) = g.factors[i];
  return d;
}

// Solutions x (coordinates in `g`) of  gens * w == x-ish membership are not
// needed; this returns a generating set for {z : gens * z == 0 in `g`}.
IntMat relation_lattice(const FinAbGroup& g, const IntMat& gens) {
  IntMat stacked = mat_hcat(gens, diag_of(g));
  IntMat ker = integer_kernel(stacked);
  IntMat out(gens.cols, ker.cols);
  for (int r = 0; r < gens.cols; ++r)
    for (int c = 0; c < ker.cols; ++c) out.at(r, c) = ker.at(r, c);
  return out;
}

}  // namespace

SubgroupResult subgroup_from_generators(const FinAbGroup& ambient, const IntMat& gens) {
  if (gens.rows != ambient.rank()) fail(ErrKind::Internal, "subgroup generator shape");
  IntMat rel = relation_lattice(ambient, gens);
  Presented pres = presentation_to_group(rel, gens.cols);
  SubgroupResult out;
  out.group = pres.group;
  out.incl = make_hom(pres.group, ambient, mat_mul(gens, pres.section));
  out.expr = pres.proj;
  return out;
}

KernelResult kernel(const GroupHom& f) {
  // x lies in ker f iff  f.m x + D_cod y = 0  for some y.
  IntMat stacked = mat_hcat(f.m, diag_of(f.codomain));
  IntMat ker = integer_kernel(stacked);
  IntMat xpart(f.domain.rank(), ker.cols);
  for (int r = 0; r < xpart.rows; ++r)
    for (int c = 0; c < ker.cols; ++c) xpart.at(r, c) = ker.at(r, c);
  SubgroupResult sub = subgroup_from_generators(f.domain, xpart);
  return KernelResult{sub.group, sub.incl};
}

CokernelResult cokernel(const GroupHom& f) {
  IntMat rel = mat_hcat(f.m, diag_of(f.codomain));
  Presented pres = presentation_to_group(rel, f.codomain.rank());
  CokernelResult out;
  out.group = pres.group;
  out.proj = make_hom(f.codomain, pres.group, pres.proj);
  return out;
}

SubgroupResult image(const GroupHom& f) {
  return subgroup_from_generators(f.codomain, f.m);
}

FinAbGroup homology_at(const GroupHom& f, const GroupHom& g) {
  if (f.codomain != g.domain) fail(ErrKind::Internal, "homology_at middle mismatch");
  if (!is_zero_hom(hom_compose(g, f)))
    fail(ErrKind::CompositeNonzero, "g . f is not zero");
  KernelResult k = kernel(g);
  // Factor f through the kernel inclusion: incl . phi = f.
  IntMat stacked = mat_hcat(k.incl.m, diag_of(g.domain));
  IntMat phi(k.group.rank(), f.domain.rank());
  for (int j = 0; j < f.domain.rank(); ++j) {
    std::vector<Int> target(f.m.rows);
    for (int i = 0; i < f.m.rows; ++i) target[i] = f.m.at(i, j);
    auto sol = integer_solve(stacked, target);
    if (!sol) fail(ErrKind::Internal, "image does not land in kernel");
    for (int i = 0; i < k.group.rank(); ++i) phi.at(i, j) = (*sol)[i];
  }
  GroupHom phi_hom = make_hom(f.domain, k.group, std::move(phi));
  return cokernel(phi_hom).group;
}

std::vector<GroupElement> enumerate_elements(const FinAbGroup& g, Int limit) {
  if (!g.is_finite()) fail(ErrKind::InfiniteGroup, "cannot enumerate an infinite group");
  Int o = g.order();
  if (o > limit) fail(ErrKind::Internal, "enumeration limit exceeded");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(o));
  std::vector<Int> c(g.rank(), 0);
  for (Int n = 0; n < o; ++n) {
    out.push_back(GroupElement{g, c});
    // Odometer with the last coordinate fastest: lexicographic order with the
    // first coordinate most significant.
    for (int i = g.rank() - 1; i >= 0; --i) {
      if (++c[i] < g.factors[i]) break;
      c[i] = 0;
    }
  }
  return out;
}

std::optional<GroupElement> solve(const GroupHom& h, const GroupElement& y) {
  if (y.group != h.codomain) fail(ErrKind::Internal, "solve target group mismatch");
  constexpr Int kEnumCap = Int(1) << 20;
  if (h.domain.is_finite() && h.domain.order() <= kEnumCap) {
    // Odometer over coordinates, last coordinate fastest: visits elements in
    // lexicographic order, so the first hit is the lex-least solution.
    Int o = h.domain.order();
    int rk = h.domain.rank();
    std::vector<Int> c(rk, 0);
    for (Int step = 0; step < o; ++step) {
      bool hit = true;
      for (int i = 0; i < y.group.rank() && hit; ++i) {
        Int acc = 0;
        for (int j = 0; j < rk; ++j) acc += h.m.at(i, j) * c[j];
        if (pmod(acc, y.group.factors[i]) != y.coords[i]) hit = false;
      }
      if (hit) return GroupElement{h.domain, c};
      for (int i = rk - 1; i >= 0; --i) {
        if (++c[i] < h.domain.factors[i]) break;
        c[i] = 0;
      }
    }
    return std::nullopt;
  }
  // h.m x + D_cod t = y
  IntMat stacked = mat_hcat(h.m, diag_of(h.codomain));
  auto sol = integer_solve(stacked, y.coords);
  if (!sol) return std::nullopt;
  std::vector<Int> x(sol->begin(), sol->begin() + h.domain.rank());
  return make_element(h.domain, std::move(x));
}

std::optional<GroupHom> hom_inverse(const GroupHom& h) {
  if (h.domain.factors != h.codomain.factors) return std::nullopt;
  IntMat ginv(h.domain.rank(), h.codomain.rank());
  for (int j = 0; j < h.codomain.rank(); ++j) {
    std::vector<Int> e(h.codomain.rank(), 0);
    e[j] = 1;
    auto pre = solve(h, make_element(h.codomain, e));
    if (!pre) return std::nullopt;
    for (int i = 0; i < h.domain.rank(); ++i) ginv.at(i, j) = pre->coords[i];
  }
  // The candidate may fail to be a homomorphism when h is not injective.
  GroupHom g;
  try {
    g = make_hom(h.codomain, h.domain, std::move(ginv));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!hom_equal(hom_compose(g, h), identity_hom(h.domain))) return std::nullopt;
  if (!hom_equal(hom_compose(h, g), identity_hom(h.codomain))) return std::nullopt;
  return g;
}

// ---------------------------------------------------------------------------
// Colimits
// ---------------------------------------------------------------------------

namespace {

// Incremental integer column echelon pool.  Columns span the relation lattice
// modulo the per-row factors; entries stay reduced modulo those factors.
struct ColumnPool {
  int n;
  std::vector<Int> factors;               // per-row modulus (0 = free row)
  std::vector<std::vector<Int>> columns;  // column with pivot at row r, or empty
  // columns[r] is empty or has its first nonzero entry at row r.

  explicit ColumnPool(std::vector<Int> f) : n(static_cast<int>(f.size())), factors(std::move(f)) {
    columns.resize(n);
  }

  void reduce_col(std::vector<Int>& c) const {
    for (int r = 0; r < n; ++r) c[r] = pmod(c[r], factors[r]);
  }

  void add(std::vector<Int> c) {
    reduce_col(c);
    for (int r = 0; r < n; ++r) {
      if (c[r] == 0) continue;
      if (columns[r].empty()) {
        columns[r] = std::move(c);
        return;
      }
      std::vector<Int>& p = columns[r];
      if (c[r] % p[r] == 0) {
        Int q = c[r] / p[r];
        for (int i = r; i < n; ++i) c[i] = pmod(c[i] - q * p[i], factors[i]);
      } else {
        Int x, y;
        Int g = ext_gcd(p[r], c[r], x, y);
        Int pr = p[r] / g, cr = c[r] / g;
        // (new pivot col, new tail col) = (x*p + y*c, cr*p - pr*c); the
        // transform is unimodular so the spanned lattice is unchanged.
        std::vector<Int> np(n, 0), nc(n, 0);
        for (int i = r; i < n; ++i) {
          np[i] = x * p[i] + y * c[i];
          nc[i] = cr * p[i] - pr * c[i];
        }
        reduce_col(np);
        reduce_col(nc);
        p = std::move(np);
        c = std::move(nc);
      }
      c[r] = pmod(c[r], factors[r] == 0 ? 0 : factors[r]);
      if (c[r] != 0) fail(ErrKind::Internal, "column pool reduction failed");
    }
  }

  IntMat to_matrix() const {
    int k = 0;
    for (const auto& c : columns)
      if (!c.empty()) ++k;
    IntMat out(n, k);
    int j = 0;
    for (const auto& c : columns) {
      if (c.empty()) continue;
      for (int r = 0; r < n; ++r) out.at(r, j) = c[r];
      ++j;
    }
    return out;
  }
};

}  // namespace

ColimitResult colimit(const FiniteDiagram& d) {
  int total = 0;
  std::vector<int> offset(d.nodes.size(), 0);
  std::vector<Int> factors;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    offset[i] = total;
    total += d.nodes[i].rank();
    for (Int f : d.nodes[i].factors) factors.push_back(f);
  }
  for (const DiagramArrow& ar : d.arrows) {
    if (ar.src < 0 || ar.src >= static_cast<int>(d.nodes.size()) || ar.dst < 0 ||
        ar.dst >= static_cast<int>(d.nodes.size()))
      fail(ErrKind::Internal, "colimit arrow index out of range");
    if (ar.hom.domain != d.nodes[ar.src] || ar.hom.codomain != d.nodes[ar.dst])
      fail(ErrKind::Internal, "colimit arrow endpoints mismatch");
  }

  ColumnPool pool(factors);
  for (const DiagramArrow& ar : d.arrows) {
    if (ar.src == ar.dst && hom_equal(ar.hom, identity_hom(d.nodes[ar.src]))) continue;
    int rs = d.nodes[ar.src].rank();
    int rd = d.nodes[ar.dst].rank();
    for (int j = 0; j < rs; ++j) {
      std::vector<Int> col(total, 0);
      col[offset[ar.src] + j] += 1;
      for (int i = 0; i < rd; ++i) col[offset[ar.dst] + i] -= ar.hom.m.at(i, j);
      pool.add(std::move(col));
    }
  }

  IntMat diag(total, total);
  for (int i = 0; i < total; ++i) diag.at(i, i) = factors[i];
  IntMat relations = mat_hcat(pool.to_matrix(), diag);
  Presented pres = presentation_to_group(relations, total);

  ColimitResult out;
  out.group = pres.group;
  out.section = pres.section;
  out.offset = offset;
  out.cocone.reserve(d.nodes.size());
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    IntMat block(pres.group.rank(), d.nodes[i].rank());
    for (int r = 0; r < block.rows; ++r)
      for (int c = 0; c < block.cols; ++c) block.at(r, c) = pres.proj.at(r, offset[i] + c);
    out.cocone.push_back(make_hom(d.nodes[i], pres.group, std::move(block)));
  }
  if (!out.group.is_finite())
    fail(ErrKind::InfiniteGroup, "colimit has free rank");
  return out;
}

GroupHom colimit_induced(const ColimitResult& c, const std::vector<GroupHom>& components,
                         const FinAbGroup& target) {
  if (components.size() != c.cocone.size())
    fail(ErrKind::Internal, "colimit_induced component count mismatch");
  int total = c.section.rows;
  IntMat block(target.rank(), total);
  for (size_t i = 0; i < components.size(); ++i) {
    const GroupHom& comp = components[i];
    if (comp.codomain != target || comp.domain != c.cocone[i].domain)
      fail(ErrKind::Internal, "colimit_induced component endpoints mismatch");
    for (int r = 0; r < comp.m.rows; ++r)
      for (int j = 0; j < comp.m.cols; ++j) block.at(r, c.offset[i] + j) = comp.m.at(r, j);
  }
  GroupHom psi = make_hom(c.group, target, mat_mul(block, c.section));
  for (size_t i = 0; i < components.size(); ++i) {
    if (!hom_equal(hom_compose(psi, c.cocone[i]), components[i]))
      fail(ErrKind::Internal, "colimit_induced components are not compatible");
  }
  return psi;
}

}  // namespace tricat
