#include <optional>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tricat/abgroup.hpp"

using namespace tricat;

namespace {

IntMat from_rows(std::vector<std::vector<Int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  return m;
}

template <typename F>
std::optional<ErrKind> thrown_kind(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

FinAbGroup random_group(std::mt19937_64& rng, int max_rank, Int max_order) {
  for (;;) {
    std::uniform_int_distribution<int> rank_d(0, max_rank);
    int rk = rank_d(rng);
    std::vector<Int> factors;
    Int d = 0;
    for (int i = 0; i < rk; ++i) {
      if (i == 0) {
        std::uniform_int_distribution<Int> base(2, 6);
        d = base(rng);
      } else {
        std::uniform_int_distribution<Int> mult(1, 3);
        d *= mult(rng);
      }
      factors.push_back(d);
    }
    Int order = 1;
    for (Int f : factors) order *= f;
    if (order <= max_order) return make_group(factors);
  }
}

GroupHom random_hom(std::mt19937_64& rng, const FinAbGroup& dom, const FinAbGroup& cod) {
  IntMat m(cod.rank(), dom.rank());
  for (int i = 0; i < m.rows; ++i) {
    Int di = cod.factors[i];
    for (int j = 0; j < m.cols; ++j) {
      Int dj = dom.factors[j];
      if (di == 0) {
        m.at(i, j) = 0;  // nothing finite maps into a free summand
      } else if (dj == 0) {
        std::uniform_int_distribution<Int> any(0, di - 1);
        m.at(i, j) = any(rng);
      } else {
        Int step = di / gcd_ll(di, dj);
        std::uniform_int_distribution<Int> mult(0, gcd_ll(di, dj) - 1);
        m.at(i, j) = step * mult(rng);
      }
    }
  }
  return make_hom(dom, cod, std::move(m));
}

bool is_diagonal(const IntMat& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form: frozen 2x2 example") {
  IntMat m = from_rows({{2, 0}, {0, 3}});
  SmithResult r = smith_normal_form(m);
  CHECK(r.s == from_rows({{1, 0}, {0, 6}}));
  CHECK(mat_mul(mat_mul(r.u, m), r.v) == r.s);
  CHECK(mat_mul(r.u, r.uinv) == IntMat::identity(2));
  CHECK(mat_mul(r.v, r.vinv) == IntMat::identity(2));
  CHECK(r.diag_rank == 2);
}

TEST_CASE("smith normal form: degenerate shapes") {
  SmithResult r0 = smith_normal_form(IntMat(0, 0));
  CHECK(r0.diag_rank == 0);
  SmithResult r1 = smith_normal_form(IntMat(3, 0));
  CHECK(r1.diag_rank == 0);
  CHECK(r1.u == IntMat::identity(3));
  SmithResult r2 = smith_normal_form(IntMat(0, 2));
  CHECK(r2.v == IntMat::identity(2));
  SmithResult rz = smith_normal_form(IntMat(3, 2));
  CHECK(rz.diag_rank == 0);
  CHECK(rz.s == IntMat(3, 2));
}

TEST_CASE("smith normal form: random matrices satisfy the contract") {
  std::mt19937_64 rng(20260801);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_int_distribution<Int> val(-9, 9);
  for (int iter = 0; iter < 300; ++iter) {
    IntMat m(dim(rng), dim(rng));
    for (auto& v : m.a) v = val(rng);
    SmithResult r = smith_normal_form(m);
    CHECK(mat_mul(mat_mul(r.u, m), r.v) == r.s);
    CHECK(mat_mul(r.u, r.uinv) == IntMat::identity(m.rows));
    CHECK(mat_mul(r.uinv, r.u) == IntMat::identity(m.rows));
    CHECK(mat_mul(r.v, r.vinv) == IntMat::identity(m.cols));
    CHECK(mat_mul(r.vinv, r.v) == IntMat::identity(m.cols));
    CHECK(is_diagonal(r.s));
    int limit = std::min(m.rows, m.cols);
    for (int t = 0; t < limit; ++t) {
      Int d = r.s.at(t, t);
      CHECK(d >= 0);
      if (t + 1 < limit) {
        Int e = r.s.at(t + 1, t + 1);
        if (d == 0) CHECK(e == 0);
        if (d != 0 && e != 0) CHECK(e % d == 0);
      }
    }
  }
}

TEST_CASE("group construction and canonical form") {
  CHECK(make_group({}).is_trivial());
  CHECK(make_group({2, 4}).order() == 8);
  CHECK(make_group({2, 0}).is_finite() == false);
  CHECK(thrown_kind([] { make_group({2, 3}); }) == ErrKind::Internal);
  CHECK(thrown_kind([] { make_group({1}); }) == ErrKind::Internal);
  CHECK(thrown_kind([] { make_group({0, 2}); }) == ErrKind::Internal);
  CHECK(thrown_kind([] { make_group({2, 0}).order(); }) == ErrKind::InfiniteGroup);
  CHECK(group_to_string(make_group({2, 4, 0})) == "Z/2 + Z/4 + Z");
  CHECK(group_to_string(make_group({})) == "0");
}

TEST_CASE("presentations: frozen examples") {
  Presented p1 = presentation_to_group(from_rows({{2}}), 1);
  CHECK(p1.group.factors == std::vector<Int>{2});

  Presented p2 = presentation_to_group(from_rows({{2, 0}, {0, 1}}), 2);
  CHECK(p2.group.factors == std::vector<Int>{2});

  Presented p3 = presentation_to_group(IntMat(0, 0), 0);
  CHECK(p3.group.is_trivial());

  Presented p4 = presentation_to_group(IntMat(2, 0), 2);
  CHECK(p4.group.factors == std::vector<Int>({0, 0}));
}

TEST_CASE("presentations: projection and section are compatible") {
  std::mt19937_64 rng(20260802);
  std::uniform_int_distribution<int> dim(0, 5);
  std::uniform_int_distribution<Int> val(-6, 6);
  for (int iter = 0; iter < 200; ++iter) {
    int n = dim(rng);
    int m = dim(rng);
    IntMat rel(n, m);
    for (auto& v : rel.a) v = val(rng);
    Presented p = presentation_to_group(rel, n);
    // proj . section = identity on the group
    IntMat ps = mat_mul(p.proj, p.section);
    GroupHom h = make_hom(p.group, p.group, ps);
    CHECK(hom_equal(h, identity_hom(p.group)));
    // every relation column dies under proj
    IntMat killed = mat_mul(p.proj, rel);
    GroupHom zero_check = make_hom(make_group(std::vector<Int>(m, 0)), p.group, killed);
    CHECK(is_zero_hom(zero_check));
  }
}

TEST_CASE("hom construction enforces well-definedness") {
  FinAbGroup z2 = make_group({2});
  FinAbGroup z4 = make_group({4});
  CHECK(thrown_kind([&] { make_hom(z2, z4, from_rows({{1}})); }) == ErrKind::Internal);
  GroupHom ok = make_hom(z2, z4, from_rows({{2}}));
  CHECK(hom_apply(ok, make_element(z2, {1})).coords == std::vector<Int>{2});
  // entries are normalized modulo codomain factors
  GroupHom red = make_hom(z4, z4, from_rows({{5}}));
  CHECK(red.m.at(0, 0) == 1);
}

TEST_CASE("element arithmetic") {
  FinAbGroup g = make_group({2, 4});
  GroupElement a = make_element(g, {1, 3});
  GroupElement b = make_element(g, {1, 2});
  CHECK(elem_add(a, b).coords == std::vector<Int>({0, 1}));
  CHECK(elem_neg(a).coords == std::vector<Int>({1, 1}));
  CHECK(elem_scale(2, a).coords == std::vector<Int>({0, 2}));
  CHECK(is_zero(elem_add(a, elem_neg(a))));
}

TEST_CASE("solve: frozen doubling example on Z/4") {
  FinAbGroup z4 = make_group({4});
  GroupHom dbl = make_hom(z4, z4, from_rows({{2}}));
  auto hit = solve(dbl, make_element(z4, {2}));
  REQUIRE(hit.has_value());
  CHECK(hit->coords == std::vector<Int>{2 / 2});
  auto miss = solve(dbl, make_element(z4, {1}));
  CHECK_FALSE(miss.has_value());
}

TEST_CASE("solve: agrees with exhaustive scan and returns lex-least") {
  std::mt19937_64 rng(20260803);
  for (int iter = 0; iter < 200; ++iter) {
    FinAbGroup dom = random_group(rng, 3, 64);
    FinAbGroup cod = random_group(rng, 3, 64);
    GroupHom h = random_hom(rng, dom, cod);
    // pick a target: half the time an actual image point, half random
    GroupElement y = zero_element(cod);
    std::vector<GroupElement> dom_elems = enumerate_elements(dom);
    if (iter % 2 == 0 && !dom_elems.empty()) {
      std::uniform_int_distribution<size_t> pick(0, dom_elems.size() - 1);
      y = hom_apply(h, dom_elems[pick(rng)]);
    } else if (cod.rank() > 0) {
      std::vector<Int> c(cod.rank());
      for (int i = 0; i < cod.rank(); ++i) {
        std::uniform_int_distribution<Int> v(0, cod.factors[i] - 1);
        c[i] = v(rng);
      }
      y = make_element(cod, c);
    }
    auto got = solve(h, y);
    std::optional<GroupElement> expect;
    for (const GroupElement& x : dom_elems) {
      if (hom_apply(h, x) == y) {
        expect = x;
        break;  // enumerate_elements is in lex order
      }
    }
    CHECK(got.has_value() == expect.has_value());
    if (got && expect) CHECK(got->coords == expect->coords);
  }
}

TEST_CASE("homology: frozen chain on Z/4") {
  FinAbGroup z4 = make_group({4});
  GroupHom dbl = make_hom(z4, z4, from_rows({{2}}));
  CHECK(homology_at(dbl, dbl).is_trivial());
  CHECK(thrown_kind([&] { homology_at(identity_hom(z4), identity_hom(z4)); }) ==
        ErrKind::CompositeNonzero);

  FinAbGroup triv = make_group({});
  FinAbGroup z2 = make_group({2});
  GroupHom in = zero_hom(triv, z2);
  GroupHom out = zero_hom(z2, triv);
  CHECK(homology_at(in, out).factors == std::vector<Int>{2});
}

TEST_CASE("kernel, image, cokernel match enumeration oracles") {
  std::mt19937_64 rng(20260804);
  for (int iter = 0; iter < 200; ++iter) {
    FinAbGroup dom = random_group(rng, 3, 128);
    FinAbGroup cod = random_group(rng, 3, 128);
    GroupHom f = random_hom(rng, dom, cod);

    KernelResult k = kernel(f);
    oracles::OracleGroup ko = oracles::kernel_oracle(f);
    CHECK(k.group.factors == ko.factors);
    CHECK((k.group.is_trivial() ? 1 : k.group.order()) == ko.order);
    // inclusion really lands in the kernel and is injective
    CHECK(is_zero_hom(hom_compose(f, k.incl)));
    std::set<std::vector<Int>> seen;
    for (const GroupElement& x : enumerate_elements(k.group))
      seen.insert(hom_apply(k.incl, x).coords);
    CHECK(static_cast<Int>(seen.size()) == k.group.order());

    SubgroupResult im = image(f);
    oracles::OracleGroup io = oracles::image_oracle(f);
    CHECK(im.group.factors == io.factors);

    CokernelResult ck = cokernel(f);
    oracles::OracleGroup co = oracles::cokernel_oracle(f);
    CHECK(ck.group.factors == co.factors);
    CHECK(is_zero_hom(hom_compose(ck.proj, f)));
  }
}

TEST_CASE("subgroup expression coordinates are consistent") {
  std::mt19937_64 rng(20260805);
  for (int iter = 0; iter < 100; ++iter) {
    FinAbGroup g = random_group(rng, 3, 128);
    std::uniform_int_distribution<int> ngens(0, 4);
    int k = ngens(rng);
    IntMat gens(g.rank(), k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < g.rank(); ++i) {
        std::uniform_int_distribution<Int> v(0, g.factors[i] - 1);
        gens.at(i, j) = v(rng);
      }
    SubgroupResult s = subgroup_from_generators(g, gens);
    // incl(expr(column j)) == column j
    for (int j = 0; j < k; ++j) {
      std::vector<Int> ej(k, 0);
      std::vector<Int> sc(s.group.rank(), 0);
      for (int i = 0; i < s.group.rank(); ++i) sc[i] = s.expr.at(i, j);
      GroupElement back = hom_apply(s.incl, make_element(s.group, sc));
      std::vector<Int> want(g.rank());
      for (int i = 0; i < g.rank(); ++i) want[i] = gens.at(i, j);
      CHECK(back.coords == reduce_coords(g, want));
    }
  }
}

TEST_CASE("homology matches enumeration oracle on random complexes") {
  std::mt19937_64 rng(20260806);
  int done = 0;
  while (done < 150) {
    FinAbGroup mid = random_group(rng, 3, 64);
    FinAbGroup tail = random_group(rng, 2, 32);
    GroupHom g = random_hom(rng, mid, tail);
    // build f landing in ker(g): compose a random map into the kernel
    KernelResult k = kernel(g);
    FinAbGroup head = random_group(rng, 2, 32);
    GroupHom into_k = random_hom(rng, head, k.group);
    GroupHom f = hom_compose(k.incl, into_k);
    FinAbGroup h = homology_at(f, g);
    oracles::OracleGroup ho = oracles::homology_oracle(f, g);
    CHECK(h.factors == ho.factors);
    ++done;
  }
}

TEST_CASE("hom_inverse") {
  FinAbGroup z4 = make_group({4});
  CHECK(hom_inverse(identity_hom(z4)).has_value());
  GroupHom triple = make_hom(z4, z4, from_rows({{3}}));
  auto inv = hom_inverse(triple);
  REQUIRE(inv.has_value());
  CHECK(hom_equal(hom_compose(*inv, triple), identity_hom(z4)));
  GroupHom dbl = make_hom(z4, z4, from_rows({{2}}));
  CHECK_FALSE(hom_inverse(dbl).has_value());
  // mismatched shapes
  FinAbGroup z2 = make_group({2});
  CHECK_FALSE(hom_inverse(zero_hom(z2, z4)).has_value());

  std::mt19937_64 rng(20260807);
  for (int iter = 0; iter < 100; ++iter) {
    FinAbGroup dom = random_group(rng, 3, 64);
    GroupHom f = random_hom(rng, dom, dom);
    auto got = hom_inverse(f);
    // bijectivity by scan
    std::set<std::vector<Int>> images;
    for (const GroupElement& x : enumerate_elements(dom)) images.insert(hom_apply(f, x).coords);
    bool bijective = static_cast<Int>(images.size()) == (dom.is_trivial() ? 1 : dom.order());
    CHECK(got.has_value() == bijective);
    if (got) {
      CHECK(hom_equal(hom_compose(*got, f), identity_hom(dom)));
      CHECK(hom_equal(hom_compose(f, *got), identity_hom(dom)));
    }
  }
}

TEST_CASE("enumerate_elements: lexicographic order") {
  FinAbGroup g = make_group({2, 4});
  std::vector<GroupElement> all = enumerate_elements(g);
  REQUIRE(all.size() == 8);
  CHECK(all[0].coords == std::vector<Int>({0, 0}));
  CHECK(all[1].coords == std::vector<Int>({0, 1}));
  CHECK(all[3].coords == std::vector<Int>({0, 3}));
  CHECK(all[4].coords == std::vector<Int>({1, 0}));
  CHECK(all[7].coords == std::vector<Int>({1, 3}));
  CHECK(thrown_kind([] { enumerate_elements(make_group({0})); }) == ErrKind::InfiniteGroup);
  CHECK(thrown_kind([] { enumerate_elements(make_group({64}), 32); }) == ErrKind::Internal);
}

TEST_CASE("colimit: frozen doubling chain") {
  FinAbGroup z4 = make_group({4});
  GroupHom dbl = make_hom(z4, z4, from_rows({{2}}));
  FiniteDiagram d;
  d.nodes = {z4, z4, z4};
  d.arrows = {{0, 1, dbl}, {1, 2, dbl}};
  ColimitResult c = colimit(d);
  CHECK(c.group.factors == std::vector<Int>{4});
  // structure maps: cocone_0 = cocone_2 . 4 = 0, cocone_1 = cocone_2 . 2
  CHECK(is_zero_hom(c.cocone[0]));
  CHECK(hom_equal(c.cocone[1], hom_compose(c.cocone[2], dbl)));
  auto last_inv = hom_inverse(c.cocone[2]);
  CHECK(last_inv.has_value());
}

TEST_CASE("colimit: empty diagram and infinite nodes") {
  FiniteDiagram empty;
  CHECK(colimit(empty).group.is_trivial());

  FiniteDiagram free;
  free.nodes = {make_group({0})};
  CHECK(thrown_kind([&] { colimit(free); }) == ErrKind::InfiniteGroup);
}

TEST_CASE("colimit: matches coset-enumeration oracle on random diagrams") {
  std::mt19937_64 rng(20260808);
  int done = 0;
  while (done < 150) {
    std::uniform_int_distribution<int> nn(1, 4);
    int n = nn(rng);
    FiniteDiagram d;
    Int total = 1;
    for (int i = 0; i < n; ++i) {
      FinAbGroup g = random_group(rng, 2, 32);
      total *= (g.is_trivial() ? 1 : g.order());
      d.nodes.push_back(g);
    }
    if (total > 4096) continue;
    std::uniform_int_distribution<int> na(0, 6);
    std::uniform_int_distribution<int> node_pick(0, n - 1);
    int arrows = na(rng);
    for (int a = 0; a < arrows; ++a) {
      int s = node_pick(rng);
      int t = node_pick(rng);
      d.arrows.push_back({s, t, random_hom(rng, d.nodes[s], d.nodes[t])});
    }
    ColimitResult c = colimit(d);
    oracles::OracleGroup oc = oracles::colimit_oracle(d);
    CHECK(c.group.factors == oc.factors);
    CHECK((c.group.is_trivial() ? 1 : c.group.order()) == oc.order);
    // relations hold through the cocones
    for (const auto& ar : d.arrows)
      CHECK(hom_equal(c.cocone[ar.src], hom_compose(c.cocone[ar.dst], ar.hom)));
    // jointly surjective: subgroup generated by all cocone images is everything
    IntMat allgens(c.group.rank(), 0);
    for (const auto& co : c.cocone) allgens = mat_hcat(allgens, co.m);
    SubgroupResult span = subgroup_from_generators(c.group, allgens);
    CHECK(span.group.factors == c.group.factors);
    // induced map from the colimit's own cocones is the identity
    GroupHom self = colimit_induced(c, c.cocone, c.group);
    CHECK(hom_equal(self, identity_hom(c.group)));
    ++done;
  }
}

TEST_CASE("colimit_induced: maps through a genuine cocone") {
  // Diagram Z/2 <- arrows -> Z/4 with target Z/8 checks factoring.
  FinAbGroup z2 = make_group({2});
  FinAbGroup z4 = make_group({4});
  FinAbGroup z8 = make_group({8});
  FiniteDiagram d;
  d.nodes = {z2, z4};
  d.arrows = {{0, 1, make_hom(z2, z4, from_rows({{2}}))}};
  ColimitResult c = colimit(d);
  CHECK(c.group.factors == std::vector<Int>{4});
  std::vector<GroupHom> comps = {make_hom(z2, z8, from_rows({{4}})),
                                 make_hom(z4, z8, from_rows({{2}}))};
  GroupHom psi = colimit_induced(c, comps, z8);
  CHECK(hom_equal(hom_compose(psi, c.cocone[0]), comps[0]));
  CHECK(hom_equal(hom_compose(psi, c.cocone[1]), comps[1]));
  // incompatible components are rejected: 0 != (.2) applied after the arrow
  std::vector<GroupHom> bad = {zero_hom(z2, z8), make_hom(z4, z8, from_rows({{2}}))};
  CHECK(thrown_kind([&] { colimit_induced(c, bad, z8); }) == ErrKind::Internal);
}

TEST_CASE("integer kernel and integer solve") {
  IntMat m = from_rows({{2, 4}, {1, 2}});
  IntMat k = integer_kernel(m);
  CHECK(k.cols == 1);
  // kernel vector proportional to (2, -1)
  CHECK(m.at(0, 0) * k.at(0, 0) + m.at(0, 1) * k.at(1, 0) == 0);
  CHECK(m.at(1, 0) * k.at(0, 0) + m.at(1, 1) * k.at(1, 0) == 0);

  auto sol = integer_solve(m, {6, 3});
  REQUIRE(sol.has_value());
  CHECK(2 * (*sol)[0] + 4 * (*sol)[1] == 6);
  CHECK(1 * (*sol)[0] + 2 * (*sol)[1] == 3);
  CHECK_FALSE(integer_solve(m, {1, 1}).has_value());
}
