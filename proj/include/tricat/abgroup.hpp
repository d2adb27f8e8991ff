#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tricat/error.hpp"

namespace tricat {

using Int = long long;

Int gcd_ll(Int a, Int b);
// a mod m with result in [0, m) for m > 0; for m == 0 returns a unchanged.
Int pmod(Int a, Int m);

// Dense row-major integer matrix.  Zero-dimensional shapes are legal.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  Int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMat identity(int n);
  bool operator==(const IntMat&) const = default;
};

IntMat mat_mul(const IntMat& l, const IntMat& r);
IntMat mat_add(const IntMat& l, const IntMat& r);
IntMat mat_neg(const IntMat& m);
IntMat mat_scale(Int k, const IntMat& m);
IntMat mat_hcat(const IntMat& l, const IntMat& r);
std::string mat_to_string(const IntMat& m);

// Finitely generated abelian group in invariant-factor form: the factor list
// is d_1 | d_2 | ... | d_k with every d_i >= 2, followed by zeros (one per
// free summand).  The trivial group has an empty list.
struct FinAbGroup {
  std::vector<Int> factors;

  int rank() const { return static_cast<int>(factors.size()); }
  bool is_finite() const;
  bool is_trivial() const { return factors.empty(); }
  Int order() const;  // throws InfiniteGroup when a free summand is present

  bool operator==(const FinAbGroup&) const = default;
};

bool is_canonical_factor_list(const std::vector<Int>& factors);
FinAbGroup make_group(std::vector<Int> factors);
std::string group_to_string(const FinAbGroup& g);

struct GroupElement {
  FinAbGroup group;
  std::vector<Int> coords;  // reduced: 0 <= c_i < d_i whenever d_i > 0

  bool operator==(const GroupElement&) const = default;
};

std::vector<Int> reduce_coords(const FinAbGroup& g, std::vector<Int> coords);
GroupElement make_element(const FinAbGroup& g, std::vector<Int> coords);
GroupElement zero_element(const FinAbGroup& g);
GroupElement elem_add(const GroupElement& x, const GroupElement& y);
GroupElement elem_neg(const GroupElement& x);
GroupElement elem_scale(Int k, const GroupElement& x);
bool is_zero(const GroupElement& x);

// Homomorphism given on canonical generators: coords(f(x)) = m * coords(x).
// Entries are kept reduced modulo the codomain factor of their row.
struct GroupHom {
  FinAbGroup domain, codomain;
  IntMat m;  // codomain.rank() x domain.rank()

  bool operator==(const GroupHom&) const = default;
};

GroupHom make_hom(const FinAbGroup& dom, const FinAbGroup& cod, IntMat m);
GroupHom zero_hom(const FinAbGroup& dom, const FinAbGroup& cod);
GroupHom identity_hom(const FinAbGroup& g);
GroupElement hom_apply(const GroupHom& f, const GroupElement& x);
GroupHom hom_compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom hom_add(const GroupHom& f, const GroupHom& g);
GroupHom hom_neg(const GroupHom& f);
GroupHom hom_scale(Int k, const GroupHom& f);
bool hom_equal(const GroupHom& f, const GroupHom& g);
bool is_zero_hom(const GroupHom& f);

// Smith normal form: u * m * v == s with u, v unimodular, s diagonal with
// nonnegative entries in a divisibility chain, nonzero entries first.
struct SmithResult {
  IntMat u, s, v, uinv, vinv;
  int diag_rank = 0;  // number of nonzero diagonal entries of s
};
SmithResult smith_normal_form(const IntMat& m);

// Columns form a generating set of the integer kernel lattice {x : m x = 0}.
IntMat integer_kernel(const IntMat& m);
// A particular integer solution of m x = b, if one exists.
std::optional<std::vector<Int>> integer_solve(const IntMat& m, const std::vector<Int>& b);

// Quotient of Z^n by the column span of `relations` (must have n rows).
//   proj:    n -> group     (coordinates of a vector's class)
//   section: group -> Z^n   (representative lift; proj . section = id)
struct Presented {
  FinAbGroup group;
  IntMat proj;
  IntMat section;
};
Presented presentation_to_group(const IntMat& relations, int n_generators);

// Subgroup of `ambient` generated by the columns of `gens` (coordinates in
// `ambient`).  `expr` gives each input column's coordinates in the subgroup.
struct SubgroupResult {
  FinAbGroup group;
  GroupHom incl;  // injective
  IntMat expr;    // group.rank() x gens.cols
};
SubgroupResult subgroup_from_generators(const FinAbGroup& ambient, const IntMat& gens);

struct KernelResult {
  FinAbGroup group;
  GroupHom incl;
};
KernelResult kernel(const GroupHom& f);

struct CokernelResult {
  FinAbGroup group;
  GroupHom proj;
};
CokernelResult cokernel(const GroupHom& f);

SubgroupResult image(const GroupHom& f);

// Homology ker(g)/im(f) at the middle of  A --f--> B --g--> C.
// Throws CompositeNonzero unless g . f == 0.
FinAbGroup homology_at(const GroupHom& f, const GroupHom& g);

// Some x with h(x) = y, or nullopt.  For finite domains of order at most
// 2^20 the lexicographically least coordinate vector is returned; otherwise
// an unspecified solution obtained from a linear-algebra particular solution.
std::optional<GroupElement> solve(const GroupHom& h, const GroupElement& y);

// Two-sided inverse if h is an isomorphism, else nullopt.
std::optional<GroupHom> hom_inverse(const GroupHom& h);

// All elements in lexicographic coordinate order (first coordinate most
// significant).  Throws InfiniteGroup / Internal (order above `limit`).
std::vector<GroupElement> enumerate_elements(const FinAbGroup& g, Int limit = Int(1) << 22);

struct DiagramArrow {
  int src = 0, dst = 0;
  GroupHom hom;
};

struct FiniteDiagram {
  std::vector<FinAbGroup> nodes;
  std::vector<DiagramArrow> arrows;
};

// Colimit of a finite diagram of finitely generated abelian groups:
// (direct sum of the nodes) / (relations  incl_i(x) - incl_j(h(x))  per arrow).
struct ColimitResult {
  FinAbGroup group;
  std::vector<GroupHom> cocone;  // one per node
  IntMat section;                // total_rank x group.rank(); lifts classes
  std::vector<int> offset;       // per-node start in concatenated coordinates
};
ColimitResult colimit(const FiniteDiagram& d);

// The unique map out of the colimit restricting to `components` on the nodes.
// Throws Internal when the components are not compatible with the diagram.
GroupHom colimit_induced(const ColimitResult& c, const std::vector<GroupHom>& components,
                         const FinAbGroup& target);

}  // namespace tricat
