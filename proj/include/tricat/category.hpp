#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tricat/abgroup.hpp"

namespace tricat {

using ObjId = int;

// A morphism is an element of the Hom-group attached to (src, dst).
struct Morphism {
  ObjId src = -1, dst = -1;
  GroupElement elem;

  bool operator==(const Morphism&) const = default;
};

// Distinguished triangle  x --f--> y --g--> z --h--> x[1].
struct Triangle {
  ObjId x = -1, y = -1, z = -1;
  Morphism f, g, h;

  bool operator==(const Triangle&) const = default;
};

struct Biproduct {
  ObjId obj = -1;
  Morphism i1, i2, p1, p2;

  bool operator==(const Biproduct&) const = default;
};

// Finitely presented additive category with suspension and triangle data.
//
// Layout: objects are ids 0..n-1; hom, hom_gen_names and susp are indexed by
// pidx(a,b) = a*n+b; tensor by tidx(a,b,c).  tensor[(a,b,c)] is a flat
// 3-tensor of shape [rank hom(a,c)][rank hom(a,b)][rank hom(b,c)] whose
// (k,i,j) entry is coordinate k of (generator_j-of-hom(b,c)) .
// (generator_i-of-hom(a,b)).
struct CatPresentation {
  std::vector<std::string> objects;
  std::vector<FinAbGroup> hom;
  std::vector<std::vector<std::string>> hom_gen_names;
  std::vector<std::vector<Int>> tensor;
  std::vector<std::vector<Int>> identity_coords;
  std::vector<int> sigma;      // suspension on objects (a permutation)
  std::vector<GroupHom> susp;  // per pair: hom(a,b) -> hom(sigma a, sigma b)
  std::vector<Triangle> triangles;
  std::map<std::pair<ObjId, ObjId>, Biproduct> biproducts;
  std::string label;

  int size() const { return static_cast<int>(objects.size()); }
  int pidx(ObjId a, ObjId b) const { return a * size() + b; }
  int tidx(ObjId a, ObjId b, ObjId c) const { return (a * size() + b) * size() + c; }
  const FinAbGroup& homg(ObjId a, ObjId b) const { return hom[pidx(a, b)]; }
  Int tensor_at(ObjId a, ObjId b, ObjId c, int k, int i, int j) const;

  bool operator==(const CatPresentation&) const = default;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

// Checks every presentation invariant: shapes, canonical Hom-groups,
// associativity, units, suspension functoriality and finite order, triangle
// composites, biproduct identities.  Never throws; failures become entries.
ValidationReport validate_presentation(const CatPresentation& p);

Morphism make_morphism(const CatPresentation& p, ObjId src, ObjId dst, std::vector<Int> coords);
Morphism zero_morphism(const CatPresentation& p, ObjId src, ObjId dst);
Morphism identity_morphism(const CatPresentation& p, ObjId a);
bool morphism_valid(const CatPresentation& p, const Morphism& f);
bool is_zero_morphism(const Morphism& f);
Morphism mor_add(const Morphism& f, const Morphism& g);
Morphism mor_neg(const Morphism& f);

// g . f via the composition tensor; throws EndpointMismatch.
Morphism compose(const CatPresentation& p, const Morphism& g, const Morphism& f);

// Order of the suspension as a functor (objects and Hom-maps).
int suspension_order(const CatPresentation& p);
ObjId suspend_object(const CatPresentation& p, ObjId x, long long n);
Morphism suspend_morphism(const CatPresentation& p, const Morphism& f, long long n);

// c |-> c . g  as a group hom  hom(g.dst, z) -> hom(g.src, z).
GroupHom precompose_hom(const CatPresentation& p, const Morphism& g, ObjId z);
// c |-> h . c  as a group hom  hom(a, h.src) -> hom(a, h.dst).
GroupHom postcompose_hom(const CatPresentation& p, const Morphism& h, ObjId a);

// Endpoint chains and vanishing composites; reason reported via `why`.
bool triangle_well_formed(const CatPresentation& p, const Triangle& t, std::string* why = nullptr);

// Database triangle on base f, lexicographically least by (z, g, h);
// nullopt / MissingCone when no database triangle has base f.
std::optional<Triangle> find_cone(const CatPresentation& p, const Morphism& f);
Triangle cone(const CatPresentation& p, const Morphism& f);

// (x,y,z; f,g,h) -> (y, z, x[1]; g, h, -f[1]) and its inverse.
Triangle rotate(const CatPresentation& p, const Triangle& t);
Triangle rotate_inverse(const CatPresentation& p, const Triangle& t);

// Completes (a, b) to a morphism of triangles: returns c with
// c . g1 = g2 . b  and  a[1] . h1 = h2 . c  (lexicographically least).
// Throws SquareNotCommuting / NoFillIn.
Morphism fill_in(const CatPresentation& p, const Triangle& t1, const Triangle& t2,
                 const Morphism& a, const Morphism& b);

// Two-sided inverse of f, or nullopt.
std::optional<Morphism> is_isomorphism(const CatPresentation& p, const Morphism& f);

// Table lookup; throws MissingBiproduct when absent.
Biproduct biproduct(const CatPresentation& p, ObjId a, ObjId b);

// Arrow-reversed presentation; involutive on valid presentations.
CatPresentation op_category(const CatPresentation& p);

std::vector<Morphism> all_morphisms(const CatPresentation& p, ObjId a, ObjId b);
bool is_zero_object(const CatPresentation& p, ObjId a);

// Direct-sum group with the concatenated factor list (internal helper for
// stacked linear solves; the factor list is generally not canonical).
FinAbGroup stacked_group(const FinAbGroup& a, const FinAbGroup& b);

}  // namespace tricat
