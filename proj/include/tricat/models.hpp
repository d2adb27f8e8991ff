#pragma once

// Generators of small, fully validated presentations with known closed-form
// answers.  Three families are provided:
//
//   * split graded:  objects are parity-graded F_p vector spaces of bounded
//     dimension, morphisms are degree-preserving linear map pairs, and the
//     shift swaps the two parities;
//   * torsion split: objects are parity-graded tuples of cyclic modules of
//     order dividing 4, so Hom-groups mix Z/4 and Z/2 factors;
//   * products:      the componentwise product of two generated categories.
//     The factor-1 axis is a thick subcategory with an explicit complement,
//     so localisations have closed forms recorded in the fixture.
//
// Every generator returns a presentation that passes validate_presentation
// with an empty report.  Triangles are the canonical split ones
// (cone(f) = coker f (+) (ker f)[1]) for every morphism whose cone object
// stays within the generated object range, closed under rotation.

#include <string>
#include <vector>

#include "tricat/category.hpp"

namespace tricat {

// A generated product category together with its designated thick axis and
// the closed-form answers that higher layers are tested against.
struct ModelFixture {
  CatPresentation pres;
  std::vector<ObjId> thick_gens;  // objects spanning the factor-1 axis
  std::vector<ObjId> lb;          // per object: the factor-2 shadow (0, B2)
  std::vector<ObjId> lperp;       // per object: the factor-1 shadow (B1, 0)
  std::vector<Int> loc_order;     // per (a,b), pidx layout: |Hom_2(a2, b2)|
  std::vector<Int> coloc_order;   // per (a,b), pidx layout: |Hom_1(a1, b1)|
};

// Parity-graded F_p vector spaces of dimension <= d per parity.
// Requires p in {2,3,5} and 1 <= d <= 2.
CatPresentation gen_split_graded(Int p, int d);

// Parity-graded tuples of cyclic modules of order dividing n, at most
// maxrank summands per parity.  Requires n = 4 and 1 <= maxrank <= 2.
CatPresentation gen_torsion_split(Int n, int maxrank);

// Componentwise product of two generated categories.  Both inputs must carry
// a generator label (their `label` field records how they were built); the
// result is rebuilt from those recipes so that cones and biproducts stay
// componentwise.  Closed forms are read off the factor presentations.
ModelFixture gen_product(const CatPresentation& p1, const CatPresentation& p2);

// True if `label` is a recognizable generator recipe, e.g. "split(2,1)",
// "torsion(4,1)", "product(split(2,1),torsion(4,1))".
bool is_model_label(const std::string& label);

// Rebuild a presentation from a generator recipe.  Throws ValidationError on
// an unrecognizable label.
CatPresentation gen_from_label(const std::string& label);

}  // namespace tricat
