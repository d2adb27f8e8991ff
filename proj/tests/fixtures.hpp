#pragma once

// Shared generated fixtures, built once per test process.

#include <string>

#include "tricat/category.hpp"
#include "tricat/models.hpp"

namespace fixtures {

inline const tricat::CatPresentation& split21() {
  static const tricat::CatPresentation p = tricat::gen_split_graded(2, 1);
  return p;
}

inline const tricat::CatPresentation& torsion41() {
  static const tricat::CatPresentation p = tricat::gen_torsion_split(4, 1);
  return p;
}

// 16-object product of two parity-graded F_2 categories; the factor-1 axis is
// thick with an explicit complement, so every localisation has a closed form.
inline const tricat::ModelFixture& model_sp() {
  static const tricat::ModelFixture f = tricat::gen_product(split21(), split21());
  return f;
}

// 36-object product mixing field coefficients with Z/4 torsion.
inline const tricat::ModelFixture& mixed() {
  static const tricat::ModelFixture f = tricat::gen_product(split21(), torsion41());
  return f;
}

inline tricat::ObjId by_name(const tricat::CatPresentation& p, const std::string& name) {
  for (int i = 0; i < p.size(); ++i)
    if (p.objects[i] == name) return i;
  tricat::fail(tricat::ErrKind::Internal, "fixture object not found: " + name);
}

}  // namespace fixtures
