#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ss5/field.hpp"

namespace ss5 {

// Sparse polynomial in up to four variables (x, y, z, w).
using Exps = std::array<std::uint16_t, 4>;

struct MPoly {
  std::map<Exps, FieldElem> t;

  bool is_zero() const { return t.empty(); }
  int total_degree() const;
  bool is_homogeneous() const;
  friend bool operator==(const MPoly&, const MPoly&) = default;
};

namespace mpoly {

MPoly constant(const FieldCtx& F, const FieldElem& a);
MPoly var(const FieldCtx& F, int i);
MPoly term(const FieldCtx& F, const FieldElem& a, Exps e);
MPoly add(const FieldCtx& F, const MPoly& a, const MPoly& b);
MPoly sub(const FieldCtx& F, const MPoly& a, const MPoly& b);
MPoly scale(const FieldCtx& F, const MPoly& a, const FieldElem& s);
MPoly mul(const FieldCtx& F, const MPoly& a, const MPoly& b);
MPoly pow(const FieldCtx& F, const MPoly& a, unsigned e);
MPoly partial(const FieldCtx& F, const MPoly& a, int var);
FieldElem coeff(const MPoly& a, Exps e);
FieldElem eval(const FieldCtx& F, const MPoly& a, const std::array<FieldElem, 4>& pt);
// Replace variable `v` by the polynomial s.
MPoly substitute(const FieldCtx& F, const MPoly& a, int v, const MPoly& s);
// Rename variables: result variable perm[i] receives old variable i.
MPoly permute(const MPoly& a, const std::array<int, 4>& perm);
std::string to_string(const FieldCtx& F, const MPoly& a, const char* names = "xyzw");

}  // namespace mpoly

}  // namespace ss5
