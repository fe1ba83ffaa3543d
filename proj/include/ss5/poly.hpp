#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ss5/field.hpp"

namespace ss5 {

// Dense univariate polynomial, constant term first. Always trimmed: the zero
// polynomial has no coefficients.
struct UniPoly {
  std::vector<FieldElem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const FieldElem& lead() const { return c.back(); }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

struct Factor {
  UniPoly f;
  int mult = 1;
};

namespace poly {

UniPoly trim(UniPoly f);
UniPoly constant(const FieldElem& a);
UniPoly monomial(const FieldCtx& F, const FieldElem& a, int deg);
UniPoly x(const FieldCtx& F);
// Coefficients given as small integers reduced mod p.
UniPoly from_ints(const FieldCtx& F, const std::vector<std::int64_t>& cs);

UniPoly add(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly sub(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly neg(const FieldCtx& F, const UniPoly& a);
UniPoly scale(const FieldCtx& F, const UniPoly& a, const FieldElem& s);
UniPoly mul(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly shift(const UniPoly& a, int n);  // a * x^n
// Long division; b must be nonzero.
std::pair<UniPoly, UniPoly> divrem(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly mod(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly div_exact(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly monic(const FieldCtx& F, const UniPoly& a);
// Monic gcd (zero when both are zero).
UniPoly gcd(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
UniPoly derivative(const FieldCtx& F, const UniPoly& a);
FieldElem eval(const FieldCtx& F, const UniPoly& a, const FieldElem& x);
UniPoly pow(const FieldCtx& F, const UniPoly& a, std::uint64_t e);
UniPoly powmod(const FieldCtx& F, const UniPoly& a, std::uint64_t e, const UniPoly& m);
UniPoly powmod(const FieldCtx& F, const UniPoly& a, const BigInt& e, const UniPoly& m);
// Map coefficients through an embedding.
UniPoly embed(const Embedding& E, const UniPoly& a);

bool is_irreducible(const FieldCtx& F, const UniPoly& f);
bool is_squarefree(const FieldCtx& F, const UniPoly& f);
// Monic irreducible factors with multiplicities, sorted by (degree, encoding).
std::vector<Factor> factor(const FieldCtx& F, const UniPoly& f);
// Distinct roots in F, sorted by encoding.
std::vector<FieldElem> roots(const FieldCtx& F, const UniPoly& f);
// Distinct roots in the extension E of the field of f, sorted by encoding.
std::vector<FieldElem> roots_in_extension(const FieldCtx& base, const UniPoly& f,
                                          const FieldCtx& ext);
// Degree of the splitting field of a squarefree f over its field.
int splitting_degree(const FieldCtx& F, const UniPoly& f);

// Coefficient of x^n in prod_i f_i^{e_i}.
FieldElem power_product_coeff(const FieldCtx& F, const std::vector<std::pair<UniPoly, std::uint64_t>>& factors,
                              std::uint64_t n);

bool less(const FieldCtx& F, const UniPoly& a, const UniPoly& b);
// "c0 + c1*x + c2*x^2"; extension coefficients are wrapped in parentheses.
std::string to_string(const FieldCtx& F, const UniPoly& a, const std::string& var = "x");
std::vector<std::string> encode(const FieldCtx& F, const UniPoly& a);
UniPoly decode(const FieldCtx& F, const std::vector<std::string>& cs);

}  // namespace poly

// Polynomial in one variable whose coefficients are polynomials in x.
// Used as f(x)[z] for resultants.
using PolyOverPoly = std::vector<UniPoly>;

// Res_z(f, g) via the Sylvester matrix (rows of f first), fraction free.
UniPoly resultant(const FieldCtx& F, const PolyOverPoly& f, const PolyOverPoly& g);

// Bivariate polynomial: c[i][j] is the coefficient of x^i y^j.
struct BiPoly {
  std::vector<std::vector<FieldElem>> c;

  int deg_x() const { return static_cast<int>(c.size()) - 1; }
};

namespace bipoly {
BiPoly trim(BiPoly f);
bool is_zero(const BiPoly& f);
FieldElem at(const BiPoly& f, int i, int j);
void set(BiPoly& f, int i, int j, const FieldElem& v);
FieldElem eval(const FieldCtx& F, const BiPoly& f, const FieldElem& x, const FieldElem& y);
BiPoly add(const FieldCtx& F, const BiPoly& a, const BiPoly& b);
BiPoly sub(const FieldCtx& F, const BiPoly& a, const BiPoly& b);
BiPoly mul(const FieldCtx& F, const BiPoly& a, const BiPoly& b);
BiPoly scale(const FieldCtx& F, const BiPoly& a, const FieldElem& s);
// f(x + a, y + b)
BiPoly translate(const FieldCtx& F, const BiPoly& f, const FieldElem& a, const FieldElem& b);
// Restriction y = 0 as a polynomial in x.
UniPoly at_y0(const BiPoly& f);
// f as a polynomial in y with coefficients in F[x].
PolyOverPoly as_poly_in_y(const BiPoly& f);
// Specialise x = x0, giving a polynomial in y.
UniPoly at_x(const FieldCtx& F, const BiPoly& f, const FieldElem& x0);
}  // namespace bipoly

}  // namespace ss5
