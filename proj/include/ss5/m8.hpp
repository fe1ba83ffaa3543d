#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ss5/curves.hpp"
#include "ss5/field.hpp"
#include "ss5/poly.hpp"

namespace ss5::m8 {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// C(n, k) mod p by Lucas' theorem.
std::uint32_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

// Sum of C(n, j)^2 l^j, n = (p-1)/2.
UniPoly hasse_polynomial(std::uint32_t p);

// Coefficient of x^(2A) in ((x-1)^2 (x-t1)(x-t2))^A, A = (p^2-1)/4.
FieldElem b_p_eval(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2);
// Coefficient of x^n in ((x-t1)(x-t2))^n, n = (p-1)/2.
FieldElem c_p_eval(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2);
// Symbolic versions over F_p, indexed [deg t1][deg t2].
BiPoly b_p_poly(std::uint32_t p);
BiPoly c_p_poly(std::uint32_t p);

// B(t) = b_p(t, -t) over F_p.
UniPoly big_B_poly(std::uint32_t p);

struct IntersectionPoint {
  std::uint32_t t1 = 0, t2 = 0;
  bool valid = false;  // t1, t2 outside {0, 1} and t1 != t2
};
// F_p-rational common zeros of b_p and c_p, sorted by (t1, t2).
std::vector<IntersectionPoint> intersection_points_fp(std::uint32_t p);

class NonIsolatedIntersection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Local intersection number of f = 0 and g = 0 at (x0, y0).
int intersection_multiplicity(const FieldCtx& F, const BiPoly& f, const BiPoly& g, const FieldElem& x0,
                              const FieldElem& y0);

struct Params {
  std::uint32_t p = 0;
  FieldCtx F;
  FieldElem t1, t2;
  std::string route;  // "rational-intersection" or "antidiagonal"
};

inline constexpr int kDefaultMaxExtension = kMaxDegree;

Params find_supersingular_params(std::uint32_t p, int max_degree = kDefaultMaxExtension);

// h^1 of L_i = L^i(floor(i D / m)) on the projective line, i = 0..m-1, with
// D given by its multiplicities at rational points.
std::vector<int> eigenspace_h1_dims(int m, int deg_L, const std::vector<int>& branch_mults);
std::vector<int> m8_eigenspace_h1_dims();

struct Components {
  CurveModel C1, E1, E2, Y;
  // Square root of (1-t1)/(1-t2), in F itself or in its quadratic extension.
  FieldCtx r_field;
  FieldElem r;
  // Over F the quotients of Y are E1: y^2 = t1 x(x-1)(x-t2/t1) and
  // E2: y^2 = delta x(x^2 - r^2), delta = (t2-t1)(t2-1).
  FieldElem delta;
  CurveModel E1_legendre;   // y^2 = x(x-1)(x-t2/t1)
  CurveModel E2_untwisted;  // y^2 = x^3 - r^2 x
};

Components build_components(const Params& prm);

enum class Mode { Auto, Conditional, Unconditional };

struct ComponentReport {
  std::string name;
  CurveModel model;
  LPolynomial L;
  NewtonPolygon np;
};

struct Certificate {
  Params params;
  std::string mode;  // "conditional" | "unconditional"
  FieldElem b_value, c_value;
  std::vector<ComponentReport> components;
  std::vector<std::uint64_t> y_counts;
  std::vector<BigInt> predicted_counts;
  std::vector<BigInt> predicted_counts_untwisted;
  bool budget_exceeded = false;
  bool prym_match = false;
  bool supersingular = false;  // all component slopes 1/2 (unconditional only)
};

Certificate verify_theorem12(std::uint32_t p, Mode mode, const CountOptions& opt = {},
                             int max_degree = kDefaultMaxExtension);
Certificate certify_params(const Params& prm, Mode mode, const CountOptions& opt = {});

}  // namespace ss5::m8
