#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ss5/field.hpp"
#include "ss5/forms.hpp"
#include "ss5/poly.hpp"

namespace ss5 {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000'000ULL;
inline constexpr std::uint64_t kMinBudget = 1'000'000ULL;

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

class InvalidCounts : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// y^2 = x(x-1)(x-lambda)
struct EllipticLegendre {
  FieldElem lambda;
};
// y^2 = f(x), deg f in {3, 4}
struct EllipticWeierstrass {
  UniPoly f;
};
// y^2 = f(x), deg f in {5, 6}; a quintic has its sixth branch point at infinity.
struct HyperellipticSextic {
  UniPoly f;
};
// Ternary quartic; coefficients follow kQuarticMonomials.
struct PlaneQuartic {
  std::array<FieldElem, 15> a{};
};
// y^4 = x^2 (x-1)^2 (x-t1)(x-t2)
struct SuperellipticM8 {
  FieldElem t1, t2;
};
// u^4 = (w^2-1)^2 (w^2-t1)(w^2-t2)
struct Genus5Pullback {
  FieldElem t1, t2;
};

using ModelData =
    std::variant<EllipticLegendre, EllipticWeierstrass, HyperellipticSextic, PlaneQuartic, SuperellipticM8, Genus5Pullback>;

// Exponents (x, y, z) of the quartic monomials, in storage order.
extern const std::array<std::array<int, 3>, 15> kQuarticMonomials;
int quartic_index(int i, int j, int k);

struct CurveModel {
  FieldCtx F;
  ModelData data;

  int genus() const;
  std::string kind() const;
  std::string describe() const;
};

CurveModel legendre_curve(const FieldCtx& F, const FieldElem& lambda);
CurveModel weierstrass_curve(const FieldCtx& F, const UniPoly& f);
CurveModel hyperelliptic_curve(const FieldCtx& F, const UniPoly& f);
CurveModel plane_quartic(const FieldCtx& F, const std::array<FieldElem, 15>& a);
CurveModel plane_quartic(const FieldCtx& F, const MPoly& form);
CurveModel m8_curve(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2);
CurveModel pullback_curve(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2);

MPoly quartic_form(const FieldCtx& F, const PlaneQuartic& q);

struct CountOptions {
  std::uint64_t budget = kDefaultBudget;
  int jobs = 1;
};

// #C(F_{q^k}) for the smooth projective model. Throws BudgetExceeded when
// q^k exceeds the budget.
std::uint64_t count_points(const CurveModel& C, int k, const CountOptions& opt = {});
std::vector<std::uint64_t> count_points_upto(const CurveModel& C, int kmax, const CountOptions& opt = {});

namespace detail {
// Count of the M8 curve over F_{q^3} through norm forms of the pure cubic
// extension; needs q = 1 mod 12 and q of degree at most 2 over F_p, p < 128.
bool tower_applicable(const FieldCtx& F);
std::uint64_t count_m8_cubic_tower(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2, int jobs);
std::uint64_t count_m8_flat(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2, int k, int jobs);
}  // namespace detail

struct Rational {
  std::int64_t num = 0, den = 1;
  static Rational make(std::int64_t n, std::int64_t d);
  friend bool operator==(const Rational&, const Rational&) = default;
  std::string str() const;
};

struct LPolynomial {
  std::uint32_t p = 0;
  int a = 1;  // q = p^a
  int g = 0;
  std::vector<std::int64_t> c;  // c[0] = 1, ..., c[2g] = q^g

  static LPolynomial from_counts(std::uint32_t p, int a, int g, const std::vector<std::uint64_t>& counts);
  std::int64_t q() const;
  // s_k = sum of k-th powers of the inverse roots.
  std::vector<BigInt> power_sums(int kmax) const;
  BigInt predicted_count(int k) const;
  std::string str() const;
};

LPolynomial operator*(const LPolynomial& a, const LPolynomial& b);

LPolynomial lpolynomial(const CurveModel& C, const CountOptions& opt = {});

struct NewtonPolygon {
  std::vector<Rational> slopes;  // one per inverse root, ascending, in units of v_q
  bool is_supersingular() const;
  int p_rank() const;
};

NewtonPolygon newton_polygon(const LPolynomial& L);
int p_rank_from_L(const LPolynomial& L);
int vp(std::int64_t x, std::uint32_t p);

// Hasse-Witt matrices over the field of definition.
using Matrix = std::vector<std::vector<FieldElem>>;
Matrix cartier_matrix(const CurveModel& C);
// Rank of M * M^sigma * ... * M^(sigma^(g-1)) with sigma the p-power map.
int stable_rank(const FieldCtx& F, const Matrix& M);
int matrix_rank(const FieldCtx& F, Matrix M);
int p_rank_cartier(const CurveModel& C);

// Singular-point test for a plane quartic.
bool smoothness_check(const FieldCtx& F, const PlaneQuartic& q);

}  // namespace ss5
