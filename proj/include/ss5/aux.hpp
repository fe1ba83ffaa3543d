#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ss5/curves.hpp"
#include "ss5/m8.hpp"

namespace ss5::aux {

using BigRational = boost::multiprecision::cpp_rational;

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The family has no supersingular member over any finite field.
class NoParameter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AuxCertificate {
  std::string kind;  // "genus3" or "genus4"
  std::uint32_t p = 0;
  FieldCtx F;        // field of the parameter
  FieldElem parameter;  // beta for genus3, alpha for genus4
  std::vector<m8::ComponentReport> components;
  std::uint64_t hits_fp = 0;     // parameters in F_p \ {0, 1} that work
  double expected_fp = 0;        // p/4 or p/3
  bool supersingular = false;
};

// X: y^2 = x(x^2-1)(x^2-beta) and E: y^2 = x(x^2-1); p = 3 mod 4. The
// parameter is the first hit in F_p, otherwise the first hit among the roots
// of the Hasse-Witt determinant of the family, which contain every
// supersingular parameter.
AuxCertificate genus3_double_cover(std::uint32_t p, const CountOptions& opt = {},
                                   int max_degree = m8::kDefaultMaxExtension);
// X: y^2 = (x^3-1)(x^3-alpha), E: y^2 = x^3-1, E': y^2 = x^3-alpha; p = 5 mod 6.
AuxCertificate genus4_branched_cover(std::uint32_t p, const CountOptions& opt = {},
                                     int max_degree = m8::kDefaultMaxExtension);

struct HeuristicReport {
  std::uint32_t p = 0;
  BigInt f1, f2;
  BigRational N;       // f1 f2 / 46080
  BigRational N_zeta;  // 63 f1 f2 (1/8) zeta(-1) zeta(-3) zeta(-5)
};

BigRational bernoulli(int n);
// zeta(1 - 2n) = -B_2n / 2n
BigRational zeta_negative_odd(int n);
// Throws std::logic_error if the two routes differ.
HeuristicReport heuristic_intersection_number(std::uint32_t p);

struct ConditionDims {
  int lhs_bound = 0;
  int rhs = 0;
  bool holds() const { return rhs <= lhs_bound; }
};
ConditionDims condition_dimensions(int g, int which);

}  // namespace ss5::aux
