#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ss5 {

using BigInt = boost::multiprecision::cpp_int;

// Largest extension degree a FieldCtx can represent.
inline constexpr int kMaxDegree = 16;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coordinates in the power basis 1, g, ..., g^(k-1); unused slots stay zero.
struct FieldElem {
  std::array<std::uint32_t, kMaxDegree> c{};
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

struct FieldData;

// Shared handle to F_q, q = p^k, defined by a monic irreducible modulus.
class FieldCtx {
 public:
  FieldCtx() = default;

  static FieldCtx prime(std::uint32_t p);
  // modulus holds the k+1 coefficients (constant first) of a monic
  // irreducible polynomial over F_p. Irreducibility is checked.
  static FieldCtx from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

  bool valid() const { return d_ != nullptr; }
  std::uint32_t p() const;
  int k() const;
  const std::vector<std::uint32_t>& modulus() const;
  const BigInt& order() const;
  // q as uint64 when it fits, otherwise throws.
  std::uint64_t order_u64() const;
  bool same_as(const FieldCtx& o) const;

  FieldElem zero() const { return FieldElem{}; }
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem gen() const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(const FieldElem& a, std::uint32_t s) const;
  FieldElem sqr(const FieldElem& a) const { return mul(a, a); }
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  FieldElem pow(const FieldElem& a, std::uint64_t e) const;
  FieldElem pow(const FieldElem& a, const BigInt& e) const;
  // a^(p^times)
  FieldElem frobenius(const FieldElem& a, int times = 1) const;

  bool is_zero(const FieldElem& a) const;
  bool is_one(const FieldElem& a) const;
  bool in_prime_field(const FieldElem& a) const;
  // True when a lies in the subfield F_{p^e}; e must divide k.
  bool in_subfield(const FieldElem& a, int e) const;

  // Norm down to F_p.
  std::uint32_t norm(const FieldElem& a) const;
  // Product of the k/e conjugates under x -> x^(p^e), as an element of F_{p^e}.
  FieldElem relative_norm(const FieldElem& a, int e) const;

  int quadratic_character(const FieldElem& a) const;
  bool is_square(const FieldElem& a) const { return quadratic_character(a) >= 0; }
  // Number of x in F_q with x^n = a.
  std::uint64_t nth_root_count(const FieldElem& a, std::uint64_t n) const;
  // Canonical square root: the root with the smaller encoding.
  std::optional<FieldElem> sqrt(const FieldElem& a) const;

  // Comma separated residues, constant coordinate first, exactly k entries.
  std::string encode(const FieldElem& a) const;
  FieldElem decode(const std::string& s) const;
  // Ordering by the coordinate vector read as a base-p integer.
  bool less(const FieldElem& a, const FieldElem& b) const;
  // Element with base-p index i (little-endian digits).
  FieldElem from_index(std::uint64_t i) const;
  std::uint64_t index(const FieldElem& a) const;

 private:
  std::shared_ptr<const FieldData> d_;
  explicit FieldCtx(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
  FieldElem pow_small(const FieldElem& a, std::uint64_t e) const;
  bool residue_test(const FieldElem& a, std::uint64_t g) const;
  friend struct FieldData;
};

// F_{p^k} with the first monic irreducible modulus in base-p order of the
// non-leading coefficients. Deterministic and cached.
FieldCtx make_extension(std::uint32_t p, int k);
FieldCtx make_extension(const FieldCtx& base, int k);

bool is_prime_u32(std::uint32_t n);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
int legendre(std::uint32_t a, std::uint32_t p);

// Iterates F_q in index order without recomputing digits from scratch.
class ElementCursor {
 public:
  explicit ElementCursor(const FieldCtx& F) : p_(F.p()), k_(F.k()) {}
  const FieldElem& value() const { return x_; }
  // Returns false after wrapping around to zero.
  bool next() {
    for (int i = 0; i < k_; ++i) {
      if (++x_.c[i] < p_) return true;
      x_.c[i] = 0;
    }
    return false;
  }

 private:
  std::uint32_t p_;
  int k_;
  FieldElem x_{};
};

// Embedding of a subfield F_{p^d} into F_{p^n}, d | n, sending the
// generator of the small field to its smallest root in the large one.
class Embedding {
 public:
  Embedding(const FieldCtx& small, const FieldCtx& big);
  FieldElem operator()(const FieldElem& a) const;
  const FieldCtx& small() const { return small_; }
  const FieldCtx& big() const { return big_; }

 private:
  FieldCtx small_, big_;
  std::vector<FieldElem> powers_;
};

}  // namespace ss5
