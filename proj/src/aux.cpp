#include "ss5/aux.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

namespace ss5::aux {

namespace {

// The family y^2 = f(x, t), stored with c[i][j] the coefficient of x^i t^j over F_p.
struct Family {
  std::uint32_t p;
  BiPoly f;
  CurveModel at(const FieldCtx& F, const FieldElem& t) const {
    UniPoly g;
    for (int i = 0; i <= f.deg_x(); ++i) {
      FieldElem v = F.zero(), tp = F.one();
      for (const auto& c : f.c[i]) {
        v = F.add(v, F.mul(F.from_int(c.c[0]), tp));
        tp = F.mul(tp, t);
      }
      g.c.push_back(v);
    }
    return hyperelliptic_curve(F, poly::trim(g));
  }
};

bool supersingular_genus2(const CurveModel& X, const CountOptions& opt) {
  if (p_rank_cartier(X) != 0) return false;
  return newton_polygon(lpolynomial(X, opt)).is_supersingular();
}

bool admissible(const FieldCtx& F, const FieldElem& t) { return !F.is_zero(t) && !F.is_one(t); }

// det of the Hasse-Witt matrix of the family as a polynomial in t. A genus 2
// curve of p-rank 0 has a nilpotent, hence singular, Hasse-Witt matrix.
UniPoly hasse_witt_det(const Family& fam) {
  const FieldCtx F = FieldCtx::prime(fam.p);
  BiPoly h;
  bipoly::set(h, 0, 0, F.one());
  for (std::uint32_t e = 0; e < (fam.p - 1) / 2; ++e) h = bipoly::mul(F, h, fam.f);
  auto coeff = [&](std::int64_t n) {
    if (n < 0 || n > h.deg_x()) return UniPoly{};
    return poly::trim(UniPoly{h.c[n]});
  };
  const std::int64_t p = fam.p;
  const UniPoly m11 = coeff(p - 1), m12 = coeff(p - 2), m21 = coeff(2 * p - 1), m22 = coeff(2 * p - 2);
  return poly::sub(F, poly::mul(F, m11, m22), poly::mul(F, m12, m21));
}

// Indices of working parameters in F_p \ {0, 1}, ascending.
std::vector<std::uint64_t> scan_prime_field(const Family& fam, const CountOptions& opt) {
  const std::uint32_t p = fam.p;
  const FieldCtx F = FieldCtx::prime(p);
  CountOptions copt = opt;
  copt.jobs = 1;
  std::atomic<std::uint64_t> next{2};
  std::mutex mu;
  std::vector<std::uint64_t> hits;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (std::uint64_t i; (i = next.fetch_add(1)) < p;) {
        if (supersingular_genus2(fam.at(F, F.from_index(i)), copt)) {
          std::lock_guard lk(mu);
          hits.push_back(i);
        }
      }
    } catch (...) {
      std::lock_guard lk(mu);
      if (!err) err = std::current_exception();
      next = p;
    }
  };
  const int jobs = std::max(opt.jobs, 1);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> th;
    for (int t = 0; t < jobs; ++t) th.emplace_back(worker);
    for (auto& t : th) t.join();
  }
  if (err) std::rethrow_exception(err);
  std::sort(hits.begin(), hits.end());
  return hits;
}

m8::ComponentReport report(const std::string& name, const CurveModel& C, const CountOptions& opt) {
  auto L = lpolynomial(C, opt);
  auto np = newton_polygon(L);
  return {name, C, L, np};
}

using Extra = std::function<std::vector<std::pair<std::string, CurveModel>>(const FieldCtx&, const FieldElem&)>;

AuxCertificate run_scan(const std::string& kind, const Family& fam, const Extra& extra, double expected,
                        const CountOptions& opt, int max_degree) {
  const std::uint32_t p = fam.p;
  AuxCertificate cert;
  cert.kind = kind;
  cert.p = p;
  cert.expected_fp = expected;
  const auto hits = scan_prime_field(fam, opt);
  cert.hits_fp = hits.size();
  bool found = false;
  if (!hits.empty()) {
    cert.F = FieldCtx::prime(p);
    cert.parameter = cert.F.from_index(hits.front());
    found = true;
  } else {
    // Candidates outside F_p are roots of the Hasse-Witt determinant.
    const FieldCtx Fp = FieldCtx::prime(p);
    const UniPoly det = hasse_witt_det(fam);
    if (det.is_zero()) throw CurveError(kind + ": Hasse-Witt determinant vanishes identically");
    for (const auto& fac : poly::factor(Fp, det)) {
      const int d = fac.f.degree();
      if (d < 2) continue;
      if (d > max_degree) throw CurveError(kind + ": candidate field degree " + std::to_string(d) + " exceeds cap");
      const FieldCtx F = make_extension(p, d);
      for (const auto& t : poly::roots_in_extension(Fp, fac.f, F)) {
        if (admissible(F, t) && supersingular_genus2(fam.at(F, t), opt)) {
          cert.F = F;
          cert.parameter = t;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  if (!found) throw NoParameter(kind + ": no supersingular parameter exists over any extension of F_" + std::to_string(p));
  cert.components.push_back(report("X", fam.at(cert.F, cert.parameter), opt));
  for (auto& [name, C] : extra(cert.F, cert.parameter)) cert.components.push_back(report(name, C, opt));
  cert.supersingular = std::all_of(cert.components.begin(), cert.components.end(),
                                   [](const m8::ComponentReport& c) { return c.np.is_supersingular(); });
  return cert;
}

}  // namespace

AuxCertificate genus3_double_cover(std::uint32_t p, const CountOptions& opt, int max_degree) {
  if (!is_prime_u32(p) || p % 4 != 3) throw PreconditionError("genus3 needs a prime p = 3 mod 4");
  const FieldCtx F = FieldCtx::prime(p);
  // x^5 - x^3 - t x^3 + t x
  Family fam{p, {}};
  bipoly::set(fam.f, 5, 0, F.one());
  bipoly::set(fam.f, 3, 0, F.from_int(-1));
  bipoly::set(fam.f, 3, 1, F.from_int(-1));
  bipoly::set(fam.f, 1, 1, F.one());
  auto extra = [](const FieldCtx& F, const FieldElem&) {
    return std::vector<std::pair<std::string, CurveModel>>{
        {"E", weierstrass_curve(F, poly::from_ints(F, {0, -1, 0, 1}))}};
  };
  return run_scan("genus3", fam, extra, p / 4.0, opt, max_degree);
}

AuxCertificate genus4_branched_cover(std::uint32_t p, const CountOptions& opt, int max_degree) {
  if (!is_prime_u32(p) || p % 6 != 5) throw PreconditionError("genus4 needs a prime p = 5 mod 6");
  const FieldCtx F = FieldCtx::prime(p);
  // x^6 - x^3 - t x^3 + t
  Family fam{p, {}};
  bipoly::set(fam.f, 6, 0, F.one());
  bipoly::set(fam.f, 3, 0, F.from_int(-1));
  bipoly::set(fam.f, 3, 1, F.from_int(-1));
  bipoly::set(fam.f, 0, 1, F.one());
  auto extra = [](const FieldCtx& F, const FieldElem& alpha) {
    return std::vector<std::pair<std::string, CurveModel>>{
        {"E", weierstrass_curve(F, poly::from_ints(F, {-1, 0, 0, 1}))},
        {"E'", weierstrass_curve(F, poly::trim(UniPoly{{F.neg(alpha), F.zero(), F.zero(), F.one()}}))}};
  };
  return run_scan("genus4", fam, extra, p / 3.0, opt, max_degree);
}

BigRational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("negative Bernoulli index");
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  std::vector<BigRational> B(n + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    BigRational s = 0;
    BigInt c = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += BigRational(c) * B[k];
      c = c * (m + 1 - k) / (k + 1);
    }
    B[m] = -s / BigRational(m + 1);
  }
  return B[n];
}

BigRational zeta_negative_odd(int n) { return -bernoulli(2 * n) / BigRational(2 * n); }

HeuristicReport heuristic_intersection_number(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  HeuristicReport r;
  r.p = p;
  const BigInt P = p;
  r.f1 = (P - 1) * (P * P - 1);
  r.f2 = (P - 1) * (P - 1) * (P * P * P - 1) * (P * P * P * P - 1);
  r.N = BigRational(r.f1 * r.f2, BigInt(46080));
  r.N_zeta = BigRational(63) * BigRational(r.f1 * r.f2) * BigRational(1, 8) * zeta_negative_odd(1) *
             zeta_negative_odd(2) * zeta_negative_odd(3);
  if (r.N != r.N_zeta) throw std::logic_error("N_p routes disagree");
  return r;
}

ConditionDims condition_dimensions(int g, int which) {
  if (g < 2) throw std::invalid_argument("g must be at least 2");
  if (which != 1 && which != 2) throw std::invalid_argument("condition must be 1 or 2");
  ConditionDims d;
  d.lhs_bound = which == 1 ? 2 * g - 3 : 2 * g - 1;
  d.rhs = g * (g - 1) / 2 - ((g - 1) * (g - 1)) / 4;
  return d;
}

}  // namespace ss5::aux
