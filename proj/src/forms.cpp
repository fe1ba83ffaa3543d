#include "ss5/forms.hpp"

namespace ss5 {

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

bool MPoly::is_homogeneous() const {
  const int d = total_degree();
  for (const auto& [e, c] : t)
    if (e[0] + e[1] + e[2] + e[3] != d) return false;
  return true;
}

namespace mpoly {

namespace {
void accumulate(const FieldCtx& F, MPoly& r, const Exps& e, const FieldElem& v) {
  if (F.is_zero(v)) return;
  auto it = r.t.find(e);
  if (it == r.t.end()) {
    r.t.emplace(e, v);
    return;
  }
  it->second = F.add(it->second, v);
  if (F.is_zero(it->second)) r.t.erase(it);
}
}  // namespace

MPoly constant(const FieldCtx& F, const FieldElem& a) { return term(F, a, {0, 0, 0, 0}); }

MPoly var(const FieldCtx& F, int i) {
  Exps e{0, 0, 0, 0};
  e[i] = 1;
  return term(F, F.one(), e);
}

MPoly term(const FieldCtx& F, const FieldElem& a, Exps e) {
  MPoly r;
  if (!F.is_zero(a)) r.t.emplace(e, a);
  return r;
}

MPoly add(const FieldCtx& F, const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [e, c] : b.t) accumulate(F, r, e, c);
  return r;
}

MPoly sub(const FieldCtx& F, const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [e, c] : b.t) accumulate(F, r, e, F.neg(c));
  return r;
}

MPoly scale(const FieldCtx& F, const MPoly& a, const FieldElem& s) {
  MPoly r;
  for (const auto& [e, c] : a.t) accumulate(F, r, e, F.mul(c, s));
  return r;
}

MPoly mul(const FieldCtx& F, const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a.t)
    for (const auto& [eb, cb] : b.t) {
      Exps e;
      for (int i = 0; i < 4; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      accumulate(F, r, e, F.mul(ca, cb));
    }
  return r;
}

MPoly pow(const FieldCtx& F, const MPoly& a, unsigned e) {
  MPoly r = constant(F, F.one());
  for (unsigned i = 0; i < e; ++i) r = mul(F, r, a);
  return r;
}

MPoly partial(const FieldCtx& F, const MPoly& a, int v) {
  MPoly r;
  for (const auto& [e, c] : a.t) {
    if (e[v] == 0) continue;
    Exps f = e;
    f[v] = static_cast<std::uint16_t>(f[v] - 1);
    accumulate(F, r, f, F.scale(c, e[v] % F.p()));
  }
  return r;
}

FieldElem coeff(const MPoly& a, Exps e) {
  auto it = a.t.find(e);
  return it == a.t.end() ? FieldElem{} : it->second;
}

FieldElem eval(const FieldCtx& F, const MPoly& a, const std::array<FieldElem, 4>& pt) {
  FieldElem r = F.zero();
  for (const auto& [e, c] : a.t) {
    FieldElem v = c;
    for (int i = 0; i < 4; ++i)
      if (e[i]) v = F.mul(v, F.pow(pt[i], static_cast<std::uint64_t>(e[i])));
    r = F.add(r, v);
  }
  return r;
}

MPoly substitute(const FieldCtx& F, const MPoly& a, int v, const MPoly& s) {
  std::vector<MPoly> powers{constant(F, F.one())};
  MPoly r;
  for (const auto& [e, c] : a.t) {
    while (static_cast<int>(powers.size()) <= e[v]) powers.push_back(mul(F, powers.back(), s));
    Exps f = e;
    f[v] = 0;
    r = add(F, r, mul(F, term(F, c, f), powers[e[v]]));
  }
  return r;
}

MPoly permute(const MPoly& a, const std::array<int, 4>& perm) {
  MPoly r;
  for (const auto& [e, c] : a.t) {
    Exps f{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) f[perm[i]] = static_cast<std::uint16_t>(f[perm[i]] + e[i]);
    r.t[f] = c;
  }
  return r;
}

std::string to_string(const FieldCtx& F, const MPoly& a, const char* names) {
  if (a.is_zero()) return "0";
  std::string s;
  // Descending order reads more naturally.
  for (auto it = a.t.rbegin(); it != a.t.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    std::string cs = F.encode(c);
    if (F.k() > 1) cs = "(" + cs + ")";
    bool has_var = false;
    std::string mono;
    for (int i = 0; i < 4; ++i) {
      if (!e[i]) continue;
      if (has_var) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      has_var = true;
    }
    if (!has_var)
      s += cs;
    else if (F.is_one(c))
      s += mono;
    else
      s += cs + "*" + mono;
  }
  return s;
}

}  // namespace mpoly
}  // namespace ss5
