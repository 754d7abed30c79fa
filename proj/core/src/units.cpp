#include "drinfeld2/units.hpp"

namespace d2 {

MPolyZ MPolyZ::constant(int64_t p, int N, int nvars, int64_t c) {
  MPolyZ r{p, N, nvars, {}};
  c = mod_pos(c, r.modulus());
  if (c) r.terms[std::vector<int>(static_cast<size_t>(nvars), 0)] = c;
  return r;
}

MPolyZ MPolyZ::variable(int64_t p, int N, int nvars, int v) {
  MPolyZ r{p, N, nvars, {}};
  std::vector<int> e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(v)] = 1;
  r.terms[e] = 1;
  return r;
}

MPolyZ MPolyZ::operator+(const MPolyZ& o) const {
  MPolyZ r = *this;
  int64_t pn = modulus();
  for (const auto& [e, c] : o.terms) {
    int64_t v = mod_pos(r.terms.count(e) ? r.terms[e] + c : c, pn);
    if (v)
      r.terms[e] = v;
    else
      r.terms.erase(e);
  }
  return r;
}

MPolyZ MPolyZ::operator*(const MPolyZ& o) const {
  MPolyZ r{p, N, nvars, {}};
  int64_t pn = modulus();
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      std::vector<int> e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      int64_t v = mod_pos((r.terms.count(e) ? r.terms[e] : 0) + c1 * c2 % pn, pn);
      if (v)
        r.terms[e] = v;
      else
        r.terms.erase(e);
    }
  return r;
}

MPolyZ MPolyZ::reduce_mod_p() const {
  MPolyZ r{p, 1, nvars, {}};
  for (const auto& [e, c] : terms) {
    int64_t v = mod_pos(c, p);
    if (v) r.terms[e] = v;
  }
  return r;
}

std::string MPolyZ::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) s += "*X" + std::to_string(i) + "^" + std::to_string(e[i]);
  }
  return s;
}

MPolyZ u_unit_factor(int d, int64_t p, int N, int i, const std::vector<int64_t>& lambda) {
  if (static_cast<int>(lambda.size()) != d - 1) throw DomainError("u_unit_factor: need d-1 scalars");
  MPolyZ acc = MPolyZ::constant(p, N, d, 1);
  MPolyZ mono = MPolyZ::constant(p, N, d, 1);
  for (int j = 1; j <= d - 1; ++j) {
    int var = static_cast<int>(mod_pos(i - j, d));
    mono = mono * MPolyZ::variable(p, N, d, var);
    acc = acc + MPolyZ::constant(p, N, d, lambda[static_cast<size_t>(j - 1)]) * mono;
  }
  return acc;
}

MPolyZ u_unit(int d, int64_t p, int N) {
  if (d < 2) throw DomainError("u_unit: d >= 2");
  MPolyZ acc = MPolyZ::constant(p, N, d, 1);
  int64_t tuples = ipow(p, d - 1);
  for (int i = 0; i < d; ++i) {
    for (int64_t t = 0; t < tuples; ++t) {
      std::vector<int64_t> lambda(static_cast<size_t>(d - 1));
      int64_t v = t;
      for (auto& l : lambda) {
        l = v % p;
        v /= p;
      }
      acc = acc * u_unit_factor(d, p, N, i, lambda);
    }
  }
  return acc;
}

MPolyZ denominator_product(int d, int64_t p, int N) {
  MPolyZ acc = MPolyZ::constant(p, N, d, 1);
  for (int i = 0; i < d; ++i) {
    MPolyZ xi = MPolyZ::variable(p, N, d, i);
    MPolyZ pw = MPolyZ::constant(p, N, d, 1);
    for (int j = 0; j < static_cast<int>(p) - 1; ++j) pw = pw * xi;
    acc = acc * (MPolyZ::constant(p, N, d, 1) + MPolyZ::constant(p, N, d, -1) * pw);
  }
  return acc;
}

}  // namespace d2
