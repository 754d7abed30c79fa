#include "drinfeld2/witt.hpp"

#include <map>
#include <mutex>

namespace d2 {
namespace lawdetail {

std::vector<BigInt> ghost_z(const std::vector<BigInt>& x, int64_t p) {
  std::vector<BigInt> g(x.size());
  for (size_t n = 0; n < x.size(); ++n) {
    BigInt acc = 0;
    BigInt pj = 1;
    for (size_t j = 0; j <= n; ++j) {
      acc += pj * boost::multiprecision::pow(x[j], static_cast<unsigned>(ipow(p, static_cast<int>(n - j))));
      pj *= p;
    }
    g[n] = acc;
  }
  return g;
}

std::vector<BigInt> unghost_z(const std::vector<BigInt>& w, int64_t p) {
  std::vector<BigInt> z(w.size());
  for (size_t n = 0; n < w.size(); ++n) {
    BigInt acc = w[n];
    BigInt pj = 1;
    for (size_t j = 0; j < n; ++j) {
      acc -= pj * boost::multiprecision::pow(z[j], static_cast<unsigned>(ipow(p, static_cast<int>(n - j))));
      pj *= p;
    }
    BigInt pn = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n));
    if (acc % pn != 0)
      throw PrecisionError("WittLaw: inexact division while inverting the ghost map");
    z[n] = acc / pn;
  }
  return z;
}

}  // namespace lawdetail

std::shared_ptr<const WittLaw> WittLaw::get(int64_t p, int m) {
  static std::mutex mu;
  static std::map<std::pair<int64_t, int>, std::shared_ptr<const WittLaw>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto law = std::shared_ptr<const WittLaw>(new WittLaw(p, m));
  cache[key] = law;
  return law;
}

std::vector<BigInt> WittLaw::ghost(const std::vector<BigInt>& x) const {
  return lawdetail::ghost_z(x, p_);
}

std::vector<BigInt> WittLaw::add(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
  auto gx = lawdetail::ghost_z(x, p_), gy = lawdetail::ghost_z(y, p_);
  for (size_t i = 0; i < gx.size(); ++i) gx[i] += gy[i];
  return lawdetail::unghost_z(gx, p_);
}

std::vector<BigInt> WittLaw::mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
  auto gx = lawdetail::ghost_z(x, p_), gy = lawdetail::ghost_z(y, p_);
  for (size_t i = 0; i < gx.size(); ++i) gx[i] *= gy[i];
  return lawdetail::unghost_z(gx, p_);
}

std::vector<BigInt> WittLaw::neg(const std::vector<BigInt>& x) const {
  auto gx = lawdetail::ghost_z(x, p_);
  for (auto& v : gx) v = -v;
  return lawdetail::unghost_z(gx, p_);
}

RelSplit rel_split(const WittVec<Dual>& w) {
  const Dual& w0 = w.w0();
  if (!w0.base().is_zero())
    throw DomainError("rel_split: element does not reduce to zero in the base (w_0 not in the ideal)");
  RelSplit out;
  out.a0 = w0;
  out.a_log = WittVec<Dual>::teich(w0, w.length());
  out.v = w - out.a_log;
  if (!out.v.w0().is_zero()) throw DomainError("rel_split: splitting failed (internal)");
  return out;
}

WittVec<Dual> rel_fdot(const WittVec<Dual>& w) {
  RelSplit s = rel_split(w);
  if (w.length() < 2) return WittVec<Dual>::zero(w.w0(), 1);
  std::vector<Dual> c(s.v.coords().begin() + 1, s.v.coords().end());
  return WittVec<Dual>(std::move(c));
}

}  // namespace d2
