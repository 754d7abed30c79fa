#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld2/common.hpp"

namespace d2 {

/// The finite field F_{p^s}, presented as F_p[t]/(modulus) with the modulus
/// taken from the shipped compatible table.
struct FqCtx {
  int64_t p;
  int s;
  std::vector<int64_t> mod;  // monic, degree s, coeffs in [0, p)

  int64_t q() const { return ipow(p, s); }

  /// Interned: the same (p, s) always returns the same context object.
  static std::shared_ptr<const FqCtx> get(int64_t p, int s);
};

class Fq {
 public:
  Fq() = default;
  Fq(std::shared_ptr<const FqCtx> k, std::vector<int64_t> coeffs);
  static Fq zero(std::shared_ptr<const FqCtx> k);
  static Fq one(std::shared_ptr<const FqCtx> k);
  static Fq from_int(std::shared_ptr<const FqCtx> k, int64_t a);
  static Fq gen(std::shared_ptr<const FqCtx> k);  // the class of t

  const std::shared_ptr<const FqCtx>& ctx() const { return k_; }
  const std::vector<int64_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool in_prime_field() const;  // lies in F_p
  int64_t p() const { return k_->p; }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const;
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }
  bool operator<(const Fq& o) const;  // lexicographic on coeffs, for sorting

  Fq inv() const;            // throws DomainError on zero
  Fq pow(int64_t e) const;   // e >= 0
  Fq frob() const;           // x -> x^p
  Fq frob_inv() const;       // x -> x^{p^{s-1}}
  Fq frob_pow(int e) const;  // x -> x^{p^e}, e may be negative

  std::string str() const;

 private:
  std::shared_ptr<const FqCtx> k_;
  std::vector<int64_t> c_;  // size s, values in [0, p)
};

/// Embedding F_{p^s} -> F_{p^u} for s | u, via the compatible modulus table.
class FqEmbed {
 public:
  FqEmbed(std::shared_ptr<const FqCtx> from, std::shared_ptr<const FqCtx> to);
  Fq operator()(const Fq& x) const;
  const std::shared_ptr<const FqCtx>& from() const { return from_; }
  const std::shared_ptr<const FqCtx>& to() const { return to_; }

 private:
  std::shared_ptr<const FqCtx> from_, to_;
  Fq gen_image_;
};

/// All elements of the field, in a deterministic (lexicographic) order.
std::vector<Fq> fq_elements(const std::shared_ptr<const FqCtx>& k);

Fq random_fq(const std::shared_ptr<const FqCtx>& k, Rng& rng);

}  // namespace d2
