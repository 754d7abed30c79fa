#pragma once

#include <cstdint>
#include <vector>

namespace d2 {

/// Fixed modulus table for the finite-field tower. Entry (p, n) is a monic
/// primitive polynomial of degree n over F_p, norm-compatible with the
/// entries for all proper divisors of n, so that the embeddings
/// F_{p^s} -> F_{p^{st}} given by root_s |-> root_{st}^{(p^{st}-1)/(p^s-1)}
/// are well defined and composable.
/// Coefficients low->high including the leading 1. Throws DomainError if
/// (p, n) is outside the shipped table (p in {2,3,5}, n <= 12).
const std::vector<int64_t>& conway_poly(int64_t p, int n);

constexpr int kConwayMaxDegree = 12;

}  // namespace d2
