#include "drinfeld2/conway.hpp"

#include <map>

#include "drinfeld2/common.hpp"

namespace d2 {
namespace {

struct Entry {
  int64_t p;
  int n;
  std::vector<int64_t> coeffs;
};

const Entry kTable[] = {
    // coefficients low->high, monic of degree n (leading 1 included)
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 1, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 1, 0, 2, 0, 1}},
    {3, 7, {1, 2, 1, 0, 0, 0, 0, 1}},
    {3, 8, {2, 2, 1, 0, 0, 1, 0, 0, 1}},
    {3, 9, {1, 1, 2, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {2, 2, 0, 0, 2, 1, 2, 0, 0, 0, 1}},
    {3, 11, {1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 12, {2, 0, 1, 1, 0, 2, 0, 0, 0, 0, 0, 0, 1}},
    {5, 1, {2, 1}},
    {5, 2, {3, 2, 1}},
    {5, 3, {2, 3, 0, 1}},
    {5, 4, {3, 2, 1, 0, 1}},
    {5, 5, {2, 4, 0, 0, 0, 1}},
    {5, 6, {3, 0, 0, 3, 1, 0, 1}},
    {5, 7, {2, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {3, 1, 0, 3, 0, 1, 0, 0, 1}},
    {5, 9, {2, 1, 0, 2, 0, 0, 0, 0, 0, 1}},
    {5, 10, {3, 4, 4, 0, 0, 1, 0, 0, 0, 0, 1}},
    {5, 11, {2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 12, {3, 0, 4, 0, 1, 4, 2, 1, 1, 0, 0, 0, 1}},
};

}  // namespace

const std::vector<int64_t>& conway_poly(int64_t p, int n) {
  for (const Entry& e : kTable) {
    if (e.p == p && e.n == n) return e.coeffs;
  }
  throw DomainError("conway_poly: no modulus shipped for p=" + std::to_string(p) +
                    ", degree " + std::to_string(n));
}

}  // namespace d2
