#pragma once

#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rsc/abgrp.hpp"
#include "rsc/errors.hpp"

namespace rsc::testing {

inline std::vector<long> longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

inline std::vector<BigInt> bigs(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Every element of a finite group, in generator coordinates.
inline std::vector<Vec> elements(const FpAbelianGroup& g) {
  REQUIRE(g.is_finite());
  std::vector<BigInt> orders = g.summand_orders();
  std::vector<Vec> out;
  Vec c = zero_vec(orders.size());
  while (true) {
    out.push_back(g.from_summands(c));
    std::size_t i = 0;
    while (i < c.size()) {
      c[i] += 1;
      if (c[i] < orders[i]) break;
      c[i] = 0;
      ++i;
    }
    if (i == c.size()) break;
  }
  return out;
}

inline std::set<Vec> normal_set(const FpAbelianGroup& g, const std::vector<Vec>& xs) {
  std::set<Vec> s;
  for (const auto& x : xs) s.insert(g.normal_form(x));
  return s;
}

// Finite group Z/d_1 + ... + Z/d_k on its standard generators.
inline FpAbelianGroup finite(std::initializer_list<long> orders) {
  std::vector<Vec> cols;
  int n = static_cast<int>(orders.size());
  int i = 0;
  for (long d : orders) {
    Vec v = zero_vec(n);
    v[i++] = d;
    cols.push_back(v);
  }
  return FpAbelianGroup(n, IntMatrix::from_columns(n, cols));
}

inline FpAbelianGroup finite(const std::vector<long>& orders) {
  std::vector<Vec> cols;
  int n = static_cast<int>(orders.size());
  for (int i = 0; i < n; ++i) {
    Vec v = zero_vec(n);
    v[i] = orders[i];
    cols.push_back(v);
  }
  return FpAbelianGroup(n, IntMatrix::from_columns(n, cols));
}

// Random well-defined morphism between standard finite groups.
inline IntMatrix random_hom(const std::vector<long>& src, const std::vector<long>& tgt, std::mt19937& rng) {
  IntMatrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (std::size_t i = 0; i < tgt.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) {
      long step = tgt[i] / std::gcd(tgt[i], src[j]);
      m(static_cast<int>(i), static_cast<int>(j)) = step * static_cast<long>(rng() % 7);
    }
  return m;
}

}  // namespace rsc::testing
