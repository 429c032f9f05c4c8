#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace rsc {

using BigInt = mpz_class;
using Vec = std::vector<BigInt>;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

// Throws OverflowError when x does not fit in 64 bits.
std::int64_t to_i64(const BigInt& x);

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);

}  // namespace rsc
