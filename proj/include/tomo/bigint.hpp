// Copyright 2026 The tomoray Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOMO_BIGINT_HPP_
#define TOMO_BIGINT_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

// Minimal arbitrary-precision unsigned integer.  Only what the exact
// combinatorics needs: addition (Pascal's triangle rows), powers of two,
// comparison and conversion to double.  Little-endian 64-bit limbs.

namespace tomo {

class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v) {
    if (v != 0) limbs_.push_back(v);
  }

  static BigUint pow2(int bits) {
    BigUint r;
    r.limbs_.assign(static_cast<std::size_t>(bits / 64) + 1, 0);
    r.limbs_.back() = std::uint64_t{1} << (bits % 64);
    return r;
  }

  bool zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      const std::uint64_t add = i < o.limbs_.size() ? o.limbs_[i] : 0;
      const std::uint64_t was = limbs_[i];
      limbs_[i] = was + add + carry;
      carry = (limbs_[i] < was || (carry && limbs_[i] == was)) ? 1 : 0;
    }
    if (carry) limbs_.push_back(1);
    return *this;
  }

  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  // Multiplication by two, used to compare k/2^a against l/2^(a+1).
  BigUint doubled() const {
    BigUint r = *this;
    std::uint64_t carry = 0;
    for (auto& limb : r.limbs_) {
      const std::uint64_t next = limb >> 63;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) r.limbs_.push_back(1);
    return r;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) {
    return a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigUint& a, const BigUint& b) {
    return !(a == b);
  }

  // Number of significant bits (0 for zero).
  int bit_length() const {
    if (limbs_.empty()) return 0;
    int top = 64;
    std::uint64_t v = limbs_.back();
    while (!(v >> 63)) {
      v <<= 1;
      --top;
    }
    return static_cast<int>(limbs_.size() - 1) * 64 + top;
  }

  // Value divided by 2^shift as a double.  The top 64 bits are kept, so the
  // relative truncation error is below 2^-63; exact when the value fits in
  // 53 bits.  Works far beyond the double range as long as the scaled result
  // is representable.
  double to_double_scaled(int shift) const {
    if (limbs_.empty()) return 0.0;
    const int bits = bit_length();
    // Take the top (up to) 64 bits as an integer mantissa.
    const int drop = bits > 64 ? bits - 64 : 0;
    std::uint64_t mant = 0;
    for (int i = static_cast<int>(limbs_.size()) - 1; i >= 0; --i) {
      const int lo = i * 64;  // bit offset of this limb
      if (lo >= drop + 64) continue;
      if (lo + 64 <= drop) break;
      if (lo >= drop) {
        mant |= limbs_[static_cast<std::size_t>(i)] << (lo - drop);
      } else {
        mant |= limbs_[static_cast<std::size_t>(i)] >> (drop - lo);
      }
    }
    return std::ldexp(static_cast<double>(mant), drop - shift);
  }

  double to_double() const { return to_double_scaled(0); }

 private:
  std::vector<std::uint64_t> limbs_;  // little-endian, no trailing zeros
};

}  // namespace tomo

#endif  // TOMO_BIGINT_HPP_
