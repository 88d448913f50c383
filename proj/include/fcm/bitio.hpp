// Copyright 2026 The fcmcodec Authors
//
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

#pragma once

#include <cstdint>
#include <vector>

#include "fcm/error.hpp"

namespace fcm {

// MSB-first bit writer/reader with order-0 Exp-Golomb codes.

class BitWriter {
 public:
  void put_bit(bool bit) {
    if (nbits_ == 0) {
      buf_.push_back(0);
      nbits_ = 8;
    }
    --nbits_;
    if (bit) buf_.back() |= static_cast<std::uint8_t>(1u << nbits_);
  }

  void put_bits(std::uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1u);
  }

  // ue(v): bitlen(v+1)-1 zeros, then v+1 in binary.
  void put_ue(std::uint32_t v) {
    const std::uint64_t code = static_cast<std::uint64_t>(v) + 1;
    int len = 0;
    while ((code >> len) > 1) ++len;
    for (int i = 0; i < len; ++i) put_bit(false);
    for (int i = len; i >= 0; --i) put_bit((code >> i) & 1u);
  }

  std::size_t bit_count() const { return buf_.size() * 8 - nbits_; }
  std::vector<std::uint8_t> take() {
    nbits_ = 0;
    return std::move(buf_);
  }

 private:
  std::vector<std::uint8_t> buf_;
  unsigned nbits_ = 0;  // free bits in the last byte
};

class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size, Errc underflow)
      : data_(data), size_(size), underflow_(underflow) {}
  BitReader(const std::vector<std::uint8_t>& b, Errc underflow)
      : BitReader(b.data(), b.size(), underflow) {}

  bool get_bit() {
    if (pos_ >= size_ * 8) raise(underflow_, "bit stream exhausted");
    const bool bit = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  std::uint32_t get_bits(int count) {
    std::uint32_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
    return v;
  }

  std::uint32_t read_ue() {
    int zeros = 0;
    while (!get_bit()) {
      if (++zeros > 32) raise(underflow_, "Exp-Golomb code too long");
    }
    const std::uint64_t code =
        (std::uint64_t{1} << zeros) | get_bits(zeros);
    return static_cast<std::uint32_t>(code - 1);
  }

  std::size_t bits_left() const { return size_ * 8 - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  Errc underflow_;
};

// Signed-to-unsigned zigzag mapping for prediction residuals.
inline std::uint32_t zigzag(std::int32_t v) {
  return v >= 0 ? static_cast<std::uint32_t>(v) * 2
                : static_cast<std::uint32_t>(-v) * 2 - 1;
}

inline std::int32_t unzigzag(std::uint32_t v) {
  return (v & 1u) ? -static_cast<std::int32_t>((v + 1) / 2)
                  : static_cast<std::int32_t>(v / 2);
}

}  // namespace fcm
