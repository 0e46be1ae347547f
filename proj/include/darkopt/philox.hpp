// Copyright 2026 The darkopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DARKOPT_PHILOX_HPP
#define DARKOPT_PHILOX_HPP

#include <array>
#include <cstdint>

namespace darkopt {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
/// pure function of (counter, key); the simulator's bit-exact reproducibility
/// rests on this exact round function.
struct Philox4x32 {
    using Counter = std::array<uint32_t, 4>;
    using Key = std::array<uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int r = 0; r < 10; r++) {
            if (r > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            uint64_t p0 = uint64_t{0xD2511F53u} * ctr[0];
            uint64_t p1 = uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {
                static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                static_cast<uint32_t>(p1),
                static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                static_cast<uint32_t>(p0),
            };
        }
        return ctr;
    }
};

/// Sequential view of one Philox sub-stream.
///
/// Block b of stream s under seed k is Philox(ctr = {lo(b), hi(b), lo(s),
/// hi(s)}, key = {lo(k), hi(k)}); each block yields two 64-bit words, low word
/// first.
class PhiloxStream {
   public:
    PhiloxStream(uint64_t seed, uint64_t stream) noexcept
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_lo_(static_cast<uint32_t>(stream)),
          stream_hi_(static_cast<uint32_t>(stream >> 32)) {
    }

    uint64_t next_u64() noexcept {
        if (pos_ == 2) {
            refill();
        }
        return buf_[pos_++];
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    uint64_t blocks_consumed() const noexcept {
        return block_;
    }

   private:
    void refill() noexcept {
        auto out = Philox4x32::block(
            {static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32), stream_lo_, stream_hi_}, key_);
        buf_[0] = (uint64_t{out[1]} << 32) | out[0];
        buf_[1] = (uint64_t{out[3]} << 32) | out[2];
        block_++;
        pos_ = 0;
    }

    Philox4x32::Key key_;
    uint32_t stream_lo_;
    uint32_t stream_hi_;
    uint64_t block_ = 0;
    std::array<uint64_t, 2> buf_{};
    int pos_ = 2;
};

}  // namespace darkopt

#endif
