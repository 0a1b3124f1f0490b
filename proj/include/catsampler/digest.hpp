// Copyright 2026 The catsampler authors
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
#include <cstring>
#include <string>

#include "catsampler/cat_states.hpp"
#include "catsampler/unitary.hpp"

namespace catsampler {

/// FNV-1a over raw bytes; identifies inputs in manifests and distribution
/// metadata (not cryptographic).
class Fnv1a {
 public:
  void feed_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ull;
    }
  }
  void feed(double v) { feed_bytes(&v, sizeof v); }
  void feed(Complex z) {
    feed(z.real());
    feed(z.imag());
  }
  void feed(std::uint64_t v) { feed_bytes(&v, sizeof v); }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t h = hash_;
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
    return out;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

inline std::string digest_unitary(const UnitaryMatrix& u) {
  Fnv1a h;
  h.feed(static_cast<std::uint64_t>(u.dim()));
  for (int r = 0; r < u.dim(); ++r)
    for (int c = 0; c < u.dim(); ++c) h.feed(u(r, c));
  return h.hex();
}

inline std::string digest_register(const InputRegister& reg) {
  Fnv1a h;
  h.feed(static_cast<std::uint64_t>(reg.mode_count()));
  for (const CatSpec& cat : reg.modes()) {
    h.feed(static_cast<std::uint64_t>(cat.term_count()));
    for (const CatTerm& t : cat.terms()) {
      h.feed(t.weight);
      h.feed(t.alpha);
    }
  }
  return h.hex();
}

}  // namespace catsampler
