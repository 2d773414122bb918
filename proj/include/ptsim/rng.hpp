// Copyright 2026 The ptsim Authors
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

#ifndef PTSIM_RNG_HPP
#define PTSIM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace ptsim {

/// Stream derivation: every stochastic step draws from an engine seeded by
/// (root seed, stream key), never from shared state. Any two callers asking
/// for the same key get the same stream, whichever thread they run on.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a, 64 bit.
constexpr std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view key) {
    return splitmix64(root ^ splitmix64(fnv1a(key)));
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Counter-based uniform in [0, 1): cheap enough to call per sample inside
/// parallel loops without constructing an engine.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64(seed ^ splitmix64(counter)) >> 11) * 0x1.0p-53;
}

inline Engine make_engine(std::uint64_t root, std::string_view key) { return Engine(derive_seed(root, key)); }
inline Engine make_engine(std::uint64_t root, std::uint64_t index) { return Engine(derive_seed(root, index)); }

}  // namespace ptsim

#endif
