#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gapfill {

using TokenId = std::uint32_t;
using Count = std::uint64_t;

// Reserved sentinel ids. Real vocabulary entries start at kFirstWordId.
inline constexpr TokenId kUnk = 0;
inline constexpr TokenId kBos = 1;
inline constexpr TokenId kEos = 2;
inline constexpr TokenId kFirstWordId = 3;

inline constexpr const char* kUnkSurface = "<unk>";
inline constexpr const char* kBosSurface = "<s>";
inline constexpr const char* kEosSurface = "</s>";

inline bool is_sentinel(TokenId id) { return id < kFirstWordId; }

// Packs an (a, b) token pair into a single hash key.
inline std::uint64_t pair_key(TokenId a, TokenId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
inline TokenId pair_first(std::uint64_t key) {
  return static_cast<TokenId>(key >> 32);
}
inline TokenId pair_second(std::uint64_t key) {
  return static_cast<TokenId>(key & 0xffffffffu);
}

struct TriKey {
  TokenId a = 0, b = 0, c = 0;
  bool operator==(const TriKey&) const = default;
  bool operator<(const TriKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

struct TriKeyHash {
  std::size_t operator()(const TriKey& k) const {
    std::uint64_t x = (static_cast<std::uint64_t>(k.a) << 42) ^
                      (static_cast<std::uint64_t>(k.b) << 21) ^ k.c;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
  }
};

// Error categories; the CLI maps these onto exit codes.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModelFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace gapfill
