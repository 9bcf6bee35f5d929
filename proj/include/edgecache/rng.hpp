// Seeded sampling helpers. std::mt19937_64 has a standard-mandated output
// sequence, but the standard distributions do not, so every transform here is
// hand-rolled to keep experiment outputs byte-identical across toolchains.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace edgecache::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent stream seed for (base, stream). Streams are small tags chosen
// by the caller; collisions across tags are as unlikely as splitmix allows.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x51ed2701ull));
}

// Unbiased draw from [0, span), Lemire's multiply-shift rejection.
inline std::uint64_t bounded(Engine& eng, std::uint64_t span) {
  assert(span > 0);
  unsigned __int128 m = static_cast<unsigned __int128>(eng()) * span;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < span) {
    const std::uint64_t threshold = (0 - span) % span;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(eng()) * span;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Inclusive range.
inline int uniform_int(Engine& eng, int lo, int hi) {
  assert(lo <= hi);
  return lo + static_cast<int>(bounded(eng, static_cast<std::uint64_t>(hi) - lo + 1));
}

// [0, 1) with 53 random bits.
inline double uniform_unit(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(eng);
}

inline bool bernoulli(Engine& eng, double p) {
  return uniform_unit(eng) < p;
}

// Index of the first cdf entry exceeding a uniform draw over the total mass.
// cdf must be non-decreasing with a strictly positive final entry.
inline int sample_cdf(Engine& eng, std::span<const double> cdf) {
  assert(!cdf.empty() && cdf.back() > 0.0);
  const double u = uniform_unit(eng) * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin());
}

template <typename T>
void shuffle(Engine& eng, std::vector<T>& values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = bounded(eng, i);
    std::swap(values[i - 1], values[j]);
  }
}

// `count` distinct indices from [0, population), unsorted.
inline std::vector<int> sample_without_replacement(Engine& eng, int population, int count) {
  assert(count <= population);
  std::vector<int> pool(population);
  for (int i = 0; i < population; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(bounded(eng, population - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace edgecache::rng
