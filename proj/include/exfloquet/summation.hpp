#pragma once

#include <cstddef>
#include <span>

namespace exfl {

// Pairwise (tree) summation with a fixed split point. The association order
// depends only on the length of the input, so the result is bit-reproducible
// no matter how the terms were produced.
namespace detail {
inline constexpr std::size_t kPairwiseLeaf = 16;
}

template <typename T>
T pairwise_sum(std::span<const T> terms) {
  const std::size_t n = terms.size();
  if (n <= detail::kPairwiseLeaf) {
    T acc{};
    for (const T& x : terms) acc += x;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

template <typename Container>
auto pairwise_sum(const Container& c) {
  using T = typename Container::value_type;
  return pairwise_sum(std::span<const T>(c.data(), c.size()));
}

}  // namespace exfl
