#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace vigil {

// Dense ids, assigned contiguously from 0 within their owning container.
using StateId = std::int32_t;     // arena state
using ActionId = std::int32_t;    // arena action
using PropId = std::int32_t;      // atomic proposition (label alphabet)
using PredId = std::int32_t;      // state predicate (observation alphabet)
using AutStateId = std::int32_t;  // automaton state
using QId = std::int32_t;         // product state
using ObsId = std::int32_t;       // observation class
using SensorId = std::int32_t;    // sensing action

inline constexpr std::int32_t kNone = -1;

enum class Player : std::uint8_t { system, environment };

// Sorted duplicate-free id vectors double as canonical sets.
template <typename T>
bool sorted_contains(const std::vector<T>& xs, T x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

template <typename T>
std::vector<T> sorted_intersect(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace vigil
