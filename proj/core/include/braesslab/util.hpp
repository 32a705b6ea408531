#pragma once

#include <cstdint>
#include <functional>

namespace braesslab {

// SplitMix64 step; good enough to spread trial indices into independent
// stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `trial` of a run seeded with `master`.  Stable across
// thread counts, so parallel harnesses stay reproducible.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial + 1));
}

// Runs fn(0..count-1) on a small thread pool.  Work items must be
// independent; callers keep determinism by writing results into
// index-addressed slots.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace braesslab
