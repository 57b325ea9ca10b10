#ifndef ROBUSTMATCH_GENERATE_HPP_
#define ROBUSTMATCH_GENERATE_HPP_

#include <cstdint>

#include "robustmatch/instance.hpp"

namespace robustmatch {

// n men and n women with uniformly random rank costs: the k-th candidate
// costs k. With `self_rank_last` everybody ranks self last (cost n + 1);
// otherwise self lands at a seeded position. Ids are zero-padded ("m07") so
// id order equals numeric order. Deterministic in (n, seed) across platforms.
// Throws InputError when n == 0.
Instance random_instance(int n, std::uint64_t seed, bool self_rank_last = true);

// A leave distribution where `num_leavers` distinct agents get positive
// probabilities with small random denominators and the rest of the mass goes
// to p_phi (which may be zero when `allow_zero_phi`).
LeaveDistribution random_leave(const Instance& instance, int num_leavers, std::uint64_t seed,
                               bool allow_zero_phi = true);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_GENERATE_HPP_
