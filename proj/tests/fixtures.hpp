#ifndef ROBUSTMATCH_TESTS_FIXTURES_HPP_
#define ROBUSTMATCH_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "robustmatch/instance.hpp"
#include "robustmatch/io.hpp"
#include "robustmatch/rational.hpp"

namespace robustmatch::testing {

// Three men, three women, rank costs with self last (cost 4):
//   m1: w1 w2 w3   m2: w2 w3 w1   m3: w3 w1 w2
//   w1: m2 m3 m1   w2: m3 m1 m2   w3: m1 m2 m3
// p(m1) = 3/4, p(phi) = 1/4.
inline const char* kGs3Document = R"({
  "men": ["m1", "m2", "m3"],
  "women": ["w1", "w2", "w3"],
  "costs": {
    "m1": [["w1", 1, 1], ["w2", 2, 1], ["w3", 3, 1], ["m1", 4, 1]],
    "m2": [["w2", 1, 1], ["w3", 2, 1], ["w1", 3, 1], ["m2", 4, 1]],
    "m3": [["w3", 1, 1], ["w1", 2, 1], ["w2", 3, 1], ["m3", 4, 1]],
    "w1": [["m2", 1, 1], ["m3", 2, 1], ["m1", 3, 1], ["w1", 4, 1]],
    "w2": [["m3", 1, 1], ["m1", 2, 1], ["m2", 3, 1], ["w2", 4, 1]],
    "w3": [["m1", 1, 1], ["m2", 2, 1], ["m3", 3, 1], ["w3", 4, 1]]
  },
  "leave": {"phi": [1, 4], "m1": [3, 4]}
})";

inline InstanceDocument gs3() { return parse_instance(kGs3Document); }

inline Matching by_ids(const Instance& instance, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::pair<AgentIndex, AgentIndex>> idx;
  for (const auto& [a, b] : pairs) idx.emplace_back(instance.index_of(a), instance.index_of(b));
  return Matching::from_pairs(instance.size(), idx);
}

inline Matching mu_men(const Instance& gs) { return by_ids(gs, {{"m1", "w1"}, {"m2", "w2"}, {"m3", "w3"}}); }
inline Matching mu_egal(const Instance& gs) { return by_ids(gs, {{"m1", "w2"}, {"m2", "w3"}, {"m3", "w1"}}); }
inline Matching mu_women(const Instance& gs) { return by_ids(gs, {{"m1", "w3"}, {"m2", "w1"}, {"m3", "w2"}}); }

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace robustmatch::testing

#endif  // ROBUSTMATCH_TESTS_FIXTURES_HPP_
