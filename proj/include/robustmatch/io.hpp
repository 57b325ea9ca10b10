#ifndef ROBUSTMATCH_IO_HPP_
#define ROBUSTMATCH_IO_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "robustmatch/instance.hpp"
#include "robustmatch/rational.hpp"

namespace robustmatch {

// Instance document layout (JSON, keys in this order):
//
//   {
//     "men":   ["m1", "m2"],
//     "women": ["w1", "w2"],
//     "costs": { "m1": [["w1", 1, 1], ["w2", 2, 1], ["m1", 3, 1]], ... },
//     "leave": { "phi": [1, 4], "m1": [3, 4] },
//     "nu":    [1, 2]
//   }
//
// Cost triples are [candidate, numerator, denominator] and must include the
// agent itself. Probability pairs are [numerator, denominator]; agents absent
// from "leave" never depart. "nu" is optional.
struct InstanceDocument {
  Instance instance;
  LeaveDistribution leave;
  std::optional<Rational> nu;
};

// Throws InputError on malformed or invalid documents.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance(const std::string& path);

// Canonical form: fixed key order, agents and candidates sorted by id,
// fractions in lowest terms, zero probabilities omitted.
std::string serialize_instance(const Instance& instance, const LeaveDistribution& leave,
                               const std::optional<Rational>& nu = std::nullopt);

// Matchings are arrays of [id, id] pairs; unlisted agents are single.
Matching parse_matching(const Instance& instance, std::string_view text);
std::string serialize_matching(const Instance& instance, const Matching& matching);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace robustmatch

#endif  // ROBUSTMATCH_IO_HPP_
