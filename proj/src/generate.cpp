#include "robustmatch/generate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "robustmatch/error.hpp"

namespace robustmatch {

namespace {

// std::uniform_int_distribution is implementation-defined; this is not.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

std::string padded(char prefix, int k, int n) {
  std::string digits = std::to_string(k);
  std::string width = std::to_string(n);
  return prefix + std::string(width.size() - std::min(width.size(), digits.size()), '0') + digits;
}

}  // namespace

Instance random_instance(int n, std::uint64_t seed, bool self_rank_last) {
  if (n <= 0) throw InputError("random_instance needs n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> men, women;
  for (int k = 1; k <= n; ++k) {
    men.push_back(padded('m', k, n));
    women.push_back(padded('w', k, n));
  }
  std::unordered_map<std::string, std::vector<CostEntry>> costs;
  auto fill = [&](const std::string& self, const std::vector<std::string>& others) {
    std::vector<std::string> order = others;
    shuffle(order, rng);
    auto self_pos = self_rank_last ? order.size() : static_cast<size_t>(uniform_below(rng, order.size() + 1));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(self_pos), self);
    auto& table = costs[self];
    for (size_t k = 0; k < order.size(); ++k) table.push_back({order[k], Rational(static_cast<long>(k + 1))});
  };
  for (const auto& m : men) fill(m, women);
  for (const auto& w : women) fill(w, men);
  return Instance::create(std::move(men), std::move(women), costs);
}

LeaveDistribution random_leave(const Instance& instance, int num_leavers, std::uint64_t seed, bool allow_zero_phi) {
  if (num_leavers < 0 || num_leavers > instance.size()) throw InputError("bad number of leavers");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<AgentIndex> agents(static_cast<size_t>(instance.size()));
  std::iota(agents.begin(), agents.end(), 0);
  shuffle(agents, rng);

  std::vector<long> weight(agents.size(), 0);
  long total = 0;
  for (int k = 0; k < num_leavers; ++k) {
    long w = 1 + static_cast<long>(uniform_below(rng, 9));
    weight[static_cast<size_t>(agents[static_cast<size_t>(k)])] = w;
    total += w;
  }
  long phi = static_cast<long>(uniform_below(rng, 10));
  if (!allow_zero_phi || num_leavers == 0) phi = std::max(phi, 1L);
  total += phi;

  std::vector<Rational> p;
  for (long w : weight) p.push_back(make_rational(w, total));
  return LeaveDistribution(make_rational(phi, total), std::move(p));
}

}  // namespace robustmatch
