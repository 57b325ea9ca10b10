#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustmatch/error.hpp"
#include "robustmatch/generate.hpp"
#include "robustmatch/io.hpp"
#include "robustmatch/oracle.hpp"
#include "robustmatch/relaxed_opt.hpp"
#include "robustmatch/stable_opt.hpp"

namespace py = pybind11;
using namespace robustmatch;

namespace {

using IdPairs = std::vector<std::pair<std::string, std::string>>;

IdPairs id_pairs(const Instance& in, const Matching& m) {
  IdPairs out;
  for (auto [a, b] : m.couples(in)) out.emplace_back(in.id(a), in.id(b));
  return out;
}

Matching from_ids(const Instance& in, const IdPairs& pairs) {
  std::vector<std::pair<AgentIndex, AgentIndex>> idx;
  for (const auto& [a, b] : pairs) idx.emplace_back(in.index_of(a), in.index_of(b));
  Matching m = Matching::from_pairs(in.size(), idx);
  validate_matching(in, m);
  return m;
}

Convention convention(const std::string& name) {
  if (name == "self") return Convention::kSelf;
  if (name == "retained") return Convention::kRetained;
  throw InputError("unknown convention " + name);
}

ObjectiveParams params_for(const InstanceDocument& doc, const std::string& nu, const std::string& cost,
                           const std::string& regret) {
  return ObjectiveParams(parse_rational(nu), doc.leave, {convention(cost), convention(regret)},
                         compute_baselines(doc.instance, doc.leave));
}

py::dict breakdown_dict(const Instance& in, const PsiBreakdown& b) {
  py::list terms;
  for (const PsiTerm& t : b.terms) {
    py::dict row;
    row["leaver"] = t.leaver ? py::object(py::str(in.id(*t.leaver))) : py::object(py::none());
    row["probability"] = to_string(t.probability);
    row["contribution"] = to_string(t.contribution);
    terms.append(row);
  }
  py::dict out;
  out["total"] = to_string(b.total);
  out["terms"] = terms;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust stable matching under agent departures";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<InstanceDocument>(m, "Document")
      .def_property_readonly("men",
                             [](const InstanceDocument& d) {
                               std::vector<std::string> ids;
                               for (AgentIndex a = 0; a < d.instance.num_men(); ++a) ids.push_back(d.instance.id(a));
                               return ids;
                             })
      .def_property_readonly("women",
                             [](const InstanceDocument& d) {
                               std::vector<std::string> ids;
                               for (AgentIndex a = d.instance.num_men(); a < d.instance.size(); ++a)
                                 ids.push_back(d.instance.id(a));
                               return ids;
                             })
      .def_property_readonly("nu",
                             [](const InstanceDocument& d) -> std::optional<std::string> {
                               if (!d.nu) return std::nullopt;
                               return to_string(*d.nu);
                             })
      .def("serialize", [](const InstanceDocument& d) { return serialize_instance(d.instance, d.leave, d.nu); });

  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));

  m.def(
      "random_instance",
      [](int n, std::uint64_t seed, bool self_rank_last, int leavers) {
        Instance in = random_instance(n, seed, self_rank_last);
        LeaveDistribution leave = random_leave(in, leavers, seed);
        return InstanceDocument{std::move(in), std::move(leave), std::nullopt};
      },
      py::arg("n"), py::arg("seed"), py::arg("self_rank_last") = true, py::arg("leavers") = 0);

  m.def(
      "solve",
      [](const InstanceDocument& doc, const std::string& nu, const std::string& mode, const std::string& cost,
         const std::string& regret) {
        ObjectiveParams params = params_for(doc, nu, cost, regret);
        RobustSolution sol;
        if (mode == "stable") sol = solve_robust(doc.instance, params, Lattice::build(doc.instance));
        else if (mode == "relaxed") sol = solve_relaxed(doc.instance, params);
        else throw InputError("mode must be stable or relaxed");
        py::dict out;
        out["mode"] = std::string(to_string(sol.mode));
        out["matching"] = id_pairs(doc.instance, sol.matching);
        out["psi"] = to_string(sol.psi);
        out["breakdown"] = breakdown_dict(doc.instance, sol.breakdown);
        out["closed_subset"] = sol.closed_subset;
        return out;
      },
      py::arg("doc"), py::arg("nu"), py::arg("mode") = "stable", py::arg("cost_convention") = "self",
      py::arg("regret_convention") = "retained");

  m.def(
      "evaluate",
      [](const InstanceDocument& doc, const IdPairs& pairs, const std::string& nu, const std::string& cost,
         const std::string& regret) {
        Matching mu = from_ids(doc.instance, pairs);
        ObjectiveParams params = params_for(doc, nu, cost, regret);
        py::dict out;
        out["psi"] = to_string(psi(doc.instance, mu, params));
        out["breakdown"] = breakdown_dict(doc.instance, psi_breakdown(doc.instance, mu, params));
        out["expected_blocking_pairs"] = to_string(expected_blocking_pairs(doc.instance, mu, doc.leave));
        out["stable"] = is_stable(doc.instance, mu);
        return out;
      },
      py::arg("doc"), py::arg("matching"), py::arg("nu"), py::arg("cost_convention") = "self",
      py::arg("regret_convention") = "retained");

  m.def(
      "is_stable",
      [](const InstanceDocument& doc, const IdPairs& pairs) { return is_stable(doc.instance, from_ids(doc.instance, pairs)); },
      py::arg("doc"), py::arg("matching"));

  m.def(
      "rotations",
      [](const InstanceDocument& doc) {
        Lattice lattice = Lattice::build(doc.instance);
        std::vector<IdPairs> rots;
        for (const Rotation& r : lattice.rotations.rotations) {
          IdPairs pairs;
          for (auto [a, b] : r.pairs) pairs.emplace_back(doc.instance.id(a), doc.instance.id(b));
          rots.push_back(std::move(pairs));
        }
        return py::make_tuple(rots, lattice.digraph.edges());
      },
      py::arg("doc"));

  m.def(
      "stable_matchings",
      [](const InstanceDocument& doc) {
        std::vector<IdPairs> out;
        for (const Matching& mu : oracle::enumerate_stable_matchings(doc.instance)) out.push_back(id_pairs(doc.instance, mu));
        return out;
      },
      py::arg("doc"));
}
