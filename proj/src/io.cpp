#include "robustmatch/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include "robustmatch/error.hpp"

namespace robustmatch {

using ordered_json = nlohmann::ordered_json;

namespace {

Rational fraction_from_json(const ordered_json& num, const ordered_json& den, const std::string& where) {
  if (!num.is_number_integer() || !den.is_number_integer())
    throw InputError(where + ": numerator and denominator must be integers");
  auto d = den.get<long long>();
  if (d <= 0) throw InputError(where + ": denominator must be positive");
  Rational q(Integer(std::to_string(num.get<long long>())), Integer(std::to_string(d)));
  q.canonicalize();
  return q;
}

Rational pair_from_json(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [numerator, denominator]");
  return fraction_from_json(j[0], j[1], where);
}

ordered_json number_to_json(const Integer& z) {
  if (!z.fits_slong_p()) throw InputError("value does not fit a 64-bit JSON integer");
  return z.get_si();
}

ordered_json pair_to_json(const Rational& q) {
  return ordered_json::array({number_to_json(q.get_num()), number_to_json(q.get_den())});
}

std::vector<std::string> id_list(const ordered_json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) throw InputError(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& id : doc[key]) {
    if (!id.is_string()) throw InputError(std::string("'") + key + "' must hold strings");
    out.push_back(id.get<std::string>());
  }
  return out;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");

  auto men = id_list(doc, "men");
  auto women = id_list(doc, "women");

  if (!doc.contains("costs") || !doc["costs"].is_object()) throw InputError("missing object 'costs'");
  std::unordered_map<std::string, std::vector<CostEntry>> costs;
  for (const auto& [id, table] : doc["costs"].items()) {
    if (!table.is_array()) throw InputError("costs of " + id + " must be an array");
    auto& entries = costs[id];
    for (const auto& row : table) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_string())
        throw InputError("costs of " + id + ": expected [candidate, numerator, denominator]");
      entries.push_back({row[0].get<std::string>(), fraction_from_json(row[1], row[2], "costs of " + id)});
    }
  }
  Instance instance = Instance::create(std::move(men), std::move(women), costs);

  if (!doc.contains("leave") || !doc["leave"].is_object()) throw InputError("missing object 'leave'");
  Rational p_phi;
  bool have_phi = false;
  std::vector<Rational> p(static_cast<size_t>(instance.size()), Rational(0));
  for (const auto& [key, value] : doc["leave"].items()) {
    Rational q = pair_from_json(value, "leave." + key);
    if (key == "phi") {
      p_phi = q;
      have_phi = true;
    } else {
      auto a = instance.find(key);
      if (!a) throw InputError("leave probability for unknown agent " + key);
      p[static_cast<size_t>(*a)] = q;
    }
  }
  if (!have_phi) throw InputError("'leave' must contain 'phi'");
  LeaveDistribution leave(std::move(p_phi), std::move(p));

  std::optional<Rational> nu;
  if (doc.contains("nu")) {
    nu = pair_from_json(doc["nu"], "nu");
    if (*nu < 0 || *nu > 1) throw InputError("nu outside [0, 1]");
  }
  return {std::move(instance), std::move(leave), std::move(nu)};
}

InstanceDocument load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string serialize_instance(const Instance& instance, const LeaveDistribution& leave,
                               const std::optional<Rational>& nu) {
  ordered_json doc;
  doc["men"] = ordered_json::array();
  doc["women"] = ordered_json::array();
  for (AgentIndex a = 0; a < instance.size(); ++a) doc[instance.is_man(a) ? "men" : "women"].push_back(instance.id(a));

  ordered_json costs = ordered_json::object();
  for (AgentIndex a = 0; a < instance.size(); ++a) {
    ordered_json table = ordered_json::array();
    // Candidates in index order, which is id order within each side.
    for (AgentIndex b = 0; b < instance.size(); ++b) {
      if (!instance.has_cost(a, b)) continue;
      const Rational& c = instance.cost(a, b);
      table.push_back(ordered_json::array({instance.id(b), number_to_json(c.get_num()), number_to_json(c.get_den())}));
    }
    costs[instance.id(a)] = std::move(table);
  }
  doc["costs"] = std::move(costs);

  ordered_json leave_doc = ordered_json::object();
  leave_doc["phi"] = pair_to_json(leave.p_phi());
  for (AgentIndex a = 0; a < instance.size(); ++a)
    if (leave.p(a) > 0) leave_doc[instance.id(a)] = pair_to_json(leave.p(a));
  doc["leave"] = std::move(leave_doc);
  if (nu) doc["nu"] = pair_to_json(*nu);
  return doc.dump(2) + "\n";
}

Matching parse_matching(const Instance& instance, std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed matching document: ") + e.what());
  }
  // Accept either a bare pair array or {"matching": [...]} as emitted in reports.
  if (doc.is_object() && doc.contains("matching")) doc = doc["matching"];
  if (!doc.is_array()) throw InputError("matching must be an array of [id, id] pairs");
  std::vector<std::pair<AgentIndex, AgentIndex>> pairs;
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_string() || !row[1].is_string())
      throw InputError("matching entries must be [id, id]");
    pairs.emplace_back(instance.index_of(row[0].get<std::string>()), instance.index_of(row[1].get<std::string>()));
  }
  Matching m = Matching::from_pairs(instance.size(), pairs);
  validate_matching(instance, m);
  return m;
}

std::string serialize_matching(const Instance& instance, const Matching& matching) {
  ordered_json doc = ordered_json::array();
  for (auto [m, w] : matching.couples(instance)) doc.push_back({instance.id(m), instance.id(w)});
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace robustmatch
