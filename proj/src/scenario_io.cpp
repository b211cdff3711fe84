#include "hanspec/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "hanspec/errors.hpp"

namespace hanspec {

using nlohmann::json;

namespace {

void expect_fields(const json& obj, std::initializer_list<const char*> fields,
                   const std::string& where) {
  if (!obj.is_object()) {
    throw ParseError(where + ": expected an object");
  }
  for (const char* f : fields) {
    if (!obj.contains(f)) {
      throw ParseError(where + ": missing field '" + f + "'");
    }
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* f : fields) {
      known = known || item.key() == f;
    }
    if (!known) {
      throw ParseError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

double number(const json& obj, const char* field, const std::string& where) {
  const json& v = obj.at(field);
  if (!v.is_number()) {
    throw ParseError(where + "." + field + ": expected a number");
  }
  return v.get<double>();
}

std::uint64_t count(const json& obj, const char* field, const std::string& where) {
  const json& v = obj.at(field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(where + "." + field + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

const json& array(const json& obj, const char* field, const std::string& where) {
  const json& v = obj.at(field);
  if (!v.is_array()) {
    throw ParseError(where + "." + field + ": expected an array");
  }
  return v;
}

} // namespace

std::string scenario_to_json(const Scenario& scn) {
  json doc;
  doc["side"] = scn.side;
  doc["channels"] = scn.channels;
  doc["d_min"] = scn.d_min;
  doc["d_max"] = scn.d_max;
  doc["primaries"] = json::array();
  for (const auto& pu : scn.primaries) {
    doc["primaries"].push_back({{"x", pu.position.x},
                                {"y", pu.position.y},
                                {"channel", pu.channel},
                                {"dp", pu.protection_radius}});
  }
  doc["secondaries"] = json::array();
  for (const auto& su : scn.secondaries) {
    doc["secondaries"].push_back({{"x", su.position.x}, {"y", su.position.y}, {"nan", su.nan_id}});
  }
  doc["seed"] = scn.seed;
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  const std::string root = "scenario";
  expect_fields(doc, {"side", "channels", "d_min", "d_max", "primaries", "secondaries", "seed"},
                root);

  Scenario scn;
  scn.side = number(doc, "side", root);
  scn.channels = count(doc, "channels", root);
  scn.d_min = number(doc, "d_min", root);
  scn.d_max = number(doc, "d_max", root);
  scn.seed = count(doc, "seed", root);

  const json& pus = array(doc, "primaries", root);
  for (std::size_t i = 0; i < pus.size(); ++i) {
    const std::string where = root + ".primaries[" + std::to_string(i) + "]";
    expect_fields(pus[i], {"x", "y", "channel", "dp"}, where);
    PrimaryUser pu;
    pu.id = i;
    pu.position = {number(pus[i], "x", where), number(pus[i], "y", where)};
    pu.channel = count(pus[i], "channel", where);
    pu.protection_radius = number(pus[i], "dp", where);
    scn.primaries.push_back(pu);
  }

  const json& sus = array(doc, "secondaries", root);
  for (std::size_t n = 0; n < sus.size(); ++n) {
    const std::string where = root + ".secondaries[" + std::to_string(n) + "]";
    expect_fields(sus[n], {"x", "y", "nan"}, where);
    SecondaryUser su;
    su.id = n;
    su.position = {number(sus[n], "x", where), number(sus[n], "y", where)};
    su.nan_id = count(sus[n], "nan", where);
    scn.secondaries.push_back(su);
  }

  try {
    validate(scn);
  } catch (const ConfigError& e) {
    throw ParseError(root + ": " + e.what());
  }
  return scn;
}

void save_scenario(const Scenario& scn, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << scenario_to_json(scn);
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return scenario_from_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

} // namespace hanspec
